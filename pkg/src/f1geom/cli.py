"""``f1`` command-line front end.

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 success, 2 parse
error, 3 precondition violation, 4 audit failure, 5 resource bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import counting as cz
from . import coxeter as cx
from . import hyper as hy
from . import loose_graph as lg
from . import monoid as mn
from . import singer as sg
from .errors import AuditFailure, F1Error, ParseError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _ints(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


_FILE_SUFFIXES = (".lg", ".mon", ".sys", ".json", ".txt")


def _read(arg):
    """File contents, stdin for ``-``, otherwise the argument itself as inline text."""
    if arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    if arg.endswith(_FILE_SUFFIXES):
        raise F1Error(f"no such file: {arg}")
    return arg


def _is_graph_text(text):
    for line in text.splitlines():
        toks = line.split("#", 1)[0].split()
        if toks:
            return toks[0] in ("graph", "vertex", "edge")
    return False


def load_source(arg, allow_disconnected=False):
    """A Scheme for loose-graph input, otherwise a MonoidPresentation."""
    text = _read(arg)
    if arg.endswith(".lg") or _is_graph_text(text):
        return lg.theta(lg.parse(text), allow_disconnected)
    return mn.parse_presentation(text)


# -- subcommands --------------------------------------------------------------

def cmd_scheme(a):
    s = load_source(a.source, a.allow_disconnected)
    if not isinstance(s, lg.Scheme):
        sp = mn.spec_space(s)
        out = {"presentation": mn.presentation_to_dict(s)}
        out.update(sp.to_dict())
        return out
    out = s.to_dict()
    out["counting"] = list(cz.counting_polynomial(s).coeffs)
    out["automorphisms"] = len(lg.automorphisms(s.graph))
    out["graph_components"] = lg.connected_components(s.graph)
    return out


def cmd_count(a):
    src = load_source(a.source, a.allow_disconnected)
    qs = a.q or [2, 3, 4, 5]
    rows = [{"q": q, "count": cz.count_points(src, q, brute=a.brute)} for q in qs]
    out = {"counts": rows}
    if a.brute:
        formula = [cz.count_points(src, q) for q in qs]
        out["formula_agrees"] = formula == [r["count"] for r in rows]
    N = cz.counting_polynomial(src)
    out["polynomial"] = list(N.coeffs)
    out["polynomial_text"] = str(N)
    out["e"] = N.e
    return out


def cmd_zeta(a):
    N = cz.counting_polynomial(load_source(a.source, a.allow_disconnected))
    out = cz.zeta_report(N, tuple(a.primes), a.s)
    out["limit"] = cz.kurokawa_limit_check(N, a.s)
    return out


def cmd_fan(a):
    f = a.f
    fan = cz.FanProfile(len(f) - 1, tuple(f))
    N = cz.toric_counting_polynomial(fan)
    return {"n": fan.n, "f": list(fan.f), "c": list(cz.toric_c(fan)),
            "counting": list(N.coeffs), "zeta": cz.f1_zeta(N).to_dict()}


def _audit(t, level):
    return {"hypergroup": hy.check_hypergroup, "hyperring": hy.check_hyperring,
            "hyperfield": hy.check_hyperfield}[level](t)


def cmd_hyper(a):
    if a.action == "quotient":
        t = hy.field_quotient(a.p, a.m, a.d)
        rep = hy.check_hyperfield(t)
        out = {"table": t.to_dict(), "audit": rep, "size": len(t)}
        if hy.is_k_vector_space(t):
            g = hy.geometry_from_hypergroup(t)
            out["geometry"] = {"points": len(g.points), "lines": len(g.lines),
                               "line_sizes": g.line_sizes(), "plane": sg.check_plane(g)["verdict"]}
        return out, rep["verdict"] == "PASS"
    if a.action == "audit":
        try:
            t = hy.HyperStructureTable.from_dict(json.loads(_read(a.table)))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad table JSON: {exc}") from None
        if t.mul is None and a.level != "hypergroup":
            a.level = "hypergroup"
        rep = _audit(t, a.level)
        return {"level": a.level, "audit": rep}, rep["verdict"] == "PASS"
    if a.action == "kg":
        spec = sg.parse_group(a.group)
        if not spec.finite:
            raise ParseError("K[G] needs a finite group")
        t, rep = hy.kG_hyperfield(spec.torsion)
        return {"group": str(spec), "table": t.to_dict(), "audit": rep}, rep["verdict"] == "PASS"
    if a.action == "survey":
        return {"survey": hy.kg_survey(a.max_order)}, True
    raise AssertionError(a.action)


def cmd_singer(a):
    if a.action == "classical":
        g, S = sg.classical_singer(a.q)
        rep = sg.plane_report(g, S)
        return {"group": g.name, "S": S, "order": rep["order"], "plane": rep["verdict"],
                "translation": rep["translation"]}, rep["verdict"] == "PASS"
    if a.action == "search":
        g = sg.parse_group(a.group).to_group()
        found = sg.search_difference_set(g, a.size, a.equivalence)
        return {"group": g.name, "size": a.size, "equivalence": a.equivalence,
                "classes": found, "count": len(found)}, True
    if a.action == "audit":
        g = sg.parse_group(a.group).to_group()
        rep = sg.difference_audit(g, a.set)
        out = {"group": g.name, "S": a.set, "difference": rep}
        if rep["perfect"]:
            out["plane"] = sg.plane_report(g, a.set)["verdict"]
        return out, True
    if a.action == "extend":
        st = sg.cover_window(sg.parse_group(a.group), a.window)
        out = st.to_dict()
        out["injective"] = sg.injective_differences(st.spec, st.S)
        return out, out["injective"]
    if a.action == "f1":
        gens, degree = sg.parse_cycles(_read(a.gens), a.degree)
        rep = sg.f1_singer(gens, degree)
        ok = rep["sharply_transitive"] and rep["classes_permuted"] and rep["rotation_compatible"]
        return rep, ok
    if a.action == "divisibility":
        return sg.divisibility_check(a.p, a.i, a.j), True
    raise AssertionError(a.action)


def cmd_coxeter(a):
    d = cx.parse_diagram(a.type)
    out = {"rank": d.rank}
    comps = d.components()
    out["type"] = "x".join(cx.recognize(d.restrict(c)).label for c in comps)
    W = cx.poincare(d)
    out["order"] = cx.poly_eval(W, 1)
    out["poincare"] = W
    out["poincare_text"] = cx.poly_str(W)
    if a.parabolic is not None:
        I = [i - 1 for i in a.parabolic]
        Q = cx.parabolic_quotient(d, I)
        out["parabolic"] = a.parabolic
        out["quotient"] = Q
        out["quotient_text"] = cx.poly_str(Q)
    if a.eval is not None:
        poly = out.get("quotient", W)
        out["eval"] = {"q": a.eval, "value": cx.poly_eval(poly, a.eval)}
        if a.flags:
            out["eval"]["flags"] = cx.flag_count_bridge(d, [i - 1 for i in a.parabolic or []],
                                                        a.eval)["flags"]
    return out


def cmd_descend(a):
    text = _read(a.system)
    polys = [p.strip() for p in text.replace("\n", ";").split(";") if p.strip()]
    if a.vars:
        names = [v.strip() for v in a.vars.split(",") if v.strip()]
    else:
        import sympy
        try:
            names = sorted({str(s) for p in polys for s in sympy.sympify(p).free_symbols})
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot parse system: {exc}") from None
    m = mn.f1_descent(polys, names)
    red = mn.eliminate_linear(m)
    sp = mn.spec_space(m)
    return {"variables": names, "presentation": mn.presentation_to_dict(m),
            "reduced": mn.presentation_to_dict(red),
            "points": [p["label"] for p in sp.to_dict()["points"]],
            "counting": list(cz.counting_polynomial(m).coeffs)}


# -- rendering ----------------------------------------------------------------

def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                          (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def _csv(cmd, out):
    if cmd == "count":
        return "q,count\n" + "".join(f"{r['q']},{r['count']}\n" for r in out["counts"])
    if cmd == "coxeter":
        poly = out.get("quotient", out["poincare"])
        return "k,coefficient\n" + "".join(f"{k},{c}\n" for k, c in enumerate(poly))
    if cmd == "hyper" and "survey" in out:
        return "group,order,verdict\n" + "".join(
            f"{r['group']},{r['order']},{r['verdict']}\n" for r in out["survey"])
    rows = [(k, v) for k, v in out.items() if not isinstance(v, (dict, list))]
    return "key,value\n" + "".join(f"{k},{v}\n" for k, v in rows)


def render(cmd, out, fmt):
    if fmt == "json":
        return json.dumps(out, indent=2) + "\n"
    if fmt == "csv":
        return _csv(cmd, out)
    return _text(out) + "\n"


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker count (results do not depend on it)")
    common.add_argument("--seedless", action="store_true", default=argparse.SUPPRESS,
                        help="reserved; rejected")

    p = _Parser(prog="f1", description="Geometry over the field with one element.",
                parents=[common])
    p.add_argument("--version", action="version", version=f"f1 {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("scheme", parents=[common], help="points, topology, components of a scheme")
    s.add_argument("source", help=".lg loose graph or monoid presentation (file or inline)")
    s.add_argument("--allow-disconnected", action="store_true")

    s = sub.add_parser("count", parents=[common], help="F_q point counts")
    s.add_argument("source")
    s.add_argument("--allow-disconnected", action="store_true")
    s.add_argument("--q", type=_ints, help="comma-separated prime powers")
    s.add_argument("--brute", action="store_true", help="count by exhaustive enumeration")

    s = sub.add_parser("zeta", parents=[common], help="counting polynomial, Euler characteristic, zeta")
    s.add_argument("source")
    s.add_argument("--allow-disconnected", action="store_true")
    s.add_argument("--s", type=float, default=2.5)
    s.add_argument("--primes", type=_ints, default=[2, 3, 5])

    s = sub.add_parser("fan", parents=[common], help="toric zeta exponents from a fan profile")
    s.add_argument("--f", type=_ints, required=True, help="cone counts f_0,...,f_n")

    h = sub.add_parser("hyper", parents=[common], help="hyperstructures")
    hs = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = hs.add_parser("quotient", parents=[common])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--d", type=int, default=1)
    s = hs.add_parser("audit", parents=[common])
    s.add_argument("table", help="JSON table file")
    s.add_argument("--level", choices=("hypergroup", "hyperring", "hyperfield"), default="hyperfield")
    s = hs.add_parser("kg", parents=[common])
    s.add_argument("group", help="finite abelian group literal, e.g. Z5 or Z2xZ2")
    s = hs.add_parser("survey", parents=[common])
    s.add_argument("--max-order", type=int, default=12)

    g = sub.add_parser("singer", parents=[common], help="difference sets and Singer groups")
    gs = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = gs.add_parser("classical", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s = gs.add_parser("search", parents=[common])
    s.add_argument("group")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--equivalence", choices=("translate", "affine"), default="translate")
    s = gs.add_parser("audit", parents=[common])
    s.add_argument("group")
    s.add_argument("--set", type=_ints, required=True)
    s = gs.add_parser("extend", parents=[common])
    s.add_argument("group", help="e.g. Z^1, Z^2, Z^1xZ3")
    s.add_argument("--window", type=int, required=True, help="radius N of the target ball")
    s = gs.add_parser("f1", parents=[common])
    s.add_argument("gens", help="generators in cycle notation separated by ';'")
    s.add_argument("--degree", type=int)
    s = gs.add_parser("divisibility", parents=[common])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)

    s = sub.add_parser("coxeter", parents=[common], help="Coxeter length polynomials")
    s.add_argument("type", help="A3, B4, I2(7), or 'matrix [[1,3],[3,1]]'")
    s.add_argument("--parabolic", type=_ints, help="1-based nodes of the parabolic subset")
    s.add_argument("--eval", type=int, help="evaluate the polynomial at q")
    s.add_argument("--flags", action="store_true", help="also count flags in PG(n, q) (type A)")

    s = sub.add_parser("descend", parents=[common], help="F1-descent of a polynomial system")
    s.add_argument("system", help="polynomials separated by ';' or newlines (file or inline)")
    s.add_argument("--vars", help="comma-separated variable order")
    return p


COMMANDS = {"scheme": cmd_scheme, "count": cmd_count, "zeta": cmd_zeta, "fan": cmd_fan,
            "hyper": cmd_hyper, "singer": cmd_singer, "coxeter": cmd_coxeter,
            "descend": cmd_descend}


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "seedless", False):
        print("f1: error: --seedless is reserved (the tool uses no randomness)", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "json")
    try:
        result = COMMANDS[args.cmd](args)
        ok = True
        if isinstance(result, tuple):
            result, ok = result
        stdout.write(render(args.cmd, result, fmt))
        if not ok:
            raise AuditFailure("audit failed; see report")
    except F1Error as exc:
        print(f"f1: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"f1: precondition: {exc}", file=sys.stderr)
        return 3
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
