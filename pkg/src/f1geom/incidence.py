"""Point-line incidence structures and the projective-plane axiom audit."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class IncidenceGeometry:
    points: tuple
    lines: tuple  # tuples of points, sorted, deduplicated

    @classmethod
    def build(cls, points, lines):
        uniq = sorted({tuple(sorted(l)) for l in lines})
        return cls(tuple(points), tuple(uniq))

    def line_sizes(self):
        return sorted({len(l) for l in self.lines})

    def to_dict(self):
        return {"points": list(self.points), "lines": [list(l) for l in self.lines]}


def check_plane(geom):
    """Audit the projective-plane axioms.

    P1: two distinct points lie on exactly one line.
    P2: two distinct lines meet in exactly one point.
    P3: there are four points, no three collinear.
    """
    lines = [frozenset(l) for l in geom.lines]
    on = {p: [i for i, l in enumerate(lines) if p in l] for p in geom.points}
    failures = []
    for a, b in combinations(geom.points, 2):
        common = set(on[a]) & set(on[b])
        if len(common) != 1:
            failures.append({"axiom": "P1", "witness": [a, b], "lines": sorted(common)})
            break
    for i, j in combinations(range(len(lines)), 2):
        meet = lines[i] & lines[j]
        if len(meet) != 1:
            failures.append({"axiom": "P2", "witness": [i, j], "points": sorted(meet)})
            break
    if not _has_quadrilateral(geom.points, lines):
        failures.append({"axiom": "P3", "witness": None})
    sizes = {len(l) for l in lines}
    order = sizes.pop() - 1 if len(sizes) == 1 else None
    return {"verdict": "PASS" if not failures else "FAIL", "failures": failures,
            "points": len(geom.points), "lines": len(lines), "order": order}


def _has_quadrilateral(points, lines):
    def collinear(x, y, z):
        return any(x in l and y in l and z in l for l in lines)

    pts = list(points)
    for a, b, c in combinations(pts, 3):
        if collinear(a, b, c):
            continue
        for d in pts:
            if d in (a, b, c):
                continue
            if not (collinear(a, b, d) or collinear(a, c, d) or collinear(b, c, d)):
                return True
    return False
