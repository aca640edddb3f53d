"""Symbolic graph-coloring consistency check on a torus of spheres.

Points of (S^n)^r are kept symbolically: each component is xi = (0,..,0,1),
its antipode -xi, or a free variable.  The test map sends x to (x, xi, ..,
xi), so intersecting its image with the diagonal-type subtori reduces to
componentwise equality constraints on the first coordinate.
"""

from dataclasses import dataclass

XI = 1
MINUS_XI = -1


@dataclass(frozen=True)
class TorusPoint:
    """A point of (S^n)^r whose components are +-xi (encoded +-1)."""

    components: tuple
    r: int
    n: int

    def __post_init__(self):
        if len(self.components) != self.r:
            raise ValueError("component count must be r")
        if any(c not in (XI, MINUS_XI) for c in self.components):
            raise ValueError("components must be +-1 (for +-xi)")

    def label(self):
        return "(" + ", ".join("xi" if c == XI else "-xi"
                               for c in self.components) + ")"


def subtorus_membership(p: TorusPoint, i: int, r: int, n: int) -> bool:
    """Membership in the i-th subtorus: component i antipodal to i+1 for
    i < r-1, and the last component equal to the first for i = r-1."""
    if not 0 <= i <= r - 1:
        raise ValueError("subtorus index out of range")
    if i < r - 1:
        return p.components[i] == -p.components[i + 1]
    return p.components[r - 1] == p.components[0]


def omega(p: TorusPoint) -> TorusPoint:
    """The involution (x_0, x_1, .., x_{r-1}) -> (-x_0, x_{r-1}, .., x_1)."""
    c = p.components
    return TorusPoint((-c[0],) + tuple(reversed(c[1:])), p.r, p.n)


@dataclass(frozen=True)
class LovaszIntersection:
    r: int
    n: int
    points: tuple  # TorusPoint
    strata: tuple  # tuple of subtorus indices per point
    single_stratum: bool
    one_orbit: bool

    def to_json(self):
        return {
            "r": self.r,
            "n": self.n,
            "points": [p.label() for p in self.points],
            "strata": [list(s) for s in self.strata],
            "singleStratum": self.single_stratum,
            "oneOrbit": self.one_orbit,
        }


def lovasz_intersection(r: int, n: int) -> LovaszIntersection:
    """Intersection of the image of x |-> (x, xi, .., xi) with the union of
    the subtori, solved componentwise.

    Components 1..r-1 are pinned to xi, so each subtorus constrains only the
    free first component: index 0 forces x_0 = -xi, indices 0 < i < r-1 are
    infeasible (they would need xi = -xi), and index r-1 forces x_0 = xi.
    """
    if r < 2 or n < 2:
        raise ValueError("need r >= 2 and n >= 2")
    hits = {}
    for i in range(r):
        if 0 < i < r - 1:
            continue  # xi = -xi has no solution on a sphere
        first = MINUS_XI if i == 0 else XI
        p = TorusPoint((first,) + (XI,) * (r - 1), r, n)
        hits.setdefault(p.components, p)
    points = tuple(hits[k] for k in sorted(hits))
    strata = tuple(tuple(i for i in range(r)
                         if subtorus_membership(p, i, r, n))
                   for p in points)
    single = all(len(s) == 1 for s in strata)
    orbit = (len(points) == 2
             and omega(points[0]).components == points[1].components
             and omega(points[1]).components == points[0].components)
    return LovaszIntersection(r, n, points, strata, single, orbit)
