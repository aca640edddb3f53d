"""Two equivariant cell structures on S^3 and the chain map between them.

The simplicial structure is the join of two 2n-gons with vertex orbits
a_1..a_2n and b_1..b_2n; every vertex is g . t for a unique group element g
(t = a_1, b_1 = j t), so vertices are stored as group elements.  The economic
structure has one free orbit of cells in each dimension pattern a, (b, b'),
(c, c'), e with the standard boundary table over the integral group ring.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import groups, linalg
from .groups import GroupElement, GroupSpec, QUATERNION

# ---------------------------------------------------------------------------
# vertices and oriented simplices


def vertex(spec: GroupSpec, a: int, j: int = 0) -> GroupElement:
    """The vertex eps^a j^jflag . t (a_{a+1} for j = 0, b_{a+1} for j = 1)."""
    return groups.element(spec, a, j)


def vertex_label(v: GroupElement) -> str:
    return ("b%d" if v.j else "a%d") % (v.a + 1)


def vertex_sort_key(v: GroupElement):
    return (v.j, v.a)


def oriented(vertices):
    """Canonical (sorted-vertex, sign) form of an oriented simplex."""
    vs = list(vertices)
    sign = 1
    for i in range(len(vs)):  # insertion sort, counting swaps
        k = i
        while k > 0 and vertex_sort_key(vs[k]) < vertex_sort_key(vs[k - 1]):
            vs[k], vs[k - 1] = vs[k - 1], vs[k]
            sign = -sign
            k -= 1
    for x, y in zip(vs, vs[1:]):
        if x == y:
            return None, 0  # degenerate
    return tuple(vs), sign


def chain(pairs):
    """Build a chain dict from (vertices, coefficient) pairs."""
    out = {}
    for vertices, coeff in pairs:
        key, sign = oriented(vertices)
        if sign == 0 or coeff == 0:
            continue
        out[key] = out.get(key, 0) + sign * coeff
        if out[key] == 0:
            del out[key]
    return out


def chain_add(u, v, factor=1):
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, 0) + factor * c
        if out[k] == 0:
            del out[k]
    return out


def boundary_chain(c):
    out = {}
    for simplex, coeff in c.items():
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1:]
            sgn = -1 if i % 2 else 1
            out[face] = out.get(face, 0) + sgn * coeff
            if out[face] == 0:
                del out[face]
    return out


def act_on_chain(spec: GroupSpec, g: GroupElement, c):
    return chain(
        (tuple(groups.multiply(spec, g, v) for v in simplex), coeff)
        for simplex, coeff in c.items()
    )


# ---------------------------------------------------------------------------
# the join sphere


@dataclass(frozen=True)
class SimplicialSphere:
    spec: GroupSpec
    n: int

    @property
    def vertices(self):
        return [vertex(self.spec, a, j)
                for j in (0, 1) for a in range(2 * self.n)]

    def sigma(self, p: int, q: int):
        """Ordered vertices of sigma_{p,q}."""
        m = 2 * self.n
        return (vertex(self.spec, p % m), vertex(self.spec, (p + 1) % m),
                vertex(self.spec, q % m, 1), vertex(self.spec, (q + 1) % m, 1))

    def all_simplices3(self):
        m = 2 * self.n
        return [(p, q) for p in range(m) for q in range(m)]

    def triangles(self):
        """All 2-simplices, as canonical vertex triples."""
        seen = set()
        for p, q in self.all_simplices3():
            simplex = self.sigma(p, q)
            for i in range(4):
                face = simplex[:i] + simplex[i + 1:]
                key, _ = oriented(face)
                seen.add(key)
        return sorted(seen, key=lambda t: tuple(map(vertex_sort_key, t)))

    def chain_ranks(self):
        n = self.n
        return (4 * n, 4 * n * n + 4 * n, 8 * n * n, 4 * n * n)


def build_join_sphere(n: int) -> SimplicialSphere:
    if n < 2:
        raise ValueError("need n >= 2")
    return SimplicialSphere(GroupSpec(QUATERNION, n), n)


def vertex_decomposition(v: GroupElement) -> GroupElement:
    """The unique g with v = g . t; vertices are stored that way already."""
    return v


# ---------------------------------------------------------------------------
# the economic structure

CELLS = {"a": 0, "b": 1, "bp": 1, "c": 2, "cp": 2, "e": 3}


@dataclass(frozen=True)
class EconomicComplex:
    spec: GroupSpec

    def boundary(self, cell: str):
        """The boundary of one cell as [(group element, coeff, cell)]."""
        s = self.spec
        one = groups.identity_element(s)
        eps = groups.element(s, 1)
        j = groups.element(s, 0, 1)
        epsj = groups.multiply(s, eps, j)
        n = s.n
        if cell == "e":
            return [(eps, 1, "c"), (one, -1, "c"),
                    (epsj, -1, "cp"), (one, 1, "cp")]
        if cell == "c":
            return ([(groups.element(s, k), 1, "b") for k in range(n)]
                    + [(j, -1, "bp"), (one, -1, "bp")])
        if cell == "cp":
            return [(epsj, 1, "b"), (one, 1, "b"),
                    (eps, 1, "bp"), (one, -1, "bp")]
        if cell == "b":
            return [(eps, 1, "a"), (one, -1, "a")]
        if cell == "bp":
            return [(j, 1, "a"), (one, -1, "a")]
        if cell == "a":
            return []
        raise KeyError(cell)

    def boundary_of(self, terms):
        """Boundary of a group-ring chain {(g, cell): coeff}."""
        out = {}
        for (g, cell), coeff in terms.items():
            for h, c, lower in self.boundary(cell):
                key = (groups.multiply(self.spec, g, h), lower)
                out[key] = out.get(key, 0) + coeff * c
                if out[key] == 0:
                    del out[key]
        return out

    def integer_boundary_matrix(self, degree: int):
        """Boundary in degree ``degree`` over Z, expanding Z[G] by the sorted
        element list.  Rows index (degree-1)-basis, columns degree-basis."""
        cells_by_deg = {0: ["a"], 1: ["b", "bp"], 2: ["c", "cp"], 3: ["e"]}
        elements = sorted(groups.all_elements(self.spec),
                          key=lambda g: (g.j, g.a))

        def basis(d):
            return [(g, cell) for cell in cells_by_deg[d] for g in elements]

        low = basis(degree - 1)
        high = basis(degree)
        pos = {bk: i for i, bk in enumerate(low)}
        mat = [[0] * len(high) for _ in range(len(low))]
        for col, (g, cell) in enumerate(high):
            for key, coeff in self.boundary_of({(g, cell): 1}).items():
                mat[pos[key]][col] += coeff
        return mat


def economic_complex(n: int) -> EconomicComplex:
    if n < 2:
        raise ValueError("need n >= 2")
    return EconomicComplex(GroupSpec(QUATERNION, n))


# ---------------------------------------------------------------------------
# the chain map on low cells and the top cell


def chain_map_images(sphere: SimplicialSphere):
    """Simplicial images of the economic cells a, b, b', c, c'."""
    s = sphere.spec
    t = vertex(s, 0)
    a1 = lambda k: vertex(s, k)          # a_{k+1}
    b1 = lambda k: vertex(s, k, 1)       # b_{k+1}
    n = sphere.n
    f_a = chain([((t,), 1)])
    f_b = chain([((a1(0), a1(1)), 1)])
    f_bp = chain([((a1(0), b1(0)), 1)])
    f_c = chain([((a1(i), a1(i + 1), b1(0)), 1) for i in range(n)])
    f_cp = chain([((a1(0), a1(1), b1(1)), 1), ((a1(0), b1(0), b1(1)), -1)])
    return {"a": f_a, "b": f_b, "bp": f_bp, "c": f_c, "cp": f_cp}


def top_cell_boundary_image(sphere: SimplicialSphere):
    """The simplicial 2-chain that f(boundary of e) must equal."""
    s = sphere.spec
    eps = groups.element(s, 1)
    j = groups.element(s, 0, 1)
    epsj = groups.multiply(s, eps, j)
    images = chain_map_images(sphere)
    rhs = chain_add(act_on_chain(s, eps, images["c"]), images["c"], -1)
    rhs = chain_add(rhs, act_on_chain(s, epsj, images["cp"]), -1)
    rhs = chain_add(rhs, images["cp"], 1)
    return rhs


def solve_top_cell_signs(sphere: SimplicialSphere):
    """Orientations eta_i on sigma_{i,0}, i = 0..n-1, making the top cell a
    chain-map image: boundary(sum eta_i sigma_{i,0}) = f(boundary e).

    The ordered-vertex orientation works with every eta_i = +1; this solves
    the linear system anyway and checks the solution is unique and unit.
    """
    n = sphere.n
    rhs = top_cell_boundary_image(sphere)
    cols = [boundary_chain(chain([(sphere.sigma(i, 0), 1)])) for i in range(n)]
    support = sorted({k for c in cols for k in c} | set(rhs),
                     key=lambda t: tuple(map(vertex_sort_key, t)))
    amat = [[Fraction(c.get(face, 0)) for c in cols] for face in support]
    bvec = [Fraction(rhs.get(face, 0)) for face in support]
    sol = linalg.solve_affine(amat, bvec)
    if sol.kind != "unique" or any(abs(x) != 1 for x in sol.point):
        raise ValueError("no unit orientation pattern for the top cell")
    return tuple(int(x) for x in sol.point)


def maximal_cell_simplices(n: int):
    """The oriented 3-simplices carrying the economic top cell:
    [(p, q, sign)] with q = 0 and p = 0..n-1."""
    sphere = build_join_sphere(n)
    signs = solve_top_cell_signs(sphere)
    return [(i, 0, signs[i]) for i in range(n)]
