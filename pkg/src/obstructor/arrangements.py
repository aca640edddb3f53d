"""Invariant linear subspace arrangements in W_n and their intersection posets.

A subspace is canonicalized by the RREF of its defining equations, so equality
is plain tuple comparison.  The oriented basis comes from the RREF free
columns in increasing index order; every orientation-sensitive result is
tested to be independent of that choice.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import groups, linalg


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    equations: tuple  # canonical RREF rows; the identity of the subspace
    defining_rows: tuple = field(compare=False)  # rows in their given order
    oriented_basis: tuple = field(compare=False)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def contains_point(self, v) -> bool:
        return all(linalg.dot(row, v) == 0 for row in self.equations)

    def contains(self, other: "Subspace") -> bool:
        """Set containment other <= self (every equation of self kills other)."""
        return all(all(linalg.dot(row, b) == 0 for b in other.oriented_basis)
                   for row in self.equations)

    def with_reversed_orientation(self) -> "Subspace":
        basis = list(self.oriented_basis)
        if len(basis) >= 1:
            basis[0] = tuple(-x for x in basis[0])
        return Subspace(self.ambient_dim, self.equations, self.defining_rows,
                        tuple(basis))

    def key(self):
        return self.equations


def subspace(n: int, rows) -> Subspace:
    """Canonical subspace of R^n cut out by <row, x> = 0 for each row."""
    rows = [tuple(Fraction(x) for x in row) for row in rows]
    eqs = tuple(linalg.row_space_basis([list(r) for r in rows])) if rows else ()
    basis = tuple(tuple(v) for v in linalg.kernel_basis(
        [list(r) for r in eqs] if eqs else [[Fraction(0)] * n]))
    return Subspace(n, eqs, tuple(rows), basis)


def sum_zero_row(n: int):
    return tuple(Fraction(1) for _ in range(n))


def window_row(n: int, start: int, length: int):
    """Row of x_start + ... + x_{start+length-1} (1-based, no wrap)."""
    row = [Fraction(0)] * n
    for i in range(start - 1, start - 1 + length):
        row[i] = Fraction(1)
    return tuple(row)


def partition_subspace(alpha, n: int, sum_range: int | None = None,
                       window_starts=None) -> Subspace:
    """The test subspace L for a partition problem.

    ``alpha`` is either a symmetric six-tuple (a1,a2,a3,a1,a2,a3) with
    a1+a2+a3 = n/2 (hyperplane scenario: three half-circle window equations)
    or a triple (a1,a2,a3) with a1+a2+a3 = n (fan scenario: three block
    equations).  The row sum(x_i) = 0 is always appended; ``sum_range``
    optionally restricts that row to x_1..x_sum_range and ``window_starts``
    overrides the three half-circle window starts (both knobs are printed
    n = 10 variants).
    """
    alpha = tuple(int(x) for x in alpha)
    if any(x <= 0 for x in alpha):
        raise ValueError("alpha entries must be positive")
    rows = []
    if len(alpha) == 6:
        if alpha[:3] != alpha[3:]:
            raise ValueError("six-tuple must be symmetric (a1,a2,a3,a1,a2,a3)")
        a1, a2, a3 = alpha[:3]
        if 2 * (a1 + a2 + a3) != n:
            raise ValueError("six-tuple halves must sum to n/2")
        half = n // 2
        starts = window_starts if window_starts else (1, a1 + 1, a1 + a2 + 1)
        for s in starts:
            rows.append(window_row(n, s, half))
    elif len(alpha) == 3:
        a1, a2, a3 = alpha
        if a1 + a2 + a3 != n:
            raise ValueError("triple must sum to n")
        rows.append(window_row(n, 1, a1))
        rows.append(window_row(n, a1 + 1, a2))
        rows.append(window_row(n, a1 + a2 + 1, a3))
    else:
        raise ValueError("alpha must have 3 or 6 entries")
    rows.append(window_row(n, 1, sum_range) if sum_range else sum_zero_row(n))
    return subspace(n, rows)


def fan_wall_point(a: int, b: int, n: int):
    """The forced symmetric point on the block subspace of the triple
    (a, b, a): (1/n)(a u_a + (b/2) u_{a+1} + (b/2) u_{a+b} + a u_{a+b+1})
    where u_i = e_i - (1/n) sum e_k.  It is fixed by j and must lie on the
    cutting hyperplane."""
    w = [Fraction(0)] * n
    for idx, coef in ((a, Fraction(a, n)), (a + 1, Fraction(b, 2 * n)),
                      (a + b, Fraction(b, 2 * n)), (a + b + 1, Fraction(a, n))):
        w[(idx - 1) % n] += coef
    mean = sum(w) / n
    return [x - mean for x in w]


def fan_hyperplane(a: int, b: int, n: int) -> Subspace:
    """The cutting hyperplane x_{a+b+s} - x_{a+1+s} + x_{1+s} - x_{n-1+s} = 0
    (indices cyclic, 1-based), with s >= 0 the smallest shift for which the
    equation vanishes on the forced wall point.  s = 0 whenever the four
    indices stay distinct; small a needs the shift because of collisions."""
    if a < 1 or b < 1 or 2 * a + b != n:
        raise ValueError("need a, b >= 1 with 2a + b = n")
    w = fan_wall_point(a, b, n)
    for s in range(n):
        row = [Fraction(0)] * n
        for idx, coef in ((a + b + s, 1), (a + 1 + s, -1),
                          (1 + s, 1), (n - 1 + s, -1)):
            row[(idx - 1) % n] += coef
        if any(row) and linalg.dot(row, w) == 0:
            return subspace(n, [row])
    raise ValueError("no cyclic shift of the cutting pattern fits")


def intersect(u: Subspace, v: Subspace) -> Subspace:
    assert u.ambient_dim == v.ambient_dim
    return subspace(u.ambient_dim, list(u.equations) + list(v.equations))


def act(spec: groups.GroupSpec, g: groups.GroupElement, s: Subspace) -> Subspace:
    """g . S, canonicalized.  Equations of g S are the pushforwards g . row."""
    rows = [groups.apply_to_functional(spec, g, row) for row in s.defining_rows]
    return subspace(s.ambient_dim, rows)


@dataclass(frozen=True)
class Arrangement:
    spec: groups.GroupSpec
    seed: Subspace
    maximal: tuple  # Subspace, deterministic order
    orbit_labels: tuple  # GroupElement per maximal: element = label . seed

    @property
    def size(self):
        return len(self.maximal)

    def index_of(self, s: Subspace) -> int:
        for i, m in enumerate(self.maximal):
            if m.key() == s.key():
                return i
        raise KeyError("subspace not in arrangement")

    def with_reversed_orientation(self, index: int) -> "Arrangement":
        new = list(self.maximal)
        new[index] = new[index].with_reversed_orientation()
        return Arrangement(self.spec, self.seed, tuple(new), self.orbit_labels)


def orbit_arrangement(seed: Subspace, spec: groups.GroupSpec) -> Arrangement:
    """Smallest invariant arrangement containing ``seed``.

    Orbit labels prefer pure eps-powers with the smallest exponent (j-free
    first), matching the naming L, eps L, eps^2 L, ...  The label g marks
    the subspace cut out by the original equations composed with g, that is
    act(g^-1, seed); set-wise the orbit is the same either way.
    """
    found = {}
    for g in all_elements_sorted(spec):
        s = act(spec, groups.inverse(spec, g), seed)
        if s.key() not in found:
            found[s.key()] = (g, s)
    items = sorted(found.values(), key=lambda gs: (gs[0].j, gs[0].a))
    maximal = tuple(s for _, s in items)
    labels = tuple(g for g, _ in items)
    return Arrangement(spec, seed, maximal, labels)


def all_elements_sorted(spec: groups.GroupSpec):
    return sorted(groups.all_elements(spec), key=lambda g: (g.j, g.a))


def stratum_of(point, arrangement: Arrangement):
    """Indices of the maximal elements containing the point."""
    return tuple(i for i, m in enumerate(arrangement.maximal)
                 if m.contains_point(point))


def orientation_transport_sign(spec: groups.GroupSpec, g: groups.GroupElement,
                               source: Subspace, target: Subspace) -> int:
    """Sign of det of the matrix carrying g.(basis of source) onto the basis
    of target.  Requires g . source == target setwise."""
    if act(spec, g, source).key() != target.key():
        raise ValueError("g does not carry source onto target")
    tmat = [list(b) for b in target.oriented_basis]
    coords = []
    for b in source.oriented_basis:
        gb = groups.apply_to_vector(spec, g, b)
        sol = linalg.solve_affine(linalg.transpose(tmat), gb)
        assert sol.kind == "unique"
        coords.append(list(sol.point))
    return linalg.sign_det(coords)


def action_matrix_on_span(spec: groups.GroupSpec, g: groups.GroupElement, rows):
    """Matrix of g on span(rows) for the given (ordered) spanning basis.

    Used for the orientation computations on L-perp with the printed basis.
    """
    rmat = [list(r) for r in rows]
    out = []
    for r in rows:
        gr = groups.apply_to_vector(spec, g, r)
        sol = linalg.solve_affine(linalg.transpose(rmat), gr)
        if sol.kind != "unique":
            raise ValueError("rows are not a basis of an invariant span")
        out.append(list(sol.point))
    return out


@dataclass(frozen=True)
class IntersectionPoset:
    nodes: tuple  # Subspace, sorted by (-dim, equations)
    cover_edges: tuple  # (lower_index, upper_index): lower strictly contained

    def dims(self):
        return tuple(node.dim for node in self.nodes)


def intersection_poset(arr: Arrangement) -> IntersectionPoset:
    """All distinct intersections of subsets of maximal elements.

    Built by closing the maximal set under pairwise intersection, which
    yields the same family as intersecting every subset.
    """
    nodes = {m.key(): m for m in arr.maximal}
    frontier = list(arr.maximal)
    while frontier:
        nxt = []
        for s in frontier:
            for m in arr.maximal:
                c = intersect(s, m)
                if c.key() not in nodes:
                    nodes[c.key()] = c
                    nxt.append(c)
        frontier = nxt
    ordered = sorted(nodes.values(), key=lambda s: (-s.dim, s.equations))
    below = {}
    for i, u in enumerate(ordered):
        for j, v in enumerate(ordered):
            if i != j and v.contains(u) and u.dim < v.dim:
                below.setdefault(i, set()).add(j)
    edges = []
    for i, ups in below.items():
        for j in ups:
            # cover: no node strictly between i and j
            if not any(k in below.get(i, ()) and j in below.get(k, ())
                       for k in range(len(ordered)) if k not in (i, j)):
                edges.append((i, j))
    return IntersectionPoset(tuple(ordered), tuple(sorted(edges)))


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "group": {"family": arr.spec.family, "n": arr.spec.n},
        "maximal": [
            {
                "label": str(g),
                "equations": [[linalg.frac_str(x) for x in row]
                              for row in m.equations],
                "dim": m.dim,
            }
            for g, m in zip(arr.orbit_labels, arr.maximal)
        ],
    }
