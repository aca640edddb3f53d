"""Exact rational and integer linear algebra.

Matrices are plain lists of row lists.  Rational matrices hold
``fractions.Fraction`` entries, integer matrices hold python ints; both are
arbitrary precision so overflow is not representable.  Everything here is a
pure function: inputs are never mutated.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def frac_str(x) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def mat_copy(m):
    return [list(row) for row in m]


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def int_identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    assert not a or len(a[0]) == k
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            row.append(sum(ai[t] * b[t][j] for t in range(k)))
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def rref(m):
    """Reduced row echelon form.

    Returns (reduced, pivot_columns).  Row space is preserved; pivot columns
    are strictly increasing and each pivot is 1 with zeros elsewhere in its
    column.
    """
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, tuple(pivots)


def rank(m) -> int:
    return len(rref(m)[1])


def row_space_basis(m):
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    red, pivots = rref(m)
    return [tuple(red[i]) for i in range(len(pivots))]


def kernel_basis(m):
    """Basis of the right kernel {x : m x = 0}, one vector per free column.

    The free-column vectors are produced in increasing column order, which
    fixes a deterministic (hence orientable) basis.
    """
    red, pivots = rref(m)
    cols = len(m[0]) if m else 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class SolutionSet:
    """Result of an affine solve: kind is 'empty', 'unique' or 'family'."""

    kind: str
    point: tuple | None = None
    basis: tuple = ()

    @property
    def is_empty(self):
        return self.kind == "empty"


def solve_affine(a, b) -> SolutionSet:
    """Exact solution set of a x = b."""
    assert len(a) == len(b)
    cols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bv)] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return SolutionSet("empty")
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    ker = kernel_basis(a if a else [[Fraction(0)] * cols])
    if not ker:
        return SolutionSet("unique", tuple(x))
    return SolutionSet("family", tuple(x), tuple(tuple(v) for v in ker))


def determinant(m) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    assert all(len(row) == n for row in m), "determinant needs a square matrix"
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def sign_det(m) -> int:
    d = determinant(m)
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class SmithForm:
    """U a V = diag(d) with U, V unimodular and d_i | d_{i+1}."""

    d: tuple
    left: tuple  # U, rows x rows
    right: tuple  # V, cols x cols


def smith_normal_form(a) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pivoting picks the smallest nonzero absolute value with a deterministic
    (row, col) tie-break, which keeps coefficient growth small and makes the
    transforms reproducible.
    """
    m = [[int(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = int_identity(rows)
    v = int_identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in m:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(m[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        # clear row and column t; restart if a remainder reduces the pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility towards later entries
        pivot = m[t][t]
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % pivot:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    d = [m[i][i] for i in range(limit)]
    for i in range(len(d)):
        if d[i] < 0:
            d[i] = -d[i]
            for j in range(rows):
                u[i][j] = -u[i][j]
    while d and d[-1] == 0:
        d.pop()
    return SmithForm(tuple(d), tuple(map(tuple, u)), tuple(map(tuple, v)))


def _int_mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def smith_reconstructs(a, snf: SmithForm) -> bool:
    """Check U a V == diag(d) entrywise."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    prod = _int_mat_mul(_int_mat_mul([list(r) for r in snf.left], a),
                        [list(r) for r in snf.right])
    for i in range(rows):
        for j in range(cols):
            want = snf.d[i] if i == j and i < len(snf.d) else 0
            if prod[i][j] != want:
                return False
    return True


def int_det_sign(m) -> int:
    return sign_det([[Fraction(x) for x in row] for row in m])


def int_matrix_inverse(m):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    aug = [a[i] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    assert pivots == tuple(range(n)), "matrix is singular"
    inv = [[red[i][n + j] for j in range(n)] for i in range(n)]
    out = [[int(x) for x in row] for row in inv]
    assert all(Fraction(o) == x for ro, rx in zip(out, inv) for o, x in zip(ro, rx))
    return out


def integer_kernel_basis(m):
    """Basis of the saturated integer kernel lattice of an integer matrix.

    With U m V = D of rank r, the last cols - r columns of V span ker(m)
    over Z.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    snf = smith_normal_form(m)
    r = len(snf.d)
    return [[snf.right[i][j] for i in range(cols)] for j in range(r, cols)]


def homology(d_low, d_high):
    """H = ker(d_low) / im(d_high) for integer boundary matrices d_low
    (this degree down) and d_high (degree above into this one)."""
    kernel = integer_kernel_basis(d_low)
    if not kernel:
        return AbelianGroup(0, (), ())
    kt = transpose([[Fraction(x) for x in row] for row in kernel])
    relations = []
    cols_high = len(d_high[0]) if d_high else 0
    for j in range(cols_high):
        img = [Fraction(d_high[i][j]) for i in range(len(d_high))]
        sol = solve_affine(kt, img)
        assert sol.kind == "unique", "image not inside the kernel lattice"
        assert all(x.denominator == 1 for x in sol.point)
        relations.append([int(x) for x in sol.point])
    return abelian_quotient(len(kernel), relations)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum Z/torsion_i.

    ``projector`` maps generator coordinates to quotient coordinates: first
    the torsion coordinates (each taken modulo its entry in ``torsion``),
    then the free coordinates.
    """

    free_rank: int
    torsion: tuple
    projector: tuple  # (len(torsion)+free_rank) x generator_count

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def reduce(self, vector):
        """Quotient coordinates of an integer vector on the generators."""
        coords = [sum(r * x for r, x in zip(row, vector)) for row in self.projector]
        out = []
        for i, t in enumerate(self.torsion):
            out.append(coords[i] % t)
        out.extend(coords[len(self.torsion):])
        return tuple(out)

    def is_zero(self, vector) -> bool:
        return all(c == 0 for c in self.reduce(vector))

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + ["Z_%d" % t for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelian_quotient(generator_count: int, relations: Sequence[Sequence[int]]) -> AbelianGroup:
    """Present Z^generator_count modulo the row span of ``relations``.

    With U R V = D, the change of basis x -> x V carries the relation lattice
    onto the diagonal lattice, so the quotient splits into cyclic factors.
    Unit factors are dropped; the projector keeps the torsion rows first.
    """
    rels = [list(map(int, r)) for r in relations]
    if not rels:
        return AbelianGroup(generator_count, (),
                            tuple(map(tuple, int_identity(generator_count))))
    assert all(len(r) == generator_count for r in rels)
    snf = smith_normal_form(rels)
    v = [list(r) for r in snf.right]
    # coordinates in the adapted basis: x V (as a row vector)
    proj_rows = []
    torsion = []
    for i, di in enumerate(snf.d):
        if di == 1:
            continue
        torsion.append(di)
        proj_rows.append(tuple(v[g][i] for g in range(generator_count)))
    free = generator_count - len(snf.d)
    for i in range(len(snf.d), generator_count):
        proj_rows.append(tuple(v[g][i] for g in range(generator_count)))
    return AbelianGroup(free, tuple(torsion), tuple(proj_rows))
