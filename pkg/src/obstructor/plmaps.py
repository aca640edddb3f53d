"""Equivariant piecewise-affine maps S^3 -> W_n and exact simplex-subspace
intersections.

A map is determined by the image of the base vertex t; every other vertex
image is the group translate of the seed.  Image simplices are affine images
of the abstract 3-simplices, so intersections with linear subspaces reduce to
exact rational affine systems in the barycentric coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import arrangements, groups, linalg, spheres
from .arrangements import Arrangement, Subspace
from .groups import GroupElement, GroupSpec
from .spheres import SimplicialSphere


class GenericityError(Exception):
    """A probe or sweep ran into a degenerate configuration."""


# ---------------------------------------------------------------------------
# orientation of W_n

def standard_w_basis(n: int):
    """The ordered orientation basis (e_1 - e_2, ..., e_{n-1} - e_n)."""
    rows = []
    for k in range(n - 1):
        row = [Fraction(0)] * n
        row[k] = Fraction(1)
        row[k + 1] = Fraction(-1)
        rows.append(row)
    return rows


def w_coordinates(v, wbasis=None):
    """Coordinates of a sum-zero vector in the chosen basis of W_n."""
    n = len(v)
    if wbasis is None:
        # partial sums invert the standard difference basis
        out = []
        acc = Fraction(0)
        for x in v[:-1]:
            acc += Fraction(x)
            out.append(acc)
        return out
    sol = linalg.solve_affine(linalg.transpose(wbasis), list(v))
    assert sol.kind == "unique"
    return list(sol.point)


# ---------------------------------------------------------------------------
# the map


@dataclass(frozen=True)
class PLMap:
    spec: GroupSpec
    target_dim: int
    seed_image: tuple

    def vertex_image(self, v: GroupElement):
        g = spheres.vertex_decomposition(v)
        return tuple(groups.apply_to_vector(self.spec, g, self.seed_image))

    def simplex_image(self, vertices):
        return [self.vertex_image(v) for v in vertices]


def build_equivariant_map(seed, spec: GroupSpec, sphere: SimplicialSphere) -> PLMap:
    seed = tuple(Fraction(x) for x in seed)
    if len(seed) != sphere.n:
        raise ValueError("seed has wrong dimension")
    if sum(seed) != 0:
        raise ValueError("seed must lie in W_n (coordinates summing to 0)")
    return PLMap(spec, sphere.n, seed)


def fan_seed(n: int):
    """u_1 = e_1 - (1/n) * sum(e_i), the seed of the fan scenario map."""
    return tuple(Fraction(n - 1, n) if i == 0 else Fraction(-1, n)
                 for i in range(n))


# ---------------------------------------------------------------------------
# exact intersection of affine simplices with subspaces


@dataclass(frozen=True)
class IntersectionRecord:
    simplex: tuple  # (p, q)
    barycentric: tuple  # in sigma vertex order (a_p, a_{p+1}, b_q, b_{q+1})
    point: tuple
    stratum: tuple  # indices of containing maximal elements
    transversal: bool
    kind: str  # "interior", "boundary" or "family"
    sign: int = 0

    @property
    def broken(self):
        return len(self.stratum) >= 2

    def printed_barycentric(self):
        """Table layout lists the b-vertices before the a-vertices."""
        l1, l2, l3, l4 = self.barycentric
        return (l3, l4, l1, l2)


def _barycentric_system(points, equations):
    """Rows of the affine system: sum(lam) = 1 and each equation annihilates
    the combination point."""
    k = len(points)
    amat = [[Fraction(1)] * k]
    bvec = [Fraction(1)]
    for row in equations:
        amat.append([linalg.dot(row, p) for p in points])
        bvec.append(Fraction(0))
    return amat, bvec


def _fm_feasible(ineqs, nvars):
    """Fourier-Motzkin feasibility of {mu : sum c_i mu_i + c0 >= 0}.

    Each inequality is (coeffs tuple, constant).  Intended for the tiny
    systems arising from barycentric constraints (<= 3 variables).
    """
    for v in range(nvars - 1, -1, -1):
        lower, upper, rest = [], [], []
        for coeffs, c0 in ineqs:
            cv = coeffs[v]
            if cv > 0:
                lower.append((coeffs, c0))
            elif cv < 0:
                upper.append((coeffs, c0))
            else:
                rest.append((coeffs[:v], c0))
        for lc, l0 in lower:
            for uc, u0 in upper:
                # eliminate mu_v between lc (lower bound) and uc (upper)
                f = -uc[v]
                g = lc[v]
                coeffs = tuple(g * uc[i] + f * lc[i] for i in range(v))
                rest.append((coeffs, g * u0 + f * l0))
        ineqs = rest
    return all(c0 >= 0 for _, c0 in ineqs)


def _family_meets_simplex(point, basis, k):
    """Does the affine family point + span(basis) meet {lam >= 0} in R^k?"""
    ineqs = []
    for i in range(k):
        ineqs.append((tuple(b[i] for b in basis), point[i]))
    return _fm_feasible(ineqs, len(basis))


def intersect_simplex_with_subspace(m: PLMap, sigma_vertices, v: Subspace,
                                    simplex_id=None):
    """All intersection points of the image simplex with the subspace.

    Returns IntersectionRecords (stratum not yet resolved, set to ()); a
    positive-dimensional intersection is reported as one record of kind
    "family" with empty barycentric data.
    """
    points = m.simplex_image(sigma_vertices)
    amat, bvec = _barycentric_system(points, v.equations)
    sol = linalg.solve_affine(amat, bvec)
    if sol.kind == "empty":
        return []
    if sol.kind == "family":
        if _family_meets_simplex(sol.point, sol.basis, len(points)):
            return [IntersectionRecord(simplex_id, (), (), (), False, "family")]
        return []
    lam = sol.point
    if any(x < 0 for x in lam):
        return []
    pt = tuple(sum(lam[i] * points[i][c] for i in range(len(points)))
               for c in range(m.target_dim))
    kind = "interior" if all(x > 0 for x in lam) else "boundary"
    return [IntersectionRecord(simplex_id, tuple(lam), pt, (), False, kind)]


def simplex_contains_point(points, y) -> bool:
    """Is y in the closed affine simplex with the given vertex points?"""
    k = len(points)
    amat = [[Fraction(1)] * k]
    bvec = [Fraction(1)]
    for c in range(len(y)):
        amat.append([Fraction(p[c]) for p in points])
        bvec.append(Fraction(y[c]))
    sol = linalg.solve_affine(amat, bvec)
    if sol.kind == "empty":
        return False
    if sol.kind == "unique":
        return all(x >= 0 for x in sol.point)
    return _family_meets_simplex(sol.point, sol.basis, k)


def face_meets_subspace(m: PLMap, face_vertices, v: Subspace) -> bool:
    """Does the closed image of a face meet the subspace?  Exact."""
    points = m.simplex_image(face_vertices)
    amat, bvec = _barycentric_system(points, v.equations)
    sol = linalg.solve_affine(amat, bvec)
    if sol.kind == "empty":
        return False
    if sol.kind == "unique":
        return all(x >= 0 for x in sol.point)
    return _family_meets_simplex(sol.point, sol.basis, len(points))


# ---------------------------------------------------------------------------
# transversality and signs


def tangent_edges(points):
    p0 = points[0]
    return [[Fraction(x) - Fraction(y) for x, y in zip(p, p0)]
            for p in points[1:]]


def is_transversal(m: PLMap, sigma_vertices, v: Subspace, wbasis=None) -> bool:
    """Image 3-space plus the subspace spans W_n."""
    rows = [w_coordinates(e, wbasis) for e in tangent_edges(m.simplex_image(sigma_vertices))]
    rows += [w_coordinates(list(b), wbasis) for b in v.oriented_basis]
    return linalg.rank(rows) == m.target_dim - 1


def intersection_sign(m: PLMap, sigma_vertices, v: Subspace, wbasis=None) -> int:
    """Sign of det [image edge vectors | oriented basis of v] in W_n
    coordinates.  Zero means non-transversal."""
    rows = [w_coordinates(e, wbasis) for e in tangent_edges(m.simplex_image(sigma_vertices))]
    rows += [w_coordinates(list(b), wbasis) for b in v.oriented_basis]
    if len(rows) != m.target_dim - 1:
        raise ValueError("subspace codimension does not match a point hit")
    return linalg.sign_det(rows)


# ---------------------------------------------------------------------------
# record enumeration over the top cell and general position


def enumerate_records(m: PLMap, sphere: SimplicialSphere, arr: Arrangement,
                      cell_simplices):
    """Deduplicated records on the carrier simplices of the top cell.

    One record per (simplex, point), with stratum = all containing maximal
    elements, ordered by (cell position, point)."""
    out = []
    for p, q, _sign in cell_simplices:
        vertices = sphere.sigma(p, q)
        by_point = {}
        families = []
        for idx in range(arr.size):
            for rec in intersect_simplex_with_subspace(
                    m, vertices, arr.maximal[idx], (p, q)):
                if rec.kind == "family":
                    families.append(rec)
                else:
                    by_point.setdefault(rec.point, rec)
        for pt in sorted(by_point):
            rec = by_point[pt]
            stratum = arrangements.stratum_of(list(pt), arr)
            transversal = all(
                is_transversal(m, vertices, arr.maximal[i]) for i in stratum)
            out.append(IntersectionRecord(rec.simplex, rec.barycentric, pt,
                                          stratum, transversal, rec.kind))
        out.extend(families)
    return out


@dataclass(frozen=True)
class GeneralPositionReport:
    condition_a: tuple  # (passed, counterexample description or None)
    condition_b: tuple
    condition_c: tuple
    condition_d: tuple

    @property
    def passed(self):
        return all(c[0] for c in
                   (self.condition_a, self.condition_b,
                    self.condition_c, self.condition_d))

    def failures(self):
        out = []
        for name, cond in (("A", self.condition_a), ("B", self.condition_b),
                           ("C", self.condition_c), ("D", self.condition_d)):
            if not cond[0]:
                out.append("condition %s: %s" % (name, cond[1]))
        return out


def general_position_check(m: PLMap, sphere: SimplicialSphere,
                           arr: Arrangement, cell_simplices,
                           records=None) -> GeneralPositionReport:
    """Conditions: (A) 2-skeleton misses the arrangement, (B) finitely many
    top-cell hits, (C) every hit transversal, (D) hits confined to strata of
    codimension <= 1 inside each containing element.

    By equivariance the carrier simplices of the top cell and their faces
    cover every orbit, so checking them decides the conditions globally.
    """
    cond_a = (True, None)
    seen_faces = set()
    for p, q, _s in cell_simplices:
        vertices = sphere.sigma(p, q)
        for i in range(4):
            face = vertices[:i] + vertices[i + 1:]
            key, _ = spheres.oriented(face)
            if key in seen_faces:
                continue
            seen_faces.add(key)
            for idx in range(arr.size):
                if face_meets_subspace(m, face, arr.maximal[idx]):
                    cond_a = (False, "2-face %s of sigma(%d,%d) meets element %d"
                              % ([spheres.vertex_label(x) for x in face], p, q, idx))
                    break
            if not cond_a[0]:
                break
        if not cond_a[0]:
            break
    if records is None:
        records = enumerate_records(m, sphere, arr, cell_simplices)
    fams = [r for r in records if r.kind == "family"]
    cond_b = (not fams,
              None if not fams else "positive-dimensional hit in simplex %s"
              % (fams[0].simplex,))
    bad_c = [r for r in records if r.kind != "family" and not r.transversal]
    cond_c = (not bad_c,
              None if not bad_c else "non-transversal hit at (%s)"
              % ", ".join(linalg.frac_str(x) for x in bad_c[0].point))
    cond_d = (True, None)
    for r in records:
        if r.kind == "family":
            continue
        members = [arr.maximal[i] for i in r.stratum]
        stratum_space = members[0]
        for s in members[1:]:
            stratum_space = arrangements.intersect(stratum_space, s)
        for s in members:
            if s.dim - stratum_space.dim > 1:
                cond_d = (False,
                          "hit at (%s) lies in a stratum of codimension %d"
                          % (", ".join(linalg.frac_str(x) for x in r.point),
                             s.dim - stratum_space.dim))
    return GeneralPositionReport(cond_a, cond_b, cond_c, cond_d)


# ---------------------------------------------------------------------------
# translated-simplex probes for broken point classes


def default_probe_direction(n: int):
    """Deterministic probe direction: (1, t, t^2, ...) projected to W_n."""
    t = Fraction(1, 3)
    raw = [t ** i for i in range(n)]
    mean = sum(raw) / n
    return [x - mean for x in raw]


def shrink_simplex_points(points, center_lam, tau):
    """Vertices of the simplex scaled by tau towards the interior point with
    barycentric coordinates center_lam."""
    dim = len(points[0])
    center = [sum(Fraction(center_lam[i]) * points[i][c]
                  for i in range(len(points))) for c in range(dim)]
    return [tuple(center[c] + tau * (Fraction(p[c]) - center[c])
                  for c in range(dim)) for p in points]


def sweep_is_clear(points, delta, subspaces) -> bool:
    """No translated 2-face of the image simplex touches any subspace along
    the ray tau * delta, tau in (0, 1].  Certifies that probe counts are
    stable under shrinking the translation."""
    for i in range(4):
        face = points[:i] + points[i + 1:]
        for v in subspaces:
            # unknowns: lam_1..lam_3, tau
            amat = [[Fraction(1), Fraction(1), Fraction(1), Fraction(0)]]
            bvec = [Fraction(1)]
            for row in v.equations:
                amat.append([linalg.dot(row, p) for p in face]
                            + [linalg.dot(row, delta)])
                bvec.append(Fraction(0))
            sol = linalg.solve_affine(amat, bvec)
            if sol.kind == "empty":
                continue
            if sol.kind == "family":
                return False  # conservative: shrink and retry
            lam = sol.point
            if all(x >= 0 for x in lam[:3]) and 0 < lam[3] <= 1:
                return False
    return True


def translate_probe(image_points, delta, queries, wbasis=None):
    """Signed hit counts of the translated image simplex against query sets.

    Each query is (subspace, side_functional | None, side | None): the
    subspace intersected with {x : side * <w, x> > 0} when a side functional
    is given.  Hits must be interior, transversal and off the side wall;
    otherwise GenericityError asks the caller to shrink delta.
    """
    points = [tuple(Fraction(c) + Fraction(d) for c, d in zip(p, delta))
              for p in image_points]
    edge_rows = [w_coordinates(e, wbasis) for e in tangent_edges(points)]
    counts = []
    for v, w, side in queries:
        amat, bvec = _barycentric_system(points, v.equations)
        sol = linalg.solve_affine(amat, bvec)
        if sol.kind == "empty":
            counts.append(0)
            continue
        if sol.kind == "family":
            raise GenericityError("positive-dimensional translated hit")
        lam = sol.point
        if any(x < 0 for x in lam):
            counts.append(0)
            continue
        if any(x == 0 for x in lam):
            raise GenericityError("translated hit on the simplex boundary")
        pt = [sum(lam[i] * points[i][c] for i in range(4))
              for c in range(len(points[0]))]
        if w is not None:
            value = linalg.dot(w, pt)
            if value == 0:
                raise GenericityError("translated hit on a side wall")
            if (value > 0) != (side > 0):
                counts.append(0)
                continue
        rows = edge_rows + [w_coordinates(list(b), wbasis)
                            for b in v.oriented_basis]
        s = linalg.sign_det(rows)
        if s == 0:
            raise GenericityError("non-transversal translated hit")
        counts.append(s)
    return counts
