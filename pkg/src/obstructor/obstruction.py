"""Obstruction cocycle assembly and evaluation.

The cocycle on the economic top cell is a signed sum of point classes, one
per intersection record.  Two evaluators push it into coinvariants of the
twisted dual module: the top-stratum evaluator sums signs per maximal
element, the broken-class evaluator computes linking numbers of a translated
top cell against glued half-piece cycles.  The verdict is nonzero iff the
reduced class survives in the quotient.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import arrangements, groups, linalg, plmaps
from .arrangements import Arrangement, Subspace
from .groups import GroupSpec
from .plmaps import GenericityError, IntersectionRecord, PLMap
from .spheres import SimplicialSphere

OBSTRUCTION_NONZERO = "ObstructionNonzero"
OBSTRUCTION_ZERO = "ObstructionZero"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PointClass:
    stratum: tuple
    sign: int  # 0 when broken (carried symbolically)
    broken: bool
    carrier: IntersectionRecord


@dataclass(frozen=True)
class Cocycle:
    terms: tuple

    @property
    def is_zero(self):
        return not self.terms


@dataclass(frozen=True)
class CoinvariantsResult:
    group: linalg.AbelianGroup
    class_coordinates: tuple
    verdict: str
    diagnosis: str | None = None

    def to_json(self):
        return {
            "group": {"freeRank": self.group.free_rank,
                      "torsion": list(self.group.torsion)},
            "classCoordinates": [int(x) for x in self.class_coordinates],
            "verdict": self.verdict,
            **({"diagnosis": self.diagnosis} if self.diagnosis else {}),
        }


def assemble_cocycle(records, cell_simplices, m: PLMap,
                     sphere: SimplicialSphere, arr: Arrangement,
                     wbasis=None) -> Cocycle:
    """One point class per record; signs resolved for single-stratum terms,
    carried symbolically for broken ones."""
    cell_signs = {(p, q): s for p, q, s in cell_simplices}
    terms = []
    for rec in records:
        if rec.kind != "interior" or not rec.transversal:
            raise ValueError("cocycle assembly requires a general position map")
        if rec.broken:
            terms.append(PointClass(rec.stratum, 0, True, rec))
        else:
            vertices = sphere.sigma(*rec.simplex)
            s = cell_signs[rec.simplex] * plmaps.intersection_sign(
                m, vertices, arr.maximal[rec.stratum[0]], wbasis)
            terms.append(PointClass(rec.stratum, s, False, rec))
    return Cocycle(tuple(terms))


# ---------------------------------------------------------------------------
# the top-stratum (chi*) evaluator


def chi_evaluate(c: Cocycle, arr: Arrangement):
    """Coordinate at a maximal element = sum of signs of terms living there."""
    coords = [0] * arr.size
    for term in c.terms:
        if term.broken:
            raise ValueError("broken term present; use the broken evaluator")
        coords[term.stratum[0]] += term.sign
    return coords


def action_matrix(arr: Arrangement, spec: GroupSpec, g):
    """Matrix of g on the free module over the oriented maximal elements:
    column i gives the image of generator i."""
    size = arr.size
    mat = [[0] * size for _ in range(size)]
    for i in range(size):
        target_sub = arrangements.act(spec, g, arr.maximal[i])
        k = arr.index_of(target_sub)
        sign = arrangements.orientation_transport_sign(
            spec, g, arr.maximal[i], arr.maximal[k])
        mat[k][i] = sign
    return mat


def dual_action_matrix(arr: Arrangement, spec: GroupSpec, g, n: int):
    """The twisted action on Hom: (g * f)(x) = det(g) f(g^-1 x)."""
    a_inv = action_matrix(arr, spec, groups.inverse(spec, g))
    d = groups.det_on_w(spec, g, n)
    return [[d * a_inv[j][i] for j in range(arr.size)]
            for i in range(arr.size)]


def _coinvariant_relations(size, dual_matrices):
    """Relation rows phi - g*phi: the columns of (I - P(g))."""
    relations = []
    for p in dual_matrices:
        for k in range(size):
            relations.append([(1 if i == k else 0) - p[i][k]
                              for i in range(size)])
    return relations


def hom_coinvariants(arr: Arrangement, spec: GroupSpec, n: int):
    """Coinvariants of the twisted dual module on the maximal elements,
    presented by the generator relations for eps and j."""
    eps = groups.element(spec, 1)
    j = groups.element(spec, 0, 1)
    mats = [dual_action_matrix(arr, spec, g, n) for g in (eps, j)]
    return linalg.abelian_quotient(arr.size, _coinvariant_relations(arr.size, mats))


def chi_star_result(c: Cocycle, arr: Arrangement, spec: GroupSpec,
                    n: int) -> CoinvariantsResult:
    coords = chi_evaluate(c, arr)
    group = hom_coinvariants(arr, spec, n)
    reduced = group.reduce(coords)
    verdict = OBSTRUCTION_ZERO if all(x == 0 for x in reduced) else OBSTRUCTION_NONZERO
    return CoinvariantsResult(group, tuple(reduced), verdict)


# ---------------------------------------------------------------------------
# the broken-class evaluator

PIECES = (("l", 1), ("l", -1), ("j", 1), ("j", -1))


@dataclass(frozen=True)
class BrokenPair:
    l_index: int
    j_index: int
    middle: Subspace
    side_l: tuple  # functional cutting the l element along the middle
    side_j: tuple
    zeta: tuple  # boundary signs of the four half-pieces
    glue: tuple  # piece vector of the glued cycle t


@dataclass(frozen=True)
class BrokenModule:
    spec: GroupSpec
    arr: Arrangement
    pairs: tuple
    element_to_pair: dict  # arr index -> (pair index, "l" | "j")

    @property
    def n(self):
        return len(self.pairs)

    def generator_count(self):
        return 3 * self.n

    def generator_vector(self, pair_index, kind):
        pair = self.pairs[pair_index]
        if kind == "h":
            return (1, 1, 0, 0)
        if kind == "hp":
            return (0, 0, 1, 1)
        return pair.glue

    def piece_subspace(self, pair_index, piece):
        pair = self.pairs[pair_index]
        kind, side = PIECES[piece]
        idx = pair.l_index if kind == "l" else pair.j_index
        w = pair.side_l if kind == "l" else pair.side_j
        return self.arr.maximal[idx], w, side


def _side_functional(own: Subspace, partner: Subspace):
    """A partner equation that cuts ``own`` along the common intersection."""
    for row in partner.equations:
        if any(linalg.dot(row, b) != 0 for b in own.oriented_basis):
            return row
    raise ValueError("elements do not cut each other")


def _outward_vector(s: Subspace, w, side):
    for b in s.oriented_basis:
        v = linalg.dot(w, b)
        if v != 0:
            return b if (v > 0) == (side > 0) else tuple(-x for x in b)
    raise ValueError("side functional vanishes on the subspace")


def _boundary_sign(s: Subspace, w, side, middle: Subspace) -> int:
    """Orientation of the half-piece boundary against the fixed orientation
    of the middle wall: outward-vector-first convention."""
    rows = [list(_outward_vector(s, w, side))]
    rows += [list(b) for b in middle.oriented_basis]
    coords = []
    smat = linalg.transpose([list(b) for b in s.oriented_basis])
    for r in rows:
        sol = linalg.solve_affine(smat, r)
        assert sol.kind == "unique"
        coords.append(list(sol.point))
    return linalg.sign_det(coords)


def build_broken_module(arr: Arrangement) -> BrokenModule:
    """Module on generators {eps^i L1}, {eps^i jL1}, {eps^i glued cycle},
    for the orbit arrangement of a seed L1 with free orbit of size 2n."""
    spec = arr.spec
    l1 = arr.seed
    n = spec.n
    if arr.size != 2 * n:
        raise ValueError("broken orbit is degenerate (size %d)" % arr.size)
    eps = groups.element(spec, 1)
    j = groups.element(spec, 0, 1)
    pairs = []
    element_to_pair = {}
    current_l = l1
    current_j = arrangements.act(spec, j, l1)
    for i in range(n):
        li = arr.index_of(current_l)
        ji = arr.index_of(current_j)
        sl = arr.maximal[li]
        sj = arr.maximal[ji]
        mid = arrangements.intersect(sl, sj)
        if mid.dim != sl.dim - 1:
            raise ValueError("pair intersection is not codimension 1")
        wl = _side_functional(sl, sj)
        wj = _side_functional(sj, sl)
        zeta = tuple(_boundary_sign(sl if k == "l" else sj,
                                    wl if k == "l" else wj, sd, mid)
                     for k, sd in PIECES)
        # glue the + piece of l with a piece of j so boundaries cancel
        c = -zeta[0] * zeta[2]  # zeta values are units
        glue = (1, 0, c, 0)
        assert zeta[0] + c * zeta[2] == 0
        pairs.append(BrokenPair(li, ji, mid, tuple(wl), tuple(wj), zeta, glue))
        element_to_pair[li] = (i, "l")
        element_to_pair[ji] = (i, "j")
        current_l = arrangements.act(spec, eps, current_l)
        current_j = arrangements.act(spec, eps, current_j)
    if len(element_to_pair) != 2 * n:
        raise ValueError("pair structure does not cover the orbit")
    return BrokenModule(spec, arr, tuple(pairs), element_to_pair)


def _act_on_piece(module: BrokenModule, g, pair_index, piece):
    """Image of one half-piece under g: (pair, piece, transport sign)."""
    spec = module.spec
    pair = module.pairs[pair_index]
    kind, side = PIECES[piece]
    src_idx = pair.l_index if kind == "l" else pair.j_index
    src = module.arr.maximal[src_idx]
    w = pair.side_l if kind == "l" else pair.side_j
    target_sub = arrangements.act(spec, g, src)
    tgt_idx = module.arr.index_of(target_sub)
    tgt_pair, tgt_kind = module.element_to_pair[tgt_idx]
    tgt = module.arr.maximal[tgt_idx]
    transport = arrangements.orientation_transport_sign(spec, g, src, tgt)
    witness = _outward_vector(src, w, side)
    gw = groups.apply_to_vector(spec, g, list(witness))
    tp = module.pairs[tgt_pair]
    tw = tp.side_l if tgt_kind == "l" else tp.side_j
    value = linalg.dot(tw, gw)
    if value == 0:
        raise ValueError("image witness landed on the middle wall")
    tgt_side = 1 if value > 0 else -1
    tgt_piece = PIECES.index((tgt_kind, tgt_side))
    return tgt_pair, tgt_piece, transport


def _decompose_cycle(module: BrokenModule, pair_index, vec):
    """Integer coordinates of a half-piece cycle in the (h, hp, t) basis."""
    basis = [module.generator_vector(pair_index, k) for k in ("h", "hp", "t")]
    amat = [[Fraction(basis[c][r]) for c in range(3)] for r in range(4)]
    sol = linalg.solve_affine(amat, [Fraction(x) for x in vec])
    if sol.kind != "unique" or any(x.denominator != 1 for x in sol.point):
        raise ValueError("cycle does not decompose integrally")
    return [int(x) for x in sol.point]


def broken_action_matrix(module: BrokenModule, g):
    """Matrix of g on the 3n generators (h_0..h_{n-1}, hp_*, t_*)."""
    n = module.n
    size = 3 * n
    mat = [[0] * size for _ in range(size)]
    for pair_index in range(n):
        for col_block, kind in enumerate(("h", "hp", "t")):
            vec = module.generator_vector(pair_index, kind)
            images = {}
            target_pair = None
            for piece, coeff in enumerate(vec):
                if coeff == 0:
                    continue
                tp, tpiece, transport = _act_on_piece(module, g, pair_index, piece)
                if target_pair is None:
                    target_pair = tp
                elif target_pair != tp:
                    raise ValueError("generator image split across pairs")
                images[tpiece] = images.get(tpiece, 0) + coeff * transport
            out = [images.get(p, 0) for p in range(4)]
            zeta = module.pairs[target_pair].zeta
            if sum(out[p] * zeta[p] for p in range(4)) != 0:
                raise ValueError("generator image is not a cycle")
            coords = _decompose_cycle(module, target_pair, out)
            col = col_block * n + pair_index
            for row_block in range(3):
                mat[row_block * n + target_pair][col] = coords[row_block]
    return mat


def broken_dual_matrices(module: BrokenModule, n_ambient: int):
    spec = module.spec
    eps = groups.element(spec, 1)
    j = groups.element(spec, 0, 1)
    out = []
    for g in (eps, j):
        a_inv = broken_action_matrix(module, groups.inverse(spec, g))
        d = groups.det_on_w(spec, g, n_ambient)
        size = module.generator_count()
        out.append([[d * a_inv[c][r] for c in range(size)]
                    for r in range(size)])
    return out


def j_preserves_wall_coorientation(module: BrokenModule, n_ambient: int) -> bool:
    """Does j fix the orientation of the orthogonal complement of the
    pair-0 wall L1 and jL1 intersection?"""
    spec = module.spec
    j = groups.element(spec, 0, 1)
    mid = module.pairs[0].middle
    rows = [list(r) for r in mid.equations]
    mat = arrangements.action_matrix_on_span(spec, j, rows)
    return linalg.sign_det(mat) > 0


def _module_queries(module: BrokenModule):
    queries = []
    for pair_index in range(module.n):
        for piece in range(4):
            sub, w, side = module.piece_subspace(pair_index, piece)
            queries.append((sub, w, side))
    return queries


def _linking_phi(signed_simplices, module: BrokenModule, wbasis=None,
                 direction=None, max_attempts=40):
    """Hom vector of a signed union of image 3-simplices against every
    generator cycle by linking counts of the translated simplices.

    The translation shrinks geometrically until the swept 2-skeleton provably
    misses the arrangement and every hit is generic; the resulting counts are
    then independent of the translation size.
    """
    n_amb = len(signed_simplices[0][0][0])
    base = direction if direction is not None else plmaps.default_probe_direction(n_amb)
    queries = _module_queries(module)
    scale = Fraction(1)
    for _attempt in range(max_attempts):
        delta = [Fraction(x) * scale for x in base]
        try:
            piece_counts = [0] * len(queries)
            for points, weight in signed_simplices:
                if not plmaps.sweep_is_clear(points, delta, module.arr.maximal):
                    raise GenericityError("swept 2-face crosses the arrangement")
                counts = plmaps.translate_probe(points, delta, queries, wbasis)
                for i, c in enumerate(counts):
                    piece_counts[i] += weight * c
            break
        except GenericityError:
            scale /= 4
    else:
        raise GenericityError("no generic translation found")
    phi = [0] * module.generator_count()
    for pair_index in range(module.n):
        base_q = 4 * pair_index
        for block, kind in enumerate(("h", "hp", "t")):
            vec = module.generator_vector(pair_index, kind)
            phi[block * module.n + pair_index] = sum(
                vec[p] * piece_counts[base_q + p] for p in range(4))
    return phi


def probe_hom_vector(m: PLMap, sphere: SimplicialSphere, cell_simplices,
                     module: BrokenModule, wbasis=None, direction=None,
                     max_attempts=40):
    """Evaluate the whole translated top cell against every generator."""
    signed = [(m.simplex_image(sphere.sigma(p, q)), cell_sign)
              for p, q, cell_sign in cell_simplices]
    return _linking_phi(signed, module, wbasis, direction, max_attempts)


def point_class_vector(m: PLMap, sphere: SimplicialSphere,
                       rec: IntersectionRecord, module: BrokenModule,
                       wbasis=None, direction=None, exclude=()):
    """Hom vector of the point class of a single record, isolated by
    shrinking its carrier simplex around the intersection point until every
    other intersection point (``exclude``) falls outside."""
    points = m.simplex_image(sphere.sigma(*rec.simplex))
    tau = Fraction(1, 4)
    for _ in range(40):
        shrunk = plmaps.shrink_simplex_points(points, rec.barycentric, tau)
        if all(not plmaps.simplex_contains_point(shrunk, other)
               for other in exclude):
            break
        tau /= 4
    else:
        raise GenericityError("could not isolate the record point")
    return _linking_phi([(shrunk, 1)], module, wbasis, direction)


def broken_class_evaluate(c: Cocycle, module: BrokenModule, m: PLMap,
                          sphere: SimplicialSphere, cell_simplices,
                          wbasis=None, direction=None) -> CoinvariantsResult:
    """Reduce a cocycle into coinvariants of the glued-cycle module.

    Each term is evaluated separately: its carrier simplex is shrunk around
    the intersection point until the other hits on the same simplex fall
    outside, and the isolated point class is read off by translated linking
    counts.  Works for broken (wall) terms and top-stratum terms alike; the
    sum over all records of a map equals the linking vector of the whole
    top cell."""
    trivial = linalg.abelian_quotient(module.generator_count(), [])
    for term in c.terms:
        if not term.broken:
            continue
        if len(term.stratum) != 2:
            return CoinvariantsResult(
                trivial, (), INCONCLUSIVE,
                "term with stratum size %d; broken evaluator needs pairs"
                % len(term.stratum))
        pair_kinds = {module.element_to_pair.get(i, (None, None))[0]
                      for i in term.stratum}
        if None in pair_kinds or len(pair_kinds) != 1:
            return CoinvariantsResult(trivial, (), INCONCLUSIVE,
                                      "term stratum is not one wall pair")
    if not j_preserves_wall_coorientation(module, m.target_dim):
        return CoinvariantsResult(trivial, (), INCONCLUSIVE,
                                  "j reverses the wall coorientation")
    group = linalg.abelian_quotient(
        module.generator_count(),
        _coinvariant_relations(module.generator_count(),
                               broken_dual_matrices(module, m.target_dim)))
    if c.is_zero:
        return CoinvariantsResult(group, tuple([0] * len(group.projector)),
                                  OBSTRUCTION_ZERO)
    cell_signs = {(p, q): s for p, q, s in cell_simplices}
    phi = [0] * module.generator_count()
    try:
        for term in c.terms:
            rec = term.carrier
            siblings = tuple(
                other.carrier.point for other in c.terms
                if other is not term and other.carrier.simplex == rec.simplex)
            vec = point_class_vector(m, sphere, rec, module, wbasis,
                                     direction, exclude=siblings)
            weight = cell_signs[rec.simplex]
            for i, x in enumerate(vec):
                phi[i] += weight * x
    except GenericityError as exc:
        return CoinvariantsResult(trivial, (), INCONCLUSIVE, str(exc))
    reduced = group.reduce(phi)
    verdict = OBSTRUCTION_ZERO if all(x == 0 for x in reduced) else OBSTRUCTION_NONZERO
    return CoinvariantsResult(group, tuple(reduced), verdict)


# ---------------------------------------------------------------------------
# evaluator selection and verdict wording


def arrangement_has_walls(arr: Arrangement) -> bool:
    """Do two distinct maximal elements meet in codimension one?  Then the
    top homology of the union is larger than the element count suggests and
    point classes on the shared walls need the glued-cycle module."""
    for i in range(arr.size):
        for k in range(i + 1, arr.size):
            mid = arrangements.intersect(arr.maximal[i], arr.maximal[k])
            if mid.dim == arr.maximal[i].dim - 1:
                return True
    return False


def evaluate(c: Cocycle, arr: Arrangement, spec: GroupSpec, m: PLMap,
             sphere: SimplicialSphere, cell_simplices,
             wbasis=None) -> CoinvariantsResult:
    """Pick the evaluator by the stratum sizes of the cocycle terms: when
    every intersection point lies in a single maximal element the class is
    read off per maximal element (summation of linking numbers); a hit on a
    shared wall routes the cocycle through the glued-cycle machinery."""
    if not any(t.broken for t in c.terms):
        return chi_star_result(c, arr, spec, m.target_dim)
    try:
        module = build_broken_module(arr)
    except ValueError as exc:
        trivial = linalg.abelian_quotient(arr.size, [])
        return CoinvariantsResult(trivial, (), INCONCLUSIVE, str(exc))
    return broken_class_evaluate(c, module, m, sphere, cell_simplices, wbasis)


def verdict_sentence(res: CoinvariantsResult, claim: str) -> str:
    if res.verdict == OBSTRUCTION_NONZERO:
        return ("obstruction class is nonzero: no equivariant map exists; "
                + claim)
    if res.verdict == OBSTRUCTION_ZERO:
        return ("primary obstruction vanishes; the method is inconclusive "
                "for the partition claim")
    return "evaluation inconclusive: " + (res.diagnosis or "preconditions failed")
