"""Finite symmetry groups: Z_2, dihedral D_2n and generalized quaternion Q_4n.

Elements are kept in the normal form eps^a j^b with 0 <= a < modulus and
b in {0, 1}; products are rewritten with j eps = eps^-1 j.  In Q_4n the
relation j^2 = eps^n folds the extra sign into the eps exponent (modulus 2n),
in D_2n j^2 = 1 (modulus n).

The action on R^n is by coordinate permutations: j reverses the coordinates
and eps rotates them one step.  Both rotation directions satisfy the group
relations; ``rotation`` picks which one eps uses,

    rotation = -1:  eps (x_1, ..., x_n) = (x_2, ..., x_n, x_1)
    rotation = +1:  eps (x_1, ..., x_n) = (x_n, x_1, ..., x_{n-1})

(the hyperplane scenarios use -1, the fan scenario +1; verdicts do not
depend on the choice, only printed coordinates do).  Q_4n acts through its
order-2n quotient (eps^n acts trivially).
"""

from dataclasses import dataclass
from fractions import Fraction

CYCLIC2 = "Z2"
DIHEDRAL = "D2n"
QUATERNION = "Q4n"


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    rotation: int = -1

    def __post_init__(self):
        if self.family not in (CYCLIC2, DIHEDRAL, QUATERNION):
            raise ValueError("unknown family %r" % (self.family,))
        if self.rotation not in (-1, 1):
            raise ValueError("rotation must be -1 or +1")
        if self.family == CYCLIC2 and self.n != 1:
            raise ValueError("Z2 takes n = 1")
        if self.family in (DIHEDRAL, QUATERNION) and self.n < 2:
            raise ValueError("need n >= 2")

    @property
    def eps_modulus(self) -> int:
        if self.family == CYCLIC2:
            return 1
        return self.n if self.family == DIHEDRAL else 2 * self.n

    @property
    def order(self) -> int:
        if self.family == CYCLIC2:
            return 2
        return 2 * self.n if self.family == DIHEDRAL else 4 * self.n


@dataclass(frozen=True)
class GroupElement:
    """eps^a j^b in normal form."""

    a: int
    j: int

    def __str__(self):
        if self.j:
            return "e^%d*j" % self.a if self.a else "j"
        return "e^%d" % self.a if self.a else "1"


def element(spec: GroupSpec, a: int, j: int = 0) -> GroupElement:
    if spec.family == CYCLIC2:
        # the only nontrivial element is written j
        return GroupElement(0, (a + j) % 2)
    return GroupElement(a % spec.eps_modulus, j % 2)


def identity_element(spec: GroupSpec) -> GroupElement:
    return GroupElement(0, 0)


def parse_element(spec: GroupSpec, s: str) -> GroupElement:
    s = s.strip()
    if s == "1":
        return identity_element(spec)
    a, j = 0, 0
    for part in s.split("*"):
        if part == "j":
            j = 1
        elif part.startswith("e^"):
            a = int(part[2:])
        elif part == "e":
            a = 1
        else:
            raise ValueError("bad element string %r" % (s,))
    return element(spec, a, j)


def multiply(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """Normal-form product; uses j eps = eps^-1 j and the family's j^2."""
    a = g.a + (h.a if g.j == 0 else -h.a)
    j = g.j + h.j
    if j == 2 and spec.family == QUATERNION:
        a += spec.n  # j^2 = eps^n = -1
    return element(spec, a, j)


def inverse(spec: GroupSpec, g: GroupElement) -> GroupElement:
    if g.j == 0:
        return element(spec, -g.a, 0)
    # (eps^a j)^-1 = j^-1 eps^-a = eps^a j^-1; j^-1 = eps^n j in Q4n
    if spec.family == QUATERNION:
        return element(spec, g.a + spec.n, 1)
    return element(spec, g.a, 1)


def all_elements(spec: GroupSpec):
    return [element(spec, a, j)
            for j in (0, 1) for a in range(spec.eps_modulus)]


def quotient_to_dihedral(spec: GroupSpec, g: GroupElement) -> GroupElement:
    """Q_4n -> Q_4n / {1, eps^n} = D_2n on normal forms."""
    assert spec.family == QUATERNION
    return GroupElement(g.a % spec.n, g.j)


def permutation(spec: GroupSpec, g: GroupElement, n: int):
    """The coordinate permutation of g on R^n: perm[i] is where e_i goes.

    Indices are 0-based here; eps sends e_i to e_{i+rotation mod n} and j
    sends e_i to e_{n-1-i}.
    """
    if spec.family in (DIHEDRAL, QUATERNION) and n != spec.n:
        raise ValueError("dimension %d does not match group n = %d" % (n, spec.n))
    a = (spec.rotation * g.a) % n if spec.family != CYCLIC2 else 0
    if g.j:
        return [(n - 1 - i + a) % n for i in range(n)]
    return [(i + a) % n for i in range(n)]


def apply_to_vector(spec: GroupSpec, g: GroupElement, v):
    """g . v for v in R^n (permutation of coordinates)."""
    n = len(v)
    perm = permutation(spec, g, n)
    out = [Fraction(0)] * n
    for i in range(n):
        out[perm[i]] = Fraction(v[i])
    return out


def apply_to_functional(spec: GroupSpec, g: GroupElement, w):
    """g . w for a linear functional: <g.w, x> = <w, g^-1 x>.

    For permutation actions this is the same coordinate pushforward as for
    vectors.
    """
    return apply_to_vector(spec, g, w)


def permutation_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        k = i
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_on_w(spec: GroupSpec, g: GroupElement, n: int) -> int:
    """Determinant of g restricted to W_n = {sum x_i = 0}.

    The invariant line (1, ..., 1) carries determinant +1, so this equals
    the sign of the coordinate permutation on R^n.
    """
    return permutation_sign(permutation(spec, g, n))
