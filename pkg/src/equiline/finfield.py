"""Quadratic forms over GF(2) on odd-dimensional spaces, and their hyperplane geometry.

Vectors in F_2^k are packed into Python ints, bit i holding coordinate i; form
evaluation is a masked popcount.  Everything here is exact integer arithmetic.
Hyperplane types are decided by the definition-level singular-vector count, never
by a shortcut formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product

__all__ = [
    "HyperplaneType",
    "RadicalDimension",
    "ClassifierMismatch",
    "QuadForm2",
    "Hyperplane",
    "standard_form",
    "radical",
    "singular_count",
    "classify_hyperplane",
    "enumerate_hyperplanes",
    "character_value",
    "nonsingular_vectors",
    "transvection",
    "transvection_on_functional",
    "dot2",
    "int_to_coords",
    "coords_to_int",
    "vectors_lex",
]


class HyperplaneType(Enum):
    PLUS = "plus"
    MINUS = "minus"
    DEGENERATE = "degenerate"


class RadicalDimension(ValueError):
    """The polarization's radical is not a 1-space on which the form is nonzero."""


class ClassifierMismatch(ValueError):
    """Singular-vector count matches no hyperplane type; the form is malformed."""


def dot2(x: int, y: int) -> int:
    """Standard pairing of two packed F_2 vectors."""
    return (x & y).bit_count() & 1


def int_to_coords(x: int, dim: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(dim))


def coords_to_int(coords) -> int:
    v = 0
    for i, c in enumerate(coords):
        if c & 1:
            v |= 1 << i
    return v


def vectors_lex(dim: int):
    """All of F_2^dim in lexicographic order of coordinate tuples (coordinate 0 major)."""
    for coords in product((0, 1), repeat=dim):
        yield coords_to_int(coords)


@dataclass(frozen=True)
class QuadForm2:
    """Quadratic form on F_2^dim given by upper-triangular coefficients.

    rows[i] is the packed mask of coefficients c_{ij} for j >= i, so
    Q(x) = sum_{i <= j} c_{ij} x_i x_j over F_2.
    """

    dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.dim:
            raise ValueError("need one coefficient row per coordinate")
        for i, row in enumerate(self.rows):
            if row >> self.dim or row & ((1 << i) - 1):
                raise ValueError("coefficient rows must be upper triangular within dim")

    def evaluate(self, x: int) -> int:
        acc = 0
        y = x
        while y:
            i = (y & -y).bit_length() - 1
            acc += (self.rows[i] & x).bit_count()
            y &= y - 1
        return acc & 1

    __call__ = evaluate

    def bilinear(self, x: int, y: int) -> int:
        """Polarization B(x, y) = Q(x + y) + Q(x) + Q(y); alternating bilinear."""
        return self.evaluate(x ^ y) ^ self.evaluate(x) ^ self.evaluate(y)

    def bilinear_mask(self, u: int) -> int:
        """The functional B(., u) as a packed vector."""
        mask = 0
        for i in range(self.dim):
            if self.bilinear(1 << i, u):
                mask |= 1 << i
        return mask


def standard_form(m: int) -> QuadForm2:
    """Q(x) = x_0^2 + x_1 x_2 + ... + x_{2m-1} x_{2m} on F_2^(2m+1).

    The polarization's radical is generated by e_0 and Q(e_0) = 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    dim = 2 * m + 1
    rows = [0] * dim
    rows[0] = 1
    for i in range(1, dim, 2):
        rows[i] = 1 << (i + 1)
    return QuadForm2(dim, tuple(rows))


@lru_cache(maxsize=None)
def _value_table(q: QuadForm2) -> tuple[int, ...]:
    return tuple(q.evaluate(x) for x in range(1 << q.dim))


@lru_cache(maxsize=None)
def radical(q: QuadForm2) -> int:
    """Generator of the polarization's radical; requires dim 1 and Q(r) = 1."""
    dim = q.dim
    rows = [q.bilinear_mask(1 << i) for i in range(dim)]
    # Gaussian elimination over F_2; track pivots to read off the nullspace.
    pivot_of_col: dict[int, int] = {}
    reduced: list[int] = []
    for row in rows:
        for col, rix in pivot_of_col.items():
            if (row >> col) & 1:
                row ^= reduced[rix]
        if row:
            col = (row & -row).bit_length() - 1
            pivot_of_col[col] = len(reduced)
            reduced.append(row)
    free_cols = [c for c in range(dim) if c not in pivot_of_col]
    if len(free_cols) != 1:
        raise RadicalDimension(
            f"radical has dimension {len(free_cols)}, expected 1"
        )
    # Back-substitute the single free column into a kernel vector.
    c0 = free_cols[0]
    r = 1 << c0
    changed = True
    while changed:
        changed = False
        for row in reduced:
            if dot2(row, r):
                pivot = (row & -row).bit_length() - 1
                r ^= 1 << pivot
                changed = True
    if not q.evaluate(r):
        raise RadicalDimension("form vanishes on the radical generator")
    return r


def singular_count(q: QuadForm2, phi: int) -> int:
    """Number of nonzero v in ker(phi) with Q(v) = 0, by full enumeration."""
    table = _value_table(q)
    return sum(
        1
        for v in range(1, 1 << q.dim)
        if table[v] == 0 and (phi & v).bit_count() & 1 == 0
    )


def classify_hyperplane(q: QuadForm2, phi: int) -> HyperplaneType:
    """Type of the hyperplane ker(phi) under the restricted form."""
    if phi == 0 or phi >> q.dim:
        raise ValueError("functional must be nonzero and fit the dimension")
    r = radical(q)
    if dot2(phi, r) == 0:
        return HyperplaneType.DEGENERATE
    m = (q.dim - 1) // 2
    s = singular_count(q, phi)
    if s == 2 ** (2 * m - 1) + 2 ** (m - 1) - 1:
        return HyperplaneType.PLUS
    if s == 2 ** (2 * m - 1) - 2 ** (m - 1) - 1:
        return HyperplaneType.MINUS
    raise ClassifierMismatch(f"singular count {s} fits no type at m={m}")


@dataclass(frozen=True)
class Hyperplane:
    """Kernel of a nonzero functional, tagged with its quadratic type."""

    functional: int
    dim: int
    type_tag: HyperplaneType

    def contains(self, e: int) -> bool:
        return dot2(self.functional, e) == 0

    def character(self, e: int) -> int:
        return -1 if dot2(self.functional, e) else 1


def enumerate_hyperplanes(q: QuadForm2, tag: HyperplaneType) -> list[Hyperplane]:
    """All hyperplanes of the given type, in lexicographic functional order."""
    out = []
    for phi in vectors_lex(q.dim):
        if phi and classify_hyperplane(q, phi) is tag:
            out.append(Hyperplane(phi, q.dim, tag))
    return out


def character_value(hyp: Hyperplane, e: int) -> int:
    """The +-1 character of the hyperplane at e: +1 iff e lies on it."""
    return hyp.character(e)


def nonsingular_vectors(q: QuadForm2) -> list[int]:
    """All u with Q(u) = 1, in lexicographic order."""
    return [u for u in vectors_lex(q.dim) if u and q.evaluate(u)]


def transvection(q: QuadForm2, u: int, x: int) -> int:
    """Isometry x -> x + B(x, u) u for Q(u) = 1; an involution fixing Q."""
    if not q.evaluate(u):
        raise ValueError("transvection direction must satisfy Q(u) = 1")
    return x ^ (u if dot2(x, q.bilinear_mask(u)) else 0)


def transvection_on_functional(q: QuadForm2, u: int, phi: int) -> int:
    """Pullback of a functional along the transvection in direction u."""
    if not q.evaluate(u):
        raise ValueError("transvection direction must satisfy Q(u) = 1")
    return phi ^ (q.bilinear_mask(u) if dot2(phi, u) else 0)
