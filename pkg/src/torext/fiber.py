"""Intersection data of a special fiber and the component group built from it.

The component group of the Neron model of the Jacobian is computed from
the incidence matrix M and the multiplicity vector n as the finite
quotient L / M(Z^r), where L is the lattice of integer vectors of total
degree zero against n. Residue fields are taken trivial (algebraically
closed base), which is the setting of every embedded case.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod

from .errors import InvalidFiber
from .linalg import IntMatrix, int_inverse, rank, smith_normal_form


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form.

    ``invariant_factors`` is the chain d1 | d2 | ... with every factor
    at least 2; the empty tuple is the trivial group.

    >>> FiniteAbelianGroup((2, 2)).order
    4
    >>> str(FiniteAbelianGroup.cyclic(6))
    'Z/6'
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        return cls(() if n == 1 else (n,))

    @classmethod
    def elementary(cls, r: int, copies: int) -> FiniteAbelianGroup:
        """(Z/r)^copies."""
        if r < 1 or copies < 0:
            raise ValueError("bad elementary group parameters")
        return cls(() if r == 1 else (r,) * copies)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class IntersectionData:
    """Component labels, multiplicities and the symmetric incidence matrix."""

    labels: tuple[str, ...]
    multiplicities: tuple[int, ...]
    matrix: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidFiber(f"no component labelled {label!r}") from None

    @classmethod
    def from_dict(cls, doc: dict) -> IntersectionData:
        try:
            return cls(
                labels=tuple(doc["components"]),
                multiplicities=tuple(int(n) for n in doc["multiplicities"]),
                matrix=IntMatrix(doc["matrix"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidFiber(f"malformed fiber document: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "components": list(self.labels),
            "multiplicities": list(self.multiplicities),
            "matrix": self.matrix.to_lists(),
        }


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    message: str

    def __bool__(self):
        return self.ok


def _support_connected(M: IntMatrix) -> bool:
    r = M.rows
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(r):
            if j != i and j not in seen and M[i, j] != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == r


def validate(F: IntersectionData) -> ValidationResult:
    """Check every intersection-data invariant; name the first failure."""
    r = len(F.labels)
    if len(set(F.labels)) != r:
        return ValidationResult(False, "component labels are not distinct")
    if len(F.multiplicities) != r:
        return ValidationResult(False, "multiplicity count does not match labels")
    if any(n < 1 for n in F.multiplicities):
        return ValidationResult(False, "multiplicities must be positive")
    if F.matrix.rows != r or F.matrix.cols != r:
        return ValidationResult(False, "matrix shape does not match component count")
    if not F.matrix.is_symmetric():
        return ValidationResult(False, "matrix is not symmetric")
    if any(x != 0 for x in F.matrix.apply(F.multiplicities)):
        return ValidationResult(False, "matrix times multiplicity vector is not zero")
    for i in range(r):
        for j in range(r):
            if i != j and F.matrix[i, j] < 0:
                return ValidationResult(False, f"negative off-diagonal entry at ({i}, {j})")
    if r > 1 and not _support_connected(F.matrix):
        return ValidationResult(False, "support graph of the matrix is not connected")
    if rank(F.matrix) != r - 1:
        return ValidationResult(False, f"matrix rank is not {r - 1}")
    return ValidationResult(True, "ok")


class ComponentGroupData:
    """Component group together with coordinates for degree-zero vectors.

    Exposes the invariant factors of Phi = L / M(Z^r) and, for any
    integer vector b in L, its class in invariant-factor coordinates.
    """

    def __init__(self, F: IntersectionData):
        check = validate(F)
        if not check:
            raise InvalidFiber(check.message)
        self.fiber = F
        r = F.size
        if r == 1:
            # degree-zero lattice is trivial
            self._coord = None
            self.factors_full: tuple[int, ...] = ()
        else:
            n_row = IntMatrix([list(F.multiplicities)])
            snf_n = smith_normal_form(n_row)
            v_inv = int_inverse(snf_n.V)
            # rows 1..r-1 of V^-1 are coordinates on L; row 0 is a multiple of the degree
            self._coord = IntMatrix(v_inv.entries[1:])
            x = self._coord @ F.matrix
            snf_x = smith_normal_form(x)
            diag = snf_x.diagonal
            if any(d == 0 for d in diag):
                raise InvalidFiber("component group is not finite")
            self._u = snf_x.U
            self._u_inv = int_inverse(snf_x.U)
            # columns of V (from the SNF of the multiplicity row) past the first
            # form the integral basis of L used by representative()
            self._basis = IntMatrix([row[1:] for row in snf_n.V.entries])
            self.factors_full = diag
        self.group = FiniteAbelianGroup(tuple(d for d in self.factors_full if d > 1))

    def class_of(self, b) -> tuple[tuple[int, ...], int]:
        """Class of a degree-zero integer vector, with its order.

        Returns coordinates against the nontrivial invariant factors and
        the order of the class in the group.
        """
        F = self.fiber
        if len(b) != F.size:
            raise InvalidFiber("incidence length does not match component count")
        if sum(n * x for n, x in zip(F.multiplicities, b)) != 0:
            raise InvalidFiber("vector is not degree zero")
        if self._coord is None:
            return (), 1
        c = self._coord.apply(b)
        y = self._u.apply(c)
        coords = []
        order = 1
        for d, yi in zip(self.factors_full, y):
            residue = yi % d
            if d > 1:
                coords.append(residue)
            order = lcm(order, d // gcd(d, residue))
        return tuple(coords), order

    def representative(self, coords) -> tuple[int, ...]:
        """An integer degree-zero vector whose class has the given coordinates."""
        nontrivial = [i for i, d in enumerate(self.factors_full) if d > 1]
        if len(coords) != len(nontrivial):
            raise ValueError("coordinate count does not match invariant factors")
        if self._coord is None:
            return (0,) * self.fiber.size
        y = [0] * len(self.factors_full)
        for i, value in zip(nontrivial, coords):
            y[i] = int(value)
        c = self._u_inv.apply(y)
        return self._basis.apply(c)


def component_group(F: IntersectionData) -> FiniteAbelianGroup:
    """Component group of the Neron model determined by the fiber data.

    >>> B = IntersectionData(("G1", "G2", "G3"), (1, 1, 1),
    ...                      IntMatrix([[-2, 1, 1], [1, -2, 1], [1, 1, -2]]))
    >>> str(component_group(B))
    'Z/3'
    """
    return ComponentGroupData(F).group


def torsion_subgroup(G: FiniteAbelianGroup, r: int) -> FiniteAbelianGroup:
    """The r-torsion subgroup: gcd of each invariant factor with r."""
    if r < 1:
        raise ValueError("torsion order must be at least 1")
    return FiniteAbelianGroup(
        tuple(g for g in (gcd(d, r) for d in G.invariant_factors) if g > 1)
    )


def jr_finiteness(F: IntersectionData, b1: int, r: int) -> bool:
    """Whether the r-torsion of the Neron model is finite and flat.

    Holds exactly when the r-torsion of the component group is
    elementary of rank equal to the first Betti number of the dual
    graph, which pins the special-fiber rank at its generic value.
    """
    if b1 < 0:
        raise ValueError("Betti number must be nonnegative")
    if r < 2:
        raise ValueError("torsion order must be at least 2")
    torsion = torsion_subgroup(component_group(F), r)
    return torsion == FiniteAbelianGroup.elementary(r, b1)
