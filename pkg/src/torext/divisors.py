"""Vertical parts of extended divisors and the fppf-vs-log verdict.

A degree-zero divisor on the generic fiber extends over the model once a
rational combination of fiber components is added so that the total
intersects every component trivially. The fractional parts of that
vertical combination are the obstruction: all integral means the class
lands in the identity component and the torsor extension is fppf,
anything else leaves only the logarithmic extension. The same vertical
parts compute the monodromy pairing on the component group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegreeNotZero, InputError, InvalidFiber
from .fiber import ComponentGroupData, FiniteAbelianGroup, IntersectionData, validate
from .linalg import solve_affine_rational

FPPF_EXTENSION = "FppfExtension"
LOG_ONLY = "LogOnly"


@dataclass(frozen=True)
class HorizontalIncidence:
    """Intersection numbers of a closed horizontal divisor with each component.

    ``base_index`` names the component in which the marked point of the
    curve reduces; vertical parts are normalized to vanish there.
    """

    b: tuple[int, ...]
    base_index: int

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not 0 <= self.base_index < len(self.b):
            raise InputError("base index out of range")

    @classmethod
    def from_dict(cls, doc: dict, fiber: IntersectionData) -> HorizontalIncidence:
        try:
            incidence = tuple(int(x) for x in doc["incidence"])
            base = doc["base"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed divisor document: {exc}") from exc
        base_index = fiber.index(base) if isinstance(base, str) else int(base)
        return cls(incidence, base_index)


@dataclass(frozen=True)
class VerticalPart:
    """The unique rational vertical divisor completing a horizontal one."""

    q: tuple[Fraction, ...]
    base_index: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of the extension question, with the obstruction vector.

    ``gamma`` lives in (Q/Z)^r, entries reduced to [0, 1); the kind is
    FppfExtension exactly when every entry vanishes.
    """

    kind: str
    gamma: tuple[Fraction, ...]


def _check_inputs(F: IntersectionData, h: HorizontalIncidence):
    result = validate(F)
    if not result:
        raise InvalidFiber(result.message)
    if len(h.b) != F.size:
        raise InputError("incidence length does not match component count")
    degree = sum(n * x for n, x in zip(F.multiplicities, h.b))
    if degree != 0:
        raise DegreeNotZero(f"total degree against multiplicities is {degree}, not 0")


def extend_divisor(F: IntersectionData, h: HorizontalIncidence) -> VerticalPart:
    """Solve M q = -b and normalize q to vanish on the base component.

    The solution exists because b has degree zero, and is unique because
    the kernel of M is spanned by the multiplicity vector; exactness is
    re-verified by substitution before returning.
    """
    _check_inputs(F, h)
    solution = solve_affine_rational(F.matrix, h.b)
    if solution is None:
        raise InvalidFiber("no rational vertical part; fiber data inconsistent")
    particular, _ = solution
    n = F.multiplicities
    shift = particular[h.base_index] / n[h.base_index]
    q = tuple(x - shift * m for x, m in zip(particular, n))
    assert q[h.base_index] == 0
    assert all(v + bi == 0 for v, bi in zip(F.matrix.apply(q), h.b))
    return VerticalPart(q=q, base_index=h.base_index)


def gamma_and_verdict(F: IntersectionData, h: HorizontalIncidence) -> Verdict:
    """Fractional parts of the vertical divisor, and what they decide.

    >>> from .linalg import IntMatrix
    >>> B = IntersectionData(("G1", "G2", "G3"), (1, 1, 1),
    ...                      IntMatrix([[-2, 1, 1], [1, -2, 1], [1, 1, -2]]))
    >>> v = gamma_and_verdict(B, HorizontalIncidence((1, 0, -1), 2))
    >>> v.kind, [str(x) for x in v.gamma]
    ('LogOnly', ['2/3', '1/3', '0'])
    """
    part = extend_divisor(F, h)
    gamma = tuple(x - x.__floor__() for x in part.q)
    kind = FPPF_EXTENSION if all(x == 0 for x in gamma) else LOG_ONLY
    return Verdict(kind=kind, gamma=gamma)


def class_in_phi(F: IntersectionData, h: HorizontalIncidence):
    """Class of the incidence vector in the component group, with its order."""
    _check_inputs(F, h)
    return ComponentGroupData(F).class_of(h.b)


def monodromy_pairing(
    F: IntersectionData, h_s: HorizontalIncidence, h_t: HorizontalIncidence
) -> Fraction:
    """Pairing of two component-group classes in Q/Z, reduced to [0, 1).

    Computed as the incidence vector of one divisor against the vertical
    part of the other; the horizontal-horizontal intersection number is
    an integer and drops modulo Z.
    """
    _check_inputs(F, h_s)
    q_t = extend_divisor(F, h_t).q
    value = sum((Fraction(bs) * qt for bs, qt in zip(h_s.b, q_t)), Fraction(0))
    return value - value.__floor__()


def coprime_shortcut(group_order: int, phi: FiniteAbelianGroup) -> bool:
    """True when the torsor group order is prime to the component group order.

    In that case no nontrivial map into the component group exists and
    the extension is automatically fppf.
    """
    if group_order < 1:
        raise InputError("group order must be positive")
    return gcd(group_order, phi.order) == 1
