"""Affine charts of arithmetic surfaces: singularities, blow-ups, components.

A chart is a list of integer polynomial equations together with the
residue prime under study. The operations here reproduce the desk
computations needed to build and check a regular model of a hyperelliptic
curve: exhaustive Jacobian-criterion singularity search over the prime
field, cotangent-space regularity tests, point blow-ups of hypersurface
charts, local intersection multiplicities, and verification of claimed
fiber components by triangular substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CapExceeded,
    CenterNotOnFiber,
    InputError,
    NotHypersurface,
    NotStabilized,
    NotTriangular,
    PointNotOnFiber,
)
from .poly import IntPolynomial, parse_polynomial

DEFAULT_POINT_CAP = 10**7
DEFAULT_DEGREE_CAP = 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class AffineChart:
    """Equations over Z in named variables, studied at one residue prime."""

    variables: tuple[str, ...]
    equations: tuple[IntPolynomial, ...]
    prime: int
    expected_dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(self.equations))
        if not self.equations:
            raise InputError("a chart needs at least one equation")
        for eq in self.equations:
            if eq.variables != self.variables:
                raise InputError("equation variables do not match the chart")
        if not _is_prime(self.prime):
            raise InputError(f"{self.prime} is not prime")

    @classmethod
    def from_dict(cls, doc: dict) -> AffineChart:
        try:
            variables = tuple(doc["variables"])
            equations = tuple(
                parse_polynomial(text, variables) for text in doc["equations"]
            )
            prime = int(doc["prime"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed chart document: {exc}") from exc
        return cls(variables, equations, prime, int(doc.get("expected_dim", 2)))

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "equations": [str(eq) for eq in self.equations],
            "prime": self.prime,
            "expected_dim": self.expected_dim,
        }


@dataclass(frozen=True)
class FpPoint:
    """A point of the prime-field affine space, one coordinate per variable."""

    coordinates: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(int(c) for c in self.coordinates))


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Gaussian elimination over the prime field."""
    rows = [[x % p for x in row] for row in rows if any(x % p for x in row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def singular_points_mod_p(chart: AffineChart, cap: int = DEFAULT_POINT_CAP) -> list[FpPoint]:
    """Exhaustive Jacobian-criterion search for singular fiber points.

    A point of the special fiber is singular when the Jacobian of the
    chart equations drops below rank (variables - 1), the rank of a
    smooth curve point. Points come back in lexicographic order.
    """
    p = chart.prime
    n = len(chart.variables)
    if p**n > cap:
        raise CapExceeded(f"{p}^{n} points exceed cap {cap}")
    equations = [eq.reduce_mod(p) for eq in chart.equations]
    jacobian = [
        [eq.derivative(name).reduce_mod(p) for name in chart.variables]
        for eq in equations
    ]
    singular = []
    for point in itertools.product(range(p), repeat=n):
        if any(eq.evaluate_mod(point, p) for eq in equations):
            continue
        rows = [[entry.evaluate_mod(point, p) for entry in row] for row in jacobian]
        if _rank_mod_p(rows, p) < n - 1:
            singular.append(FpPoint(point))
    return singular


def tangent_dimension(chart: AffineChart, point) -> tuple[int, bool]:
    """Dimension of the cotangent space m/m^2 at a special-fiber point.

    The relation matrix has one row per equation f: the partial
    derivatives at the integer lift a (coordinates in [0, p)) followed
    by the exact quotient f(a)/p, everything mod p. The dimension is
    (variables + 1) minus its rank; the point is regular exactly when
    that equals the expected dimension of the model.
    """
    p = chart.prime
    coords = point.coordinates if isinstance(point, FpPoint) else tuple(point)
    if len(coords) != len(chart.variables):
        raise InputError("point length does not match chart variables")
    lift = tuple(c % p for c in coords)
    rows = []
    for eq in chart.equations:
        value = eq.evaluate(lift)
        if value % p != 0:
            raise PointNotOnFiber(f"equation {eq} is {value} mod {p} at {lift}")
        row = [eq.derivative(name).evaluate(lift) % p for name in chart.variables]
        row.append((value // p) % p)
        rows.append(row)
    dimension = (len(chart.variables) + 1) - _rank_mod_p(rows, p)
    return dimension, dimension == chart.expected_dim


def _pval(value: int, p: int) -> int:
    count = 0
    while value % p == 0:
        value //= p
        count += 1
    return count


def _fresh_names(wanted, taken):
    names = []
    taken = set(taken)
    for base in wanted:
        if base not in taken:
            names.append(base)
            taken.add(base)
            continue
        i = 1
        while f"{base}{i}" in taken:
            i += 1
        names.append(f"{base}{i}")
        taken.add(f"{base}{i}")
    return names


def _extract_prime_powers(poly: IntPolynomial, p: int, shift_slot: int, w_slot: int):
    """Rewrite each coefficient p^s*u as u times (shift * w)^s."""
    terms = {}
    for expo, coeff in poly.terms.items():
        s = _pval(coeff, p)
        new = list(expo)
        new[shift_slot] += s
        new[w_slot] += s
        key = tuple(new)
        terms[key] = terms.get(key, 0) + coeff // p**s
    return IntPolynomial(poly.variables, terms)


def blowup_point(chart: AffineChart, center) -> tuple[AffineChart, AffineChart, AffineChart]:
    """Blow up a two-variable hypersurface chart at a special-fiber point.

    Returns the three standard charts. Writing (x, y) for the chart
    variables, p for the prime and (a, b) for the center:

    * chart 1, variables (x, v, w): substitute y = b + (x-a)v, trade
      each coefficient's maximal p-power for ((x-a)w)^s, divide by the
      highest power of (x-a), and append the relation (x-a)w = p;
    * chart 2, variables (y, u, w): the same with the roles of the two
      variables exchanged;
    * chart 3, variables (u, v): substitute x = a + pu, y = b + pv and
      divide out the content's p-power.
    """
    if len(chart.variables) != 2 or len(chart.equations) != 1:
        raise NotHypersurface("blow-ups need exactly two variables and one equation")
    p = chart.prime
    g = chart.equations[0]
    a, b = (int(c) for c in center)
    if g.evaluate((a, b)) % p != 0:
        raise CenterNotOnFiber(f"center {(a, b)} is not on the fiber mod {p}")
    x_name, y_name = chart.variables
    v_name, w_name = _fresh_names(("v", "w"), chart.variables)
    u_name = _fresh_names(("u",), chart.variables + (v_name, w_name))[0]

    # chart 1: y - b = (x - a) v, p = (x - a) w
    work = ("S", "v", "w")  # S stands for the shifted variable x - a
    s_var = IntPolynomial.variable(work, "S")
    sub1 = g.compose(
        {x_name: s_var + a, y_name: s_var * IntPolynomial.variable(work, "v") + b},
        work,
    )
    sub1 = _extract_prime_powers(sub1, p, 0, 2)
    sub1 = sub1.divide_by_power("S", sub1.min_degree_in("S"))
    vars1 = (x_name, v_name, w_name)
    strict1 = sub1.compose(
        {
            "S": IntPolynomial.variable(vars1, x_name) - a,
            "v": IntPolynomial.variable(vars1, v_name),
            "w": IntPolynomial.variable(vars1, w_name),
        },
        vars1,
    )
    relation1 = (IntPolynomial.variable(vars1, x_name) - a) * IntPolynomial.variable(
        vars1, w_name
    ) - p
    chart1 = AffineChart(vars1, (strict1, relation1), p, chart.expected_dim)

    # chart 2: x - a = (y - b) u, p = (y - b) w
    work = ("S", "u", "w")
    s_var = IntPolynomial.variable(work, "S")
    sub2 = g.compose(
        {x_name: s_var * IntPolynomial.variable(work, "u") + a, y_name: s_var + b},
        work,
    )
    sub2 = _extract_prime_powers(sub2, p, 0, 2)
    sub2 = sub2.divide_by_power("S", sub2.min_degree_in("S"))
    vars2 = (y_name, u_name, w_name)
    strict2 = sub2.compose(
        {
            "S": IntPolynomial.variable(vars2, y_name) - b,
            "u": IntPolynomial.variable(vars2, u_name),
            "w": IntPolynomial.variable(vars2, w_name),
        },
        vars2,
    )
    relation2 = (IntPolynomial.variable(vars2, y_name) - b) * IntPolynomial.variable(
        vars2, w_name
    ) - p
    chart2 = AffineChart(vars2, (strict2, relation2), p, chart.expected_dim)

    # chart 3: x - a = p u, y - b = p v
    vars3 = (u_name, v_name)
    sub3 = g.compose(
        {
            x_name: p * IntPolynomial.variable(vars3, u_name) + a,
            y_name: p * IntPolynomial.variable(vars3, v_name) + b,
        },
        vars3,
    )
    content = min(_pval(c, p) for c in sub3.terms.values())
    strict3 = IntPolynomial(
        vars3, {e: c // p**content for e, c in sub3.terms.items()}
    )
    chart3 = AffineChart(vars3, (strict3,), p, chart.expected_dim)

    return chart1, chart2, chart3


def _monomials_below(n_vars: int, degree: int):
    """All exponent vectors of total degree < degree, lexicographic."""
    result = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for e in range(budget + 1):
            prefix.append(e)
            rec(prefix, remaining - 1, budget - e)
            prefix.pop()

    rec([], n_vars, degree - 1)
    return result


def local_multiplicity(generators, point, prime: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Length of the prime-field local ring at a point modulo an ideal.

    Computed as the dimension of polynomials/(ideal + m^N) for growing N
    until two consecutive values agree. Failure to stabilize within the
    cap signals a positive-dimensional ideal and raises NotStabilized.
    """
    generators = list(generators)
    if not generators:
        raise InputError("need at least one ideal generator")
    variables = generators[0].variables
    coords = point.coordinates if isinstance(point, FpPoint) else tuple(point)
    if len(coords) != len(variables):
        raise InputError("point length does not match the generators' variables")
    p = prime
    shift = {
        name: IntPolynomial.variable(variables, name) + int(c)
        for name, c in zip(variables, coords)
    }
    shifted = [g.compose(shift, variables).reduce_mod(p) for g in generators]
    n = len(variables)

    previous = None
    for bound in range(1, degree_cap + 1):
        monomials = _monomials_below(n, bound)
        index = {m: i for i, m in enumerate(monomials)}
        rows = []
        for gen in shifted:
            if gen.is_zero:
                continue
            for mono in monomials:
                row = [0] * len(monomials)
                nonzero = False
                for expo, coeff in gen.terms.items():
                    combined = tuple(a + b for a, b in zip(expo, mono))
                    slot = index.get(combined)
                    if slot is not None:
                        row[slot] = (row[slot] + coeff) % p
                        nonzero = True
                if nonzero:
                    rows.append(row)
        dimension = len(monomials) - _rank_mod_p(rows, p)
        if previous is not None and dimension == previous:
            return dimension
        previous = dimension
    raise NotStabilized(
        f"local dimension did not stabilize within degree cap {degree_cap}"
    )


def _reduce_by_rules(poly: IntPolynomial, rules, p: int, max_passes: int = 200):
    """Rewrite until no rule applies; rules are (variable, degree, replacement)."""
    for _ in range(max_passes):
        changed = False
        for name, d, replacement in rules:
            while poly.degree_in(name) >= d:
                slot = poly.variables.index(name)
                low = {e: c for e, c in poly.terms.items() if e[slot] < d}
                high = {}
                for e, c in poly.terms.items():
                    if e[slot] >= d:
                        reduced = list(e)
                        reduced[slot] -= d
                        high[tuple(reduced)] = c
                quotient = IntPolynomial(poly.variables, high)
                poly = (IntPolynomial(poly.variables, low) + quotient * replacement).reduce_mod(p)
                changed = True
        if not changed:
            return poly
    raise NotTriangular("substitution did not terminate; system is not triangular")


def verify_component(chart: AffineChart, component) -> bool:
    """Check a claimed fiber component against the chart equations mod p.

    ``component`` is a triangular list of polynomials (each eliminating
    one variable, possibly to a higher power with further variables on
    the right). True when every chart equation reduces to zero under
    successive substitution.
    """
    p = chart.prime
    rules = []
    used: set[str] = set()
    for eq in component:
        if eq.variables != chart.variables:
            raise InputError("component equations must use the chart variables")
        eq = eq.reduce_mod(p)
        if eq.is_zero:
            raise NotTriangular("component equation vanishes mod p")
        for name in chart.variables:
            if name in used:
                continue
            d = eq.degree_in(name)
            if d == 0:
                continue
            lead = eq.coefficient_of(name, d)
            constant = lead.terms.get((0,) * len(chart.variables))
            if len(lead.terms) != 1 or constant is None:
                continue
            inv = pow(constant, -1, p)
            # rule: name^d -> name^d - inv * eq  (degree in name drops)
            head = IntPolynomial.variable(chart.variables, name) ** d
            replacement = (head - inv * eq).reduce_mod(p)
            rules.append((name, d, replacement))
            used.add(name)
            break
        else:
            raise NotTriangular(f"no eliminable variable in {eq}")
    for eq in chart.equations:
        if not _reduce_by_rules(eq.reduce_mod(p), rules, p).is_zero:
            return False
    return True


def curve_charts(p_param: int, c: int, prime: int | None = None) -> tuple[AffineChart, AffineChart]:
    """The two affine charts of the smooth hyperelliptic model.

    First chart: y^2 = x^(2p) - (1 + c^2) x^p + c^2. Second chart in
    (s, t) with x = 1/s, y = t/s^p; the denominators clear exactly and
    the constant term of the right side is 1. The residue prime under
    study defaults to p_param but can be any prime (the auxiliary-prime
    cases study the same surface at a prime dividing c).
    """
    if not _is_prime(p_param) or p_param == 2:
        raise InputError("p must be an odd prime")
    if c in (1, -1):
        raise InputError("c must differ from 1 and -1")
    study_prime = p_param if prime is None else prime

    xy = ("x", "y")
    x = IntPolynomial.variable(xy, "x")
    y = IntPolynomial.variable(xy, "y")
    f = x ** (2 * p_param) - (1 + c * c) * x**p_param + c * c
    first = AffineChart(xy, (y * y - f,), study_prime)

    st = ("s", "t")
    s = IntPolynomial.variable(st, "s")
    t = IntPolynomial.variable(st, "t")
    # s^(2p) f(1/s) = 1 - (1 + c^2) s^p + c^2 s^(2p)
    reciprocal = 1 - (1 + c * c) * s**p_param + (c * c) * s ** (2 * p_param)
    second = AffineChart(st, (t * t - reciprocal,), study_prime)
    return first, second
