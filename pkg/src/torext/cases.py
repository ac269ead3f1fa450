"""Embedded case studies and the harness that re-runs them end to end.

Two studies of the hyperelliptic family y^2 = x^(2p) - (1+c^2) x^p + c^2
ship with the package, each carrying reference values for every stage:

* ``p-example`` (defaults p=5, c=7, with p an odd prime not dividing
  c(c^2-1)): the surface studied at the prime p itself. Two singular
  points are found and blown up, the special fiber has three components
  with a rank-2 elementary component group of order 4, and the torsor
  divisors extend with no vertical part at all, so the extension is
  fppf. The second candidate point x = c^2 is genuinely singular only
  when p^2 divides c^(2p-2) - 1; the default c = 7 satisfies this, and
  for instances like c = 2 that do not, the report flags the candidate
  as already regular.
* ``l-example`` (p=3, defaults l=5 with l = c a prime): the same family
  studied at an auxiliary prime dividing c. One singular point is blown
  up, the component group is cyclic of order 3, and the extended
  divisors need genuinely fractional vertical parts, so only the
  logarithmic extension exists.

``reproduce`` recomputes everything and compares against the recorded
expectations. Each check is flagged ``reference`` when the expected
value is recorded from the source computation and ``derived`` when it
was established independently (by exact substitution, enumeration, or a
second route through the library).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import divisors as div
from .errors import UnknownExample
from .fiber import (
    FiniteAbelianGroup,
    IntersectionData,
    component_group,
    validate,
)
from .graphs import DualGraph, c2, chiodo_check, graph_to_fiber
from .linalg import IntMatrix
from .modelkit import (
    AffineChart,
    blowup_point,
    curve_charts,
    local_multiplicity,
    singular_points_mod_p,
    tangent_dimension,
    verify_component,
)
from .poly import IntPolynomial

P_EXAMPLE = "p-example"
L_EXAMPLE = "l-example"

MATRIX_A = IntMatrix([[-4, 2, 2], [2, -2, 0], [2, 0, -2]])
MATRIX_B = IntMatrix([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])


@dataclass(frozen=True)
class ExampleCase:
    """Static data of one embedded case."""

    case_id: str
    parameters: dict
    fiber: IntersectionData
    incidences: tuple[div.HorizontalIncidence, ...]
    expected_group: FiniteAbelianGroup
    expected_verdict: str
    expected_gammas: tuple[tuple[Fraction, ...], ...]


def _build_p_case(p: int = 5, c: int = 7) -> ExampleCase:
    # components: glued strict transform, then the two exceptional curves
    fiber = IntersectionData(("G1", "G2", "G3"), (1, 1, 1), MATRIX_A)
    # both torsor divisors are supported on the glued component, so all
    # incidence numbers cancel; the marked point reduces into the first
    # exceptional curve
    base = 1
    incidences = (
        div.HorizontalIncidence((0, 0, 0), base),
        div.HorizontalIncidence((0, 0, 0), base),
    )
    zero = (Fraction(0),) * 3
    return ExampleCase(
        case_id=P_EXAMPLE,
        parameters={"p": p, "c": c},
        fiber=fiber,
        incidences=incidences,
        expected_group=FiniteAbelianGroup((2, 2)),
        expected_verdict=div.FPPF_EXTENSION,
        expected_gammas=(zero, zero),
    )


def _build_l_case(l: int = 5) -> ExampleCase:  # noqa: E741 - l is the prime's name
    fiber = IntersectionData(("G1", "G2", "G3"), (1, 1, 1), MATRIX_B)
    base = 2  # the marked point (1, 0) reduces into the strict transform G3
    incidences = (
        div.HorizontalIncidence((1, 0, -1), base),
        div.HorizontalIncidence((0, 1, -1), base),
    )
    return ExampleCase(
        case_id=L_EXAMPLE,
        parameters={"p": 3, "l": l},
        fiber=fiber,
        incidences=incidences,
        expected_group=FiniteAbelianGroup((3,)),
        expected_verdict=div.LOG_ONLY,
        expected_gammas=(
            (Fraction(2, 3), Fraction(1, 3), Fraction(0)),
            (Fraction(1, 3), Fraction(2, 3), Fraction(0)),
        ),
    )


def list_examples() -> list[str]:
    return [P_EXAMPLE, L_EXAMPLE]


def build_case(case_id: str, **overrides) -> ExampleCase:
    if case_id == P_EXAMPLE:
        return _build_p_case(**overrides)
    if case_id == L_EXAMPLE:
        return _build_l_case(**overrides)
    raise UnknownExample(f"no embedded case named {case_id!r}")


# -- report plumbing ---------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jsonable(value):
    if isinstance(value, Fraction):
        return _frac_str(value)
    if isinstance(value, FiniteAbelianGroup):
        return list(value.invariant_factors)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


def _add_check(checks, name, provenance, expected, computed, note=None):
    expected = _jsonable(expected)
    computed = _jsonable(computed)
    entry = {
        "name": name,
        "provenance": provenance,
        "expected": expected,
        "computed": computed,
        "passed": expected == computed,
    }
    if note:
        entry["note"] = note
    checks.append(entry)


def _points(points) -> list[list[int]]:
    return sorted(list(pt.coordinates) for pt in points)


def _fiber_points(chart: AffineChart, fixed: dict[str, int]) -> list[tuple[int, ...]]:
    """Points of the chart's special fiber with some coordinates pinned."""
    p = chart.prime
    pinned = {chart.variables.index(k): v % p for k, v in fixed.items()}
    points = []
    for candidate in itertools.product(range(p), repeat=len(chart.variables)):
        if any(candidate[i] != v for i, v in pinned.items()):
            continue
        if all(eq.evaluate_mod(candidate, p) == 0 for eq in chart.equations):
            points.append(candidate)
    return points


def _regular_above_center(blown, center) -> bool:
    """Every fiber point above the blown-up point has cotangent dimension 2."""
    chart1, chart2, chart3 = blown
    a, b = center
    x_name = chart1.variables[0]
    y_name = chart2.variables[0]
    for chart, fixed in (
        (chart1, {x_name: a}),
        (chart2, {y_name: b}),
        (chart3, {}),
    ):
        for point in _fiber_points(chart, fixed):
            dimension, regular = tangent_dimension(chart, point)
            if not regular:
                return False
    return True


def _shifted_coefficients(p: int, c: int) -> list[int]:
    """Coefficients a_i of f = x^(2p) - (1+c^2) x^p + c^2 around x = 1."""
    return [comb(2 * p, i) - (1 + c * c) * comb(p, i) for i in range(2 * p + 1)]


# -- the p-example pipeline --------------------------------------------------


def _reproduce_p(case: ExampleCase) -> list[dict]:
    p = case.parameters["p"]
    c = case.parameters["c"]
    checks: list[dict] = []

    _add_check(checks, "fiber validates", "reference", True, bool(validate(case.fiber)))

    chart1, chart2 = curve_charts(p, c)
    singular1 = singular_points_mod_p(chart1)
    expected1 = sorted([[1, 0], [c * c % p, 0]])
    _add_check(
        checks,
        "chart1 singular points",
        "reference",
        expected1,
        _points(singular1),
        note="two candidate non-regular points, at x = 1 and x = c^2",
    )

    singular2 = singular_points_mod_p(chart2)
    _add_check(
        checks,
        "chart2 singularities visible in chart overlap",
        "reference",
        True,
        len(singular2) == 2 and all(pt.coordinates[0] != 0 for pt in singular2),
        note="the second chart's singular points have s invertible, so one chart suffices",
    )

    dims = sorted(tangent_dimension(chart1, pt) for pt in singular1)
    _add_check(
        checks,
        "cotangent dimension 3 at each singular candidate",
        "reference",
        [[3, False]] * len(singular1),
        [list(d) for d in dims],
        note=(
            "the candidate at x = c^2 is singular exactly when p^2 divides "
            "c^(2p-2) - 1; instances without that property (such as c = 2) "
            "are already regular there and get flagged here"
        ),
    )

    centers = [tuple(pt.coordinates) for pt in singular1]
    blowups = {center: blowup_point(chart1, center) for center in centers}

    # printed-system fidelity at the center x = 1 (exact where the
    # presentation is relation-free, coefficient-level elsewhere; the
    # printed coefficients live in the basis shifted to the center)
    b1_chart1, b1_chart2, b1_chart3 = blowups[(1, 0)]
    vars1 = b1_chart1.variables
    x_p = IntPolynomial.variable(vars1, vars1[0])
    w_p = IntPolynomial.variable(vars1, vars1[2])
    _add_check(
        checks,
        "blowup chart1 relation",
        "reference",
        str((x_p - 1) * w_p - p),
        str(b1_chart1.equations[1]),
    )
    shifted1 = b1_chart1.equations[0].compose(
        {
            vars1[0]: x_p + 1,
            vars1[1]: IntPolynomial.variable(vars1, vars1[1]),
            vars1[2]: w_p,
        },
        vars1,
    )
    w_only = tuple(int(n == vars1[2]) for n in vars1)
    _add_check(
        checks,
        "blowup chart1 w-linear coefficient",
        "reference",
        c * c - 1,
        shifted1.terms.get(w_only, 0),
        note="the printed right-hand side carries the term w(1-c^2)",
    )

    vars2 = b1_chart2.variables
    const2 = (0,) * 3
    uw_slot = tuple(int(n in (vars2[1], vars2[2])) for n in vars2)
    _add_check(
        checks,
        "blowup chart2 unit and w-linear coefficients",
        "reference",
        [1, c * c - 1],
        [
            b1_chart2.equations[0].terms.get(const2, 0),
            b1_chart2.equations[0].terms.get(uw_slot, 0),
        ],
    )

    a_coeff = _shifted_coefficients(p, c)
    vars3 = b1_chart3.variables
    u_p = IntPolynomial.variable(vars3, vars3[0])
    v_p = IntPolynomial.variable(vars3, vars3[1])
    tail3 = IntPolynomial.zero(vars3)
    for i in range(2, 2 * p + 1):
        tail3 = tail3 + a_coeff[i] * p ** (i - 2) * u_p**i
    expected3 = v_p * v_p - (1 - c * c) * u_p - tail3
    _add_check(
        checks,
        "blowup chart3 equals printed expansion",
        "reference",
        str(expected3),
        str(b1_chart3.equations[0]),
    )

    for center in centers:
        _add_check(
            checks,
            f"model regular above center x={center[0]}",
            "reference",
            True,
            _regular_above_center(blowups[center], center),
            note="every fiber point above the blown-up point has cotangent dimension 2",
        )

    # the two components of the special fiber inside blown-up chart 1
    tail1 = IntPolynomial.zero(vars1)
    base1 = x_p - 1
    for i in range(2, 2 * p + 1):
        tail1 = tail1 + a_coeff[i] * base1 ** (i - 2)
    v1_p = IntPolynomial.variable(vars1, vars1[1])
    exceptional = (x_p - 1, v1_p * v1_p - (1 - c * c) * w_p)
    strict = (w_p, v1_p * v1_p - tail1)
    _add_check(
        checks,
        "claimed components verified in blowup chart1",
        "reference",
        [True, True],
        [
            verify_component(b1_chart1, exceptional),
            verify_component(b1_chart1, strict),
        ],
    )

    mult = local_multiplicity(list(exceptional) + list(strict), (1, 0, 0), p)
    _add_check(
        checks,
        "exceptional meets strict transform with multiplicity 2",
        "reference",
        2,
        mult,
        note="the glued component meets each exceptional curve in one double point",
    )

    group = component_group(case.fiber)
    _add_check(checks, "component group", "reference", case.expected_group, group)

    graph = DualGraph(
        case.fiber.labels,
        (("G1", "G2"), ("G1", "G2"), ("G1", "G3"), ("G1", "G3")),
    )
    holds, predicted = chiodo_check(graph, 2)
    _add_check(
        checks,
        "incidence graph consistency",
        "derived",
        [True, True, True],
        [
            graph_to_fiber(graph).matrix == case.fiber.matrix,
            holds and predicted == group,
            c2(graph) == 2,
        ],
        note="the double-edge dual graph reproduces the matrix and the torsion criterion",
    )

    verdicts = [div.gamma_and_verdict(case.fiber, h) for h in case.incidences]
    _add_check(
        checks,
        "verdicts",
        "reference",
        [case.expected_verdict] * 2,
        [v.kind for v in verdicts],
        note="the extended divisors have no vertical part, so the torsor extension is fppf",
    )
    _add_check(
        checks,
        "obstruction vectors",
        "reference",
        [list(g) for g in case.expected_gammas],
        [list(v.gamma) for v in verdicts],
    )

    orders = [div.class_in_phi(case.fiber, h)[1] for h in case.incidences]
    _add_check(checks, "component-group class orders", "derived", [1, 1], orders)

    shortcut = div.coprime_shortcut(p * p, group)
    _add_check(
        checks,
        "coprimality shortcut agrees",
        "reference",
        [True, True],
        [shortcut, shortcut == all(v.kind == div.FPPF_EXTENSION for v in verdicts)],
        note="gcd(p^2, 4) = 1 forces the fppf conclusion independently",
    )

    return checks


# -- the l-example pipeline ---------------------------------------------------


def _reproduce_l(case: ExampleCase) -> list[dict]:
    l = case.parameters["l"]  # noqa: E741
    checks: list[dict] = []

    _add_check(checks, "fiber validates", "reference", True, bool(validate(case.fiber)))

    chart1, chart2 = curve_charts(3, l, prime=l)
    singular1 = singular_points_mod_p(chart1)
    _add_check(
        checks, "chart1 singular points", "reference", [[0, 0]], _points(singular1)
    )
    singular2 = singular_points_mod_p(chart2)
    _add_check(
        checks,
        "chart2 has no singular points",
        "reference",
        [],
        _points(singular2),
    )

    dim, regular = tangent_dimension(chart1, (0, 0))
    _add_check(
        checks,
        "cotangent dimension at the singular point",
        "derived",
        [3, False],
        [dim, regular],
        note="the reference computation records non-regularity; the value 3 is computed",
    )

    blown = blowup_point(chart1, (0, 0))
    b_chart1, b_chart2, b_chart3 = blown

    vars1 = b_chart1.variables
    x_p = IntPolynomial.variable(vars1, "x")
    v_p = IntPolynomial.variable(vars1, "v")
    w_p = IntPolynomial.variable(vars1, "w")
    expected1 = (
        v_p * v_p - (x_p**4 - (1 + l * l) * x_p + w_p * w_p),
        x_p * w_p - l,
    )
    _add_check(
        checks,
        "blowup chart1 equals printed system",
        "reference",
        [str(e) for e in expected1],
        [str(e) for e in b_chart1.equations],
    )

    vars3 = b_chart3.variables
    u3 = IntPolynomial.variable(vars3, "u")
    v3 = IntPolynomial.variable(vars3, "v")
    expected3 = v3 * v3 - (l**4 * u3**6 - (1 + l * l) * l * u3**3 + 1)
    _add_check(
        checks,
        "blowup chart3 equals printed system",
        "reference",
        [str(expected3)],
        [str(e) for e in b_chart3.equations],
    )

    vars2 = b_chart2.variables
    y2 = IntPolynomial.variable(vars2, "y")
    u2 = IntPolynomial.variable(vars2, "u")
    w2 = IntPolynomial.variable(vars2, "w")
    expected2 = (
        1 - (y2**4 * u2**6 - (1 + l * l) * y2 * u2**3 + w2 * w2),
        y2 * w2 - l,
    )
    _add_check(
        checks,
        "blowup chart2 matches derived expansion",
        "derived",
        [str(e) for e in expected2],
        [str(e) for e in b_chart2.equations],
        note="recorded with the second blow-up variable as the chart coordinate",
    )

    _add_check(
        checks,
        "model regular above the center",
        "reference",
        True,
        _regular_above_center(blown, (0, 0)),
        note="every fiber point above the blown-up point has cotangent dimension 2",
    )

    components = {
        "G1": (x_p, v_p - w_p),
        "G2": (x_p, v_p + w_p),
        "G3": (w_p, v_p * v_p - (x_p**4 - x_p)),
    }
    _add_check(
        checks,
        "claimed components verified in blowup chart1",
        "reference",
        [True, True, True],
        [verify_component(b_chart1, eqs) for eqs in components.values()],
    )

    _add_check(
        checks,
        "components meet at the origin of the chart",
        "derived",
        [True, True, True],
        [
            all(eq.evaluate_mod((0, 0, 0), l) == 0 for eq in eqs)
            for eqs in components.values()
        ],
    )

    pair_mults = [
        local_multiplicity(list(components[a]) + list(components[b]), (0, 0, 0), l)
        for a, b in (("G1", "G2"), ("G1", "G3"), ("G2", "G3"))
    ]
    _add_check(
        checks,
        "pairwise intersection multiplicities",
        "derived",
        [1, 1, 1],
        pair_mults,
        note="matches the off-diagonal entries of the incidence matrix",
    )

    # section reductions, recomputed instead of trusted
    q0 = (1, 0, 0)  # x = 1, v = y/x = 0, w = l/x = l = 0 mod l
    _add_check(
        checks,
        "marked point reduces into the strict transform",
        "derived",
        [True, True, False],
        [
            all(eq.evaluate_mod(q0, l) == 0 for eq in b_chart1.equations),
            all(eq.evaluate_mod(q0, l) == 0 for eq in components["G3"]),
            any(eq.evaluate_mod(q0, l) == 0 for eq in components["G1"][:1]),
        ],
        note="(1, 0) lifts to chart coordinates (1, 0, 0), on G3 and off the exceptional locus",
    )

    # (0, l) has chart2 coordinates (y, u, w) = (l, 0, 1); (0, -l) gives w = -1
    branch_points = {1: (0, 0, 1 % l), -1: (0, 0, (-1) % l)}
    _add_check(
        checks,
        "torsor sections reduce to the two exceptional branches",
        "derived",
        [True, True],
        [
            all(eq.evaluate_mod(branch_points[1], l) == 0 for eq in b_chart2.equations),
            all(eq.evaluate_mod(branch_points[-1], l) == 0 for eq in b_chart2.equations),
        ],
        note="(0, l) lands at chart2 point (0, 0, 1), (0, -l) at (0, 0, -1)",
    )

    glue_ok = True
    for t in range(1, l):
        # chart1 exceptional points (0, t, +-t) map to chart2 (0, 1/t, +-1)
        inv = pow(t, -1, l)
        for sign in (1, -1):
            source = (0, t, sign * t % l)
            image = (0, inv, sign % l)
            if any(eq.evaluate_mod(source, l) != 0 for eq in b_chart1.equations):
                glue_ok = False
            if any(eq.evaluate_mod(image, l) != 0 for eq in b_chart2.equations):
                glue_ok = False
    _add_check(
        checks,
        "chart gluing is consistent on the exceptional branches",
        "derived",
        True,
        glue_ok,
        note="w-coordinate 1 marks the branch v = w, w-coordinate -1 the branch v = -w",
    )

    infinity = (0, (-1) % l)
    far_fiber = _fiber_points(chart2, {})
    g3_glue = True
    for x0, v0, w0 in _fiber_points(b_chart1, {"w": 0}):
        if x0 == 0:
            continue
        inv = pow(x0, -1, l)
        image = (inv, v0 * inv * inv % l)
        if image not in far_fiber:
            g3_glue = False
    _add_check(
        checks,
        "infinity section lands on the glued strict-transform chart",
        "derived",
        [True, True],
        [tuple(infinity) in set(far_fiber), g3_glue],
        note="the point at infinity with t = -1 carries the divisor's pole",
    )

    group = component_group(case.fiber)
    _add_check(checks, "component group", "reference", case.expected_group, group)

    triangle = DualGraph(case.fiber.labels, (("G1", "G2"), ("G1", "G3"), ("G2", "G3")))
    holds, predicted = chiodo_check(triangle, 3)
    _add_check(
        checks,
        "dual graph consistency",
        "derived",
        [True, True, True],
        [
            graph_to_fiber(triangle).matrix == case.fiber.matrix,
            holds and predicted == group,
            c2(triangle) == 3,
        ],
    )

    # vertical-part oracle: which integral vector v solves 3 b + M v = 0
    b0 = case.incidences[0].b
    good = tuple(3 * x for x in (Fraction(2, 3), Fraction(1, 3), Fraction(0)))
    bad = (1, 1, 0)
    residual_good = [
        3 * bi + mv for bi, mv in zip(b0, case.fiber.matrix.apply([int(x) for x in good]))
    ]
    residual_bad = [3 * bi + mv for bi, mv in zip(b0, case.fiber.matrix.apply(bad))]
    _add_check(
        checks,
        "vertical part oracle",
        "derived",
        [[0, 0, 0], False],
        [residual_good, all(x == 0 for x in residual_bad)],
        note=(
            "3b + M(2,1,0) = 0 exactly while (1,1,0) fails; the reference text "
            "prints the vertical part as (1/3)(V+V'), which the substitution "
            "oracle contradicts, with no effect on the verdict"
        ),
    )

    parts = [div.extend_divisor(case.fiber, h) for h in case.incidences]
    _add_check(
        checks,
        "vertical parts",
        "derived",
        [["2/3", "1/3", "0"], ["1/3", "2/3", "0"]],
        [[_frac_str(x) for x in part.q] for part in parts],
    )

    verdicts = [div.gamma_and_verdict(case.fiber, h) for h in case.incidences]
    _add_check(
        checks,
        "verdicts",
        "reference",
        [case.expected_verdict] * 2,
        [v.kind for v in verdicts],
        note="fractional vertical parts: the torsor only extends logarithmically",
    )
    _add_check(
        checks,
        "obstruction vectors",
        "derived",
        [list(g) for g in case.expected_gammas],
        [list(v.gamma) for v in verdicts],
    )

    class_data = [div.class_in_phi(case.fiber, h) for h in case.incidences]
    _add_check(
        checks,
        "component-group class orders",
        "derived",
        [3, 3],
        [order for _, order in class_data],
    )

    pairing = div.monodromy_pairing(case.fiber, case.incidences[0], case.incidences[0])
    _add_check(checks, "generator self-pairing", "derived", Fraction(2, 3), pairing)
    cross = div.monodromy_pairing(case.fiber, case.incidences[0], case.incidences[1])
    swapped = div.monodromy_pairing(case.fiber, case.incidences[1], case.incidences[0])
    _add_check(
        checks,
        "pairing symmetry",
        "derived",
        True,
        cross == swapped,
    )

    _add_check(
        checks,
        "coprimality coherence",
        "reference",
        [False, True],
        [
            div.coprime_shortcut(9, group),
            gcd(9, group.order) > 1 and group.order % class_data[0][1] == 0,
        ],
        note="the torsor group order and the component group share the divisor 3",
    )

    return checks


def reproduce(case_id: str, **overrides) -> dict:
    """Re-run an embedded case and compare every stage with its expectation.

    Overrides adjust the case parameters, e.g. ``reproduce("l-example",
    l=7)`` re-runs the auxiliary-prime study at 7; the structural results
    (component group, verdict) do not depend on the auxiliary prime.
    """
    case = build_case(case_id, **overrides)
    if case.case_id == P_EXAMPLE:
        checks = _reproduce_p(case)
    else:
        checks = _reproduce_l(case)
    return {
        "example": case.case_id,
        "parameters": dict(case.parameters),
        "checks": checks,
        "all_pass": all(c["passed"] for c in checks),
    }


def render_report(report: dict) -> str:
    """Human-readable rendering of a reproduction report."""
    lines = [
        f"case: {report['example']}",
        "parameters: "
        + ", ".join(f"{k}={v}" for k, v in sorted(report["parameters"].items())),
        "",
    ]
    for check in report["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        lines.append(f"[{status}] {check['name']} ({check['provenance']})")
        if not check["passed"] or "note" in check:
            lines.append(f"    expected: {check['expected']}")
            lines.append(f"    computed: {check['computed']}")
        if "note" in check:
            lines.append(f"    note: {check['note']}")
    lines.append("")
    lines.append("all checks pass" if report["all_pass"] else "SOME CHECKS FAILED")
    return "\n".join(lines)
