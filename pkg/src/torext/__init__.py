"""Exact-arithmetic toolkit for extending torsors over regular models of curves.

The package decides, from a regular model's combinatorial data, whether
a pointed torsor on a curve extends to an fppf torsor over the model or
only to a logarithmic one: dual-graph invariants, component groups of
Neron models from intersection matrices, rational vertical parts of
extended divisors with their integrality obstruction, the monodromy
pairing, and a symbolic engine that builds and checks the regular models
themselves (singularity search, blow-up charts, component verification).
Everything computes over exact integers and rationals.
"""

from .errors import (
    CapExceeded,
    CenterNotOnFiber,
    DegreeNotZero,
    DisconnectedGraph,
    InputError,
    InvalidFiber,
    NotHypersurface,
    NotStabilized,
    NotTriangular,
    PointNotOnFiber,
    PolynomialSyntaxError,
    ResourceError,
    TorextError,
    UnknownExample,
    UnknownVariable,
)
from .linalg import (
    IntMatrix,
    SnfResult,
    det,
    int_inverse,
    rank,
    smith_normal_form,
    solve_affine_rational,
)
from .fiber import (
    ComponentGroupData,
    FiniteAbelianGroup,
    IntersectionData,
    component_group,
    jr_finiteness,
    torsion_subgroup,
    validate,
)
from .graphs import (
    Cycle,
    DualGraph,
    betti1,
    c2,
    chiodo_check,
    enumerate_cycles,
    graph_to_fiber,
)
from .divisors import (
    FPPF_EXTENSION,
    LOG_ONLY,
    HorizontalIncidence,
    Verdict,
    VerticalPart,
    class_in_phi,
    coprime_shortcut,
    extend_divisor,
    gamma_and_verdict,
    monodromy_pairing,
)
from .poly import IntPolynomial, parse_polynomial
from .modelkit import (
    AffineChart,
    FpPoint,
    blowup_point,
    curve_charts,
    local_multiplicity,
    singular_points_mod_p,
    tangent_dimension,
    verify_component,
)
from .cases import ExampleCase, list_examples, render_report, reproduce

__version__ = "0.1.0"

__all__ = [
    "AffineChart",
    "CapExceeded",
    "CenterNotOnFiber",
    "ComponentGroupData",
    "Cycle",
    "DegreeNotZero",
    "DisconnectedGraph",
    "DualGraph",
    "ExampleCase",
    "FPPF_EXTENSION",
    "FiniteAbelianGroup",
    "FpPoint",
    "HorizontalIncidence",
    "InputError",
    "IntMatrix",
    "IntPolynomial",
    "IntersectionData",
    "InvalidFiber",
    "LOG_ONLY",
    "NotHypersurface",
    "NotStabilized",
    "NotTriangular",
    "PointNotOnFiber",
    "PolynomialSyntaxError",
    "ResourceError",
    "SnfResult",
    "TorextError",
    "UnknownExample",
    "UnknownVariable",
    "Verdict",
    "VerticalPart",
    "betti1",
    "blowup_point",
    "c2",
    "chiodo_check",
    "class_in_phi",
    "component_group",
    "coprime_shortcut",
    "curve_charts",
    "det",
    "enumerate_cycles",
    "extend_divisor",
    "gamma_and_verdict",
    "graph_to_fiber",
    "int_inverse",
    "jr_finiteness",
    "list_examples",
    "local_multiplicity",
    "monodromy_pairing",
    "parse_polynomial",
    "rank",
    "render_report",
    "reproduce",
    "singular_points_mod_p",
    "smith_normal_form",
    "solve_affine_rational",
    "tangent_dimension",
    "torsion_subgroup",
    "validate",
    "verify_component",
]
