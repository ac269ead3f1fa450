"""Command-line front end over the JSON document formats.

Every subcommand reads JSON (a file path or an inline ``{...}`` literal),
prints one JSON object (or a text rendering with ``--format text``) and
exits 0 on success, 2 on invalid input and 3 when an enumeration or
stabilization cap is exhausted. Errors are emitted as JSON objects on
standard error. Output is deterministic: rationals are printed as exact
``a/b`` strings in lowest terms, never floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cases
from .divisors import (
    HorizontalIncidence,
    class_in_phi,
    extend_divisor,
    gamma_and_verdict,
    monodromy_pairing,
)
from .errors import InputError, ResourceError, TorextError
from .fiber import IntersectionData, component_group
from .graphs import DEFAULT_CYCLE_CAP, DualGraph, betti1, c2, chiodo_check
from .modelkit import (
    DEFAULT_POINT_CAP,
    AffineChart,
    blowup_point,
    singular_points_mod_p,
    tangent_dimension,
)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load_json(arg: str):
    text = arg.strip()
    if text.startswith("{"):
        return json.loads(text), None
    with open(arg, encoding="utf-8") as fh:
        return json.load(fh), os.path.dirname(os.path.abspath(arg))


def _load_graph(arg: str) -> DualGraph:
    doc, _ = _load_json(arg)
    return DualGraph.from_dict(doc)


def _load_fiber(arg: str) -> IntersectionData:
    doc, _ = _load_json(arg)
    return IntersectionData.from_dict(doc)


def _load_chart(arg: str) -> AffineChart:
    doc, _ = _load_json(arg)
    return AffineChart.from_dict(doc)


def _load_divisor(arg: str):
    doc, base_dir = _load_json(arg)
    if not isinstance(doc, dict) or "fiber" not in doc:
        raise InputError("divisor document needs a 'fiber' member")
    fiber_ref = doc["fiber"]
    if isinstance(fiber_ref, str):
        path = fiber_ref
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, encoding="utf-8") as fh:
            fiber_doc = json.load(fh)
    else:
        fiber_doc = fiber_ref
    fiber = IntersectionData.from_dict(fiber_doc)
    incidence = HorizontalIncidence.from_dict(doc, fiber)
    return fiber, incidence


def _parse_coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"coordinates must be comma-separated integers: {text!r}") from exc


def _render_text(result: dict, indent: str = "") -> str:
    lines = []
    for key, value in result.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for item in value:
                lines.append(f"{indent}{key}[]:")
                lines.append(_render_text(item, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value)}")
    return "\n".join(lines)


# -- subcommand handlers ------------------------------------------------------


def _cmd_chiodo(args) -> dict:
    graph = _load_graph(args.graph)
    cap = args.cap if args.cap is not None else DEFAULT_CYCLE_CAP
    holds, predicted = chiodo_check(graph, args.r, cap=cap)
    return {
        "b1": betti1(graph),
        "c2": c2(graph, cap=cap),
        "r": args.r,
        "holds": holds,
        "predicted": list(predicted.invariant_factors) if predicted else None,
    }


def _cmd_compgroup(args) -> dict:
    fiber = _load_fiber(args.fiber)
    group = component_group(fiber)
    return {"invariant_factors": list(group.invariant_factors)}


def _cmd_extend(args) -> dict:
    fiber, incidence = _load_divisor(args.divisor)
    part = extend_divisor(fiber, incidence)
    return {
        "q": [_frac_str(x) for x in part.q],
        "base": fiber.labels[part.base_index],
    }


def _cmd_verdict(args) -> dict:
    fiber, incidence = _load_divisor(args.divisor)
    verdict = gamma_and_verdict(fiber, incidence)
    return {
        "gamma": [_frac_str(x) for x in verdict.gamma],
        "kind": verdict.kind,
    }


def _cmd_class(args) -> dict:
    fiber, incidence = _load_divisor(args.divisor)
    coords, order = class_in_phi(fiber, incidence)
    return {"class": list(coords), "order": order}


def _cmd_pairing(args) -> dict:
    fiber_s, incidence_s = _load_divisor(args.divisor_s)
    fiber_t, incidence_t = _load_divisor(args.divisor_t)
    if fiber_s.to_dict() != fiber_t.to_dict():
        raise InputError("the two divisors must share the same fiber")
    value = monodromy_pairing(fiber_s, incidence_s, incidence_t)
    return {"pairing": _frac_str(value)}


def _cmd_singular(args) -> dict:
    chart = _load_chart(args.chart)
    cap = args.cap if args.cap is not None else DEFAULT_POINT_CAP
    points = singular_points_mod_p(chart, cap=cap)
    return {"points": [list(pt.coordinates) for pt in points]}


def _cmd_regular(args) -> dict:
    chart = _load_chart(args.chart)
    point = _parse_coords(args.point)
    dimension, regular = tangent_dimension(chart, point)
    return {"tangent_dimension": dimension, "is_regular": regular}


def _cmd_blowup(args) -> dict:
    chart = _load_chart(args.chart)
    center = _parse_coords(args.center)
    if len(center) != 2:
        raise InputError("--center needs exactly two coordinates")
    charts = blowup_point(chart, center)
    return {"charts": [c.to_dict() for c in charts]}


def _cmd_reproduce(args) -> dict:
    overrides = {}
    if args.p is not None:
        overrides["p"] = args.p
    if args.c is not None:
        overrides["c"] = args.c
    if args.l is not None:
        overrides["l"] = args.l
    return cases.reproduce(args.example, **overrides)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torext",
        description="exact computations on regular models: component groups, "
        "dual-graph criteria, divisor obstructions, blow-up charts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(handler=handler)
        cmd.add_argument(
            "--format", choices=("json", "text"), default="json", help="output format"
        )
        return cmd

    cmd = add("chiodo", _cmd_chiodo, "torsion criterion of a dual graph")
    cmd.add_argument("graph", help="graph JSON document or file")
    cmd.add_argument("--r", type=int, required=True, help="torsion order")
    cmd.add_argument("--cap", type=int, default=None, help="cycle enumeration cap")

    cmd = add("compgroup", _cmd_compgroup, "component group from intersection data")
    cmd.add_argument("fiber", help="fiber JSON document or file")

    cmd = add("extend", _cmd_extend, "rational vertical part of a divisor")
    cmd.add_argument("divisor", help="divisor JSON document or file")

    cmd = add("verdict", _cmd_verdict, "fppf-versus-log verdict of a divisor")
    cmd.add_argument("divisor", help="divisor JSON document or file")

    cmd = add("class", _cmd_class, "component-group class of a divisor")
    cmd.add_argument("divisor", help="divisor JSON document or file")

    cmd = add("pairing", _cmd_pairing, "monodromy pairing of two divisors")
    cmd.add_argument("divisor_s", help="first divisor JSON document or file")
    cmd.add_argument("divisor_t", help="second divisor JSON document or file")

    cmd = add("singular", _cmd_singular, "singular fiber points of a chart")
    cmd.add_argument("chart", help="chart JSON document or file")
    cmd.add_argument("--cap", type=int, default=None, help="point enumeration cap")

    cmd = add("regular", _cmd_regular, "cotangent dimension at a fiber point")
    cmd.add_argument("chart", help="chart JSON document or file")
    cmd.add_argument("--point", required=True, help="comma-separated coordinates")

    cmd = add("blowup", _cmd_blowup, "blow up a hypersurface chart at a point")
    cmd.add_argument("chart", help="chart JSON document or file")
    cmd.add_argument("--center", required=True, help="comma-separated center a,b")

    cmd = add("reproduce", _cmd_reproduce, "re-run an embedded case study")
    cmd.add_argument("example", help="case identifier (p-example or l-example)")
    cmd.add_argument("--p", type=int, default=None, help="override the main prime")
    cmd.add_argument("--c", type=int, default=None, help="override the parameter c")
    cmd.add_argument("--l", type=int, default=None, help="override the auxiliary prime")

    return parser


def _emit_error(kind: str, exc: Exception) -> None:
    payload = {"error": kind, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except ResourceError as exc:
        _emit_error(type(exc).__name__, exc)
        return 3
    except InputError as exc:
        _emit_error(type(exc).__name__, exc)
        return 2
    except TorextError as exc:
        _emit_error(type(exc).__name__, exc)
        return 2
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        _emit_error(type(exc).__name__, exc)
        return 2
    if args.format == "text":
        if args.command == "reproduce":
            print(cases.render_report(result))
        else:
            print(_render_text(result))
    else:
        print(json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
