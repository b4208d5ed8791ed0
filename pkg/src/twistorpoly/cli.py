"""JSON front end: ``twistorpoly <command>`` reads a payload and prints a report.

Reports echo their inputs along with the effective tolerance and seed, so output
is deterministic for a fixed (payload, tolerance, seed).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import numpy as np

from . import __version__
from .errors import MalformedInput, TwistorError, UnknownCommand
from .klein import as_plucker, classify_hyperplane, classify_point, klein_q, kappa
from .orbits import (GL2HElement, act_gamma, admissibility_roots,
                     is_admissible_for, is_globally_admissible, normalize,
                     orbit_equal, transformed_graph_matrix)
from .planarity import (annihilator_basis, covector_and_pole, delta_nu_rank,
                        hyperplane_residuals, lambda_type, planarity_report)
from .quat_core import EPS
from .sliceregpoly import SliceRegPoly, lift_coefficients, twistor_plucker_at

SCHEMA_VERSION = "1"
DEFAULT_SEED = 0


def _complex(pair) -> complex:
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise MalformedInput(f"complex number must be [re, im], got {pair!r}")
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"non-numeric complex {pair!r}") from exc


def _cjson(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _cvec_json(arr) -> list:
    return [_cjson(z) for z in np.asarray(arr).reshape(-1)]


def _field(payload: dict, key: str):
    if not isinstance(payload, dict):
        raise MalformedInput("payload must be a JSON object")
    if key not in payload:
        raise MalformedInput(f"payload is missing {key!r}")
    return payload[key]


def _vector6(payload: dict, key: str) -> np.ndarray:
    raw = _field(payload, key)
    if not isinstance(raw, list):
        raise MalformedInput(f"{key} must be a list of 6 [re, im] pairs")
    return as_plucker([_complex(z) for z in raw])


def _poly(payload: dict, key: str | None, tol: float) -> SliceRegPoly:
    data = payload if key is None else _field(payload, key)
    return SliceRegPoly.from_json(data, tol=tol)


def _samples(payload: dict) -> list[complex]:
    raw = payload.get("samples", [[0.0, 1.0]])
    if not isinstance(raw, list):
        raise MalformedInput("samples must be a list of [re, im] pairs")
    return [_complex(v) for v in raw]


def _cmd_classify_point(payload, tol, rng):
    p = _vector6(payload, "zeta")
    orbit = classify_point(p, tol)
    return orbit.to_json(), {"q": _cjson(klein_q(p))}


def _cmd_classify_hyperplane(payload, tol, rng):
    z = _vector6(payload, "z")
    orbit = classify_hyperplane(z, tol)
    return orbit.to_json(), {"pole": _cvec_json(kappa(z))}


def _cmd_lift(payload, tol, rng):
    f = _poly(payload, "poly", tol)
    points = []
    for v in _samples(payload):
        p = twistor_plucker_at(f, v)
        points.append({"v": _cjson(v), "zeta": _cvec_json(p),
                       "q": _cjson(klein_q(p))})
    coeffs = lift_coefficients(f)
    result = {"coefficients": [_cvec_json(row) for row in coeffs], "points": points}
    return result, {"max_abs_q": max((abs(complex(*pt["q"])) for pt in points),
                                     default=0.0)}


def _cmd_planarity(payload, tol, rng):
    f = _poly(payload, "poly", tol)
    report = planarity_report(f, rng=rng, tol=tol)
    return report.to_json(), report.diagnostics()


def _cmd_hyperplane_family(payload, tol, rng):
    f = _poly(payload, "poly", tol)
    family = []
    residual = 0.0
    for lam in annihilator_basis(f, tol):
        z, pole = covector_and_pole(lam, f, tol)
        delta, nu, rank = delta_nu_rank(lam, tol)
        res = float(np.abs(hyperplane_residuals(f, z)).max())
        residual = max(residual, res)
        family.append({"lambda": lam.to_json(), "covector": _cvec_json(z),
                       "pole": _cvec_json(pole), "delta": _cjson(delta),
                       "nu": nu, "rank": rank, "type": lambda_type(lam, tol).value})
    return {"dimension": len(family), "family": family}, {"max_residual": residual}


def _cmd_normal_form(payload, tol, rng):
    f = _poly(payload, None, tol)
    nf, Tf = normalize(f, tol)
    check = act_gamma(Tf, f, tol)
    residual = float(np.abs(check.coeff_array() - nf.to_poly().coeff_array()).max())
    return {"normal_form": nf.to_json(), "witness": Tf.to_json()}, {"residual": residual}


def _cmd_orbit_equal(payload, tol, rng):
    f = _poly(payload, "f", tol)
    h = _poly(payload, "h", tol)
    equal, eta = orbit_equal(f, h, tol)
    result = {"equal": equal, "eta": None if eta is None else eta.to_json()}
    return result, {"degrees": [f.degree, h.degree]}


def _element(payload) -> GL2HElement:
    return GL2HElement.from_json(_field(payload, "T"))


def _cmd_act(payload, tol, rng):
    T = _element(payload)
    f = _poly(payload, "poly", tol)
    if is_globally_admissible(T, tol):
        return {"poly": act_gamma(T, f, tol).to_json()}, {"lower_triangular": True}
    # outside the lower-triangular subgroup only graph-matrix samples exist
    samples = []
    for v in _samples(payload):
        Phi = transformed_graph_matrix(T, f, v, tol)
        samples.append({"v": _cjson(v), "Phi": [_cvec_json(row) for row in Phi]})
    return {"poly": None, "graph_samples": samples}, {"lower_triangular": False}


def _cmd_admissible(payload, tol, rng):
    T = _element(payload)
    f = _poly(payload, "poly", tol)
    ok = is_admissible_for(T, f, tol)
    roots = sorted(admissibility_roots(T, f, tol), key=lambda z: (z.real, z.imag))
    return {"admissible": ok}, {"roots": [_cjson(z) for z in roots]}


COMMANDS: dict[str, Callable] = {
    "classify-point": _cmd_classify_point,
    "classify-hyperplane": _cmd_classify_hyperplane,
    "lift": _cmd_lift,
    "planarity": _cmd_planarity,
    "hyperplane-family": _cmd_hyperplane_family,
    "normal-form": _cmd_normal_form,
    "orbit-equal": _cmd_orbit_equal,
    "act": _cmd_act,
    "admissible": _cmd_admissible,
}


def _settings(request: dict, tolerance, seed) -> tuple[float, int]:
    tol = request.get("tolerance", tolerance)
    seed = request.get("seed", seed)
    tol = EPS if tol is None else tol
    seed = DEFAULT_SEED if seed is None else seed
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise MalformedInput(f"tolerance must be a positive number, got {tol!r}")
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise MalformedInput(f"seed must be an integer, got {seed!r}")
    return float(tol), seed


def run(request, tolerance: float | None = None, seed: int | None = None) -> dict:
    """Execute one request and return its report.

    Raises MalformedInput / UnknownCommand before any computation and lets
    TwistorError subclasses from the library propagate.
    """
    if not isinstance(request, dict):
        raise MalformedInput("request must be a JSON object")
    command = request.get("command")
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}")
    payload = request.get("payload", {})
    if not isinstance(payload, dict):
        raise MalformedInput("payload must be a JSON object")
    tol, seed = _settings(request, tolerance, seed)
    rng = np.random.default_rng(seed)
    result, diagnostics = COMMANDS[command](payload, tol, rng)
    return {
        "command": command,
        "inputs": payload,
        "result": result,
        "diagnostics": diagnostics,
        "tolerance": tol,
        "seed": seed,
        "version": SCHEMA_VERSION,
    }


def _error_record(request, exc: Exception) -> dict:
    kind = "domain" if isinstance(exc, TwistorError) else "malformed"
    command = request.get("command") if isinstance(request, dict) else None
    return {"command": command, "error": {"kind": kind, "type": type(exc).__name__,
                                          "message": str(exc)}}


def run_safe(request, tolerance=None, seed=None) -> tuple[dict, int]:
    """Report plus exit code; errors become error records."""
    try:
        return run(request, tolerance, seed), 0
    except MalformedInput as exc:
        return _error_record(request, exc), 1
    except TwistorError as exc:
        return _error_record(request, exc), 2


def batch(requests, tolerance=None, seed=None) -> list[dict]:
    if not isinstance(requests, list):
        raise MalformedInput("batch input must be a JSON array of requests")
    return [run_safe(req, tolerance, seed)[0] for req in requests]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistorpoly",
                                     description="Twistor lifts of quaternionic polynomials.")
    parser.add_argument("--tolerance", type=float, default=None,
                        help=f"numerical tolerance (default {EPS})")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"seed for randomized witness searches (default {DEFAULT_SEED})")
    parser.add_argument("--in", dest="infile", default=None,
                        help="read JSON from this file instead of stdin")
    parser.add_argument("--out", dest="outfile", default=None,
                        help="write JSON to this file instead of stdout")
    parser.add_argument("--version", action="version",
                        version=f"twistorpoly {__version__} (schema {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, help=f"payload JSON for {name}")
    sub.add_parser("request", help="full request object {command, payload, ...}")
    bp = sub.add_parser("batch", help="JSON array of requests")
    bp.add_argument("path", help="file holding the array")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.outfile, "w") if args.outfile else sys.stdout
    try:
        code = _dispatch(args, out)
    finally:
        if args.outfile:
            out.close()
    return code


def _dispatch(args, out) -> int:
    if args.command == "batch":
        try:
            with open(args.path) as fh:
                requests = _read_json(fh.read())
            reports = batch(requests, args.tolerance, args.seed)
        except FileNotFoundError as exc:
            print(dumps({"error": {"kind": "malformed", "type": "FileNotFound",
                                   "message": str(exc)}}), file=out)
            return 1
        except MalformedInput as exc:
            print(dumps(_error_record(None, exc)), file=out)
            return 1
        for report in reports:
            print(dumps(report), file=out)
        return 0

    try:
        if args.infile:
            with open(args.infile) as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        data = _read_json(text)
    except (MalformedInput, FileNotFoundError) as exc:
        print(dumps(_error_record(None, exc)), file=out)
        return 1
    if args.command == "request":
        request = data
    else:
        request = {"command": args.command, "payload": data}
    report, code = run_safe(request, args.tolerance, args.seed)
    print(dumps(report), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
