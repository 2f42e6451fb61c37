"""Batch JSON command-line front end.

Every subcommand reads one JSON document (--in FILE or stdin), runs the
corresponding library operation, and writes one JSON document (--out FILE or
stdout). Exit codes: 0 ok, 1 domain error (NotAUnit, WidegNotCertified, ...),
2 malformed input or unknown subcommand. Element coordinates are emitted as
decimal strings so values never depend on 64-bit integer behavior; output key
order is canonical, making byte-identical reruns the contract (--timings
opts into a non-deterministic timings block).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from .dynamics import ResidueSeries, good_lift_search, sen_check
from .errors import DomainError
from .hensel import hensel_factor, slope_zero_factor
from .okfield import FieldSpec, OKElement
from .resultant import common_root_test, disc_n, res_n
from .series import PowerSeries
from .universal import bgw_p0, respol_symmetric, universal_prepare
from .weierstrass import weierstrass_divide, weierstrass_prepare

SUBCOMMANDS = (
    "prepare",
    "divide",
    "resultant",
    "discriminant",
    "newton",
    "hensel",
    "slope0",
    "sen",
    "lift",
    "universal",
)


class SchemaError(Exception):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    certified_precision: int | None = None
    timings: dict | None = None
    error: dict | None = None
    exit_code: int = 0

    def to_json(self, include_timings: bool = False) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.status == "ok":
            out["payload"] = self.payload
            out["certified_precision"] = self.certified_precision
        else:
            out["error"] = self.error
        if include_timings and self.timings is not None:
            out["timings"] = self.timings
        return out


# -- schema-checked JSON access ---------------------------------------------


def _get(obj: dict, key: str, path: str, required: bool = True):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        if required:
            raise SchemaError(f"{path}.{key}", "missing required field")
        return None
    return obj[key]


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(path, f"expected an integer, got {type(value).__name__}")
    try:
        return int(value)
    except ValueError:
        raise SchemaError(path, f"not an integer: {value!r}") from None


def _as_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, f"expected an array, got {type(value).__name__}")
    return value


def _parse_field(obj, path: str, precision_override: int | None) -> FieldSpec:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected a field-spec object")
    p = _as_int(_get(obj, "p", path), f"{path}.p")
    eis = [
        _as_int(c, f"{path}.eisenstein[{i}]")
        for i, c in enumerate(_as_list(_get(obj, "eisenstein", path), f"{path}.eisenstein"))
    ]
    prec = _as_int(_get(obj, "precision", path), f"{path}.precision")
    if precision_override is not None:
        prec = precision_override
    try:
        return FieldSpec(p=p, eisenstein=tuple(eis), precision=prec)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _parse_element(obj, path: str, spec: FieldSpec) -> OKElement:
    if isinstance(obj, (int, str)):
        return OKElement.from_int(_as_int(obj, path), spec)
    coords = [_as_int(c, f"{path}[{i}]") for i, c in enumerate(_as_list(obj, path))]
    if len(coords) > spec.e:
        raise SchemaError(path, f"at most {spec.e} coordinates expected")
    return OKElement.from_coeffs(coords, spec)


def _parse_series(obj, path: str, spec: FieldSpec, xprec_override: int | None) -> PowerSeries:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected a series object with 'coeffs'")
    coeffs = [
        _parse_element(c, f"{path}.coeffs[{i}]", spec)
        for i, c in enumerate(_as_list(_get(obj, "coeffs", path), f"{path}.coeffs"))
    ]
    xprec = obj.get("xprec")
    if xprec is not None:
        xprec = _as_int(xprec, f"{path}.xprec")
    if xprec_override is not None:
        xprec = xprec_override
    if xprec is None:
        xprec = len(coeffs)
    if xprec < 1:
        raise SchemaError(f"{path}.xprec", "must be >= 1")
    return PowerSeries.from_elements(coeffs, spec, xprec=xprec)


def _parse_residue_series(obj, path: str, xprec_override: int | None) -> ResidueSeries:
    p = _as_int(_get(obj, "p", path), f"{path}.p")
    coeffs = [
        _as_int(c, f"{path}.coeffs[{i}]")
        for i, c in enumerate(_as_list(_get(obj, "coeffs", path), f"{path}.coeffs"))
    ]
    xprec = obj.get("xprec")
    if xprec is not None:
        xprec = _as_int(xprec, f"{path}.xprec")
    if xprec_override is not None:
        xprec = xprec_override
    try:
        return ResidueSeries.from_ints(p, coeffs, xprec=xprec)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _valuation_json(value: OKElement, precision: int):
    v = value.valuation()
    if v is None or v >= precision:
        return f"at-least-{precision}"
    return v


# -- subcommand handlers -----------------------------------------------------


def _cmd_prepare(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    fac = weierstrass_prepare(f)
    payload = {
        "p": {"n": fac.p.n, "lows": [c.to_json() for c in fac.p.lows]},
        "u": fac.u.to_json(),
        "reconstruction_ok": fac.verify(f),
    }
    return CommandResult("ok", payload, spec.precision)


def _cmd_divide(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    g = _parse_series(_get(data, "g", "input"), "input.g", spec, args.xprec)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    q, r = weierstrass_divide(g, f)
    payload = {"q": q.to_json(), "r": [c.to_json() for c in r]}
    return CommandResult("ok", payload, spec.precision)


def _cmd_resultant(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    g = _parse_series(_get(data, "g", "input"), "input.g", spec, args.xprec)
    r = res_n(f, g)
    verdict = common_root_test(f, g)
    payload = {
        "value": r.value.to_json(),
        "valuation": _valuation_json(r.value, r.precision),
        "common_root": verdict.kind,
    }
    return CommandResult("ok", payload, r.precision)


def _cmd_discriminant(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    d = disc_n(f)
    payload = {
        "value": d.value.to_json(),
        "valuation": _valuation_json(d.value, d.precision),
        "simple_roots_certified": d.certified_nonzero(),
    }
    return CommandResult("ok", payload, d.precision)


def _cmd_newton(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    np_ = f.newton_polygon()
    payload = {
        "segments": [
            {"slope": str(s), "length": length} for s, length in np_.segments
        ],
        "origin_multiplicity": np_.origin_multiplicity,
        "certified_up_to": None if np_.certified_up_to is None else str(np_.certified_up_to),
        "disk_roots": np_.disk_roots,
    }
    return CommandResult("ok", payload, spec.precision)


def _cmd_hensel(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    fac = hensel_factor(f)
    payload = {
        "P": [c.to_json() for c in fac.factor],
        "U": fac.unit_part.to_json(),
        "mu_min": fac.mu_min,
        "degree": fac.degree,
        "reconstruction_ok": fac.verify(f),
    }
    return CommandResult("ok", payload, spec.precision)


def _cmd_slope0(data: dict, args) -> CommandResult:
    spec = _parse_field(_get(data, "field", "input"), "input.field", args.precision)
    f = _parse_series(_get(data, "f", "input"), "input.f", spec, args.xprec)
    factor = slope_zero_factor(f)
    payload = {"P": [c.to_json() for c in factor]}
    return CommandResult("ok", payload, spec.precision)


def _cmd_sen(data: dict, args) -> CommandResult:
    w = _parse_residue_series(data, "input", args.xprec)
    n_max = _as_int(_get(data, "n_max", "input"), "input.n_max")
    pairs = sen_check(w, n_max)
    payload = {
        "pairs": [
            {
                "n": sp.n,
                "i_prev": sp.i_prev,
                "i": sp.i,
                "mod": sp.modulus,
                "pass": sp.passed,
            }
            for sp in pairs
        ]
    }
    return CommandResult("ok", payload, None)


def _cmd_lift(data: dict, args) -> CommandResult:
    w = _parse_residue_series(data, "input", args.xprec)
    ns = [
        _as_int(v, f"input.ns[{i}]")
        for i, v in enumerate(_as_list(_get(data, "ns", "input"), "input.ns"))
    ]
    budget = _as_int(_get(data, "budget", "input"), "input.budget")
    seed = _as_int(_get(data, "seed", "input"), "input.seed")
    if args.seed is not None:
        seed = args.seed
    precision = _as_int(_get(data, "precision", "input"), "input.precision")
    if args.precision is not None:
        precision = args.precision
    report = good_lift_search(w, ns, budget=budget, seed=seed, precision=precision)
    return CommandResult("ok", report.to_json(), precision)


def _cmd_universal(data: dict, args) -> CommandResult:
    op = _get(data, "op", "input")
    if op == "prepare":
        n = _as_int(_get(data, "n", "input"), "input.n")
        D = _as_int(_get(data, "D", "input"), "input.D")
        kmax = _as_int(_get(data, "kmax", "input"), "input.kmax")
        prep = universal_prepare(n, D, kmax)
        payload = {
            "P": [s.to_json() for s in prep.p_lows],
            "U": [s.to_json() for s in prep.u_coeffs],
        }
    elif op == "bgw":
        D = _as_int(_get(data, "D", "input"), "input.D")
        kmax = _as_int(_get(data, "kmax", "input"), "input.kmax")
        payload = {"terms": bgw_p0(D, kmax).to_json()}
    elif op == "respol":
        n = _as_int(_get(data, "n", "input"), "input.n")
        dmax = _as_int(_get(data, "dmax", "input"), "input.dmax")
        gmax = _as_int(_get(data, "gmax", "input"), "input.gmax")
        payload = {"terms": respol_symmetric(n, dmax, gmax).to_json()}
    else:
        raise SchemaError("input.op", "expected one of: prepare, bgw, respol")
    return CommandResult("ok", payload, None)


_HANDLERS = {
    "prepare": _cmd_prepare,
    "divide": _cmd_divide,
    "resultant": _cmd_resultant,
    "discriminant": _cmd_discriminant,
    "newton": _cmd_newton,
    "hensel": _cmd_hensel,
    "slope0": _cmd_slope0,
    "sen": _cmd_sen,
    "lift": _cmd_lift,
    "universal": _cmd_universal,
}

_FIELD_SCHEMA = {"p": "int (prime)", "eisenstein": "[c_0, ..., c_e] monic Eisenstein", "precision": "int N >= 1"}
_SERIES_SCHEMA = {"coeffs": "[element, ...] (element: int or [decimal strings])", "xprec": "int (optional, pads with zeros)"}

SCHEMAS = {
    "prepare": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA},
    "divide": {"field": _FIELD_SCHEMA, "g": _SERIES_SCHEMA, "f": _SERIES_SCHEMA},
    "resultant": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA, "g": _SERIES_SCHEMA},
    "discriminant": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA},
    "newton": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA},
    "hensel": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA},
    "slope0": {"field": _FIELD_SCHEMA, "f": _SERIES_SCHEMA},
    "sen": {"p": "int (prime)", "coeffs": "[ints] with c_0=0, c_1=1", "xprec": "int (optional)", "n_max": "int >= 1"},
    "lift": {
        "p": "int (prime)",
        "coeffs": "[ints] with c_0=0, c_1=1",
        "xprec": "int (optional)",
        "ns": "[ints] iterate orders to certify",
        "budget": "int",
        "seed": "int",
        "precision": "int N for the lift",
    },
    "universal": {
        "op": "prepare | bgw | respol",
        "n": "int (prepare, respol)",
        "D": "int truncation order (prepare, bgw)",
        "kmax": "int variable window (prepare, bgw)",
        "dmax": "int (respol)",
        "gmax": "int (respol)",
    },
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicprep",
        description="p-adic Weierstrass preparation, resultants, Hensel factorization, iteration tools",
    )
    parser.add_argument("--precision", type=int, default=None, help="override the field precision N")
    parser.add_argument("--xprec", type=int, default=None, help="override the series X-precision M")
    parser.add_argument("--seed", type=int, default=None, help="override the lift search seed")
    parser.add_argument("--timings", action="store_true", help="include timings in the output")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--in", dest="infile", default=None, help="input JSON file (default: stdin)")
        sp.add_argument("--out", dest="outfile", default=None, help="output JSON file (default: stdout)")
    return parser


def run(argv: list[str]) -> CommandResult:
    """Execute one subcommand; returns the CommandResult without printing."""
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        if args.infile is not None:
            with open(args.infile, "r", encoding="utf-8") as fh:
                raw = fh.read()
        else:
            raw = sys.stdin.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError("input", f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise SchemaError("input", "top-level value must be an object")
        result = _HANDLERS[args.subcommand](data, args)
    except SchemaError as exc:
        result = CommandResult(
            "error",
            error={"kind": "schema", "path": exc.path, "message": exc.message},
            exit_code=2,
        )
    except DomainError as exc:
        result = CommandResult(
            "error",
            error={"kind": type(exc).__name__, "message": str(exc)},
            exit_code=1,
        )
    except ValueError as exc:
        result = CommandResult(
            "error",
            error={"kind": "usage", "message": str(exc)},
            exit_code=2,
        )
    result.timings = {"total_ms": round((time.perf_counter() - started) * 1000.0, 3)}
    result._outfile = getattr(args, "outfile", None)  # type: ignore[attr-defined]
    result._timings_requested = args.timings  # type: ignore[attr-defined]
    return result


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--schema" in argv:
        idx = argv.index("--schema")
        if idx + 1 >= len(argv) or argv[idx + 1] not in SCHEMAS:
            print(json.dumps({"subcommands": sorted(SCHEMAS)}, indent=2, sort_keys=True))
            return 2
        print(json.dumps(SCHEMAS[argv[idx + 1]], indent=2, sort_keys=True))
        return 0
    result = run(argv)
    text = json.dumps(
        result.to_json(include_timings=getattr(result, "_timings_requested", False)),
        indent=2,
        sort_keys=True,
    )
    outfile = getattr(result, "_outfile", None)
    if outfile:
        with open(outfile, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
