"""Command-line front end.

Every command reads one JSON instance file (``--input``; ``-`` for stdin)
and prints canonical JSON.  Exit codes: 0 success, 1 fuzz failures found,
2 validation error, 3 engine error, 64 usage error, 65 unreadable input.
Errors are printed as ``{"error": {"code", "message", "path"}}``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import serial
from .fuzz import SUITES, run_suite
from .glalg import StandardGL, m_star
from .jantzen import (
    DecompositionRequired,
    assoc_check,
    classify_steinberg,
    langlands_display,
    mu_filter_left,
    mu_filter_right,
    product_distribute,
    psi_glue,
    steinberg_shapes,
    x_project,
)
from .lines import ConfigurationError, InvalidPartition, LineSet
from .params import ClassicalStandard, ParameterError, SigmaSupport, mu_star_classical, s_GL_standard
from .serial import ValidationError
from .transfer import LinePairContext, TransferError, transfer_generic, transfer_langlands
from .unitarity import is_unitarizable_generic, x_project_generic

EXIT_OK, EXIT_CHECK_FAILED, EXIT_VALIDATION, EXIT_ENGINE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3, 64, 65
REGISTRY_ENV = "CUSPLINE_REGISTRY"

COMMANDS = (
    "split", "glue", "mu-left", "mu-right", "m-star", "mu-star", "distribute", "assoc-check",
    "steinberg-classify", "unitary-generic", "project-generic", "transfer", "fuzz",
)


class CliError(Exception):
    def __init__(self, code: int, message: str, path: str = ""):
        super().__init__(message)
        self.code, self.message, self.path = code, message, path


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, message)


class Instance:
    """A parsed instance file: registry, sigma(s) and the raw payload."""

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            raise ValidationError("instance must be a JSON object", "")
        version = data.get("schemaVersion", 1)
        if version not in serial.SCHEMA_VERSIONS:
            raise ValidationError(f"unsupported schemaVersion {version!r}", "schemaVersion")
        self.data = data
        if "registry" in data:
            self.registry = serial.load_registry(data["registry"])
        else:
            self.registry = _env_registry()
        self.sigma = serial.sigma(data["sigma"]) if "sigma" in data else SigmaSupport("sigma", 0)
        self.sigmas = {self.sigma.id: self.sigma}
        for i, entry in enumerate(serial._expect(data.get("sigmas", []), list, "sigmas")):
            s = serial.sigma(entry, f"sigmas[{i}]")
            self.sigmas[s.id] = s

    def field(self, key):
        if key not in self.data:
            raise ValidationError(f"missing field {key!r}", "")
        return self.data[key]

    def standard(self, key) -> StandardGL:
        return StandardGL.of(*serial.segments(self.field(key), self.registry, key))

    def line_set(self, key, default=None) -> LineSet:
        if key not in self.data and default is not None:
            return default
        return serial.line_set(self.field(key), self.registry, key)

    def family(self, key, obj=None, path=None):
        obj = self.field(key) if obj is None else obj
        return serial.family(obj, self.registry, self.sigma, path or key)


def _env_registry():
    path = os.environ.get(REGISTRY_ENV)
    if not path:
        raise ValidationError(f"no registry in the instance and {REGISTRY_ENV} is unset", "registry")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read registry {path}: {exc}", REGISTRY_ENV) from None
    return serial.load_registry(data, REGISTRY_ENV)


def _lines_of(symbol_ids, reg) -> LineSet:
    return LineSet.of(*(reg[i] for i in sorted(symbol_ids)))


def cmd_m_star(inst: Instance, args):
    return {"sum": serial.formal_sum_json(m_star(inst.standard("standard")))}


def cmd_mu_star(inst: Instance, args):
    beta = inst.standard("standard")
    return {
        "sum": serial.formal_sum_json(mu_star_classical(beta, inst.sigma)),
        "sGL": serial.formal_sum_json(s_GL_standard(beta, inst.sigma)),
    }


def _gamma(inst: Instance):
    raw = inst.field("gamma")
    if isinstance(raw, list):
        return ClassicalStandard(StandardGL.of(*serial.segments(raw, inst.registry, "gamma")), inst.sigma)
    return inst.family("gamma")


def cmd_mu_left(inst: Instance, args):
    beta = inst.standard("beta")
    gamma = _gamma(inst)
    x1 = inst.line_set("x1", _lines_of({s.cusp.id for s in beta.factors}, inst.registry))
    x2 = inst.line_set("x2", _lines_of(gamma.symbol_ids(), inst.registry))
    return {"sum": serial.formal_sum_json(mu_filter_left(beta, gamma, x1, x2))}


def cmd_mu_right(inst: Instance, args):
    beta = inst.standard("beta")
    if "xi" in inst.data:
        xi = serial.xi_sum(inst.data["xi"], inst.registry, inst.sigma, "xi")
    else:
        xi = s_GL_standard(inst.standard("gamma"), inst.sigma)
    x1 = inst.line_set("x1", _lines_of({s.cusp.id for s in beta.factors}, inst.registry))
    x2 = inst.line_set("x2", _lines_of({s.cusp.id for (g, _), _ in xi for s in g.factors}, inst.registry))
    return {"sum": serial.formal_sum_json(mu_filter_right(beta, xi, x1, x2))}


def cmd_split(inst: Instance, args):
    fam = inst.family("family")
    x1, x2 = inst.line_set("x1"), inst.line_set("x2")
    out = {}
    for side, key in ((1, "x1"), (2, "x2")):
        part = x_project(fam, (x1, x2), side)
        display, _ = langlands_display(part)
        out[key] = serial.family_json(part)
        out[key + "Display"] = [
            {"exponent": serial.format_rational(ex), "gl": serial.gl_json(g)} for ex, g in display
        ]
    return out


def cmd_glue(inst: Instance, args):
    parts = []
    for i, entry in enumerate(serial._expect(inst.field("parts"), list, "parts")):
        path = f"parts[{i}]"
        serial._expect(entry, dict, path)
        ls = serial.line_set(serial._field(entry, "lines", path), inst.registry, f"{path}.lines")
        parts.append((ls, inst.family(None, serial._field(entry, "family", path), f"{path}.family")))
    return {"family": serial.family_json(psi_glue(inst.sigma, parts))}


def cmd_distribute(inst: Instance, args):
    sides = []
    for i, entry in enumerate(serial._expect(inst.field("sides"), list, "sides")):
        path = f"sides[{i}]"
        serial._expect(entry, dict, path)
        ls = serial.line_set(serial._field(entry, "lines", path), inst.registry, f"{path}.lines")
        beta = StandardGL.of(*serial.segments(entry.get("beta", []), inst.registry, f"{path}.beta"))
        gamma = inst.family(None, entry.get("gamma", {"lines": {}}), f"{path}.gamma")
        decomposition = None
        if "decomposition" in entry:
            decomposition = serial.family_sum(entry["decomposition"], inst.registry, inst.sigma, f"{path}.decomposition")
        sides.append((ls, beta, gamma, decomposition))
    return {"sum": serial.formal_sum_json(product_distribute(inst.sigma, sides))}


def cmd_assoc_check(inst: Instance, args):
    fam = inst.family("family")
    raw = serial._expect(inst.field("parts"), list, "parts")
    if len(raw) != 3:
        raise ValidationError("exactly three parts are required", "parts")
    parts = tuple(serial.line_set(p, inst.registry, f"parts[{i}]") for i, p in enumerate(raw))
    return {"holds": assoc_check(fam, parts)}


def cmd_steinberg(inst: Instance, args):
    line = serial.symbol(inst.registry, inst.field("line"), "line")
    n = inst.field("n")
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise ValidationError("n must be a positive integer", "n")
    if "param" in inst.data:
        param = serial.langlands_param(line, inst.data["param"], inst.sigma, inst.registry, "param")
        return {"class": classify_steinberg(param, n).value}
    try:
        shapes = steinberg_shapes(line, inst.sigma, n)
    except ParameterError as exc:
        raise ValidationError(str(exc), "line") from None
    return {
        "shapes": [
            {"class": classify_steinberg(p, n).value, "param": serial.langlands_json(p)} for p in shapes
        ]
    }


def _generic(inst: Instance):
    return serial.generic(inst.field("generic"), inst.registry, inst.sigma)


def cmd_unitary_generic(inst: Instance, args):
    ok, witness = is_unitarizable_generic(_generic(inst))
    return {"unitarizable": ok, "witness": serial.witness_json(witness)}


def cmd_project_generic(inst: Instance, args):
    p = _generic(inst)
    line = serial.symbol(inst.registry, inst.field("line"), "line")
    q = x_project_generic(p, line)
    ok, witness = is_unitarizable_generic(q)
    return {"generic": serial.generic_json(q), "unitarizable": ok, "witness": serial.witness_json(witness)}


def _pair(inst: Instance, text, flag):
    if not text or ":" not in text:
        raise CliError(EXIT_USAGE, f"{flag} expects SYMBOL:SIGMA")
    sym_id, sigma_id = text.split(":", 1)
    sym = serial.symbol(inst.registry, sym_id, flag)
    if sigma_id not in inst.sigmas:
        raise ValidationError(f"unknown sigma {sigma_id!r}", flag)
    return sym, inst.sigmas[sigma_id]


def cmd_transfer(inst: Instance, args):
    src, src_sigma = _pair(inst, args.src, "--src")
    dst, dst_sigma = _pair(inst, args.dst, "--dst")
    ctx = LinePairContext(src, src_sigma, dst, dst_sigma)
    out = {}
    if "generic" in inst.data:
        p = serial.generic(inst.data["generic"], inst.registry, src_sigma)
        out["generic"] = serial.generic_json(transfer_generic(ctx, p))
    else:
        param = serial.langlands_param(src, inst.field("param"), src_sigma, inst.registry, "param")
        out["param"] = serial.langlands_json(transfer_langlands(ctx, param))
        out["sigma"] = serial.sigma_json(dst_sigma)
    if ctx.warning:
        out["warning"] = ctx.warning
    return out


HANDLERS = {
    "m-star": cmd_m_star,
    "mu-star": cmd_mu_star,
    "mu-left": cmd_mu_left,
    "mu-right": cmd_mu_right,
    "split": cmd_split,
    "glue": cmd_glue,
    "distribute": cmd_distribute,
    "assoc-check": cmd_assoc_check,
    "steinberg-classify": cmd_steinberg,
    "unitary-generic": cmd_unitary_generic,
    "project-generic": cmd_project_generic,
    "transfer": cmd_transfer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cuspline", description=__doc__.splitlines()[0])
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("--input", "-i", help="instance JSON file, or - for stdin")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--suite", help="fuzz suite: " + ", ".join(SUITES))
    parser.add_argument("--src", help="transfer source SYMBOL:SIGMA")
    parser.add_argument("--dst", help="transfer destination SYMBOL:SIGMA")
    return parser


def _read_input(path):
    if not path:
        raise CliError(EXIT_USAGE, "--input is required")
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def dispatch(argv) -> tuple[int, dict]:
    try:
        args = build_parser().parse_args(argv)
        if args.command not in COMMANDS:
            raise CliError(EXIT_USAGE, f"unknown command {args.command!r}")
        if args.command == "fuzz":
            if args.suite not in SUITES:
                raise CliError(EXIT_USAGE, f"unknown suite {args.suite!r}")
            if args.trials < 0:
                raise CliError(EXIT_USAGE, "--trials must be nonnegative")
            report = run_suite(args.suite, args.trials, args.seed)
            return (EXIT_CHECK_FAILED if report["failures"] else EXIT_OK), report
        inst = Instance(_read_input(args.input))
        return EXIT_OK, HANDLERS[args.command](inst, args)
    except CliError as exc:
        return exc.code, _error(exc.code, exc.message, exc.path)
    except ValidationError as exc:
        return EXIT_VALIDATION, _error(EXIT_VALIDATION, str(exc), exc.path)
    except (ParameterError, ConfigurationError, InvalidPartition, TransferError) as exc:
        return EXIT_VALIDATION, _error(EXIT_VALIDATION, str(exc), "")
    except DecompositionRequired as exc:
        return EXIT_ENGINE, _error(EXIT_ENGINE, str(exc), "")
    except Exception as exc:  # noqa: BLE001 - the CLI never crashes on input
        return EXIT_ENGINE, _error(EXIT_ENGINE, f"{type(exc).__name__}: {exc}", "")


def _error(code, message, path):
    return {"error": {"code": code, "message": message, "path": path}}


def render(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def main(argv=None) -> int:
    code, out = dispatch(sys.argv[1:] if argv is None else argv)
    print(render(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
