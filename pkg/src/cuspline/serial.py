"""JSON reading and writing.  Rationals travel as strings ``"p/q"`` or ints."""
from __future__ import annotations

from .formal import FormalSum
from .glalg import Segment, StandardGL
from .lines import ConfigurationError, CuspidalSymbol, LineSet, Registry, as_rational, format_rational
from .params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    ParameterError,
    SigmaSupport,
    TemperedParam,
)
from .unitarity import GenericParam, Witness

SCHEMA_VERSIONS = (1,)


class ValidationError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path


def _expect(obj, kind, path):
    if not isinstance(obj, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ValidationError(f"expected {name}, got {type(obj).__name__}", path)
    return obj


def _field(obj: dict, key: str, path: str):
    if key not in obj:
        raise ValidationError(f"missing field {key!r}", path)
    return obj[key]


def rational(value, path: str):
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(str(exc), path) from None


def load_registry(data, path: str = "registry") -> Registry:
    _expect(data, list, path)
    syms = []
    for i, entry in enumerate(data):
        p = f"{path}[{i}]"
        _expect(entry, dict, p)
        ident = _expect(_field(entry, "id", p), str, f"{p}.id")
        self_dual = _expect(entry.get("selfdual", True), bool, f"{p}.selfdual")
        alpha = rational(entry.get("alpha", 0), f"{p}.alpha")
        partner = entry.get("partner")
        if partner is not None:
            _expect(partner, str, f"{p}.partner")
        deg = entry.get("degree", 1)
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise ValidationError("degree must be an integer", f"{p}.degree")
        try:
            syms.append(CuspidalSymbol(ident, self_dual, alpha, partner, deg))
        except ConfigurationError as exc:
            raise ValidationError(str(exc), p) from None
    try:
        return Registry(syms)
    except ConfigurationError as exc:
        raise ValidationError(str(exc), path) from None


def registry_json(reg: Registry) -> list:
    out = []
    for s in sorted(reg, key=lambda s: s.id):
        entry = {"id": s.id, "selfdual": s.self_dual, "alpha": format_rational(s.alpha)}
        if s.partner is not None:
            entry["partner"] = s.partner
        if s.degree != 1:
            entry["degree"] = s.degree
        out.append(entry)
    return out


def symbol(reg: Registry, ident, path: str) -> CuspidalSymbol:
    _expect(ident, str, path)
    if ident not in reg:
        raise ValidationError(f"unknown cuspidal symbol {ident!r}", path)
    return reg[ident]


def segment(obj, reg: Registry, path: str) -> Segment:
    _expect(obj, dict, path)
    cusp = symbol(reg, _field(obj, "line", path), f"{path}.line")
    b = rational(_field(obj, "b", path), f"{path}.b")
    e = rational(_field(obj, "e", path), f"{path}.e")
    try:
        return Segment(cusp, b, e)
    except ValueError as exc:
        raise ValidationError(str(exc), path) from None


def segments(obj, reg: Registry, path: str) -> list[Segment]:
    _expect(obj, list, path)
    return [segment(o, reg, f"{path}[{i}]") for i, o in enumerate(obj)]


def segment_json(s: Segment) -> dict:
    return {"line": s.cusp.id, "b": format_rational(s.b), "e": format_rational(s.e)}


def sigma(obj, path: str = "sigma") -> SigmaSupport:
    _expect(obj, dict, path)
    ident = _expect(_field(obj, "id", path), str, f"{path}.id")
    rank = obj.get("rank", 0)
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise ValidationError("rank must be a nonnegative integer", f"{path}.rank")
    return SigmaSupport(ident, rank)


def sigma_json(s: SigmaSupport) -> dict:
    return {"id": s.id, "rank": s.rank}


def line_set(obj, reg: Registry, path: str) -> LineSet:
    _expect(obj, list, path)
    return LineSet.of(*(symbol(reg, x, f"{path}[{i}]") for i, x in enumerate(obj)))


def _sign(value, path):
    if value not in (1, -1) or isinstance(value, bool):
        raise ValidationError("sign must be 1 or -1", path)
    return value


def _wrap(fn, path):
    try:
        return fn()
    except (ParameterError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc), path) from None


def tempered_param(line: CuspidalSymbol, obj: dict, sig: SigmaSupport, reg: Registry, path: str) -> TemperedParam:
    _expect(obj, dict, path)
    unknown = set(obj) - {"jord", "eps", "signed", "extra", "lang"}
    if unknown:
        raise ValidationError(f"unknown keys {sorted(unknown)}", path)
    jord = segments(obj.get("jord", []), reg, f"{path}.jord")
    eps = []
    for i, entry in enumerate(_expect(obj.get("eps", []), list, f"{path}.eps")):
        p = f"{path}.eps[{i}]"
        _expect(entry, dict, p)
        on = _field(entry, "on", p)
        if isinstance(on, list):
            if len(on) != 2:
                raise ValidationError("epsilon pairs need exactly two segments", f"{p}.on")
            key = tuple(segment(o, reg, f"{p}.on[{j}]") for j, o in enumerate(on))
        else:
            key = segment(on, reg, f"{p}.on")
        eps.append((key, _sign(_field(entry, "sign", p), f"{p}.sign")))
    signed = []
    for i, entry in enumerate(_expect(obj.get("signed", []), list, f"{path}.signed")):
        p = f"{path}.signed[{i}]"
        _expect(entry, dict, p)
        signed.append((segment(_field(entry, "seg", p), reg, f"{p}.seg"), _sign(_field(entry, "sign", p), f"{p}.sign")))
    extra = segments(obj.get("extra", []), reg, f"{path}.extra")
    ds = _wrap(lambda: DiscreteSeriesParam(line, tuple(jord), tuple(eps), sig), path)
    return _wrap(lambda: TemperedParam(ds, tuple(signed), tuple(extra)), path)


def langlands_param(line: CuspidalSymbol, obj: dict, sig: SigmaSupport, reg: Registry, path: str) -> LanglandsParam:
    tau = tempered_param(line, obj, sig, reg, path)
    neg = []
    for i, entry in enumerate(_expect(obj.get("lang", []), list, f"{path}.lang")):
        p = f"{path}.lang[{i}]"
        _expect(entry, dict, p)
        neg.append(segment(_field(entry, "seg", p), reg, f"{p}.seg"))
    return _wrap(lambda: LanglandsParam(tuple(neg), tau), path)


def _canonical_line(reg: Registry, ident: str, path: str) -> CuspidalSymbol:
    sym = symbol(reg, ident, path)
    return sym if sym.id == sym.line_id else sym.dual()


def family(obj, reg: Registry, default_sigma: SigmaSupport | None = None, path: str = "family") -> JantzenFamily:
    _expect(obj, dict, path)
    sig = sigma(obj["sigma"], f"{path}.sigma") if "sigma" in obj else default_sigma
    if sig is None:
        raise ValidationError("missing sigma", path)
    lines = _expect(obj.get("lines", {}), dict, f"{path}.lines")
    params = []
    for ident in sorted(lines):
        line = _canonical_line(reg, ident, f"{path}.lines.{ident}")
        params.append(langlands_param(line, lines[ident], sig, reg, f"{path}.lines.{ident}"))
    return _wrap(lambda: JantzenFamily.build(sig, params), path)


def tempered_json(t: TemperedParam, include_empty: bool = False) -> dict:
    out = {}
    if t.ds.jord or include_empty:
        out["jord"] = [segment_json(s) for s in t.ds.jord]
    if t.ds.eps:
        out["eps"] = [
            {"on": segment_json(k) if isinstance(k, Segment) else [segment_json(s) for s in k], "sign": v}
            for k, v in t.ds.eps
        ]
    if t.signed:
        out["signed"] = [{"seg": segment_json(s), "sign": j} for s, j in t.signed]
    if t.extra:
        out["extra"] = [segment_json(g) for g in t.extra]
    return out


def langlands_json(p: LanglandsParam) -> dict:
    out = tempered_json(p.tempered)
    if p.neg:
        out["lang"] = [{"seg": segment_json(s)} for s in p.neg]
    return out


def family_json(f: JantzenFamily) -> dict:
    return {"sigma": sigma_json(f.sigma), "lines": {k: langlands_json(p) for k, p in f.per_line}}


def generic(obj, reg: Registry, sig: SigmaSupport, path: str = "generic") -> GenericParam:
    _expect(obj, dict, path)
    if "sigma" in obj:
        sig = sigma(obj["sigma"], f"{path}.sigma")
    deltas = segments(obj.get("deltas", []), reg, f"{path}.deltas")
    layers = []
    tempered = _expect(obj.get("tempered", {}), dict, f"{path}.tempered")
    for ident in sorted(tempered):
        line = _canonical_line(reg, ident, f"{path}.tempered.{ident}")
        layers.append((line.line_id, tempered_param(line, tempered[ident], sig, reg, f"{path}.tempered.{ident}")))
    return _wrap(lambda: GenericParam(tuple(deltas), tuple(layers), sig), path)


def generic_json(p: GenericParam) -> dict:
    return {
        "sigma": sigma_json(p.sigma),
        "deltas": [segment_json(d) for d in p.deltas],
        "tempered": {k: tempered_json(t) for k, t in p.tempered},
    }


def witness_json(w: Witness | None):
    if w is None:
        return None
    return {"condition": w.condition, "base": segment_json(w.base), "details": w.details}


def gl_json(g: StandardGL) -> list:
    return [segment_json(s) for s in g.factors]


def label_json(obj):
    if isinstance(obj, StandardGL):
        return gl_json(obj)
    if isinstance(obj, ClassicalStandard):
        return {"gl": gl_json(obj.gl), "sigma": obj.sigma.id}
    if isinstance(obj, SigmaSupport):
        return {"gl": [], "sigma": obj.id}
    if isinstance(obj, JantzenFamily):
        return family_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def formal_sum_json(total: FormalSum) -> list:
    out = []
    for key, mult in total:
        if isinstance(key, tuple) and len(key) == 2:
            out.append({"mult": mult, "left": label_json(key[0]), "right": label_json(key[1])})
        elif isinstance(key, tuple):
            out.append({"mult": mult, "factors": [label_json(k) for k in key]})
        else:
            out.append({"mult": mult, "term": label_json(key)})
    return out


def family_sum(obj, reg: Registry, sig: SigmaSupport, path: str) -> FormalSum:
    _expect(obj, list, path)
    terms = []
    for i, entry in enumerate(obj):
        p = f"{path}[{i}]"
        _expect(entry, dict, p)
        mult = _field(entry, "mult", p)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult <= 0:
            raise ValidationError("mult must be a positive integer", f"{p}.mult")
        terms.append((family(_field(entry, "family", p), reg, sig, f"{p}.family"), mult))
    return FormalSum(terms)


def xi_sum(obj, reg: Registry, sig: SigmaSupport, path: str) -> FormalSum:
    _expect(obj, list, path)
    terms = []
    for i, entry in enumerate(obj):
        p = f"{path}[{i}]"
        _expect(entry, dict, p)
        mult = _field(entry, "mult", p)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult <= 0:
            raise ValidationError("mult must be a positive integer", f"{p}.mult")
        terms.append(((StandardGL.of(*segments(_field(entry, "left", p), reg, f"{p}.left")), sig), mult))
    return FormalSum(terms)
