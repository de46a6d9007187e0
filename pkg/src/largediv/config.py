"""Load and validate configuration documents into a Problem."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .engine import NEG_INF
from .errors import ConfigError, InputError
from .incidence import IncidenceComplex, compute_m
from .intersection import DivisorClass, GeneratorBasis, IntersectionForm
from .rational import to_fraction
from .toy import ToyComponent, ToyVariety, incidence_of, intersection_form_of

DEFAULT_OPTIONS = {
    "tolerance": 1e-9,
    "max_n": 64,
    "max_denominator": 10 ** 6,
    "bias": Fraction(0),
    "seed": 0,
    "equidegree": "auto",
    "max_precision_bits": 4096,
    "surface_error_term_asserted": False,
    "surf3a_inclusive": False,
}
FLAG_NAMES = ("effective", "nef", "ample", "quasi_ample")


def load_schema(name: str = "config.schema.json") -> dict:
    return json.loads(resources.files("largediv").joinpath("schemas", name).read_text())


def validate_document(doc, schema_name="config.schema.json"):
    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/" + "/".join(str(p) for p in err.absolute_path)
        extra = f" (+{len(errors) - 1} more)" if len(errors) > 1 else ""
        raise ConfigError(err.message + extra, path)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError("file not found", str(path)) from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} at line {exc.lineno}", str(path)) from None


@dataclass
class Problem:
    name: str
    kind: str  # "toy" or "abstract"
    q: int
    component_names: tuple
    classes: list | None
    weights: list
    flags: dict  # flag name -> tuple
    kappa: tuple
    incidence: IncidenceComplex
    form: IntersectionForm | None = None
    variety: ToyVariety | None = None
    arithmetic: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    filtrations: dict | None = None
    warnings: list = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.component_names)

    @property
    def m(self) -> int:
        return compute_m(self.incidence)


def _kappa(value):
    if value is None:
        return None
    return NEG_INF if value == "-inf" else int(value)


def _toy(section) -> ToyVariety:
    factors = tuple(section["factors"])
    comps = []
    for i, c in enumerate(section.get("components", [])):
        factor = c.get("factor", 1) - 1
        if not 0 <= factor < len(factors):
            raise ConfigError(f"factor {factor + 1} out of range", f"/variety/toy/components/{i}/factor")
        if "equation" in c and "coordinate" in c:
            raise ConfigError("give either equation or coordinate", f"/variety/toy/components/{i}")
        if "coordinate" in c:
            eq = [0] * (factors[factor] + 1)
            if c["coordinate"] > factors[factor]:
                raise ConfigError("coordinate index out of range", f"/variety/toy/components/{i}/coordinate")
            eq[c["coordinate"]] = 1
        elif "equation" in c:
            eq = c["equation"]
        else:
            raise ConfigError("component needs an equation or coordinate", f"/variety/toy/components/{i}")
        comps.append(ToyComponent(c["name"], factor, tuple(eq)))
    for g in section.get("generate", []):
        factor = g.get("factor", 1) - 1
        n = factors[factor]
        prefix = g.get("prefix", "D")
        start = sum(1 for c in comps if c.name.startswith(prefix))
        for t in range(1, g["count"] + 1):
            comps.append(ToyComponent(f"{prefix}{start + t}", factor, tuple(t ** e for e in range(n + 1))))
    try:
        return ToyVariety(factors, tuple(comps))
    except InputError as exc:
        raise ConfigError(str(exc), "/variety/toy") from None


def _abstract_form(section):
    gens = section.get("generators")
    if not gens:
        return None
    entries = {}
    for i, e in enumerate(section.get("intersections", [])):
        key = tuple(e["classes"])
        if len(key) != section["q"]:
            raise ConfigError(f"needs {section['q']} classes", f"/variety/abstract/intersections/{i}/classes")
        unknown = [n for n in key if n not in gens]
        if unknown:
            raise ConfigError(f"unknown generators {unknown}", f"/variety/abstract/intersections/{i}/classes")
        skey = tuple(sorted(key, key=gens.index))
        if skey in entries and entries[skey] != to_fraction(e["value"]):
            raise ConfigError(f"conflicting value for {'.'.join(skey)}", f"/variety/abstract/intersections/{i}")
        entries[skey] = to_fraction(e["value"])
    nef = section.get("nef", [])
    bad = [n for n in nef if n not in gens]
    if bad:
        raise ConfigError(f"unknown generators {bad}", "/variety/abstract/nef")
    return IntersectionForm(GeneratorBasis(tuple(gens), section["q"]), entries, nef=frozenset(nef))


def _incidence(doc, names) -> IncidenceComplex:
    section = doc.get("incidence", {})
    idx = {n: i for i, n in enumerate(names)}

    def resolve(group, path):
        try:
            return [idx[n] for n in group]
        except KeyError as exc:
            raise ConfigError(f"unknown component {exc.args[0]!r}", path) from None

    common = [resolve(p, f"/incidence/common_components/{i}") for i, p in enumerate(section.get("common_components", []))]
    sets = [resolve(s, f"/incidence/meets/{i}") for i, s in enumerate(section.get("meets", []))]
    sets += [resolve(s, f"/incidence/maximal_meets/{i}") for i, s in enumerate(section.get("maximal_meets", []))]
    try:
        if "general_position" in section:
            if sets:
                raise ConfigError("general_position excludes explicit meets", "/incidence")
            return IncidenceComplex.general_position(len(names), section["general_position"], common)
        if "meets" in section and "maximal_meets" not in section:
            cx_sets = {frozenset(s) for s in sets} | {frozenset((i,)) for i in range(len(names))}
            return IncidenceComplex(len(names), frozenset(cx_sets), frozenset(frozenset(p) for p in common))
        return IncidenceComplex.generated_by(len(names), sets, common)
    except InputError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), "/incidence") from None


def build_problem(doc: dict) -> Problem:
    validate_document(doc)
    options = dict(DEFAULT_OPTIONS)
    options.update(doc.get("options", {}))
    options["bias"] = to_fraction(options["bias"])
    arithmetic = dict(doc.get("arithmetic", {}))
    comp_specs = doc.get("components", [])
    defaults = doc.get("default_flags", {})
    warnings = []

    variety = form = None
    if "toy" in doc["variety"]:
        variety = _toy(doc["variety"]["toy"])
        form = intersection_form_of(variety)
        names = variety.names
        if not names:
            raise ConfigError("toy variety declares no components", "/variety/toy")
        classes = variety.component_classes()
        base_flags = {n: variety.default_flags(n) for n in names}
        extra = [c["name"] for c in comp_specs if c["name"] not in names]
        if extra:
            raise ConfigError(f"components {extra} are not on the toy variety", "/components")
        q = variety.q
    else:
        section = doc["variety"]["abstract"]
        q = section["q"]
        form = _abstract_form(section)
        if comp_specs:
            names = tuple(c["name"] for c in comp_specs)
        elif "component_count" in doc:
            names = tuple(f"D{i + 1}" for i in range(doc["component_count"]))
        else:
            raise ConfigError("abstract varieties need components or component_count", "/")
        if len(set(names)) != len(names):
            raise ConfigError("component names must be unique", "/components")
        classes = None
        if form is not None:
            classes = []
            for i, n in enumerate(names):
                cspec = next((c for c in comp_specs if c["name"] == n), {})
                raw = cspec.get("class", {n: 1} if n in form.basis.names else None)
                if raw is None:
                    raise ConfigError(f"component {n!r} needs a class over the generators", f"/components/{i}")
                bad = [g for g in raw if g not in form.basis.names]
                if bad:
                    raise ConfigError(f"unknown generators {bad}", f"/components/{i}/class")
                classes.append(DivisorClass({g: to_fraction(v) for g, v in raw.items()}))
        base_flags = {n: {"effective": True, "nef": False, "ample": False, "quasi_ample": None, "kappa": None}
                      for n in names}
        if "component_count" in doc and comp_specs and doc["component_count"] != len(names):
            raise ConfigError("component_count disagrees with the components list", "/component_count")
    if variety is not None and "incidence" in doc:
        cx = _incidence(doc, names)
        warnings.append("incidence taken from the document instead of the toy geometry")
    elif variety is not None:
        cx = incidence_of(variety)
    else:
        cx = _incidence(doc, names)

    flags = {f: [] for f in FLAG_NAMES}
    kappas, weights, over_base = [], [], []
    by_name = {c["name"]: c for c in comp_specs}
    for n in names:
        merged = dict(base_flags[n])
        merged.update({k: v for k, v in defaults.items() if k != "kappa"})
        if "kappa" in defaults:
            merged["kappa"] = _kappa(defaults["kappa"])
        c = by_name.get(n, {})
        merged.update({k: c[k] for k in FLAG_NAMES if k in c})
        if "kappa" in c:
            merged["kappa"] = _kappa(c["kappa"])
        if merged.get("ample") and merged.get("quasi_ample") is None:
            merged["quasi_ample"] = True
        if merged.get("kappa") is None:
            merged["kappa"] = q if merged.get("quasi_ample") else None
        if merged.get("quasi_ample") is None:
            merged["quasi_ample"] = merged["kappa"] == q if merged["kappa"] is not None else False
        if merged["kappa"] is None:
            merged["kappa"] = NEG_INF
            warnings.append(f"kappa of {n} unknown; treated as -inf, which disables kappa-based rules")
        for f in FLAG_NAMES:
            flags[f].append(bool(merged[f]))
        kappas.append(merged["kappa"])
        w = to_fraction(c.get("weight", 1))
        if w <= 0:
            raise ConfigError("weights must be positive", f"/components/{names.index(n)}/weight")
        weights.append(w)
        over_base.append(c.get("defined_over_base"))
    dob = arithmetic.get("defined_over_base")
    if isinstance(dob, bool):
        arithmetic["defined_over_base"] = (dob,) * len(names)
    elif isinstance(dob, list):
        if len(dob) != len(names):
            raise ConfigError("one entry per component required", "/arithmetic/defined_over_base")
        arithmetic["defined_over_base"] = tuple(dob)
    elif all(v is not None for v in over_base):
        arithmetic["defined_over_base"] = tuple(over_base)
    if form is not None:
        warnings.extend(form.warnings)
    return Problem(doc.get("name", ""), "toy" if variety else "abstract", q, tuple(names), classes, weights,
                   {f: tuple(v) for f, v in flags.items()}, tuple(kappas), cx, form, variety, arithmetic,
                   options, doc.get("filtrations"), warnings)


def load_problem(path) -> Problem:
    return build_problem(read_json(path))
