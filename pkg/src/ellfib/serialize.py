"""JSON schemas for every value the command line reads or writes.

All rationals travel as lowest-term strings ("-3/7", "0"); floats are
rejected everywhere.  Parsing is strict: wrong shapes, unknown keys, or
non-integer counts raise SchemaError, which the command line maps to
exit code 2.  Emission is canonical (sorted keys, two-space indent,
trailing newline) so identical values always serialize byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bundles import AtiyahBundle, make_bundle
from .errors import SchemaError
from .fibration import (
    CocycleReport,
    GerbeData,
    GerbeReport,
    Nerve,
    TranslationCocycle,
)
from .spectral import BundleFamily, RoundTripReport, SpectralCycle, make_cycle
from .torus import Divisor, TorusPoint, make_divisor
from .transform import SkyscraperClass, make_skyscraper


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _require_dict(obj, what: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"{what} missing keys {sorted(missing)}")
    unknown = set(obj) - required - optional
    if unknown:
        raise SchemaError(f"{what} has unknown keys {sorted(unknown)}")
    return obj


def _require_list(obj, what: str) -> list:
    if not isinstance(obj, list):
        raise SchemaError(f"{what} must be a JSON array")
    return obj


def _any_dict(obj, what: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    return obj


def parse_fraction(value, what: str = "rational") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{what} must be a string rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{what}: bad rational {value!r}") from exc
    raise SchemaError(f"{what} must be a string rational, got {value!r}")


def fraction_json(q: Fraction) -> str:
    return str(Fraction(q))


def parse_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


# -- torus points and divisors --------------------------------------------


def parse_point(obj) -> TorusPoint:
    data = _require_dict(obj, "point", {"u", "v"})
    return TorusPoint(parse_fraction(data["u"], "u"), parse_fraction(data["v"], "v"))


def point_json(p: TorusPoint) -> dict:
    return {"u": fraction_json(p.u), "v": fraction_json(p.v)}


def parse_divisor(obj) -> Divisor:
    terms = []
    for item in _require_list(obj, "divisor"):
        data = _require_dict(item, "divisor term", {"point", "coeff"})
        terms.append((parse_point(data["point"]), parse_int(data["coeff"], "coeff")))
    return make_divisor(terms)


def divisor_json(d: Divisor) -> list:
    return [{"point": point_json(p), "coeff": m} for p, m in d.terms]


# -- bundles, skyscrapers, cycles -----------------------------------------


def parse_bundle(obj) -> AtiyahBundle:
    data = _require_dict(obj, "bundle", {"blocks"})
    blocks = []
    for item in _require_list(data["blocks"], "blocks"):
        entry = _require_dict(item, "block", {"n", "x"})
        blocks.append((parse_int(entry["n"], "n"), parse_point(entry["x"])))
    return make_bundle(blocks)


def bundle_json(b: AtiyahBundle) -> dict:
    return {"blocks": [{"n": n, "x": point_json(x)} for n, x in b.blocks]}


def parse_skyscraper(obj) -> SkyscraperClass:
    data = _require_dict(obj, "skyscraper", {"parts", "degree"})
    parts = []
    for item in _require_list(data["parts"], "parts"):
        entry = _require_dict(item, "part", {"p", "len"})
        parts.append((parse_point(entry["p"]), parse_int(entry["len"], "len")))
    return make_skyscraper(parts, parse_int(data["degree"], "degree"))


def skyscraper_json(s: SkyscraperClass) -> dict:
    return {
        "parts": [{"p": point_json(p), "len": m} for p, m in s.parts],
        "degree": s.degree,
    }


def parse_cycle(obj) -> SpectralCycle:
    data = _require_dict(obj, "cycle", {"parts"})
    parts = []
    for item in _require_list(data["parts"], "parts"):
        entry = _require_dict(item, "part", {"p", "m"})
        parts.append((parse_point(entry["p"]), parse_int(entry["m"], "m")))
    return make_cycle(parts)


def cycle_json(c: SpectralCycle) -> dict:
    return {"parts": [{"p": point_json(p), "m": m} for p, m in c.parts]}


# -- nerve, cocycle, chart/sample maps ------------------------------------


def _split_key(key: str, parts: int, what: str) -> tuple[str, ...]:
    if not isinstance(key, str):
        raise SchemaError(f"{what} key must be a string")
    pieces = key.split(",")
    if len(pieces) != parts or not all(pieces):
        raise SchemaError(f"{what} key {key!r} must join {parts} labels with ','")
    return tuple(pieces)


def _labels(obj, what: str) -> list[str]:
    out = []
    for item in _require_list(obj, what):
        if not isinstance(item, str):
            raise SchemaError(f"{what} entries must be strings")
        out.append(item)
    return out


def parse_nerve(obj) -> Nerve:
    data = _require_dict(obj, "nerve", {"charts", "samples"}, {"overlaps", "triples"})
    charts = _labels(data["charts"], "charts")
    overlaps = [
        _labels(pair, "overlap") for pair in _require_list(data.get("overlaps", []), "overlaps")
    ]
    triples = [
        _labels(tri, "triple") for tri in _require_list(data.get("triples", []), "triples")
    ]
    samples = _require_dict(data["samples"], "samples", {"charts"}, {"overlaps", "triples"})
    chart_samples = {}
    for chart, listed in _any_dict(samples["charts"], "chart samples").items():
        chart_samples[chart] = _labels(listed, f"samples for chart {chart!r}")
    overlap_samples = {}
    for key, listed in _any_dict(samples.get("overlaps", {}), "overlap samples").items():
        pair = _split_key(key, 2, "overlap samples")
        overlap_samples[pair] = _labels(listed, f"samples for overlap {key!r}")
    triple_samples = {}
    for key, listed in _any_dict(samples.get("triples", {}), "triple samples").items():
        tri = _split_key(key, 3, "triple samples")
        triple_samples[tri] = _labels(listed, f"samples for triple {key!r}")
    return Nerve(charts, overlaps, triples, chart_samples, overlap_samples, triple_samples)


def nerve_json(n: Nerve) -> dict:
    return {
        "charts": list(n.charts),
        "overlaps": [list(pair) for pair in n.overlaps],
        "triples": [list(tri) for tri in n.triples],
        "samples": {
            "charts": {c: list(n.chart_samples(c)) for c in n.charts},
            "overlaps": {
                ",".join(pair): list(n.overlap_samples(*pair)) for pair in n.overlaps
            },
            "triples": {
                ",".join(tri): list(n.triple_samples(*tri)) for tri in n.triples
            },
        },
    }


def parse_cocycle(obj) -> TranslationCocycle:
    data = _require_dict(obj, "cocycle", {"lambda"})
    table = {}
    lam = data["lambda"]
    if not isinstance(lam, dict):
        raise SchemaError("cocycle lambda must be an object")
    for key, per_sample in lam.items():
        pair = _split_key(key, 2, "cocycle")
        if not isinstance(per_sample, dict):
            raise SchemaError(f"cocycle values for {key!r} must be an object")
        table[pair] = {s: parse_point(p) for s, p in per_sample.items()}
    return TranslationCocycle(table)


def cocycle_json(t: TranslationCocycle) -> dict:
    return {
        "lambda": {
            ",".join(pair): {s: point_json(p) for s, p in sorted(per.items())}
            for pair, per in sorted(t.values.items())
        }
    }


def parse_chart_sample_map(obj, what: str, parse_value) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be an object keyed 'chart/sample'")
    out = {}
    for key, value in obj.items():
        if not isinstance(key, str):
            raise SchemaError(f"{what} key must be a string")
        pieces = key.split("/")
        if len(pieces) != 2 or not all(pieces):
            raise SchemaError(f"{what} key {key!r} must be 'chart/sample'")
        out[(pieces[0], pieces[1])] = parse_value(value)
    return out


def chart_sample_key(chart: str, sample: str) -> str:
    return f"{chart}/{sample}"


# -- gerbe ----------------------------------------------------------------


def parse_gerbe(obj, nerve: Nerve) -> GerbeData:
    data = _require_dict(obj, "gerbe", set(), {"a", "c", "descriptors"})
    a = {}
    for key, value in _any_dict(data.get("a", {}), "gerbe a").items():
        a[_split_key(key, 2, "gerbe a")] = parse_fraction(value, f"a[{key}]")
    c = {}
    for key, value in _any_dict(data.get("c", {}), "gerbe c").items():
        c[_split_key(key, 3, "gerbe c")] = parse_fraction(value, f"c[{key}]")
    descriptors = {}
    for key, value in _any_dict(data.get("descriptors", {}), "gerbe descriptors").items():
        pair = _split_key(key, 2, "gerbe descriptors")
        if not isinstance(value, dict):
            raise SchemaError(f"descriptor for {key!r} must be an object")
        descriptors[pair] = {
            _split_key(gen, 2, "descriptor generator"): parse_int(e, "exponent")
            for gen, e in value.items()
        }
    return GerbeData(nerve, a, c, descriptors)


def gerbe_json(g: GerbeData) -> dict:
    payload: dict = {
        "a": {",".join(k): fraction_json(v) for k, v in sorted(g.a.items())},
        "c": {",".join(k): fraction_json(v) for k, v in sorted(g.c.items())},
    }
    nontrivial = {
        key: vec for key, vec in g.descriptors.items() if vec != {key: 1}
    }
    if nontrivial:
        payload["descriptors"] = {
            ",".join(k): {",".join(gen): e for gen, e in sorted(vec.items())}
            for k, vec in sorted(nontrivial.items())
        }
    return payload


# -- family and section documents -----------------------------------------


def parse_family(obj) -> BundleFamily:
    data = _require_dict(obj, "family", {"nerve", "data"}, {"cocycle", "rank"})
    nerve = parse_nerve(data["nerve"])
    cocycle = (
        parse_cocycle(data["cocycle"]) if "cocycle" in data else TranslationCocycle({})
    )
    bundles = parse_chart_sample_map(data["data"], "family data", parse_bundle)
    rank = parse_int(data["rank"], "rank") if "rank" in data else None
    return BundleFamily(nerve, cocycle, bundles, rank)


def family_json(f: BundleFamily) -> dict:
    return {
        "nerve": nerve_json(f.base),
        "cocycle": cocycle_json(f.cocycle),
        "data": {
            chart_sample_key(*key): bundle_json(b) for key, b in sorted(f.data.items())
        },
        "rank": f.rank,
    }


def parse_section_doc(obj) -> tuple[Nerve, dict[str, SpectralCycle], int]:
    data = _require_dict(obj, "section document", {"nerve", "section", "n"})
    nerve = parse_nerve(data["nerve"])
    if not isinstance(data["section"], dict):
        raise SchemaError("section must be an object keyed by sample")
    section = {s: parse_cycle(c) for s, c in data["section"].items()}
    return nerve, section, parse_int(data["n"], "n")


def section_doc_json(nerve: Nerve, section: dict[str, SpectralCycle], n: int) -> dict:
    return {
        "nerve": nerve_json(nerve),
        "section": {s: cycle_json(c) for s, c in sorted(section.items())},
        "n": n,
    }


# -- report emitters -------------------------------------------------------


def cocycle_report_json(report: CocycleReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"triple": list(tri), "sample": s, "defect": point_json(defect)}
            for tri, s, defect in report.violations
        ],
    }


def mu_json(mu: dict | None) -> dict:
    if mu is None:
        return {"solvable": False, "mu": None}
    return {
        "solvable": True,
        "mu": {chart_sample_key(*key): point_json(p) for key, p in sorted(mu.items())},
    }


def glued_json(glued: dict[str, TorusPoint]) -> dict:
    return {"glued": {s: point_json(p) for s, p in sorted(glued.items())}}


def gerbe_report_json(report: GerbeReport) -> dict:
    return {
        "alpha": {",".join(tri): fraction_json(v) for tri, v in report.alpha},
        "tetrahedra": {
            ",".join(quad): {"value": fraction_json(v), "ok": v == 1}
            for quad, v in report.cocycle_checks
        },
        "cocycle_ok": report.cocycle_ok,
        "gluable": report.gluable,
        "witness": None
        if report.witness is None
        else {",".join(pair): fraction_json(v) for pair, v in report.witness},
    }


def gamma_json(cycles: dict[tuple[str, str], SpectralCycle]) -> dict:
    totals = {cycle.total() for cycle in cycles.values()}
    return {
        "n": min(totals) if totals else 0,
        "section": {
            chart_sample_key(*key): cycle_json(c) for key, c in sorted(cycles.items())
        },
    }


def roundtrip_report_json(report: RoundTripReport) -> dict:
    return {
        "ok": report.ok,
        "sections_checked": report.sections_checked,
        "bundles_checked": report.bundles_checked,
        "bijective": report.bijective,
        "failures": list(report.failures),
    }
