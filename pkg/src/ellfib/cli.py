"""Command line front end: one verb per operation, JSON in and out.

Exit codes: 0 when the computation succeeds and every check passes, 1
for domain errors or a failing verdict (a cocycle violation, a gerbe
that does not glue, a failed round trip), 2 for malformed input.  All
output is canonical JSON, so repeated runs on the same input are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .cohomology.engine import InvariantsResult, full_invariants
from .cohomology.fields import MODES
from .cohomology.ring import PRESET_NAMES, load_preset, ring_from_dict, ring_validate
from .errors import DomainError, SchemaError
from .fibration import Nerve, check_cocycle, classify_line_family, coboundary_solve, gerbe_alpha
from .serialize import (
    bundle_json,
    canonical_json,
    cocycle_report_json,
    cycle_json,
    family_json,
    gamma_json,
    gerbe_report_json,
    glued_json,
    mu_json,
    parse_bundle,
    parse_chart_sample_map,
    parse_cocycle,
    parse_family,
    parse_gerbe,
    parse_nerve,
    parse_point,
    parse_section_doc,
    parse_skyscraper,
    roundtrip_report_json,
    skyscraper_json,
)
from .spectral import beta_map, gamma_map, round_trip_verify, spectral_cover
from .transform import fm_transform, psi_transform


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def _emit(payload) -> None:
    sys.stdout.write(canonical_json(payload))


def _doc_keys(doc, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("input must be a JSON object")
    missing = required - set(doc)
    if missing:
        raise SchemaError(f"input missing keys {sorted(missing)}")
    unknown = set(doc) - required - optional
    if unknown:
        raise SchemaError(f"input has unknown keys {sorted(unknown)}")
    return doc


def cmd_fm(args) -> int:
    bundle = parse_bundle(_load(args.infile))
    _emit(skyscraper_json(fm_transform(bundle)))
    return 0


def cmd_psi(args) -> int:
    sky = parse_skyscraper(_load(args.infile))
    _emit(bundle_json(psi_transform(sky)))
    return 0


def cmd_spectral_cover(args) -> int:
    bundle = parse_bundle(_load(args.infile))
    _emit(cycle_json(spectral_cover(bundle)))
    return 0


def cmd_gamma(args) -> int:
    family = parse_family(_load(args.infile))
    _emit(gamma_json(gamma_map(family)))
    return 0


def cmd_beta(args) -> int:
    nerve, section, n = parse_section_doc(_load(args.infile))
    _emit(family_json(beta_map(nerve, section, n)))
    return 0


def cmd_roundtrip(args) -> int:
    if args.n < 1 or args.torsion < 1 or args.samples < 1:
        raise SchemaError("--n, --torsion, and --samples must be positive")
    labels = ["s"] if args.samples == 1 else [f"s{i}" for i in range(1, args.samples + 1)]
    base = Nerve.single_chart("c", labels)
    report = round_trip_verify(base, args.n, args.torsion)
    _emit(roundtrip_report_json(report))
    return 0 if report.ok else 1


def cmd_cocycle_check(args) -> int:
    doc = _doc_keys(_load(args.infile), {"nerve", "cocycle"})
    nerve = parse_nerve(doc["nerve"])
    report = check_cocycle(nerve, parse_cocycle(doc["cocycle"]))
    _emit(cocycle_report_json(report))
    return 0 if report.ok else 1


def cmd_coboundary(args) -> int:
    doc = _doc_keys(_load(args.infile), {"nerve", "cocycle"})
    nerve = parse_nerve(doc["nerve"])
    mu = coboundary_solve(nerve, parse_cocycle(doc["cocycle"]))
    _emit(mu_json(mu))
    return 0 if mu is not None else 1


def cmd_classify(args) -> int:
    doc = _doc_keys(_load(args.infile), {"nerve", "cocycle", "local"})
    nerve = parse_nerve(doc["nerve"])
    cocycle = parse_cocycle(doc["cocycle"])
    local = parse_chart_sample_map(doc["local"], "local", parse_point)
    _emit(glued_json(classify_line_family(nerve, cocycle, local)))
    return 0


def cmd_gerbe(args) -> int:
    doc = _doc_keys(_load(args.infile), {"nerve", "gerbe"})
    nerve = parse_nerve(doc["nerve"])
    report = gerbe_alpha(nerve, parse_gerbe(doc["gerbe"], nerve))
    _emit(gerbe_report_json(report))
    return 0 if report.cocycle_ok and report.gluable else 1


def _resolve_ring(selector: str):
    if selector in PRESET_NAMES:
        return load_preset(selector)
    if selector.startswith("file:"):
        return ring_from_dict(_load(selector[len("file:"):]))
    raise SchemaError(
        f"unknown preset {selector!r}; use one of {', '.join(PRESET_NAMES)} or file:PATH"
    )


def _parse_vector(text: str, length: int, what: str) -> list[Fraction]:
    if text.strip() == "0":
        return [Fraction(0)] * length
    try:
        vec = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: bad rational in {text!r}") from exc
    if len(vec) != length:
        raise SchemaError(f"{what} must have {length} entries, got {len(vec)}")
    return vec


def invariants_json(result: InvariantsResult) -> dict:
    p = result.profile
    return {
        "ranks": {
            "e": p.e,
            "g": p.g,
            "d": p.d,
            "dprime": p.dprime,
            "h": p.h_rank,
            "f": p.f,
        },
        "hodge": [list(row) for row in result.diamond.h],
        "betti": list(result.betti),
        "consistency": list(result.consistency),
        "flags": list(p.flags),
    }


def _invariants_table(result: InvariantsResult) -> str:
    p = result.profile
    lines = [
        f"ring: {result.ring_name}   mode: {result.mode_name}"
        + ("   synthetic" if result.synthetic else ""),
        f"ranks: e={p.e} g={p.g} d={p.d} dprime={p.dprime} h={p.h_rank} f={p.f}",
        "hodge numbers by total degree (decreasing q):",
    ]
    for row in result.diamond.rows_by_total():
        lines.append("  " + " ".join(str(x) for x in row))
    lines.append("betti: " + " ".join(str(b) for b in result.betti))
    if result.consistency:
        lines.append("consistency violations:")
        lines.extend("  " + item for item in result.consistency)
    else:
        lines.append("consistency: ok")
    if p.flags:
        lines.append("flags: " + "; ".join(p.flags))
    return "\n".join(lines) + "\n"


def cmd_invariants(args) -> int:
    ring = _resolve_ring(args.preset)
    length = sum(ring.dim(p, q) for p, q in ((2, 0), (1, 1), (0, 2)))
    a = _parse_vector(args.a, length, "--a")
    b = _parse_vector(args.b, length, "--b")
    mode = MODES[args.mode]
    result = full_invariants(ring, a, b, mode, synthetic=args.synthetic)
    if args.out == "json":
        _emit(invariants_json(result))
    else:
        sys.stdout.write(_invariants_table(result))
    return 0 if not result.consistency else 1


def cmd_validate_ring(args) -> int:
    ring = _resolve_ring(args.preset)
    violations = ring_validate(ring)
    _emit(
        {
            "name": ring.name,
            "valid": not violations,
            "violations": list(violations),
        }
    )
    return 0 if not violations else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellfib",
        description="Torsion transforms, gluing checks, and cohomology tables "
        "for elliptic fibrations over rational data.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def file_verb(name: str, help_text: str, func) -> None:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="infile", required=True, metavar="PATH",
                       help="input JSON file")
        p.set_defaults(func=func)

    file_verb("fm", "bundle to its supported torsion class", cmd_fm)
    file_verb("psi", "degree-zero torsion class back to a polystable bundle", cmd_psi)
    file_verb("spectral-cover", "bundle to its weighted support cycle", cmd_spectral_cover)
    file_verb("gamma", "family of bundles to a glued cycle section", cmd_gamma)
    file_verb("beta", "cycle section back to a bundle family", cmd_beta)
    file_verb("cocycle-check", "verify the triple-sum identity on a nerve", cmd_cocycle_check)
    file_verb("coboundary", "solve for per-chart translations, or report failure", cmd_coboundary)
    file_verb("classify", "glue per-chart line classes into one sample map", cmd_classify)
    file_verb("gerbe", "obstruction scalars and gluability of twisting data", cmd_gerbe)

    rt = sub.add_parser("roundtrip", help="exhaustive two-way check over torsion data")
    rt.add_argument("--n", type=int, required=True, help="total length bound")
    rt.add_argument("--torsion", type=int, required=True, help="torsion order bound")
    rt.add_argument("--samples", type=int, default=1,
                    help="sample count on the single chart (default 1)")
    rt.set_defaults(func=cmd_roundtrip)

    inv = sub.add_parser("invariants", help="rank profile, Hodge table, Betti numbers")
    inv.add_argument("--preset", required=True,
                     help="kodaira | torus4 | k3 | file:PATH")
    inv.add_argument("--a", required=True,
                     help="first degree-two class: comma-separated rationals, or 0")
    inv.add_argument("--b", required=True,
                     help="second degree-two class: comma-separated rationals, or 0")
    inv.add_argument("--mode", choices=("generic", "gaussian"), default="generic")
    inv.add_argument("--out", choices=("json", "table"), default="json")
    inv.add_argument("--synthetic", action="store_true",
                     help="treat --a/--b as the real and imaginary seeds of a "
                     "synthetic class instead of a plain rational pair")
    inv.set_defaults(func=cmd_invariants)

    vr = sub.add_parser("validate-ring", help="run the ring axioms on a preset or file")
    vr.add_argument("--preset", required=True, help="kodaira | torus4 | k3 | file:PATH")
    vr.set_defaults(func=cmd_validate_ring)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
