"""JSON and CSV interchange.

All numeric JSON fields that define objects (measures, maps, ladders) are
decimal strings, never floats: exact rationals with terminating decimal
expansions round-trip losslessly, everything else is written with enough
digits to reproduce the working-precision value bit-for-bit. Diagnostic
reports (classification, slope, conditions) are one-way outputs; the
classification's b field is a plain number by contract, slope intervals are
decimal strings.

Documents are emitted with sorted keys and a trailing newline so identical
inputs produce byte-identical files; the optional generated_at stamp is the
only nondeterministic field and can be suppressed.
"""

from __future__ import annotations

import csv
import datetime
import json
from fractions import Fraction

import gmpy2
import jsonschema

from .constructions import (
    ConditionReport,
    ConstructionSpec,
    FamilyMeta,
    RegionReport,
    SearchResult,
)
from .dynamics import OrbitTrace, StepClassification
from .errors import InputError
from .maps import STRATEGIES, ParabolicMap
from .measures import (
    DENSITY_FAMILIES,
    Atom,
    DensityFamily,
    FiniteMeasure,
)
from .precision import current_bits, exact_fraction, format_real, to_real
from .slope import SeedComparison, SlopeReport

MEASURE_SCHEMA = {
    "type": "object",
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"t": {"type": "string"}, "mass": {"type": "string"}},
                "required": ["t", "mass"],
                "additionalProperties": False,
            },
        },
        "density": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "family": {"enum": list(DENSITY_FAMILIES)},
                        "alpha": {"type": "string"},
                    },
                    "required": ["family"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "required": ["atoms", "density"],
    "additionalProperties": False,
}

MAP_SCHEMA = {
    "type": "object",
    "properties": {
        "beta": {"type": "string"},
        "measure": MEASURE_SCHEMA,
        "strategy": {"enum": list(STRATEGIES)},
    },
    "required": ["beta", "measure", "strategy"],
    "additionalProperties": False,
}

CONSTRUCTION_SCHEMA = {
    "type": "object",
    "properties": {
        "variant": {"enum": ["full_interval", "half_interval"]},
        "terms": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "object",
                "properties": {"a": {"type": "string"}, "gamma": {"type": "string"}},
                "required": ["a", "gamma"],
                "additionalProperties": False,
            },
        },
        "meta": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "a_growth": {"type": "string"},
                        "gamma_growth": {"type": "string"},
                        "a_base": {"type": "string"},
                        "gamma_base": {"type": "string"},
                    },
                    "required": ["a_growth", "gamma_growth", "a_base", "gamma_base"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "required": ["variant", "terms"],
    "additionalProperties": False,
}


def _roundtrip_digits() -> int:
    # decimal digits that reproduce the current binary precision exactly
    return int(current_bits() * 0.30103) + 3


def _number_out(value, digits: int | None = None) -> str:
    """Decimal string for a defining value: exact when the exact rational
    terminates, full round-trip precision otherwise."""
    if isinstance(value, Fraction):
        den = value.denominator
        while den % 2 == 0:
            den //= 2
        while den % 5 == 0:
            den //= 5
        if den == 1:
            from decimal import Decimal

            return str(Decimal(value.numerator) / Decimal(value.denominator))
        # non-terminating decimal: keep the defining value exact
        return f"{value.numerator}/{value.denominator}"
    return format_real(value, digits or _roundtrip_digits())


def _validate(doc, schema, what: str):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        raise InputError(f"invalid {what} document: {e.message}") from None


# ---------------------------------------------------------------------------
# measures and maps


def measure_to_doc(m: FiniteMeasure) -> dict:
    density = None
    if m.density is not None:
        density = {"family": m.density.family}
        if m.density.alpha is not None:
            density["alpha"] = _number_out(m.density.alpha)
    return {
        "atoms": [
            {"t": _number_out(a.location), "mass": _number_out(a.mass)} for a in m.atoms
        ],
        "density": density,
    }


def measure_from_doc(doc) -> FiniteMeasure:
    _validate(doc, MEASURE_SCHEMA, "measure")
    atoms = tuple(
        Atom(exact_fraction(a["t"]), exact_fraction(a["mass"])) for a in doc["atoms"]
    )
    density = None
    if doc["density"] is not None:
        fam = doc["density"]["family"]
        alpha = doc["density"].get("alpha")
        density = DensityFamily(fam, exact_fraction(alpha) if alpha is not None else None)
    return FiniteMeasure(atoms=atoms, density=density)


def map_to_doc(f: ParabolicMap) -> dict:
    return {
        "beta": _number_out(f.beta),
        "measure": measure_to_doc(f.measure),
        "strategy": f.strategy,
    }


def map_from_doc(doc) -> ParabolicMap:
    _validate(doc, MAP_SCHEMA, "map")
    return ParabolicMap(
        beta=exact_fraction(doc["beta"]),
        measure=measure_from_doc(doc["measure"]),
        strategy=doc["strategy"],
    )


# ---------------------------------------------------------------------------
# constructions


def construction_to_doc(spec: ConstructionSpec) -> dict:
    meta = None
    if spec.meta is not None:
        meta = {
            "a_growth": _number_out(spec.meta.a_growth),
            "gamma_growth": _number_out(spec.meta.gamma_growth),
            "a_base": _number_out(spec.meta.a_base),
            "gamma_base": _number_out(spec.meta.gamma_base),
        }
    return {
        "variant": spec.variant,
        "terms": [
            {"a": _number_out(a), "gamma": _number_out(g)}
            for a, g in zip(spec.a, spec.gamma)
        ],
        "meta": meta,
    }


def construction_from_doc(doc) -> ConstructionSpec:
    _validate(doc, CONSTRUCTION_SCHEMA, "construction")
    meta = None
    if doc.get("meta") is not None:
        meta = FamilyMeta(
            a_growth=exact_fraction(doc["meta"]["a_growth"]),
            gamma_growth=exact_fraction(doc["meta"]["gamma_growth"]),
            a_base=exact_fraction(doc["meta"]["a_base"]),
            gamma_base=exact_fraction(doc["meta"]["gamma_base"]),
        )
    return ConstructionSpec(
        variant=doc["variant"],
        a=tuple(exact_fraction(t["a"]) for t in doc["terms"]),
        gamma=tuple(exact_fraction(t["gamma"]) for t in doc["terms"]),
        meta=meta,
    )


def condition_report_to_doc(report: ConditionReport) -> dict:
    return {
        "variant": report.variant,
        "depth": report.depth,
        "certified": report.certified,
        "conditions": [
            {
                "name": s.name,
                "ok": s.ok,
                "witness_k": s.witness_k,
                "detail": s.detail,
            }
            for s in report.statuses
        ],
        "failures": [[name, k] for name, k in report.failures],
    }


def search_result_to_doc(result: SearchResult) -> dict:
    return {
        "variant": result.variant,
        "depth": result.depth,
        "feasible": result.feasible,
        "a_growth": result.a_growth,
        "gamma_growth": result.gamma_growth,
        "binding": list(result.binding) if result.binding else None,
        "report": condition_report_to_doc(result.report) if result.report else None,
    }


def region_report_to_doc(report: RegionReport) -> dict:
    return {
        "ok": report.ok,
        "tail_certified": report.tail_certified,
        "checks": [
            {
                "variant": c.variant,
                "k": c.k,
                "region": c.region,
                "inequality": c.inequality,
                "nodes": c.nodes,
                "worst_margin": c.worst_margin,
                "worst_point": list(c.worst_point),
                "ok": c.ok,
            }
            for c in report.checks
        ],
    }


# ---------------------------------------------------------------------------
# reports


def classification_to_doc(cls: StepClassification) -> dict:
    return {
        "label": cls.label,
        "b": cls.b_estimate,
        "b_converged": cls.b_converged,
        "rho_tail_max": cls.rho_tail_max,
        "rho_tail_min": cls.rho_tail_min,
        "rho_final": cls.rho_final,
    }


def _angle_out(x: float, digits: int) -> str:
    return format_real(gmpy2.mpfr(x), min(digits, 17))


def slope_report_to_doc(rep: SlopeReport, digits: int = 17) -> dict:
    return {
        "interval_lo": _angle_out(rep.interval_lo, digits),
        "interval_hi": _angle_out(rep.interval_hi, digits),
        "midpoint": _angle_out(rep.midpoint, digits),
        "width": _angle_out(rep.width, digits),
        "max_consecutive_gap": _angle_out(rep.max_consecutive_gap, digits),
        "converged": rep.converged,
        "iterations_used": rep.iterations_used,
        "final_arg": _angle_out(rep.final_arg, digits),
        "windows": [
            {"window": w, "min_arg": _angle_out(lo, digits), "max_arg": _angle_out(hi, digits)}
            for w, lo, hi in rep.window_history
        ],
    }


def seed_comparison_to_doc(cmp: SeedComparison, digits: int = 17) -> dict:
    return {
        "step_label": cmp.step_label,
        "max_endpoint_spread": _angle_out(cmp.max_endpoint_spread, digits),
        "max_tail_arg_gap": _angle_out(cmp.max_tail_arg_gap, digits),
        "seeds": [slope_report_to_doc(r, digits) for r in cmp.reports],
    }


# ---------------------------------------------------------------------------
# file output


def dump_json(doc: dict, path, timestamp: bool = True) -> None:
    out = dict(doc)
    if timestamp:
        out["generated_at"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        )
    with open(path, "w") as fh:
        json.dump(out, fh, indent=2, sort_keys=True)
        fh.write("\n")


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


TRACE_HEADER = ("n", "re", "im", "arg", "rho_step", "dx", "dy")


def write_trace_csv(trace: OrbitTrace, path, digits: int = 30) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for row in trace.rows(digits):
            w.writerow(row)


def write_window_csv(rep: SlopeReport, path, digits: int = 17) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("window", "min_arg", "max_arg"))
        for win, lo, hi in rep.window_history:
            w.writerow((win, _angle_out(lo, digits), _angle_out(hi, digits)))
