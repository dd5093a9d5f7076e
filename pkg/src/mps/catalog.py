"""In-repo example catalog and the check runner behind ``mps catalog run``.

Each entry is a JSON object with a ``kind`` (map, algebra, linkage, koszul,
prop57, sylvester), the data needed to build it, and a list of checks with
expected values.  Ideals are compared as sorted reduced-GB string lists.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .determinantal import sylvester_trials
from .dimension import is_perfect
from .errors import (
    BudgetExhausted,
    CertificationError,
    HypothesisViolation,
    InputError,
    MpsError,
    NoPrimitiveFound,
)
from .fields import parse_field
from .ideals import Ideal, QuotientRing
from .matrices import PolyMatrix
from .multipoint import (
    Component,
    FiniteMapSpec,
    adjoint_conductor,
    algebra_from_data,
    algebra_from_map,
    check_curvilinear,
    exact_sequence_36_check,
    find_primitive,
    gruson_peskine_check,
    length_relation_check,
    scheme_image_and_annihilator,
    source_ideal_Mr,
    target_ideal_Nr,
)
from .polyring import make_ring

PASS, FAIL, HYPOTHESIS_VIOLATED, SKIPPED = "PASS", "FAIL", "HYPOTHESIS_VIOLATED", "SKIPPED"


def canonical(value: Any) -> Any:
    """JSON-ready canonical form: ideals become sorted GB strings."""
    if isinstance(value, Ideal):
        return sorted(value.basis_strings())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    return str(value)


@dataclass
class CheckResult:
    check: str
    status: str
    expected: Any
    computed: Any
    provenance: str = ""
    note: str = ""
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        d = {"check": self.check, "status": self.status, "expected": self.expected, "computed": self.computed}
        if self.provenance:
            d["provenance"] = self.provenance
        if self.note:
            d["note"] = self.note
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class VerificationReport:
    entry: str
    kind: str
    checks: list = dc_field(default_factory=list)
    error: str = ""
    internal_failure: bool = False
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return bool(self.error) or any(c.status == FAIL for c in self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        d = {"entry": self.entry, "kind": self.kind, "checks": [c.to_dict(timings) for c in self.checks]}
        if self.error:
            d["error"] = self.error
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


# ---------------------------------------------------------------------------
# catalog loading


def catalog_dir() -> Path:
    return Path(str(resources.files("mps") / "catalog_data"))


def load_catalog(paths=None) -> list[dict]:
    files = sorted(Path(p) for p in paths) if paths else sorted(catalog_dir().glob("*.json"))
    entries = []
    for f in files:
        try:
            data = json.loads(f.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{f}: {exc}") from exc
        items = data if isinstance(data, list) else data.get("entries", [data])
        entries.extend(items)
    names = [e.get("name") for e in entries]
    if len(set(names)) != len(names) or None in names:
        raise InputError("catalog entry names must be present and unique")
    return entries


def select(entries: list[dict], pattern: str | None) -> list[dict]:
    if not pattern:
        return list(entries)
    pat = pattern if any(ch in pattern for ch in "*?[") else f"*{pattern}*"
    return [e for e in entries if fnmatch.fnmatch(e["name"], pat)]


# ---------------------------------------------------------------------------
# entry contexts: lazily built objects shared by the checks of one entry


class MapContext:
    def __init__(self, entry: dict, seed: int, budget: int):
        self.entry, self.seed, self.budget = entry, seed, budget
        F = parse_field(entry.get("field", "QQ"))
        self.field = F
        if entry["kind"] == "map":
            R = make_ring(entry["target"], F)
            S = make_ring(entry["source"], F)
            src = Ideal.parse(S, entry.get("source_ideal", []))
            images = {k: S.parse(v) for k, v in entry["images"].items()}
            comps = [self._component(R, c) for c in entry.get("components", [])]
            self.alg = algebra_from_map(FiniteMapSpec(R, S, src, images, comps), entry["name"])
        else:
            R = make_ring(entry["ring"], F)
            rel = PolyMatrix.parse(R, entry["relations"])
            mult = [[[R.parse(c) for c in v] for v in row] for row in entry["mult"]]
            unit = [R.parse(c) for c in entry["unit"]]
            self.alg = algebra_from_data(R, entry["labels"], rel, mult, unit, entry["name"])
            self.components = [self._component(R, c) for c in entry.get("components", [])]
        self.ring = R

    @staticmethod
    def _component(R, c: dict) -> Component:
        return Component(Ideal.parse(R, c["prime"]), tuple(c.get("invert", [])), int(c["r"]), c.get("name", ""))

    def component(self, name: str | None) -> Component | None:
        if not name or name == "origin":
            return None
        comps = self.alg.spec.components if self.alg.spec is not None else self.components
        for c in comps:
            if c.name == name:
                return c
        raise InputError(f"unknown component {name}")

    @cached_property
    def primitive(self):
        return find_primitive(self.alg, self.seed, self.budget)

    @cached_property
    def image(self):
        return scheme_image_and_annihilator(self.alg)


def _map_checks() -> dict[str, Callable]:
    def length(ctx, r, component=None):
        chk = length_relation_check(ctx.alg, r, ctx.component(component))
        return [chk.lhs, chk.rhs], chk.hypothesis, chk.note

    def exact(ctx, r):
        e = exact_sequence_36_check(ctx.alg, r, ctx.primitive)
        return {"length_B": e.length_B, "copies": r - 1, "length_R": e.length_R, "length_M": e.length_M,
                "additive": e.additive, "kernel_free": e.kernel_free}

    def conductor(ctx):
        return adjoint_conductor(ctx.alg).conductor

    def adjoint(ctx):
        v = adjoint_conductor(ctx.alg)
        return {"adjoint": v.adjoint, "routes_agree": v.agree}

    return {
        "rank": lambda ctx: ctx.alg.rank,
        "N": lambda ctx, r: target_ideal_Nr(ctx.alg, r),
        "M": lambda ctx, r: source_ideal_Mr(ctx.alg, r),
        "perfect": lambda ctx, r: list(is_perfect(target_ideal_Nr(ctx.alg, r))),
        "curvilinear": lambda ctx: check_curvilinear(ctx.alg),
        "primitive": lambda ctx: {"expression": ctx.primitive.expression, "square": ctx.primitive.square},
        "gruson_peskine": lambda ctx, r: gruson_peskine_check(ctx.alg, r, ctx.primitive)[0],
        "image": lambda ctx: ctx.image.image,
        "annihilator": lambda ctx: ctx.image.annihilator,
        "fitt0": lambda ctx: ctx.image.fitt0,
        "ann_equals_image": lambda ctx: ctx.image.ann_equals_image,
        "fitt0_in_image": lambda ctx: ctx.image.fitt0_in_image,
        "fitt0_equals_image": lambda ctx: ctx.image.fitt0_equals_image,
        "same_support": lambda ctx: ctx.image.same_support,
        "conductor": conductor,
        "adjoint": adjoint,
        "length": length,
        "exact_sequence": exact,
    }


class LinkageContext:
    def __init__(self, entry: dict, seed: int, budget: int):
        from . import linkage as lk

        self.lk = lk
        self.entry, self.seed, self.budget = entry, seed, budget
        F = parse_field(entry.get("field", "QQ"))
        R = make_ring(entry["ring"], F)
        self.X = PolyMatrix.parse(R, entry["matrix"])
        self.inst = lk.theorem59_hypotheses(self.X, int(entry["p"]))

    @cached_property
    def delta(self):
        return self.lk.find_regular_delta(self.inst, self.seed, self.budget)

    @cached_property
    def lemma45(self):
        inst = self.delta
        return self.lk.lemma45_suite(inst.ctx, inst.I, inst.J, inst.delta, seed=self.seed)


def _linkage_checks() -> dict[str, Callable]:
    def hyp(ctx):
        h = ctx.inst.hypotheses
        return {"grade": {i: list(v) for i, v in h.grade.items()}, "last_rows": dict(h.last_rows),
                "admissible": h.admissible}

    def verdict(ctx):
        v = ctx.lk.verify_linkage(ctx.delta)
        return {"product": v.product, "colon": v.colon}

    def inclusions(ctx):
        v = ctx.lk.verify_linkage(ctx.delta)
        return {"delta_in_I": v.delta_in_I, "I_in_J": v.I_in_J, "J_in_colon": v.J_in_colon}

    def lemma(ctx):
        v = ctx.lemma45
        return {"exponent": v.algebra.exponent, "conductor_is_J": v.conductor_is_J, "JB_is_J": v.JB_is_J,
                "B_is_J_colon_J": v.B_is_J_colon_J, "B_is_A_colon_J": v.B_is_A_colon_J}

    def chart(ctx):
        c = ctx.lemma45.chart
        return {"equal": c.equal, "relations_vanish": c.relations_vanish, "degree": c.degree,
                "agrees_with_stabilization": c.agrees_with_stabilization}

    def self_linked(ctx):
        inst = ctx.delta
        s = ctx.lk.self_linkage_check(inst.ctx, inst.J, ctx.lemma45.algebra.algebra, ctx.seed, ctx.budget)
        return {"principal": s.principal, "regular": s.regular, "self_linked": s.self_linked}

    return {
        "hypotheses": hyp,
        "admissible": lambda ctx: ctx.inst.hypotheses.admissible,
        "J": lambda ctx: ctx.inst.J,
        "delta_fast_path": lambda ctx: ctx.delta.fast_path,
        "delta": lambda ctx: str(ctx.delta.delta),
        "I": lambda ctx: ctx.delta.I,
        "linkage": verdict,
        "inclusions": inclusions,
        "lemma45": lemma,
        "rees_chart": chart,
        "self_linkage": self_linked,
    }


class KoszulContext:
    def __init__(self, entry: dict, seed: int, budget: int):
        from . import linkage as lk

        self.lk = lk
        F = parse_field(entry.get("field", "QQ"))
        R = make_ring(entry["ring"], F)
        ctx = QuotientRing(R, Ideal.parse(R, entry["defining"]))
        self.spec = lk.KoszulComplexSpec(ctx, [R.parse(f) for f in entry["elements"]])

    @cached_property
    def identities(self):
        return self.lk.koszul_identity_checks(self.spec)


def _koszul_checks() -> dict[str, Callable]:
    def nonvanishing(ctx):
        nz, g = ctx.lk.nonvanishing_range(ctx.spec)
        return {"nonzero": nz, "grade": g, "matches_range": nz == list(range(0, ctx.spec.n - g + 1))}

    return {
        "squares_to_zero": lambda ctx: ctx.spec.squares_to_zero(),
        "dims": lambda ctx: ctx.identities.dims,
        "dims_by_presentation": lambda ctx: ctx.identities.dims_by_presentation,
        "euler": lambda ctx: ctx.identities.euler_characteristic,
        "top_is_annihilator": lambda ctx: ctx.identities.top_is_annihilator,
        "bottom_is_quotient": lambda ctx: ctx.identities.bottom_is_quotient,
        "cycles_ideal": _cycles_as_ideal,
        "nonvanishing": nonvanishing,
    }


def _cycles_as_ideal(ctx: KoszulContext, i: int) -> Ideal:
    """``Z_i + B_i`` for a rank-one degree, read as an ideal (``H_n`` and ``H_0``)."""
    H = ctx.lk.koszul_homology(ctx.spec, i)
    if H.cycles.rank != 1:
        raise InputError("cycles_ideal needs a rank-one Koszul degree")
    R = ctx.spec.ctx.ring
    return Ideal(R, [v.component(0) for v in (H.cycles + H.boundaries).gens])


class Prop57Context:
    def __init__(self, entry: dict, seed: int, budget: int):
        from . import linkage as lk

        F = parse_field(entry.get("field", "GF(32003)"))
        self.p, self.n = int(entry["p"]), int(entry["n"])
        self.verdict = lk.prop57_instance_check(self.p, self.n, F)


def _prop57_checks() -> dict[str, Callable]:
    return {
        "grade_I": lambda ctx: ctx.verdict.grade_I,
        "nonzero": lambda ctx: [m.i for m in ctx.verdict.modules if m.nonzero],
        "pd": lambda ctx: ctx.verdict.pd_values(),
        "annihilator_grade": lambda ctx: [m.grade for m in ctx.verdict.modules if m.nonzero],
        "perfect": lambda ctx: ctx.verdict.all_perfect(),
    }


class SylvesterContext:
    def __init__(self, entry: dict, seed: int, budget: int):
        self.entry, self.seed = entry, seed

    @cached_property
    def trials(self):
        e = self.entry
        prime = int(e.get("prime", 101))
        R = make_ring("t,s", parse_field(f"GF({prime})"))
        return sylvester_trials(R, int(e["m"]), int(e["n"]), int(e["p"]), int(e["trials"]),
                                self.seed + int(e.get("seed_offset", 0)), prime,
                                int(e.get("row_relations", e["trials"])))


def _sylvester_checks() -> dict[str, Callable]:
    return {"trials": lambda ctx: list(ctx.trials)}


KINDS = {
    "map": (MapContext, _map_checks),
    "algebra": (MapContext, _map_checks),
    "linkage": (LinkageContext, _linkage_checks),
    "koszul": (KoszulContext, _koszul_checks),
    "prop57": (Prop57Context, _prop57_checks),
    "sylvester": (SylvesterContext, _sylvester_checks),
}


def check_label(spec: dict) -> str:
    args = spec.get("args", {})
    if not args:
        return spec["check"]
    inner = ",".join(f"{k}={args[k]}" for k in sorted(args))
    return f"{spec['check']}[{inner}]"


def run_entry(entry: dict, seed: int = 0, budget: int = 20) -> VerificationReport:
    t0 = time.perf_counter()
    kind = entry.get("kind")
    rep = VerificationReport(entry.get("name", "?"), str(kind))
    if kind not in KINDS:
        rep.error = f"unknown kind {kind!r}"
        return rep
    ctx_cls, registry = KINDS[kind]
    table = registry()
    try:
        ctx = ctx_cls(entry, seed, budget)
    except CertificationError as exc:
        rep.error, rep.internal_failure = f"certification: {exc}", True
        return rep
    except MpsError as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        return rep
    for spec in entry.get("checks", []):
        label = check_label(spec)
        expected = spec.get("expect")
        prov = spec.get("provenance", "")
        fn = table.get(spec["check"])
        t1 = time.perf_counter()
        if fn is None:
            rep.checks.append(CheckResult(label, FAIL, expected, None, prov, f"unknown check {spec['check']}"))
            continue
        note = ""
        status = None
        try:
            out = fn(ctx, **spec.get("args", {}))
            hyp = True
            if isinstance(out, tuple) and len(out) == 3:
                out, hyp, note = out
            computed = canonical(out)
            if "expect_error" in spec:
                status = FAIL
                note = f"expected {spec['expect_error']}, got a value"
            elif computed == expected:
                status = PASS if hyp else HYPOTHESIS_VIOLATED
            else:
                status = FAIL
        except HypothesisViolation as exc:
            computed = f"HypothesisViolation: {exc}"
            status = PASS if spec.get("expect_error") == "HypothesisViolation" else HYPOTHESIS_VIOLATED
        except CertificationError as exc:
            computed = f"CertificationError: {exc}"
            status = FAIL
            rep.internal_failure = True
        except (MpsError, NoPrimitiveFound, BudgetExhausted) as exc:
            computed = f"{type(exc).__name__}: {exc}"
            status = PASS if spec.get("expect_error") == type(exc).__name__ else FAIL
        rep.checks.append(CheckResult(label, status, expected if "expect" in spec else spec.get("expect_error"),
                                      computed, prov, note, time.perf_counter() - t1))
    rep.seconds = time.perf_counter() - t0
    return rep


def _run_one(args):
    entry, seed, budget = args
    return run_entry(entry, seed, budget)


def run_catalog(entries: list[dict], seed: int = 0, budget: int = 20, jobs: int = 1) -> list[VerificationReport]:
    """Verify entries (in parallel when ``jobs > 1``); reports sorted by name."""
    work = [(e, seed, budget) for e in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, work))
    else:
        reports = [_run_one(w) for w in work]
    return sorted(reports, key=lambda r: r.entry)


def exit_code(reports: list[VerificationReport]) -> int:
    if any(r.internal_failure for r in reports):
        return 3
    if any(r.error.startswith(("InputError", "PolySyntaxError", "UnknownVariable")) for r in reports if r.error):
        return 2
    return 1 if any(r.failed for r in reports) else 0
