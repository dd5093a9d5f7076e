"""``mps`` command line.

Exit codes: 0 success, 1 a verification failed, 2 bad input,
3 an internal certification broke.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import catalog as cat
from .config import RunConfig
from .determinantal import fitting_ideal, sylvester_on_matrix, sylvester_trials
from .dimension import codim_grade, free_resolution, krull_dim, length_artinian, local_length
from .errors import CertificationError, InputError, MpsError, NotArtinian
from .fields import parse_field
from .ideals import Ideal, QuotientRing
from .matrices import PolyMatrix
from .multipoint import (
    adjoint_conductor,
    exact_sequence_36_check,
    analyze,
    length_relation_check,
    scheme_image_and_annihilator,
)
from .polyring import make_ring
from .report import emit_mapping, emit_report


@dataclass(frozen=True)
class Settings(RunConfig):
    def write(self, payload: bytes):
        if self.out:
            Path(self.out).write_bytes(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()

    def emit(self, data: dict):
        self.write(emit_mapping(data, self.fmt))


def _run(fn):
    """Map library errors to exit codes."""
    try:
        return fn()
    except CertificationError as exc:
        click.echo(f"certification failure: {exc}", err=True)
        sys.exit(3)
    except InputError as exc:
        click.echo(f"input error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(2)
    except MpsError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(1)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _ring_and_ideal(s: Settings, ring: str, gens, order: str = "grevlex"):
    R = make_ring(ring, parse_field(s.field), order)
    return R, Ideal.parse(R, list(gens))


def _matrix(s: Settings, path: str) -> PolyMatrix:
    data = _load_json(path)
    R = make_ring(data["ring"], parse_field(data.get("field", s.field)))
    return PolyMatrix.parse(R, data["rows"] if "rows" in data else data["matrix"])


@click.group()
@click.option("--field", default="QQ", show_default=True, help="QQ, GF(p) or QQ(a,b).")
@click.option("--seed", default=0, show_default=True, type=int, help="Seed for every randomized search.")
@click.option("--budget", default=20, show_default=True, type=int, help="Draw limit for randomized searches.")
@click.option("--jobs", default=1, show_default=True, type=int, help="Parallel workers for catalog runs.")
@click.option("--format", "fmt", default="text", type=click.Choice(["text", "json"]), show_default=True)
@click.option("--out", default=None, help="Write output to this file instead of stdout.")
@click.pass_context
def main(ctx, field, seed, budget, jobs, fmt, out):
    """Multiple-point schemes, Fitting ideals and linkage by minors."""
    try:
        ctx.obj = Settings(field, seed, budget, jobs, fmt, out)
    except InputError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command()
@click.option("--ring", default=None, help='Variables, e.g. "x,y,z".')
@click.option("--order", default="grevlex", type=click.Choice(["grevlex", "lex"]))
@click.argument("gens", nargs=-1, required=True)
@click.pass_obj
def gb(s, ring, order, gens):
    """Reduced Groebner basis, one generator per line.

    GENS is either polynomials (with --ring) or a single ideal JSON file
    {"ring": "x,y", "gens": [...], "field": "QQ", "order": "grevlex"}.
    """
    def go():
        if ring is None:
            if len(gens) != 1:
                raise InputError("without --ring give exactly one ideal JSON file")
            data = _load_json(gens[0])
            R = make_ring(data["ring"], parse_field(data.get("field", s.field)), data.get("order", order))
            I = Ideal.parse(R, data["gens"])
        else:
            _, I = _ring_and_ideal(s, ring, gens, order)
        basis = I.basis_strings()
        if s.fmt == "json":
            s.emit({"basis": basis})
        else:
            s.write(("\n".join(basis) + "\n").encode())
    _run(go)


@main.command()
@click.option("--ring", required=True)
@click.argument("gens", nargs=-1, required=True)
@click.pass_obj
def dim(s, ring, gens):
    """Krull dimension and codimension of R/I."""
    def go():
        _, I = _ring_and_ideal(s, ring, gens)
        d = krull_dim(I)
        s.emit({"dim": d, "codim": None if d < 0 else codim_grade(I)})
    _run(go)


@main.command()
@click.option("--ring", required=True)
@click.argument("gens", nargs=-1, required=True)
@click.pass_obj
def length(s, ring, gens):
    """Length of an Artinian R/I."""
    def go():
        _, I = _ring_and_ideal(s, ring, gens)
        s.emit({"length": length_artinian(I)})
    _run(go)


@main.command("local-length")
@click.option("--ring", required=True)
@click.option("--prime", required=True, help="Comma-separated generators, or a JSON file.")
@click.option("--invert", default="", help="Independent variables to invert.")
@click.argument("gens", nargs=-1, required=True)
@click.pass_obj
def local_length_cmd(s, ring, prime, invert, gens):
    """Length of R/I at the generic point of PRIME."""
    def go():
        R, I = _ring_and_ideal(s, ring, gens)
        if prime.endswith(".json"):
            data = _load_json(prime)
            P = Ideal.parse(R, data["gens"] if isinstance(data, dict) else data)
        else:
            P = Ideal.parse(R, [g for g in prime.split(",") if g.strip()])
        inv = [v.strip() for v in invert.split(",") if v.strip()]
        s.emit({"length": local_length(I, P, inv)})
    _run(go)


@main.command()
@click.option("--ring", required=True)
@click.option("--minimize/--no-minimize", default=True, show_default=True, help="Prune unit entries at the origin.")
@click.argument("gens", nargs=-1, required=True)
@click.pass_obj
def resolve(s, ring, minimize, gens):
    """Free resolution of R/I by iterated syzygies."""
    def go():
        _, I = _ring_and_ideal(s, ring, gens)
        res = free_resolution(I, minimize_at_origin=minimize)
        s.emit({"betti": res.betti(), "pd": res.pd, "minimized": minimize})
    _run(go)


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="JSON with ring, rows.")
@click.option("--index", "--i", "i", default=0, type=int, show_default=True)
@click.pass_obj
def fitting(s, matrix_path, i):
    """Fitting ideal Fitt_i of the cokernel of a matrix."""
    def go():
        s.emit({"index": i, "fitting": fitting_ideal(_matrix(s, matrix_path), i)})
    _run(go)


@main.command()
@click.option("--m", default=4, type=int, show_default=True)
@click.option("--n", default=6, type=int, show_default=True)
@click.option("--p", default=2, type=int, show_default=True)
@click.option("--trials", default=200, type=int, show_default=True)
@click.option("--row-relations", default=100, type=int, show_default=True)
@click.option("--prime", default=101, type=int, show_default=True)
@click.option("--matrix", "matrix_path", default=None, help="Check random index choices on this matrix instead.")
@click.pass_obj
def sylvester(s, m, n, p, trials, row_relations, prime, matrix_path):
    """Seeded random instances of the minor identities; exit 1 on a failure."""
    def go():
        if matrix_path:
            ok, tot, rok, rtot = sylvester_on_matrix(_matrix(s, matrix_path), p, trials, s.seed)
        else:
            R = make_ring("t,s", parse_field(f"GF({prime})"))
            ok, tot, rok, rtot = sylvester_trials(R, m, n, p, trials, s.seed, prime, row_relations)
        s.emit({"sylvester": [ok, tot], "row_relation": [rok, rtot]})
        return ok == tot and rok == rtot
    if not _run(go):
        sys.exit(1)


def _map_context(s: Settings, path: str) -> cat.MapContext:
    data = _load_json(path)
    data.setdefault("kind", "map" if "images" in data else "algebra")
    data.setdefault("name", Path(path).stem)
    data.setdefault("field", s.field)
    return cat.MapContext(data, s.seed, s.budget)


@main.command()
@click.option("--map", "map_path", required=True, help="JSON map or algebra description.")
@click.pass_obj
def image(s, map_path):
    """Scheme-theoretic image, annihilator and Fitt_0 comparisons."""
    def go():
        v = scheme_image_and_annihilator(_map_context(s, map_path).alg)
        s.emit({"image": v.image, "annihilator": v.annihilator, "fitt0": v.fitt0,
                "ann_equals_image": v.ann_equals_image, "fitt0_in_image": v.fitt0_in_image,
                "fitt0_equals_image": v.fitt0_equals_image, "same_support": v.same_support})
    _run(go)


@main.command()
@click.option("--map", "map_path", required=True)
@click.pass_obj
def conductor(s, map_path):
    """Adjoint ideal and conductor (requires Fitt_0 = image)."""
    def go():
        v = adjoint_conductor(_map_context(s, map_path).alg)
        s.emit({"adjoint": v.adjoint, "conductor": v.conductor if isinstance(v.conductor, Ideal) else str(v.conductor),
                "routes_agree": v.agree})
    _run(go)


@main.command()
@click.option("--map", "map_path", required=True)
@click.option("--r", "rs", multiple=True, type=int, help="Multiplicities (default: all).")
@click.option("--verify", default="none", type=click.Choice(["none", "all"]), show_default=True,
              help="Also run image, adjoint and exact-sequence checks.")
@click.pass_obj
def multipoint(s, map_path, rs, verify):
    """N_r, M_r, codimension, perfection and Fitting-identity checks."""
    def go():
        ctx = _map_context(s, map_path)
        rep = analyze(ctx.alg, rs or None, s.seed, s.budget)
        out = {"rank": rep.rank, "labels": rep.labels,
               "N": {r: I for r, I in rep.N.items()},
               "M": {r: (M if isinstance(M, Ideal) else str(M)) for r, M in rep.M.items()},
               "codim": rep.codim,
               "perfect": {r: list(v) if v else None for r, v in rep.perfect.items()},
               "gruson_peskine": rep.gruson_peskine}
        comps = ctx.alg.spec.components if ctx.alg.spec is not None else getattr(ctx, "components", [])
        out["lengths"] = [
            {"component": c.name, "r": c.r, "lhs": chk.lhs, "rhs": chk.rhs, "hypothesis": chk.hypothesis}
            for c in comps for chk in [length_relation_check(ctx.alg, c.r, c)]
        ]
        if verify == "all":
            img = ctx.image
            out["image_verdicts"] = {"ann_equals_image": img.ann_equals_image, "fitt0_in_image": img.fitt0_in_image,
                                     "same_support": img.same_support, "fitt0_equals_image": img.fitt0_equals_image}
            if img.fitt0_equals_image:
                adj = adjoint_conductor(ctx.alg)
                out["adjoint"] = {"adjoint": adj.adjoint, "routes_agree": adj.agree}
            chosen = rs or range(1, ctx.alg.rank + 1)
            out["exact_sequence"] = {}
            for r in chosen:
                try:
                    out["exact_sequence"][r] = exact_sequence_36_check(ctx.alg, r, ctx.primitive).holds
                except NotArtinian:
                    out["exact_sequence"][r] = None
        s.emit(out)
    _run(go)


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="JSON with ring and rows.")
@click.option("--p", "p", required=True, type=int)
@click.option("--conductor/--no-conductor", default=False, help="Also run the conductor identities.")
@click.pass_obj
def linkage(s, matrix_path, p, conductor):
    """Hypotheses, Delta, and IJ = Delta J, J = (Delta):I; exit 1 if a verdict fails."""
    from . import linkage as lk

    def go():
        inst = lk.theorem59_hypotheses(_matrix(s, matrix_path), p)
        h = inst.hypotheses
        out = {"grade": {i: list(v) for i, v in h.grade.items()}, "last_rows": h.last_rows,
               "admissible": h.admissible, "J": inst.J}
        ok = True
        try:
            inst = lk.find_regular_delta(inst, s.seed, s.budget)
        except MpsError as exc:
            out["delta_error"] = f"{type(exc).__name__}: {exc}"
            s.emit(out)
            return False
        v = lk.verify_linkage(inst)
        out.update({"delta": str(inst.delta), "fast_path": inst.fast_path, "I": inst.I,
                    "product": v.product, "colon": v.colon})
        ok = v.product and v.colon
        if conductor and ok:
            c = lk.lemma45_suite(inst.ctx, inst.I, inst.J, inst.delta, seed=s.seed)
            out["lemma45"] = {"exponent": c.algebra.exponent, "all_hold": c.all_hold}
            ok = ok and c.all_hold
        s.emit(out)
        return ok
    if not _run(go):
        sys.exit(1)


@main.command()
@click.option("--ring", "ring_path", required=True, help="JSON with ring, defining, optional field.")
@click.option("--elements", "elements_path", required=True, help="JSON list of elements.")
@click.option("--check", "which", default="all", type=click.Choice(["all", "dims", "identities", "range"]))
@click.pass_obj
def koszul(s, ring_path, elements_path, which):
    """Koszul homology of elements over R/J_A."""
    from . import linkage as lk

    def go():
        data = _load_json(ring_path)
        R = make_ring(data["ring"], parse_field(data.get("field", s.field)))
        ctx = QuotientRing(R, Ideal.parse(R, data.get("defining", [])))
        elems = _load_json(elements_path)
        spec = lk.KoszulComplexSpec(ctx, [R.parse(f) for f in elems])
        out = {"squares_to_zero": spec.squares_to_zero()}
        ok = out["squares_to_zero"]
        if which in ("all", "dims"):
            out["dims"] = lk.homology_dims(spec)
        if which in ("all", "identities"):
            k = lk.koszul_identity_checks(spec)
            out.update({"top_is_annihilator": k.top_is_annihilator, "bottom_is_quotient": k.bottom_is_quotient,
                        "euler": k.euler_characteristic})
            ok = ok and k.top_is_annihilator and k.bottom_is_quotient and k.euler_characteristic in (0, None)
        if which in ("all", "range"):
            nz, g = lk.nonvanishing_range(spec)
            out.update({"nonzero": nz, "grade": g})
            ok = ok and nz == list(range(spec.n - g + 1))
        s.emit(out)
        return ok
    if not _run(go):
        sys.exit(1)


@main.command()
@click.option("--p", "p", required=True, type=int)
@click.option("--n", "n", required=True, type=int)
@click.pass_obj
def prop57(s, p, n):
    """Generic (p+1) x n instance: grade of I and pd of every Koszul module."""
    from . import linkage as lk

    def go():
        field = parse_field(s.field)
        v = lk.prop57_instance_check(p, n, field)
        s.emit({"grade_I": v.grade_I, "pd": v.pd_values(),
                "annihilator_grade": [m.grade for m in v.modules if m.nonzero],
                "perfect": v.all_perfect()})
        return v.grade_I == 1 and v.all_perfect()
    if not _run(go):
        sys.exit(1)


@main.group()
def catalog():
    """Run the in-repo example catalog."""


@catalog.command("list")
@click.pass_obj
def catalog_list(s):
    def go():
        for e in cat.load_catalog():
            click.echo(f"{e['name']}\t{e['kind']}\t{len(e.get('checks', []))} checks")
    _run(go)


@catalog.command("run")
@click.option("--filter", "pattern", default=None, help="Name glob (substring if no wildcard).")
@click.option("--all", "run_all", is_flag=True, help="Run every entry.")
@click.option("--file", "files", multiple=True, help="Catalog JSON files instead of the built-in set.")
@click.option("--timings", is_flag=True, help="Include wall times (breaks byte stability).")
@click.pass_obj
def catalog_run(s, pattern, run_all, files, timings):
    """Verify catalog entries; exit 1 on any FAIL, 3 on certification failures."""
    try:
        entries = cat.load_catalog(files or None)
    except InputError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    if not run_all and not pattern:
        click.echo("give --filter PATTERN or --all", err=True)
        sys.exit(2)
    chosen = cat.select(entries, None if run_all else pattern)
    if not chosen:
        click.echo(f"no catalog entry matches {pattern!r}", err=True)
        sys.exit(2)
    reports = cat.run_catalog(chosen, s.seed, s.budget, s.jobs)
    s.write(emit_report(reports, s.fmt, timings))
    sys.exit(cat.exit_code(reports))


if __name__ == "__main__":
    main()
