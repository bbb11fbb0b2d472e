"""Command-line entry point: ``abpkit <group> <command> [options]``.

Exit codes: 0 success, 1 verification failure or nothing found, 2 usage or
input error, 3 search budget exceeded, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, acceptance
from .abp import evaluate_abp, expand, validate
from .algebra import MismatchError, field_from_tag
from .bounds import family_report
from .chain import extract_chain, synthesize_abp
from .decomp import (
    p_restricted_decomposition,
    s_hat_slice_decomposition,
    shioda_slice_decomposition,
    slice_from_subspace,
    verify,
)
from .families import describe, figure1_abp
from .jsonio import (
    abp_from_json,
    abp_to_json,
    chain_from_json,
    chain_to_json,
    decomp_from_json,
    decomp_to_json,
    dumps,
    forms_from_json,
    forms_to_json,
    load_file,
    poly_from_json,
    poly_to_json,
)
from .singular import pure_power_reduce, sing_generators, verify_claimed_sing
from .subspace import (
    BudgetExceeded,
    build_chart_systems,
    exhaustive_search,
    propagation_refute,
    search_through_point,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

FAMILY_ALIASES = {"powersum": "power_sum", "power_sum": "power_sum", "P": "P", "S": "S",
                  "Shat": "S_hat", "S_hat": "S_hat"}


class UsageError(Exception):
    pass


class Context:
    """Collects outputs and input digests for one invocation."""

    def __init__(self, args, out=None):
        self.args = args
        self.fmt = getattr(args, "format", "text")
        self.out = out or sys.stdout
        self.inputs = {}
        self.chunks = []

    def load(self, path):
        with open(path, "rb") as fh:
            self.inputs[path] = hashlib.sha256(fh.read()).hexdigest()
        return load_file(path)

    def write(self, text):
        self.chunks.append(text)
        self.out.write(text)

    def emit(self, payload, text=None):
        if self.fmt == "json":
            self.write(dumps(payload))
        else:
            self.write((text if text is not None else _as_text(payload)).rstrip("\n") + "\n")

    def line(self, payload, text):
        """One JSON line (json format) or one text line; used for streamed results."""
        self.write((json.dumps(payload) if self.fmt == "json" else text) + "\n")


def _as_text(payload) -> str:
    if isinstance(payload, dict):
        return "\n".join(f"{k}: {v}" for k, v in payload.items())
    return str(payload)


def _parse_point(text, field):
    try:
        return [field(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from None


def _check_payload(check):
    out = {"status": check.status}
    if check.reason:
        out["reason"] = check.reason
    if check.where is not None:
        out["where"] = list(check.where) if isinstance(check.where, tuple) else check.where
    out.update({k: v for k, v in check.details.items()})
    return out


def _status_code(check):
    return {"ok": EXIT_OK, "failed": EXIT_FAIL}.get(check.status, EXIT_INCONCLUSIVE)


# -- poly -------------------------------------------------------------------


def cmd_poly_eval(ctx):
    F = poly_from_json(ctx.load(ctx.args.poly))
    value = F.evaluate(_parse_point(ctx.args.point, F.field))
    ctx.emit({"value": F.field.format(value)}, F.field.format(value))
    return EXIT_OK


def cmd_poly_expand_check(ctx):
    F = poly_from_json(ctx.load(ctx.args.poly))
    a = abp_from_json(ctx.load(ctx.args.abp))
    check = validate(a)
    if not check:
        ctx.emit(_check_payload(check), f"invalid ABP: {check.reason} at {check.where}")
        return EXIT_FAIL
    if a.field != F.field or a.num_vars != F.num_vars:
        raise MismatchError("ABP and polynomial live in different spaces")
    G = expand(a)
    same = G == F
    ctx.emit({"equal": same, "expanded": poly_to_json(G)},
             "equal" if same else f"not equal; ABP computes {G}")
    return EXIT_OK if same else EXIT_FAIL


# -- abp --------------------------------------------------------------------


def cmd_abp_validate(ctx):
    a = abp_from_json(ctx.load(ctx.args.abp))
    check = validate(a)
    text = f"ok, size {check.details['size']}" if check else f"{check.reason} at {check.where}"
    ctx.emit(_check_payload(check), text)
    return _status_code(check)


def _load_valid_abp(ctx):
    a = abp_from_json(ctx.load(ctx.args.abp))
    check = validate(a)
    if not check:
        raise UsageError(f"invalid ABP: {check.reason} at {check.where}")
    return a


def cmd_abp_expand(ctx):
    a = _load_valid_abp(ctx)
    F = expand(a)
    ctx.emit(poly_to_json(F), str(F))
    return EXIT_OK


def cmd_abp_eval(ctx):
    a = _load_valid_abp(ctx)
    value = evaluate_abp(a, _parse_point(ctx.args.point, a.field))
    ctx.emit({"value": a.field.format(value)}, a.field.format(value))
    return EXIT_OK


# -- family -----------------------------------------------------------------


def cmd_family_emit(ctx):
    args = ctx.args
    if args.name == "fig1":
        payload = abp_to_json(figure1_abp())
    else:
        if args.n is None or args.d is None:
            raise UsageError("--n and --d are required for polynomial families")
        name = FAMILY_ALIASES[args.name]
        payload = poly_to_json(describe(name, args.n, args.d).polynomial(field_from_tag(args.field)))
    text = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        ctx.emit({"written": args.out}, f"wrote {args.out}")
    else:
        ctx.write(text)
    return EXIT_OK


# -- decomp -----------------------------------------------------------------


def cmd_decomp_verify(ctx):
    F = poly_from_json(ctx.load(ctx.args.poly))
    dec = decomp_from_json(ctx.load(ctx.args.decomp))
    check = verify(F, dec)
    text = f"ok, {dec.length} summands" if check else f"failed: {check.reason} at {check.where}"
    ctx.emit(_check_payload(check), text)
    return _status_code(check)


def cmd_decomp_make(ctx):
    args = ctx.args
    if args.kind == "from-subspace":
        if not (args.poly and args.forms):
            raise UsageError("from-subspace needs --poly and --forms")
        F = poly_from_json(ctx.load(args.poly))
        Q = forms_from_json(ctx.load(args.forms), field=F.field)
        try:
            dec = slice_from_subspace(F, Q)
        except ValueError as exc:
            ctx.emit({"status": "failed", "reason": str(exc)}, f"failed: {exc}")
            return EXIT_FAIL
    else:
        if args.n is None or args.d is None:
            raise UsageError("--n and --d are required")
        if args.kind == "shioda":
            dec = shioda_slice_decomposition(args.n, args.d)
        elif args.kind == "shat":
            dec = s_hat_slice_decomposition(args.n, args.d)
        else:
            if args.j is None:
                raise UsageError("--j is required for P")
            dec = p_restricted_decomposition(args.n, args.d, args.j)
    payload = decomp_to_json(dec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
        ctx.emit({"written": args.out, "summands": dec.length}, f"wrote {args.out}")
    else:
        ctx.write(dumps(payload))
    return EXIT_OK


# -- search -----------------------------------------------------------------


def cmd_search_subspaces(ctx):
    args = ctx.args
    F = poly_from_json(ctx.load(args.poly))
    if args.refute_rational:
        if F.field.characteristic != 0:
            raise UsageError("--refute-rational needs a polynomial over Q")
        res = propagation_refute(build_chart_systems(F, args.codim, workers=args.workers))
        payload = {"mode": "refute-rational", "codim": args.codim, "status": res.status}
        if not res.refuted:
            payload["chart_pivots"] = list(res.chart.pivots)
            payload["chart_index"] = res.chart_index
            payload["residual"] = [str(e) for e in res.residual]
        text = f"{res.status}" + ("" if res.refuted else
                                  f" at chart {list(res.chart.pivots)}; {len(res.residual)} residual equations")
        ctx.emit(payload, text)
        return EXIT_FAIL if res.refuted else EXIT_INCONCLUSIVE
    field = field_from_tag(args.field)
    if field.characteristic == 0:
        raise UsageError("--field must be Fp:<p>; use --refute-rational for Q")
    F = F.to_field(field)
    stats = {}
    try:
        if args.through_point:
            hits = search_through_point(F, _parse_point(args.through_point, field), args.codim,
                                        budget=args.budget, stats=stats)
        else:
            hits = exhaustive_search(F, args.codim, budget=args.budget, workers=args.workers, stats=stats)
    except BudgetExceeded as exc:
        for Q in exc.found:
            ctx.line({"subspace": forms_to_json(Q)["forms"]}, str(Q))
        ctx.line({"status": "budget-exceeded", "examined": exc.examined, "total": exc.total,
                  "found": len(exc.found), "heuristic": True},
                 f"budget exceeded after {exc.examined} of {exc.total} candidates ({len(exc.found)} found)")
        return EXIT_BUDGET
    for Q in hits:
        ctx.line({"subspace": forms_to_json(Q)["forms"]}, str(Q))
    ctx.line({"status": "found" if hits else "none-found", "found": len(hits), "examined": stats["examined"],
              "total": stats["total"], "field": field.tag, "heuristic": True},
             f"{len(hits)} of {stats['examined']} candidates lie in Z(F) over {field.tag} (heuristic)")
    return EXIT_OK if hits else EXIT_FAIL


# -- sing -------------------------------------------------------------------


def cmd_sing_compute(ctx):
    F = poly_from_json(ctx.load(ctx.args.poly))
    rep = pure_power_reduce(sing_generators(F), F.num_vars, F.field)
    payload = {
        "generators": [poly_to_json(g) for g in rep.generators],
        "reduced_linear_forms": [[F.field.format(c) for c in L.coeffs] for L in rep.reduced_linear_forms],
        "codim": rep.codim,
        "status": rep.status,
    }
    if rep.remaining:
        payload["remaining"] = [str(g) for g in rep.remaining]
    code = EXIT_OK if rep.status == "reduced" else EXIT_INCONCLUSIVE
    text = f"{rep.status}; codim {rep.codim}; forms {[str(L) for L in rep.reduced_linear_forms]}"
    if ctx.args.claim:
        claimed = forms_from_json(ctx.load(ctx.args.claim), field=F.field)
        check = verify_claimed_sing(F, claimed)
        payload["claim"] = _check_payload(check)
        text += f"\nclaim: {check.status}" + (f" ({check.reason})" if check.reason else "")
        code = _status_code(check)
    ctx.emit(payload, text)
    return code


# -- chain ------------------------------------------------------------------


def cmd_chain_extract(ctx):
    a = abp_from_json(ctx.load(ctx.args.abp))
    c = extract_chain(a)
    payload = chain_to_json(c)
    text = "\n".join(f"level {k}: " + ", ".join(str(g) for g in level) for k, level in enumerate(c.levels, 1))
    ctx.emit(payload, text)
    return EXIT_OK


def cmd_chain_synthesize(ctx):
    c = chain_from_json(ctx.load(ctx.args.chain))
    try:
        a = synthesize_abp(c, minimize=ctx.args.minimize)
    except ValueError as exc:
        ctx.emit({"status": "failed", "reason": str(exc)}, f"failed: {exc}")
        return EXIT_FAIL
    ctx.emit(abp_to_json(a), f"widths {list(a.widths)}, size {a.size}\ncomputes {expand(a)}")
    return EXIT_OK


# -- bounds -----------------------------------------------------------------


def cmd_bounds_compute(ctx):
    args = ctx.args
    if args.json:
        ctx.fmt = "json"
    rep = family_report(FAMILY_ALIASES[args.family], args.n, args.d)
    payload = rep.to_dict()
    lines = [f"family {rep.family} n={rep.n} d={rep.d} ({rep.status})",
             "per-j lower bounds: " + ", ".join(f"j={j}: {v}" for j, v in sorted(rep.per_j_lower.items())),
             f"total: {rep.total_abp_lower}"]
    for k, v in rep.closed_forms.items():
        lines.append(f"closed form {k}: {v}")
    lines += [f"warning: {w}" for w in rep.warnings]
    ctx.emit(payload, "\n".join(lines))
    return EXIT_OK


# -- repro ------------------------------------------------------------------


def cmd_repro_all(ctx):
    results = acceptance.run_all(seed=ctx.args.seed)
    if ctx.fmt == "json":
        ctx.emit({"seed": ctx.args.seed, "results": [r.to_dict(timings=ctx.args.timings) for r in results],
                  "passed": sum(r.passed for r in results), "total": len(results)})
    else:
        rows = []
        for r in results:
            row = f"{r.number:>2}  {'PASS' if r.passed else 'FAIL'}  {r.title}"
            if ctx.args.timings:
                row += f"  [{r.elapsed:.2f}s / {r.limit:g}s]"
            rows.append(row)
            rows += [f"      - {f}" for f in r.failures]
        rows.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
        ctx.emit(None, "\n".join(rows))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest (JSON) to PATH")

    p = argparse.ArgumentParser(prog="abpkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"abpkit {__version__}")
    groups = p.add_subparsers(dest="group", required=True)

    def group(name, help_):
        g = groups.add_parser(name, help=help_)
        return g.add_subparsers(dest="command", required=True)

    def cmd(sub, name, fn, help_):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.set_defaults(func=fn)
        return c

    g = group("poly", "polynomial utilities")
    c = cmd(g, "eval", cmd_poly_eval, "evaluate a polynomial at a point")
    c.add_argument("--poly", required=True)
    c.add_argument("--point", required=True, help="comma-separated coordinates")
    c = cmd(g, "expand-check", cmd_poly_expand_check, "check that an ABP computes the polynomial")
    c.add_argument("--poly", required=True)
    c.add_argument("--abp", required=True)

    g = group("abp", "algebraic branching programs")
    c = cmd(g, "validate", cmd_abp_validate, "check the structural invariants")
    c.add_argument("--abp", required=True)
    c = cmd(g, "expand", cmd_abp_expand, "print the computed polynomial")
    c.add_argument("--abp", required=True)
    c = cmd(g, "eval", cmd_abp_eval, "evaluate at a point without expanding")
    c.add_argument("--abp", required=True)
    c.add_argument("--point", required=True)

    g = group("family", "explicit polynomial families")
    c = cmd(g, "emit", cmd_family_emit, "write a family member as JSON")
    c.add_argument("--name", required=True, choices=("powersum", "P", "S", "Shat", "fig1"))
    c.add_argument("--n", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--field", default="Q")
    c.add_argument("--out")

    g = group("decomp", "strength decompositions")
    c = cmd(g, "verify", cmd_decomp_verify, "verify a decomposition against a polynomial")
    c.add_argument("--poly", required=True)
    c.add_argument("--decomp", required=True)
    c = cmd(g, "make", cmd_decomp_make, "build a known decomposition")
    c.add_argument("--kind", required=True, choices=("shioda", "shat", "P", "from-subspace"))
    c.add_argument("--n", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--j", type=int)
    c.add_argument("--poly")
    c.add_argument("--forms")
    c.add_argument("--out")

    g = group("search", "linear subspaces inside hypersurfaces")
    c = cmd(g, "subspaces", cmd_search_subspaces, "enumerate or refute codim-r subspaces in Z(F)")
    c.add_argument("--poly", required=True)
    c.add_argument("--codim", type=int, required=True)
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--field", help="Fp:<p>, exhaustive search over GF(p)")
    mode.add_argument("--refute-rational", action="store_true", help="chart propagation over Q")
    c.add_argument("--through-point", help="comma-separated coordinates of a point to pass through")
    c.add_argument("--budget", type=int, help="candidate cap")
    c.add_argument("--workers", type=int, default=1)

    g = group("sing", "singular locus")
    c = cmd(g, "compute", cmd_sing_compute, "partials and their pure-power reduction")
    c.add_argument("--poly", required=True)
    c.add_argument("--claim", help="forms JSON of a claimed singular locus")

    g = group("chain", "ideal chains")
    c = cmd(g, "extract", cmd_chain_extract, "ideal chain of an ABP")
    c.add_argument("--abp", required=True)
    c = cmd(g, "synthesize", cmd_chain_synthesize, "ABP from an ideal chain")
    c.add_argument("--chain", required=True)
    c.add_argument("--minimize", action="store_true", help="prune linearly dependent generators")

    g = group("bounds", "lower-bound calculators")
    c = cmd(g, "compute", cmd_bounds_compute, "per-degree and total lower bounds for a family")
    c.add_argument("--family", required=True, choices=("powersum", "P", "S"))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--json", action="store_true", help="same as --format json")

    g = group("repro", "reproducibility runs")
    c = cmd(g, "all", cmd_repro_all, "run the acceptance suite")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--timings", action="store_true", help="include wall-clock times (not reproducible)")
    return p


def _write_manifest(ctx, argv, code, elapsed):
    out = "".join(ctx.chunks)
    manifest = {
        "command": ["abpkit", *argv],
        "version": __version__,
        "inputs": dict(sorted(ctx.inputs.items())),
        "exit_status": code,
        "result_sha256": hashlib.sha256(out.encode()).hexdigest(),
        "elapsed_s": round(elapsed, 3),
    }
    with open(ctx.args.manifest, "w", encoding="utf-8") as fh:
        fh.write(dumps(manifest))


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = Context(args, out)
    t0 = time.perf_counter()
    try:
        code = args.func(ctx)
    except (UsageError, OSError, ValueError) as exc:  # FormatError and MismatchError included
        print(f"abpkit: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    if args.manifest:
        _write_manifest(ctx, argv, code, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
