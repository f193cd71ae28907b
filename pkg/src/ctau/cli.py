"""Command-line driver: ``ctau <subcommand> [options]``.

Exit codes: 0 when every check passes, 1 on a check failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bidegree import ct_endo_region_zero, ct_pi_region_zero, moore_pi_region_zero, novikov_to_motivic
from .cache import cached
from .chart import ChartDocument, ExtChartEntry, emit_json, emit_svg, emit_tsv
from .obstruction import Kind, audit, symbolic_audit

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PREDICATES = {"pi": ct_pi_region_zero, "endo": ct_endo_region_zero, "moore": moore_pi_region_zero}
AUDIT_KINDS = ("ainf-exist", "ainf-unique", "einf-exist", "einf-unique", "moore-ainf", "moore-einf")
MASSEY_ALGEBRAS = ("A1", "A1-mod-tau")


class UsageError(Exception):
    pass


# -- output helpers ---------------------------------------------------------------------


def _emit(doc: ChartDocument, directory: str | None, stem: str) -> list[str]:
    if not directory:
        return []
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for ext, fn in (("json", emit_json), ("tsv", emit_tsv), ("svg", emit_svg)):
        path = out / f"{stem}.{ext}"
        path.write_bytes(fn(doc))
        written.append(str(path))
    return written


def _finish(args, ok: bool, payload: dict, lines: list[str]) -> int:
    payload = {"command": args.command, "ok": ok, **payload}
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _positive(name: str, value, minimum: int = 0) -> int:
    if value is None:
        raise UsageError(f"--{name} is required")
    if int(value) < minimum:
        raise UsageError(f"--{name} must be at least {minimum}")
    return int(value)


# -- subcommands ------------------------------------------------------------------------


def bp_chart_rows(k: int, t_max: int, f_max: int) -> list[dict]:
    from .bp import build_algebroid
    from .cobar import BPCobar

    return BPCobar(build_algebroid(k, t_max), s_max=f_max + 1, t_max=t_max).chart(f_max)


def bp_chart_document(rows: list[dict], k: int, t_max: int, f_max: int) -> ChartDocument:
    """One entry per cyclic summand; ``name`` is the summand ("Z" or "Z/n")."""
    entries = []
    for row in rows:
        s, w = row["stem"], row["motivic"][1]
        summands = [0] * row["free_rank"] + list(row["torsion"])
        for i, order in enumerate(summands):
            name = "Z" if order == 0 else f"Z/{order}"
            entries.append(ExtChartEntry(s, row["f"], w, None, name, f"{s},{row['f']},{w}#{i}", 0, "bp-cobar"))
    meta = {"k": k, "t_max": t_max, "f_max": f_max, "coordinates": "stem, Novikov filtration, weight t/2"}
    return ChartDocument(f"Ext over BP_*BP, k={k}", "novikov", entries, [], meta)


def cmd_bp_ext(args) -> int:
    t_max = _positive("tmax", args.tmax, 0)
    f_max = _positive("fmax", args.fmax, 0)
    k = _positive("k", args.k, 1)
    spec = {"command": "bp-ext", "k": k, "t_max": t_max, "f_max": f_max}
    try:
        rows = cached(spec, lambda: bp_chart_rows(k, t_max, f_max), enabled=args.cache)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = bp_chart_document(rows, k, t_max, f_max)
    ok = any(r["f"] == 0 and r["t"] == 0 and r["free_rank"] == 1 and not r["torsion"] for r in rows)
    lines = [f"{'f':>2} {'t':>3}  {'(s,w)':>8}  group"]
    for r in rows:
        if r["group"] != "0":
            s, w = novikov_to_motivic(r["f"], r["t"])
            lines.append(f"{r['f']:>2} {r['t']:>3}  {f'({s},{w})':>8}  {r['group']}")
    written = _emit(doc, args.emit, "bp-ext")
    return _finish(args, ok, {"rows": rows, "written": written}, lines)


def a1_chart(stems: int, filtration_max: int, mod_tau: bool, use_cache: bool = True) -> ChartDocument:
    from .minres import ext_chart, resolve

    def compute():
        res = resolve(stem_max=stems, filtration_max=filtration_max, mod_tau=mod_tau)
        res.check_exactness()
        title = "Ext over A(1)/tau" if mod_tau else "Ext over A(1)"
        return ext_chart(res, title).to_json()

    spec = {"command": "a1-ext", "stems": stems, "fmax": filtration_max, "mod_tau": mod_tau}
    return ChartDocument.from_json(cached(spec, compute, enabled=use_cache))


def cmd_a1_ext(args) -> int:
    stems = _positive("stems", args.stems, 0)
    fmax = _positive("fmax", args.fmax, 0)
    doc = a1_chart(stems, fmax, args.mod_tau, args.cache)
    lines = [f"{e.stem:>3} {e.filtration:>3} {e.weight:>3}  {e.tag.value:<5} {e.name}" for e in doc.sorted().entries]
    written = _emit(doc, args.emit, "a1-ext-mod-tau" if args.mod_tau else "a1-ext")
    return _finish(args, True, {"chart": doc.to_json(), "written": written}, lines)


def cmd_kq_ct(args) -> int:
    from .pipeline import kq_ct_pipeline

    res = kq_ct_pipeline(_positive("stems", args.stems, 4), _positive("fmax", args.fmax, 4))
    lines = [f"{name}: {'ok' if v else 'FAILED'}" for name, v in res.checks.items()]
    lines.append(f"presentation: {res.presentation.describe()}")
    lines.extend(f"derived: {r}" for r in res.derived_relations)
    written = _emit(res.resolved, args.emit, "kq-ct")
    return _finish(args, res.ok, {**res.to_json(), "written": written}, lines)


def cmd_vanishing(args) -> int:
    if not args.grid or len(args.grid) != 4:
        raise UsageError("--grid needs SMIN SMAX WMIN WMAX")
    smin, smax, wmin, wmax = args.grid
    if smin > smax or wmin > wmax:
        raise UsageError("--grid bounds are reversed")
    pred = PREDICATES[args.predicate]
    zero = []
    for s in range(smin, smax + 1):
        for w in range(wmin, wmax + 1):
            v = pred(s, w)
            if v.is_provably_zero:
                zero.append({"s": s, "w": w, "rule": v.rule.value})
    lines = []
    zero_set = {(z["s"], z["w"]) for z in zero}
    for w in range(wmax, wmin - 1, -1):
        row = "".join("0" if (s, w) in zero_set else "." for s in range(smin, smax + 1))
        lines.append(f"{w:>4} {row}")
    lines.append(f"{len(zero)} of {(smax - smin + 1) * (wmax - wmin + 1)} bidegrees provably zero")
    payload = {"predicate": args.predicate, "grid": args.grid, "zero": zero}
    return _finish(args, True, payload, lines)


def cmd_audit(args) -> int:
    if args.kind is None:
        raise UsageError(f"--kind is required; choose from {', '.join(AUDIT_KINDS)}")
    kind = Kind.parse(args.kind)
    n_max = _positive("nmax", args.nmax, 3)
    try:
        report = audit(kind, n_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = report.all_zero
    lines = [f"{kind.value}: {len(report.entries)} obstruction groups through n = {n_max}, all_zero = {report.all_zero}"]
    lines.extend(f"  nonzero candidate: {e.to_json()}" for e in report.failures()[:10])
    payload = {"report": report.to_json()}
    if args.symbolic:
        certs = symbolic_audit(kind)
        ok = ok and all(c.ok for c in certs)
        payload["certificates"] = [c.to_json() for c in certs]
        for c in certs:
            lines.append(f"  certificate [{c.family}]: {'closes' if c.ok else 'OPEN'}")
            lines.extend(f"    {step}" for step in c.steps)
    return _finish(args, ok, payload, lines)


def cmd_hopf_verify(args) -> int:
    from .steenrod import build_slice, verify_hopf_axioms

    if args.variant is None:
        raise UsageError("--variant is required")
    degree = _positive("degree", args.degree, 0)
    try:
        slice_ = build_slice(args.variant, degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = verify_hopf_axioms(slice_)
    lines = [f"{report.variant} through degree {degree}: {report.checks} checks, {len(report.failures)} failures"]
    lines.extend(f"  {f}" for f in report.failures[:10])
    return _finish(args, report.ok, {"report": report.to_json()}, lines)


def cmd_massey(args) -> int:
    from .pipeline import a1_massey

    if args.algebra not in MASSEY_ALGEBRAS:
        raise UsageError(f"--algebra must be one of {', '.join(MASSEY_ALGEBRAS)}")
    if not args.classes or len(args.classes) != 3:
        raise UsageError("--classes needs three class names, e.g. tau h1^3 h0")
    try:
        res = a1_massey(*args.classes, mod_tau=args.algebra == "A1-mod-tau")
    except ValueError as exc:
        return _finish(args, False, {"error": str(exc)}, [str(exc)])
    rep = res.representative
    K = res.complex
    slice_dim = len(K.ext_slice_basis(rep.s, rep.t, rep.w))
    zero = res.is_zero()
    bracket = "<" + ", ".join(args.classes) + ">"
    lines = [
        f"{bracket} in Ext^(s,t,w) = {rep.tridegree()} (stem {rep.stem})",
        f"  value is {'zero' if zero else 'nonzero'}; indeterminacy dimension {len(res.indeterminacy)}",
        f"  Ext slice dimension {slice_dim}",
    ]
    payload = {
        "bracket": bracket,
        "tridegree": list(rep.tridegree()),
        "nonzero": not zero,
        "indeterminacy_dimension": len(res.indeterminacy),
        "slice_dimension": slice_dim,
    }
    return _finish(args, True, payload, lines)


def cmd_algebroid(args) -> int:
    from .bp import build_algebroid, right_unit, p_str, Layout, verify_algebroid_axioms

    k = _positive("k", args.k, 1)
    t_max = _positive("tmax", args.tmax, 0)
    try:
        alg = build_algebroid(k, t_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    L = Layout(k, 1)
    lines = [f"eta_R(v{n}) = {p_str(right_unit(n, k), L)}" for n in range(1, k + 1)]
    payload = {"right_unit": [p_str(right_unit(n, k), L) for n in range(1, k + 1)]}
    ok = True
    if args.verify:
        report = verify_algebroid_axioms(alg, k, t_max)
        ok = report.ok
        payload["report"] = report.to_json()
        lines.append(f"{report.checks} checks, {len(report.failures)} failures")
        lines.extend(f"  {f}" for f in report.failures[:10])
    return _finish(args, ok, payload, lines)


# -- parser -----------------------------------------------------------------------------


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--config", help="JSON file of option defaults; command-line flags override it")
    common.add_argument("--emit", metavar="DIR", help="write JSON, TSV and SVG charts to DIR")
    common.add_argument("--no-cache", dest="cache", action="store_false", help="bypass the on-disk cache")

    parser = argparse.ArgumentParser(prog="ctau", description="Motivic Ctau chart computations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", metavar="COMMAND")
    subs.required = True
    table = {}

    def sub(name, fn, help_):
        p = subs.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        table[name] = p
        return p

    p = sub("bp-ext", cmd_bp_ext, "Ext over BP_*BP by the cobar complex")
    p.add_argument("--tmax", type=int, default=12)
    p.add_argument("--fmax", type=int, default=3)
    p.add_argument("--k", type=int, default=2, help="number of Hazewinkel generators")

    p = sub("a1-ext", cmd_a1_ext, "Ext over A(1) by minimal resolution")
    p.add_argument("--stems", type=int, default=12)
    p.add_argument("--fmax", type=int, default=8)
    p.add_argument("--mod-tau", action="store_true")

    p = sub("kq-ct", cmd_kq_ct, "homotopy of kq smash Ctau with its hidden extension")
    p.add_argument("--stems", type=int, default=12)
    p.add_argument("--fmax", type=int, default=8)

    p = sub("vanishing", cmd_vanishing, "vanishing-region report on a grid")
    p.add_argument("--predicate", choices=sorted(PREDICATES), default="pi")
    p.add_argument("--grid", type=int, nargs=4, metavar=("SMIN", "SMAX", "WMIN", "WMAX"))

    p = sub("audit", cmd_audit, "obstruction-group audit")
    p.add_argument("--kind", choices=AUDIT_KINDS)
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--symbolic", action="store_true", help="also emit inequality certificates")

    p = sub("hopf-verify", cmd_hopf_verify, "check the Hopf algebra axioms on a slice")
    p.add_argument("--variant")
    p.add_argument("--degree", type=int, default=32)

    p = sub("massey", cmd_massey, "triple Massey product in a cobar complex")
    p.add_argument("--algebra", default="A1")
    p.add_argument("--classes", nargs=3, metavar=("X", "Y", "Z"))

    p = sub("algebroid", cmd_algebroid, "BP Hopf algebroid structure maps")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--tmax", type=int, default=12)
    p.add_argument("--verify", action="store_true")
    return parser, table


def _apply_config(parser, table, argv, args):
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    sub = table[args.command]
    known = {a.dest for a in sub._actions}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise UsageError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
    sub.set_defaults(**cfg)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, table = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.config:
            args = _apply_config(parser, table, argv, args)
        start = time.perf_counter()
        code = args.func(args)
        if not args.json:
            print(f"[{args.command}: {time.perf_counter() - start:.2f}s]", file=sys.stderr)
        return code
    except UsageError as exc:
        print(f"ctau {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
