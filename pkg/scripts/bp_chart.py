#!/usr/bin/env python3
"""Ext over BP_*BP from the cobar complex, in Novikov and regraded motivic coordinates."""

import argparse
import json
from pathlib import Path

from ctau.bidegree import ct_pi_region_zero
from ctau.bp import build_algebroid
from ctau.cobar import BPCobar
from ctau.pipeline import moore_forced_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tmax", type=int, default=12)
    ap.add_argument("--fmax", type=int, default=3)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--out", default="out/bp")
    args = ap.parse_args()

    C = BPCobar(build_algebroid(args.k, args.tmax), s_max=args.fmax + 1, t_max=args.tmax)
    rows = C.chart(args.fmax)
    print(f"{'f':>2} {'t':>3} {'stem':>4} {'(s,w)':>8}  {'group':<12} region")
    for r in rows:
        s, w = r["motivic"]
        verdict = ct_pi_region_zero(s, w)
        # a nonzero group inside a vanishing region would be a contradiction
        assert r["group"] == "0" or not verdict.is_provably_zero, r
        if r["group"] != "0":
            # representatives come from a unimodular basis change and can be long
            gens = ", ".join(g if len(g) <= 40 else "..." for g in C.generators(r["f"], r["t"]))
            print(f"{r['f']:>2} {r['t']:>3} {r['stem']:>4} {f'({s},{w})':>8}  {r['group']:<12} {verdict.rule.value}  {gens}")
    m = moore_forced_group(C)
    print(f"[Sigma^(2,1) Ctau, S/(2,tau)]: left {m.left}, right {m.right} -> {m.result.status.value} {m.result.value}")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bp_ext.json").write_text(json.dumps({"k": args.k, "t_max": args.tmax, "rows": rows}, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}/bp_ext.json")


if __name__ == "__main__":
    main()
