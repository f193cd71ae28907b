#!/usr/bin/env python3
"""Ext over A(1) with F2[tau] coefficients (the kq chart), as JSON, TSV and SVG."""

import argparse
from pathlib import Path

from ctau.chart import Tag, emit_json, emit_svg, emit_tsv
from ctau.minres import ext_chart, h0_towers, resolve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stems", type=int, default=12)
    ap.add_argument("--fmax", type=int, default=8)
    ap.add_argument("--out", default="out/figure3")
    args = ap.parse_args()

    res = resolve(stem_max=args.stems, filtration_max=args.fmax)
    res.check_exactness()
    doc = ext_chart(res, "Ext over A(1): kq")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "kq.json").write_bytes(emit_json(doc))
    (out / "kq.tsv").write_bytes(emit_tsv(doc))
    (out / "kq.svg").write_bytes(emit_svg(doc))

    print(f"{'stem':>4} {'filt':>4} {'wt':>3}  tag    name")
    for e in doc.entries:
        print(f"{e.stem:>4} {e.filtration:>4} {e.weight:>3}  {e.tag.value:<6} {e.name}")
    print()
    for chain in h0_towers(doc):
        if len(chain) > 1:
            print(f"h0 tower from {chain[0].name} at {chain[0].coords()}, length {len(chain)}")
    torsion = [e.coords() for e in doc.entries if e.tag == Tag.TAU_TORSION]
    print(f"tau-torsion classes: {torsion}")
    print(f"wrote {out}/kq.{{json,tsv,svg}}")


if __name__ == "__main__":
    main()
