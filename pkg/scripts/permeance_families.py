#!/usr/bin/env python3
"""Regenerate the permeance family curves for all three half-torus geometries.

Writes one CSV per kind with r_i/R log-swept from 0.01 up to each family's
r_o/R, at pole radius R = 1 mm, with normalized columns for direct plotting
of G_m/(mu0 R) against r_i/R.  The wrapped-cylinder column uses w = 2 pi R.
"""

import argparse
from pathlib import Path

from toroflux.cli import main as cli_main

FAMILIES = {
    "inner-half": "0.1,0.2,0.4,0.8",
    "lower-half": "0.1,0.2,0.4,0.8",
    "outer-half": "0.1,0.2,0.4,0.8,1.6,3.2",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="directory for the CSV files")
    parser.add_argument("--samples", type=int, default=60, help="samples per family curve")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for kind, family in FAMILIES.items():
        out = outdir / f"permeance_{kind}.csv"
        rc = cli_main([
            "sweep-permeance", "--kind", kind, "--R", "0.001",
            "--family", family, "--range", f"log:0.01:4.0:{args.samples}",
            "--normalized", "--out", str(out),
        ])
        if rc != 0:
            return rc
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
