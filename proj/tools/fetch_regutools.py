#!/usr/bin/env python3
"""Produce shaw.mtx, gravity.mtx and slp.mtx for table reproduction.

Shaw and Gravity come from Regularization Tools (P. C. Hansen):
  http://www.imm.dtu.dk/~pcha/Regutools
  http://www.imm.dtu.dk/~pcha/Regutools/RTv4manual.pdf (chapter 4)
  http://www.math.sjsu.edu/singular/matrices
Both are 1000x1000; the benchmark zero-pads them to 1024x1024 on load.
SLP is the 1024x1024 single layer potential matrix of Halko, Martinsson and
Tropp (SIAM Review 53(2), 2011); it is not distributed with
Regularization Tools and must be supplied as a file.

Modes:
  --octave DIR   run shaw(1000) and gravity(1000) in GNU Octave with the
                 Regularization Tools sources in DIR on the path
  --convert F    convert a .mat (first 2-D array, or --var) or .csv file to .mtx
"""
import argparse
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np


def write_mtx(path, a, source):
    m, n = a.shape
    with open(path, "w") as f:
        f.write("%%MatrixMarket matrix array real general\n")
        f.write(f"% source: {source}\n")
        f.write(f"{m} {n}\n")
        for v in np.asarray(a, dtype=float).flatten(order="F"):
            f.write(f"{v:.17g}\n")


def load_any(path, var=None):
    if path.suffix == ".mat":
        from scipy.io import loadmat

        data = loadmat(path)
        if var:
            return data[var]
        for key, val in data.items():
            if not key.startswith("__") and getattr(val, "ndim", 0) == 2:
                return val
        sys.exit(f"no 2-D array in {path}")
    return np.loadtxt(path, delimiter=",", ndmin=2)


def run_octave(regutools, out):
    if not shutil.which("octave"):
        sys.exit("octave not found on PATH")
    with tempfile.TemporaryDirectory() as tmp:
        script = (
            f"addpath('{regutools}');"
            f"A = shaw(1000); save('-v7', '{tmp}/shaw.mat', 'A');"
            f"A = gravity(1000); save('-v7', '{tmp}/gravity.mat', 'A');"
        )
        subprocess.run(["octave", "--quiet", "--eval", script], check=True)
        for name in ("shaw", "gravity"):
            a = load_any(Path(tmp) / f"{name}.mat", "A")
            write_mtx(out / f"{name}.mtx", a, f"Regularization Tools {name}(1000)")
            print(f"wrote {out / (name + '.mtx')} {a.shape}")


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", type=Path, default=Path("matrices"))
    p.add_argument("--octave", type=Path, metavar="DIR")
    p.add_argument("--convert", type=Path, metavar="FILE")
    p.add_argument("--name", help="output stem for --convert (shaw, gravity or slp)")
    p.add_argument("--var", help="variable name inside a .mat file")
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    if args.octave:
        run_octave(args.octave.resolve(), args.out)
    if args.convert:
        a = load_any(args.convert, args.var)
        stem = args.name or args.convert.stem
        write_mtx(args.out / f"{stem}.mtx", a, str(args.convert))
        print(f"wrote {args.out / (stem + '.mtx')} {a.shape}")
    if not args.octave and not args.convert:
        print(__doc__)


if __name__ == "__main__":
    main()
