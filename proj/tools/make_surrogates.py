#!/usr/bin/env python3
"""Write 64x64 surrogate instances of the Shaw, Gravity and SLP matrices.

These are small midpoint-rule discretizations of the same kernels, meant for
CI and smoke tests. They are not the Regularization Tools matrices and no
table values should be read off them; use fetch_regutools.py for those.
"""
import argparse
from pathlib import Path

import numpy as np


def shaw(n):
    h = np.pi / n
    s = -np.pi / 2 + (np.arange(n) + 0.5) * h
    si, tj = np.meshgrid(s, s, indexing="ij")
    u = np.pi * (np.sin(si) + np.sin(tj))
    sinc = np.where(u == 0.0, 1.0, np.sin(u) / np.where(u == 0.0, 1.0, u))
    return h * ((np.cos(si) + np.cos(tj)) * sinc) ** 2


def gravity(n, depth=0.25):
    h = 1.0 / n
    s = (np.arange(n) + 0.5) * h
    si, tj = np.meshgrid(s, s, indexing="ij")
    return h * depth * (depth**2 + (si - tj) ** 2) ** -1.5


def slp(n):
    # Log kernel on the smooth closed curve r(theta) = 1 + 0.3 cos(3 theta).
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    r = 1 + 0.3 * np.cos(3 * theta)
    dr = -0.9 * np.sin(3 * theta)
    pts = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
    w = np.hypot(r, dr) * 2 * np.pi / n
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    np.fill_diagonal(dist, 1.0)
    a = -np.log(dist) * w[None, :] / (2 * np.pi)
    # Self term: integral of -log|s| over a panel of length w.
    np.fill_diagonal(a, -w * (np.log(w / 2) - 1) / (2 * np.pi))
    return a


def write_mtx(path, a, label):
    m, n = a.shape
    with open(path, "w") as f:
        f.write("%%MatrixMarket matrix array real general\n")
        f.write(f"% {label} surrogate, {m}x{n}, generated by tools/make_surrogates.py\n")
        f.write(f"{m} {n}\n")
        for v in a.flatten(order="F"):
            f.write(f"{v:.17g}\n")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "surrogates")
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, fn in (("shaw", shaw), ("gravity", gravity), ("slp", slp)):
        a = fn(args.n)
        write_mtx(args.out / f"{name}.mtx", a, name)
        print(f"{name}: {a.shape}, ||A||_1 = {np.abs(a).sum(axis=0).max():.6g}")


if __name__ == "__main__":
    main()
