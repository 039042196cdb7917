#!/usr/bin/env python3
"""Writes synthetic letter-like pen trajectories in the label,t,x,y format.

Each letter is a chain of strokes in a unit box (x right, y up, baseline at
y = 0, x-height 1). Strokes are sampled densely and the path is then
resampled by arc length in two constant-speed phases: the first
--head-samples points cover --head-fraction of the path, the rest cover the
remainder. A fast opening spreads the letters apart within the priming
window while the slower body keeps the trajectory smooth.
"""

import argparse
import csv
import math
import sys

import numpy as np


def arc(cx, cy, rx, ry, a0, a1, n=200):
    a = np.linspace(math.radians(a0), math.radians(a1), n)
    return np.stack([cx + rx * np.cos(a), cy + ry * np.sin(a)], axis=1)


def line(p0, p1, n=60):
    u = np.linspace(0.0, 1.0, n)[:, None]
    return (1 - u) * np.asarray(p0, float) + u * np.asarray(p1, float)


def chain(*parts):
    out = [parts[0]]
    for p in parts[1:]:
        out.append(p[1:] if np.allclose(out[-1][-1], p[0]) else p)
    return np.concatenate(out)


# Bowl geometry per letter: start angle (deg, counter-clockwise from +x),
# horizontal and vertical radii. Values were picked so the letters stay
# apart in their opening samples.
BOWLS = {
    "a": (27, 0.48, 0.47),
    "c": (5, 0.43, 0.52),
    "d": (26, 0.36, 0.43),
    "g": (105, 0.39, 0.45),
    "o": (92, 0.47, 0.55),
    "q": (65, 0.46, 0.46),
}


def bowl(letter, extent, cx=0.45, cy=0.5):
    a0, rx, ry = BOWLS[letter]
    return arc(cx, cy, rx, ry, a0, a0 + extent)


def letters():
    L = {}
    # 'c': open counter-clockwise arc from the upper right.
    L["c"] = bowl("c", 280, cx=0.5)
    # 'o': closed loop with a small overlap.
    L["o"] = bowl("o", 380)
    # 'a': bowl, then up to the x-height and a short downstroke with a flick.
    b = bowl("a", 320)
    L["a"] = chain(b, line(b[-1], (0.87, 1.0)), line((0.87, 1.0), (0.87, 0.1)),
                   arc(0.97, 0.1, 0.1, 0.1, 180, 300, 30))
    # 'd': bowl, tall ascender, downstroke to the baseline.
    b = bowl("d", 300, cx=0.4)
    L["d"] = chain(b, line(b[-1], (0.8, 1.9)), line((0.8, 1.9), (0.8, 0.0)))
    # 'g': bowl, descender curling left below the baseline.
    b = bowl("g", 320)
    L["g"] = chain(b, line(b[-1], (0.87, 1.0)), line((0.87, 1.0), (0.87, -0.45)),
                   arc(0.52, -0.45, 0.35, 0.4, 0, -170, 120))
    # 'q': bowl, straight descender, flick to the right.
    b = bowl("q", 310, cy=0.55)
    L["q"] = chain(b, line(b[-1], (0.85, 1.0)), line((0.85, 1.0), (0.85, -0.8)),
                   line((0.85, -0.8), (1.1, -0.6), 30))
    # 'u': down, round bottom, up, then a downstroke.
    L["u"] = chain(line((0.0, 1.0), (0.0, 0.35)), arc(0.35, 0.35, 0.35, 0.35, 180, 360),
                   line((0.7, 0.35), (0.7, 1.0)), line((0.7, 1.0), (0.75, 0.0)))
    # 'e': horizontal bar to the right, then a counter-clockwise loop.
    L["e"] = chain(line((0.05, 0.5), (0.9, 0.55)), arc(0.47, 0.5, 0.43, 0.5, 5, 320))
    # 'p': descender first, back up, then a clockwise bowl.
    L["p"] = chain(line((0.0, 1.0), (0.0, -0.9)), line((0.0, -0.9), (0.0, 0.7)),
                   arc(0.4, 0.5, 0.4, 0.5, 160, -180))
    return L


def resample_by_length(path, count, head_samples, head_fraction):
    seg = np.linalg.norm(np.diff(path, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    split = head_fraction * s[-1]
    target = np.concatenate([np.linspace(0.0, split, head_samples, endpoint=False),
                             np.linspace(split, s[-1], count - head_samples)])
    return np.stack([np.interp(target, s, path[:, 0]), np.interp(target, s, path[:, 1])], axis=1)


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    ap.add_argument("--samples", type=int, default=180)
    ap.add_argument("--head-samples", type=int, default=30)
    ap.add_argument("--head-fraction", type=float, default=0.6)
    ap.add_argument("--order", default="a,c,d,e,g,o,p,q,u")
    args = ap.parse_args(argv)

    if not 0 < args.head_samples < args.samples or not 0.0 < args.head_fraction < 1.0:
        ap.error("head must be a proper part of the trajectory")

    shapes = letters()
    labels = args.order.split(",")
    unknown = [c for c in labels if c not in shapes]
    if unknown:
        ap.error("no shape for " + ",".join(unknown))

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["label", "t", "x", "y"])
    for c in labels:
        pts = resample_by_length(shapes[c], args.samples, args.head_samples, args.head_fraction)
        for t, (x, y) in enumerate(pts):
            w.writerow([c, t, f"{x:.6f}", f"{y:.6f}"])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main(sys.argv[1:])
