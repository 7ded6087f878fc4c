"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel runs on the same inputs under both backends; the table reports the
best wall time of several repeats and the speed-up of the compiled version.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from harmconv import gallery, kernels
from harmconv.curves import polyline_segments
from harmconv.verify import boundary_curve


def workloads(rng):
    coeffs = rng.normal(size=4097) + 1j * rng.normal(size=4097)
    z = 0.99 * np.exp(2j * np.pi * np.arange(4096) / 4096)
    grid = (np.linspace(0.01, 0.99, 40)[:, None] * np.exp(2j * np.pi * np.arange(720) / 720)[None, :])
    # decaying coefficients keep the reciprocal bounded
    a = (rng.normal(size=2049) + 1j * rng.normal(size=2049)) / np.arange(1, 2050) ** 2
    a[0] = 2.0
    _, curve = boundary_curve(gallery.closed_form_convolutions("gamma1*K"), 0.99, 4096)
    seg = polyline_segments(curve, closed=True)
    _, p3 = boundary_curve(gallery.make_entry("p3").closed_form, 0.99, 4096)
    seg_p3 = polyline_segments(p3, closed=True)
    return {
        "horner N=4096, 4096 points": lambda impl: kernels.horner(coeffs, z, impl),
        "horner N=4096, 40x720 grid": lambda impl: kernels.horner(coeffs, grid, impl),
        "cauchy N=2048": lambda impl: kernels.cauchy(a, a, impl),
        "reciprocal N=2048": lambda impl: kernels.reciprocal(a, impl),
        "segment sweep, simple curve (4096)": lambda impl: kernels.intersecting_pairs(*seg, impl=impl),
        "segment sweep, p3 boundary (4096)": lambda impl: kernels.intersecting_pairs(*seg_p3, impl=impl),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", help="also write the results here")
    args = parser.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled backend not built; only the numpy backend is timed", file=sys.stderr)
    rng = np.random.default_rng(0)
    rows = []
    for label, fn in workloads(rng).items():
        row = {"kernel": label}
        for name, impl in impls.items():
            fn(impl)  # warm-up
            row[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    print(f"{'kernel':<38} {'python [ms]':>12} {'cython [ms]':>12} {'speed-up':>9}")
    for r in rows:
        cy = f"{1e3 * r['cython']:12.3f}" if "cython" in r else f"{'-':>12}"
        sp = f"{r['speedup']:9.1f}" if "speedup" in r else f"{'-':>9}"
        print(f"{r['kernel']:<38} {1e3 * r['python']:12.3f} {cy} {sp}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
