"""Time the numba kernels against their pure-numpy twins.

    python3 benchmarks/bench_kernels.py [--group psl2:11] [--repeat 5]

Both variants are called directly, so the SEMIRAT_DISABLE_NUMBA flag does
not matter here; without numba installed only the numpy column is shown.
Results are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from semirat import _accel, groups, kernels
from semirat.words import parse


def word_inputs(G, text):
    w = parse(text)
    used = sorted({v for v, _ in w.letters})
    slot = {v: i for i, v in enumerate(used)}
    exps = sorted({e for _, e in w.letters})
    row = {e: i for i, e in enumerate(exps)}
    powtab = np.stack([G.power_all(e) for e in exps]).astype(np.int32)
    return (G.mul, np.asarray(G.classes.reps, np.int64),
            np.array([slot[v] for v, _ in w.letters], np.int64),
            np.array([row[e] for _, e in w.letters], np.int64), powtab, len(used) - 1)


def cases(G, word, samples):
    rng = np.random.default_rng(0)
    tree = (G.mul, G.tree_order, G.tree_parent, G.tree_gen, G.tree_level_ptr, np.asarray(G.gens, np.int64))
    image_sets = [np.asarray(G.gens, np.int64)] + [rng.integers(0, G.n, len(G.gens)) for _ in range(samples - 1)]
    cls = G.classes
    rows = np.arange(min(G.n, 64))
    return {
        f"count_word_images {word}": ("count_word_images", [word_inputs(G, word)]),
        f"extend_homomorphism x{samples}": ("extend_homomorphism", [tree + (im,) for im in image_sets]),
        "class_coefficients": ("class_coefficients",
                               [(G.mul, G.inv, cls.class_of, np.asarray(cls.reps), cls.count)]),
        f"associativity {len(rows)} rows": ("associativity_violations", [(G.mul, rows)]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="psl2:11")
    ap.add_argument("--word", default="x*y*x^2*y^3")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=200, help="image tuples fed to extend_homomorphism")
    args = ap.parse_args(argv)

    G = groups.build(args.group)
    print(f"group {args.group} (order {G.n}), numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':<36}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for label, (name, calls) in cases(G, args.word, args.samples).items():
        np_fn = getattr(kernels, f"{name}_numpy")
        jit_fn = getattr(kernels, f"{name}_numba") if _accel.HAVE_NUMBA else None

        def run(fn):
            return [fn(*c) for c in calls]

        if jit_fn is not None:
            for a, b in zip(run(np_fn), run(jit_fn)):  # also warms the jit cache
                assert np.array_equal(np.asarray(a), np.asarray(b)), label
        t_np = min(timeit.repeat(lambda: run(np_fn), number=1, repeat=args.repeat)) * 1e3
        if jit_fn is None:
            print(f"{label:<36}{t_np:>12.2f}{'-':>12}{'-':>10}")
            continue
        t_jit = min(timeit.repeat(lambda: run(jit_fn), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<36}{t_np:>12.2f}{t_jit:>12.2f}{t_np / t_jit:>9.1f}x")


if __name__ == "__main__":
    main()
