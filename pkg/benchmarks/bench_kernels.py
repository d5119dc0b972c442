"""Compare the compiled and pure-Python kernels on realistic workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Workloads are the power-sum expansions behind the B4 and S6 decompositions
and a modular rank of a random dense integer matrix. Both backends must give
identical output; the script fails loudly otherwise.
"""

import argparse
import random
import time

from skewrank import kernels
from skewrank.groups import build_family, family_spec
from skewrank.poly import _kernel_form
from skewrank.cyclo import lcm_order
from skewrank.waring import decompose


def encode(dec):
    orders = []
    enc = []
    for c, form in dec.terms:
        e = _kernel_form(c, form)
        if e is None:
            raise SystemExit("decomposition is not kernel-expressible")
        enc.append(e)
        orders.extend(e[3])
    m = lcm_order(*orders)
    forms = []
    for (w, k), corder, entries, _ in enc:
        forms.append((
            w,
            k * (m // corder),
            [j for j, _, _, _ in entries],
            [r for _, r, _, _ in entries],
            [e * (m // o) for _, _, e, o in entries],
        ))
    return dec.nvars, dec.exponent, m, forms


def timed(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels unavailable; only the Python backend will be timed")

    cases = []
    for kind, n in (("hyperoctahedral", 4), ("symmetric", 6), ("demihyperoctahedral", 4)):
        G = build_family(family_spec(kind, n=n))
        cases.append((f"power sums {G.name} (D={G.skew_degree})", "pow", encode(decompose(G))))
    rng = random.Random(0)
    p = 2147483629
    mat = [[rng.randrange(p) for _ in range(160)] for _ in range(160)]
    cases.append(("rank mod p 160x160", "rank", (mat, p)))

    print(f"{'workload':<34}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for label, kind, payload in cases:
        times = {}
        outs = {}
        for name, mod in impls.items():
            if kind == "pow":
                fn = lambda mod=mod: mod.power_sum_counts(*payload)
            else:
                fn = lambda mod=mod: mod.rank_mod_p(*payload)
            times[name], outs[name] = timed(fn, args.repeat)
        vals = list(outs.values())
        if any(v != vals[0] for v in vals[1:]):
            raise SystemExit(f"backends disagree on {label}")
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<34}" + "".join(f"{times[n]:>11.3f}s" for n in impls) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
