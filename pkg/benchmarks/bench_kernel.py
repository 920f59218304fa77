"""Compare the compiled F_p polynomial kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--degree 64] [--repeat 5] [--tower towers/nonmodular.tower]

Micro-benchmarks call both kernels on identical random inputs; the end-to-end
timing runs ``galtower verify`` in a subprocess per backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from galtower.exactfield._kernel import backends


def random_poly(rng, p, degree):
    coeffs = [rng.randrange(p) for _ in range(degree)] + [rng.randrange(1, p)]
    return tuple(coeffs)


def micro(kernels, p, degree, repeat, number):
    rng = random.Random(0)
    f, g = random_poly(rng, p, degree), random_poly(rng, p, degree // 2)
    cases = {
        "mul": lambda k: k.mul(f, g, p),
        "divmod": lambda k: k.divmod_(f, g, p),
        "gcd": lambda k: k.gcd(f, g, p),
    }
    rows = []
    for op, call in cases.items():
        results = {name: call(k) for name, k in kernels.items()}
        if len(set(results.values())) != 1:
            raise SystemExit(f"{op}: kernels disagree")
        times = {
            name: min(timeit.repeat(lambda k=k: call(k), repeat=repeat, number=number)) / number
            for name, k in kernels.items()
        }
        rows.append((op, times))
    return rows


def end_to_end(tower, backend):
    env = dict(os.environ)
    if backend == "python":
        env["GALTOWER_PURE_PYTHON"] = "1"
    else:
        env.pop("GALTOWER_PURE_PYTHON", None)
    cmd = [sys.executable, "-m", "galtower", "verify", tower, "--suite", "full", "--out", os.devnull]
    start = timeit.default_timer()
    subprocess.run(cmd, env=env, check=True)
    return timeit.default_timer() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--prime", type=int, default=3)
    parser.add_argument("--degree", type=int, default=64)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=200)
    here = os.path.dirname(os.path.abspath(__file__))
    parser.add_argument("--tower", default=os.path.join(here, os.pardir, "towers", "nonmodular.tower"))
    args = parser.parse_args()

    kernels = backends()
    if "compiled" not in kernels:
        print("compiled kernel not built; run `python setup.py build_ext --inplace` first")
    names = sorted(kernels)
    print(f"{'op':<8}" + "".join(f"{n:>14}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    for op, times in micro(kernels, args.prime, args.degree, args.repeat, args.number):
        line = f"{op:<8}" + "".join(f"{times[n] * 1e6:>12.1f}us" for n in names)
        if len(names) > 1:
            line += f"   {times['python'] / times['compiled']:>6.1f}x"
        print(line)
    for name in names:
        print(f"verify {os.path.basename(args.tower)} [{name}]: {end_to_end(args.tower, name):.2f}s")


if __name__ == "__main__":
    main()
