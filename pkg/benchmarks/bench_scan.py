"""Time the compiled and pure-Python breakpoint scans.

    python3 benchmarks/bench_scan.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from chevron import kernels
from chevron.fitting import fit_chevron
from chevron.synth import SyntheticSpec, generate


def _profile(n):
    spec = SyntheticSpec(9.5, 0.3, 1000.0, (30.0, 3e4), n, 0.005, seed=n)
    return generate(spec)[0]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 200, 1000])
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels.HAVE_COMPILED else [])
    if not kernels.HAVE_COMPILED:
        print("compiled kernel not built; timing the pure-Python backend only")
    print(f"{'n':>6} {'task':<12} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for n in args.sizes:
        p = _profile(n)
        lx, ly = np.log10(p.eta), np.log10(p.phi)
        for task, fn in (
            ("scan", lambda b: kernels.scan_breaks(lx, ly, 4, backend=b)),
            ("fit_chevron", lambda b: fit_chevron(p, backend=b)),
        ):
            times = []
            for b in backends:
                number = max(1, 2000 // n)
                best = min(timeit.repeat(lambda: fn(b), number=number, repeat=args.repeat))
                times.append(best / number)
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(f"{n:>6} {task:<12} " + " ".join(f"{t * 1e6:10.1f}us" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
