"""Compare the numba kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 20] [--trials 4000]

Kernel timings use both backends in this process.  The end-to-end figure
decodes R(2,5) with the mixed decoder and R(3,7) with six variants in a
child process per backend (the backend is fixed at import time).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from plotkinlab._kernels import numba_backend, numpy_backend

E2E = """
import time, numpy as np
from plotkinlab.harness.simulate import decode_trials, resolve_decoder
from plotkinlab._kernels import BACKEND_NAME
for code, spec, strat, ebn0 in (("R(2,5)", "mixed", "auto", 2.0), ("R(3,7)", "v(*)", "r37-sim", 3.0)):
    decode_trials(code, spec, strat, ebn0, 7, 0, 50)  # warm-up / compile
    t = time.perf_counter()
    decode_trials(code, spec, strat, ebn0, 7, 0, {trials})
    print(f"{{BACKEND_NAME:<6}} {{code}} {{spec:<6}} {{(time.perf_counter() - t) * 1e3:9.1f}} ms / {trials} words")
"""


def kernel_cases(rng):
    a = rng.standard_normal((4000, 32))
    b = rng.standard_normal((4000, 32))
    scores = rng.standard_normal((4000, 64))
    return {
        "join2 4000x32": lambda be: be.join2(a, b),
        "parity_ml 4000x8": lambda be: be.parity_ml(a[:, :8]),
        "topk L=8 of 64": lambda be: be.topk(scores, 8),
        "abs_argmax 64": lambda be: be.abs_argmax(scores),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--trials", type=int, default=4000)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    backends = [("numpy", numpy_backend)] + ([("numba", numba_backend)] if numba_backend else [])
    print(f"{'kernel':<20}" + "".join(f"{n:>12}" for n, _ in backends) + "   (us per call)")
    for name, fn in kernel_cases(rng).items():
        row = f"{name:<20}"
        for _, be in backends:
            fn(be)
            t = min(timeit.repeat(lambda: fn(be), number=1, repeat=args.repeat))
            row += f"{t * 1e6:12.1f}"
        print(row, flush=True)

    print()
    for flag in ("0", "1"):
        env = dict(os.environ, PLOTKINLAB_NUMBA=flag)
        subprocess.run([sys.executable, "-c", E2E.format(trials=args.trials)], env=env, check=True)


if __name__ == "__main__":
    main()
