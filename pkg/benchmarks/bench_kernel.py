"""Compare the compiled and pure-numpy RK4 kernels on the CNOT run.

    python3 benchmarks/bench_kernel.py [--repeat N] [--steps N]
"""

import argparse
import statistics
import time

import numpy as np

from heliumgates.dynamics import ControlledU, evolve
from heliumgates.dynamics import _backend, _kernel_py
from heliumgates.dynamics import experiments as ex
from heliumgates.holonomy import NOT_GATE
from heliumgates.quantum import projector


def timed(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, times


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=5000, help="RK4 steps per gate")
    args = ap.parse_args(argv)

    op = ex.OperatingPoint()
    scheme = ControlledU(NOT_GATE, op.pulse)
    rho0 = projector(ex.ENTANGLING_INPUT)
    step = op.pulse.duration / args.steps
    kwargs = dict(channels=op.channels(), step=step, stride=10**9)

    kernels = [("python", _kernel_py)]
    if _backend.COMPILED is not None:
        kernels.insert(0, ("cython", _backend.COMPILED))
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {}
    for name, kern in kernels:
        traj, times = timed(
            lambda: evolve(rho0, scheme, op.resolved_detunings(), backend=kern, **kwargs),
            args.repeat,
        )
        results[name] = (traj.final, times)
        print(f"{name:>7}: median {statistics.median(times) * 1e3:8.2f} ms "
              f"over {args.repeat} runs of {args.steps} steps")

    if len(results) == 2:
        (a, ta), (b, tb) = results["cython"], results["python"]
        print(f"speedup: {statistics.median(tb) / statistics.median(ta):.1f}x, "
              f"max |difference| {np.max(np.abs(a - b)):.1e}")


if __name__ == "__main__":
    main()
