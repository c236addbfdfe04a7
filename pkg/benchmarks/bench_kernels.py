"""Time the compiled and pure-Python kernel backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--groups M12 PGL(2,9)]
"""

import argparse
import time

from blockheight import kernels
from blockheight.chartable import dixon_schneider
from blockheight.groups import builtin
from blockheight.permgroup import default_cap


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(name):
    template = builtin(name)

    def closure():
        kernels.closure([tuple(g) for g in template.generators], default_cap())

    def classes():
        builtin(name).classes

    def table():
        dixon_schneider(builtin(name))

    return [("closure", closure), ("classes", classes), ("dixon", table)]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--groups", nargs="+", default=["PGL(2,9)", "M10", "M12"])
    args = parser.parse_args(argv)

    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    header = f"{'group':<10} {'workload':<9}" + "".join(f"{b:>10}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>9}"
    print(header)
    original = kernels.backend()
    try:
        for name in args.groups:
            for label, fn in workloads(name):
                row = {}
                for b in backends:
                    kernels.set_backend(b)
                    row[b] = _best(fn, args.repeat)
                line = f"{name:<10} {label:<9}" + "".join(f"{row[b]:>9.3f}s" for b in backends)
                if "cython" in row:
                    line += f"{row['python'] / row['cython']:>8.1f}x"
                print(line, flush=True)
    finally:
        kernels.set_backend(original)


if __name__ == "__main__":
    main()
