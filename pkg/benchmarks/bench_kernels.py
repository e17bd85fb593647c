"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from nccc import kernels
from nccc.graphs import build_nccc
from nccc.groups import FamilySpec, build_group, conjugacy_classes
from nccc.spectra import laplacian_matrix


def _class_arrays(group):
    part = conjugacy_classes(group)
    members, offsets = [], [0]
    for i in part.noncentral:
        members.extend(part.classes[i])
        offsets.append(len(members))
    return group.op, np.array(members), np.array(offsets)


def cases():
    g = build_group(FamilySpec.umn(6, 15))
    lap = laplacian_matrix(build_nccc(g)).astype(np.float64)
    yield "jacobi U(6,15) L", lambda b: kernels.jacobi_eigenvalues(lap, backend=b)
    rng = np.random.default_rng(0)
    sym = rng.standard_normal((120, 120))
    sym = sym + sym.T
    yield "jacobi random 120", lambda b: kernels.jacobi_eigenvalues(sym, backend=b)
    op = build_group(FamilySpec.dihedral(40)).op
    yield "associativity D80", lambda b: kernels.associativity_violation(op, backend=b)
    big = build_group(FamilySpec.umn(6, 15))
    tab, mem, off = _class_arrays(big)
    yield "class pairs U(6,15)", lambda b: kernels.class_pairs_all_noncommuting(tab, mem, off, backend=b)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        kernels.get_backend("compiled")
        backends = ("compiled", "python")
    except ImportError:
        backends = ("python",)
    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in cases():
        times = [min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends]
        row = f"{name:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
