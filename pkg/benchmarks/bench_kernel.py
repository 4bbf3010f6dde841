"""Compiled vs pure-Python evaluation kernel.

    python3 benchmarks/bench_kernel.py [--repeat N]

Times the valuation scan that drives brute-force validity checking: every
valuation of a formula's atoms over every reflexive frame with 3 worlds.
Both backends must return identical results; the script exits 1 otherwise.
"""
from __future__ import annotations

import argparse
import sys
import time

from ontomodal import _evalcore_py
from ontomodal.evalcore import compile_formula
from ontomodal.kripke import FrameClass, enumerate_frames, propositional_atoms
from ontomodal.parser import parse

try:
    from ontomodal import _evalcore
except ImportError:  # extension not built
    _evalcore = None

FORMULAS = [
    "[](p -> q) -> ([]p -> []q)",
    "(<>p -> <>q) -> <>(p -> q)",
    "<>[](p & r) -> [](p & r)",
    "[](p | q | r) -> <>p | <>q | <>r",
    "[][](p <-> q) <-> [](q <-> p) & ~<>~[](p -> q)",
]


def workload(n_worlds=3):
    jobs = []
    frames = list(enumerate_frames(n_worlds, FrameClass.T, up_to_iso=True))
    zero = [0] * n_worlds
    for text in FORMULAS:
        f = parse(text)
        atoms = propositional_atoms(f)
        prog = compile_formula(f, {a: i for i, a in enumerate(atoms)})
        for succ in frames:
            jobs.append((prog, n_worlds, list(succ), zero, zero, len(atoms)))
    return jobs


def run(impl, jobs, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = [impl.scan_valuations(*j, False) for j in jobs]
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    jobs = workload()
    t_py, r_py = run(_evalcore_py, jobs, args.repeat)
    print(f"jobs: {len(jobs)}")
    print(f"python: {t_py * 1000:.1f} ms")
    if _evalcore is None:
        print("compiled: not built")
        return 0
    t_c, r_c = run(_evalcore, jobs, args.repeat)
    print(f"compiled: {t_c * 1000:.1f} ms")
    print(f"speedup: {t_py / t_c:.1f}x")
    if r_py != r_c:
        print("results: MISMATCH")
        return 1
    print("results: identical")
    return 0


if __name__ == "__main__":
    sys.exit(main())
