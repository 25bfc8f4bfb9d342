"""Compare the compiled and pure-Python simplex kernels on face LPs.

Run from the repository root::

    python benchmarks/bench_kernel.py [--m 3] [--pairs 200] [--bits 64 80]

Both kernels solve the same edge-certification LPs on the equally spaced
construction; the script reports seconds per LP and checks that both
backends reach the same decisions.
"""

import argparse
import itertools
import time

from csneighborly import lp
from csneighborly._precision import get_precision
from csneighborly.curves import CurveSpec
from csneighborly.seeds import build_A
from csneighborly.verify import FaceCertificate, assemble, certify_face


def run(P, pairs, backend):
    t0 = time.perf_counter()
    decisions = [isinstance(certify_face(P, S, backend=backend), FaceCertificate) for S in pairs]
    return time.perf_counter() - t0, decisions


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--bits", type=int, nargs="+", default=[64, 80])
    args = ap.parse_args(argv)
    if lp.BACKEND != "compiled":
        print("compiled kernel not available; only the Python backend will run")
    seeds = build_A(args.m)
    spec = CurveSpec.Phi(args.m)
    print(f"{'bits':>5} {'backend':>9} {'LPs':>5} {'s/LP':>10} {'speedup':>8}")
    for bits in args.bits:
        P = assemble(spec, seeds, get_precision(bits))
        pairs = list(itertools.islice(itertools.combinations(range(P.N), 2), args.pairs))
        t_py, d_py = run(P, pairs, "python")
        print(f"{bits:>5} {'python':>9} {len(pairs):>5} {t_py / len(pairs):>10.2e} {1.0:>8.2f}")
        if lp.BACKEND == "compiled":
            t_c, d_c = run(P, pairs, "compiled")
            print(f"{bits:>5} {'compiled':>9} {len(pairs):>5} {t_c / len(pairs):>10.2e} {t_py / t_c:>8.2f}")
            if d_c != d_py:
                raise SystemExit("backends disagree on face decisions")


if __name__ == "__main__":
    main()
