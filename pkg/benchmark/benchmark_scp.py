import argparse
import logging
import time

from noisybayes import env
from noisybayes.common import MultStrategy
from noisybayes.scp import scp_approx, scp_exact, scp_hybrid
from noisybayes.testing import random_instance

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


def best_latency(fn, repeat):
    """Smallest wall time over ``repeat`` calls, with the value of the last call."""
    best, value = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def benchmark(n, k, eps, order, seed, repeat):
    """
    Time exact enumeration against the bucketed generating function on one random instance.

    Returns
    -------
    list of tuple
        ``(label, latency_seconds, scp)`` per method; exact is omitted above the enumeration cap.
    """
    _, _, terms, noise = random_instance(n, seed, eps)
    runs = []
    if n <= env.EXACT_MAX_FEATURES:
        runs.append(("exact",) + best_latency(lambda: scp_exact(terms, noise).value, repeat))
    for mult in (MultStrategy.Direct, MultStrategy.Transform):
        runs.append((f"approx/{mult.tag}",) + best_latency(
            lambda: scp_approx(terms, noise, k, mult=mult).value, repeat))
    runs.append((f"hybrid{order}",) + best_latency(
        lambda: scp_hybrid(terms, noise, k, order=order).value, repeat))
    return runs


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="SCP evaluation benchmark")
    parser.add_argument("--n", type=int, default=20, help="Number of features")
    parser.add_argument("--k", type=int, default=50, help="Number of buckets")
    parser.add_argument("--eps", type=float, default=0.1, help="Flip probability")
    parser.add_argument("--order", type=int, default=2, help="Hybrid order")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    results = benchmark(args.n, args.k, args.eps, args.order, args.seed, args.repeat)
    reference = dict((label, value) for label, _, value in results).get("exact")
    for label, latency, value in results:
        line = f"{label:>18}: {latency * 1e3:9.3f} ms  scp={value:.12f}"
        if reference is not None:
            line += f"  abs err={abs(value - reference):.3e}"
        print(line)
