"""Compare the compiled xi kernel against the pure-numpy fallback.

Run with the package importable (pip install -e .); prints one line per
batch size with both wall times.  CONTIG_NUMBA=0 disables the compiled
path at import time, so this script drives both implementations
directly instead.
"""

import time

import numpy as np

from contig import roof


def random_compliant(rng, size):
    y = rng.uniform(0.5, 10.0, size)
    z = rng.uniform(0.5, 10.0, size)
    x00 = rng.uniform(0.0, 10.0, size)
    # keep the remaining cross distances inside the compliance box
    x01 = x00 + rng.uniform(-1.0, 1.0, size) * z
    x10 = x00 + rng.uniform(-1.0, 1.0, size) * y
    lo = np.maximum(x01 - y, x10 - z)
    hi = np.minimum(x01 + y, x10 + z)
    x11 = lo + rng.uniform(0.0, 1.0, size) * (hi - lo)
    return y, z, x00, x01, x10, x11


def main():
    if not roof._USE_NUMBA:
        print("numba path disabled or unavailable; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'size':>9} {'numba_ms':>10} {'numpy_ms':>10} {'speedup':>8}")
    for size in (10_000, 100_000, 1_000_000):
        batch = random_compliant(rng, size)
        roof.xi_array(*batch)  # warm up the JIT cache
        t0 = time.perf_counter()
        a = roof.xi_array(*batch)
        t1 = time.perf_counter()
        b = roof._xi_array_np(*batch)
        t2 = time.perf_counter()
        assert np.allclose(a, b, rtol=1e-12, atol=1e-9)
        print(f"{size:>9} {1e3 * (t1 - t0):>10.2f} {1e3 * (t2 - t1):>10.2f} "
              f"{(t2 - t1) / (t1 - t0):>8.1f}x")


if __name__ == "__main__":
    main()
