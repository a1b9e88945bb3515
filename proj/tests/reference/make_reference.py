"""Frozen reference values for the unit tests, computed with mpmath.

Independent of the library and of its MPFR oracle. Regenerate with
    python3 tests/reference/make_reference.py tests/data
"""
import sys
from pathlib import Path

import mpmath as mp
import numpy as np

mp.mp.dps = 60


def psi(n, x):
    """psi_n(x) by the normalized recurrence in working precision."""
    x = mp.mpf(x)
    p0 = mp.pi ** mp.mpf(-0.25) * mp.exp(-x * x / 2)
    if n == 0:
        return p0
    p1 = mp.sqrt(2) * x * p0
    for j in range(1, n):
        p0, p1 = p1, mp.sqrt(mp.mpf(2) / (j + 1)) * x * p1 - mp.sqrt(mp.mpf(j) / (j + 1)) * p0
    return p1


def psi_pair(n, x):
    """(psi_{n-1}(x), psi_n(x))."""
    x = mp.mpf(x)
    p0 = mp.pi ** mp.mpf(-0.25) * mp.exp(-x * x / 2)
    p1 = mp.sqrt(2) * x * p0
    for j in range(1, n):
        p0, p1 = p1, mp.sqrt(mp.mpf(2) / (j + 1)) * x * p1 - mp.sqrt(mp.mpf(j) / (j + 1)) * p0
    return p0, p1


def gh_node(n, seed):
    """Root of psi_n near seed by Newton, psi_n' = sqrt(2n) psi_{n-1} - x psi_n."""
    x = mp.mpf(seed)
    for _ in range(100):
        pm, p = psi_pair(n, x)
        step = p / (mp.sqrt(2 * n) * pm - x * p)
        x -= step
        if abs(step) < mp.mpf(10) ** (-50) * max(1, abs(x)):
            break
    return x


def largest_seed(n):
    j = mp.matrix(n, n)
    for i in range(n - 1):
        j[i, i + 1] = j[i + 1, i] = np.sqrt((i + 1) / 2)
    return float(max(np.linalg.eigvalsh(np.array(j.tolist(), dtype=float))))


def s(v):
    return mp.nstr(v, 25, strip_zeros=False)


def main(out):
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "airy_grid.csv", "w") as f:
        f.write("z,ai,ai_prime\n")
        zs = [mp.mpf(k) / 10 for k in range(-500, 21)]
        zs += [mp.mpf(v) for v in (-1e6, -3e5, -1e5, -12345.6, -1e4, -1e3, -250.5, 3, 4, 5)]
        for z in zs:
            f.write(f"{s(z)},{s(mp.airyai(z))},{s(mp.airyai(z, 1))}\n")

    x_large_1000 = gh_node(1000, largest_seed(1000))
    x_large_100 = gh_node(100, largest_seed(100))
    rows = {
        "ai_0": mp.airyai(0),
        "ai_prime_0": mp.airyai(0, 1),
        "ai_m1": mp.airyai(-1),
        "log_gamma_11": mp.log(3628800),
        "psi_0_0": psi(0, 0),
        "psi_1_inv_sqrt2": psi(1, 1 / mp.sqrt(2)),
        "psi_198_0": psi(198, 0),
        "psi_199_at_1": psi(199, 1),
        "psi_1000_largest_node_1001": psi(1000, gh_node(1001, largest_seed(1001))),
        "gh100_largest": x_large_100,
        "gh1000_largest": x_large_1000,
        "psi_999_at_gh1000_largest": psi(999, x_large_1000),
    }
    with open(out / "scalars.csv", "w") as f:
        f.write("name,value\n")
        for k, v in rows.items():
            f.write(f"{k},{s(v)}\n")

    # Full N = 100 rule: nodes and weights exp(-x^2) / (N psi_{N-1}^2).
    seeds, _ = np.polynomial.hermite.hermgauss(100)
    with open(out / "gh100.csv", "w") as f:
        f.write("x,w\n")
        for seed in seeds:
            x = gh_node(100, seed)
            pm, _ = psi_pair(100, x)
            f.write(f"{s(x)},{s(mp.exp(-x * x) / (100 * pm * pm))}\n")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data"))
