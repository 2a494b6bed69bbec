"""Smoke test for the pybaxterlab extension.

Build and run from the repository root:

    cargo build --release -p baxterlab-python --features extension-module
    cp target/release/libpybaxterlab.so python/pybaxterlab.so
    python3 python/smoke_test.py
"""

import cmath
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pybaxterlab as bl  # noqa: E402


def close(a, b, tol):
    return abs(a - b) <= tol * max(abs(b), 1e-300)


def main():
    assert close(bl.gamma(0.5), math.sqrt(math.pi), 1e-13)
    z = 0.3 + 1.7j
    assert close(bl.gamma(z) * bl.gamma(1 - z) * cmath.sin(math.pi * z) / math.pi, 1.0, 1e-12)

    value, error = bl.whittaker([0.5, -0.2], [0.3, -0.3])
    assert close(value, 0.383949384408513, 1e-9), value
    assert error < 1e-9
    assert close(bl.whittaker([0.7], [0.4])[0], cmath.exp(0.28j), 1e-15)

    # t = 0, one variable: P_(2) = z^2
    assert bl.macdonald([2], ["3/5"], "1/3", "0") == "9/25"

    psi = bl.scaled_qwhittaker_value(0.05, [0.3, -0.3], [0.5, -0.2])
    assert abs(psi - value) < 0.05, psi

    s, tail = bl.residue_sum([1 - 0.3j], 1.0, order=0)
    assert close(s, math.exp(-1.0), 1e-12) and tail < 1e-12

    rep = bl.noumi_check([2, 1], 2, "1/3", "1/5", order=3, samples=5, seed=7)
    assert rep["pass"] and rep["check_id"] == "verify-noumi"

    rep = bl.baxter([0.3 + 0.4j], [0.2], which="second")
    assert rep["pass"], rep["rel_err"]

    doc = bl.criterion(3, quick=True, seed=1)
    assert doc["summary"]["failed"] == 0

    try:
        bl.baxter([0.3 - 0.4j], [0.2])
    except ValueError:
        pass
    else:
        raise AssertionError("lower half plane accepted")

    assert bl.run_cli(["verify-gamma-identity", "--r", "0.3+0.1i,-0.2", "--nu", "2,1", "--out", os.devnull]) == 0
    print("pybaxterlab smoke test: ok")


if __name__ == "__main__":
    main()
