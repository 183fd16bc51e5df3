"""Shared fixtures and reference data for the test suite."""

import numpy as np
import pytest

from bostbc.linalg import cvec, gram_schmidt_qr, tilde_vec
from bostbc.structure import equivalent_channel, random_channel


def parse_pattern(text: str) -> np.ndarray:
    """Parse a t/0 grid string into a boolean support matrix."""
    return np.array([[tok == "t" for tok in line.split()]
                     for line in text.strip().splitlines()])


# Reference R supports of the Golden code under its three canonical
# orderings (nonzero marked t), as produced on generic channels.
GOLDEN_PATTERN_421 = parse_pattern("""
t 0 0 t t t t t
0 t t 0 t t t t
0 0 t 0 t t t t
0 0 0 t t t t t
0 0 0 0 t 0 0 t
0 0 0 0 0 t t 0
0 0 0 0 0 0 t 0
0 0 0 0 0 0 0 t
""")

GOLDEN_PATTERN_222 = parse_pattern("""
t t 0 0 t t t t
0 t 0 0 t t t t
0 0 t t t t t t
0 0 0 t t t t t
0 0 0 0 t t 0 0
0 0 0 0 0 t 0 0
0 0 0 0 0 0 t t
0 0 0 0 0 0 0 t
""")

GOLDEN_PATTERN_SCRAMBLED = parse_pattern("""
t 0 t 0 t t t t
0 t t t t t 0 t
0 0 t t t t t 0
0 0 0 t t t t t
0 0 0 0 t t t t
0 0 0 0 0 t t t
0 0 0 0 0 0 t t
0 0 0 0 0 0 0 t
""")


def decode_instance(code, cons, n0, rng, n_r=None):
    """Draw one channel/codeword/noise instance and its QR pieces."""
    n_r = n_r or code.n_t
    h = random_channel(n_r, code.n_t, rng)
    h_eq = equivalent_channel(code, h)
    idx = rng.integers(0, cons.m, size=code.k_real)
    x = np.asarray(cons.levels)[idx]
    noise = np.sqrt(n0 / 2.0) * (rng.standard_normal((n_r, code.t))
                                 + 1j * rng.standard_normal((n_r, code.t)))
    y = h_eq @ x + tilde_vec(cvec(noise))
    qr = gram_schmidt_qr(h_eq)
    return h_eq, y, qr, qr.q.T @ y, idx


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
