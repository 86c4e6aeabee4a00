"""Shared oracles, strategies, and the CLI battery used by the test suite."""

from __future__ import annotations

from itertools import accumulate

import numpy as np
import pytest
from hypothesis import strategies as st

from bsmaj import ProbVector

TOL = 1e-12


def oracle_relation(p_seq, q_seq, tol=TOL) -> str:
    """Independent majorization check: pure-Python sort and running sums."""
    p_list = [float(x) for x in p_seq]
    q_list = [float(x) for x in q_seq]
    d = max(len(p_list), len(q_list))
    ps = sorted(p_list + [0.0] * (d - len(p_list)), reverse=True)
    qs = sorted(q_list + [0.0] * (d - len(q_list)), reverse=True)
    cp = list(accumulate(ps))
    cq = list(accumulate(qs))
    if all(abs(a - b) <= tol for a, b in zip(ps, qs)):
        return "Equal"
    if all(b - a >= -tol for a, b in zip(cp, cq)):
        return "MajorizedBy"
    if all(b - a <= tol for a, b in zip(cp, cq)):
        return "Majorizes"
    return "Incomparable"


def sorted_prefix(vec, j: int) -> float:
    """Prefix sum j of the descending-sorted components (oracle side)."""
    comps = sorted((float(x) for x in vec.components), reverse=True)
    return sum(comps[: j + 1])


def central_difference(fn, x: float, h: float = 1e-6) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


@st.composite
def prob_vectors(draw, min_dim=1, max_dim=8):
    dim = draw(st.integers(min_dim, max_dim))
    raw = draw(
        st.lists(
            st.floats(0.0, 1.0, allow_nan=False, allow_infinity=False),
            min_size=dim,
            max_size=dim,
        )
    )
    total = sum(raw)
    if total <= 1e-3:
        raw = [x + 1.0 for x in raw]
        total = sum(raw)
    return ProbVector([x / total for x in raw])


def random_mixture_matrix(rng: np.random.Generator, d: int, m: int) -> np.ndarray:
    """Random convex combination of m permutation matrices of size d."""
    weights = rng.dirichlet(np.ones(m))
    out = np.zeros((d, d))
    for w in weights:
        out[np.arange(d), rng.permutation(d)] += w
    return out


#: One invocation per CLI surface; used for determinism and round trips.
CLI_BATTERY = [
    ["spectrum", "--k", "3", "--theta", "0.62", "--sorted"],
    ["--out", "csv", "spectrum", "--k", "5", "--theta", "pi/4"],
    ["majorize", "--p", "bs:3,0.72", "--q", "bs:3,0.62"],
    ["photon-chain", "--k-max", "6", "--theta", "0.7"],
    ["regions", "--k", "4"],
    ["infinitesimal", "--k", "3", "--theta", "0.7"],
    ["entropy-curve", "--k", "2", "--alphas", "1,10,inf",
     "--theta-min", "0", "--theta-max", "pi/4", "--steps", "25"],
    ["--out", "csv", "entropy-curve", "--k", "2", "--alphas", "0.5,2",
     "--steps", "10", "--bits"],
    ["figure-data", "--figure", "fig4", "--steps", "50"],
    ["--out", "csv", "figure-data", "--figure", "fig5", "--steps", "50"],
    ["locc-verify", "--k", "4", "--theta", "0.9"],
    ["catalysis", "check", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
     "--catalyst", "tmsv:1.38"],
    ["catalysis", "search", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
     "--family", "single-photon", "--grid", "0.01", "--all"],
    ["birkhoff", "--witness", "2,0.5"],
]


@pytest.fixture
def cli_runner():
    from click.testing import CliRunner

    return CliRunner()
