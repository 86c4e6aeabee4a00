import math

import numpy as np
import pytest
from hypothesis import given, settings

from bsmaj import (
    DoublyStochasticMatrix,
    MajorizationVerdict,
    ProbVector,
    Relation,
    compare,
    pad_to,
    random_majorized,
    renyi,
    spectrum,
)
from bsmaj.birkhoff import apply as ds_apply

from conftest import oracle_relation, prob_vectors, random_mixture_matrix

ALPHAS = (0.0, 0.5, 1.0, 2.0, 10.0, math.inf)


def test_uniform_majorized_by_point_mass():
    v = compare(ProbVector([0.5, 0.5]), ProbVector([1.0, 0.0]))
    assert v.relation is Relation.MAJORIZED_BY
    assert v.first_violation is None


def test_reflexivity_example():
    p = ProbVector([0.6, 0.3, 0.1])
    assert compare(p, p).relation is Relation.EQUAL


def test_incomparable_three_photon_pair():
    v = compare(spectrum(3, 0.72), spectrum(3, 0.62))
    assert v.relation is Relation.INCOMPARABLE
    assert v.first_violation is not None
    gaps = np.asarray(v.partial_sum_gaps)
    assert gaps.max() > 1e-12 and gaps.min() < -1e-12


def test_gap_values_are_sorted_prefix_differences():
    p, q = ProbVector([0.5, 0.5]), ProbVector([0.9, 0.1])
    v = compare(p, q)
    assert v.partial_sum_gaps == pytest.approx((0.4, 0.0), abs=1e-15)


def test_majorizes_direction_and_first_violation():
    v = compare(ProbVector([1.0, 0.0]), ProbVector([0.5, 0.5]))
    assert v.relation is Relation.MAJORIZES
    assert v.first_violation == 0


@settings(max_examples=100)
@given(prob_vectors())
def test_reflexivity(p):
    assert compare(p, p).relation is Relation.EQUAL


@settings(max_examples=100)
@given(prob_vectors(max_dim=6))
def test_padding_invariance(p):
    q = ProbVector(sorted(p.components, reverse=True))
    base = compare(p, q)
    padded = compare(pad_to(p, p.dim + 2), pad_to(q, q.dim + 2))
    assert base.relation is padded.relation


@settings(max_examples=100)
@given(prob_vectors(max_dim=6), prob_vectors(max_dim=6))
def test_compare_agrees_with_oracle(p, q):
    assert compare(p, q).relation.value == oracle_relation(p.components, q.components)


def test_random_majorized_point_mass():
    q = ProbVector([1.0, 0.0, 0.0])
    p = random_majorized(q, 3, seed=0)
    assert compare(p, q).relation is Relation.MAJORIZED_BY
    assert oracle_relation(p.components, q.components) == "MajorizedBy"


def test_random_majorized_uniform_fixed_point():
    q = ProbVector([1 / 3] * 3)
    p = random_majorized(q, 4, seed=11)
    assert compare(p, q).relation is Relation.EQUAL


def test_random_majorized_generic_seeded():
    q = ProbVector([0.7, 0.2, 0.1])
    p = random_majorized(q, 5, seed=42)
    assert oracle_relation(p.components, q.components) == "MajorizedBy"
    assert np.array_equal(p.components, random_majorized(q, 5, seed=42).components)


def test_random_majorized_rejects_zero_perms():
    with pytest.raises(ValueError):
        random_majorized(ProbVector([1.0]), 0, seed=0)


def test_transitivity_on_generated_chains():
    rng = np.random.default_rng(3)
    for trial in range(60):
        dim = int(rng.integers(2, 8))
        r = ProbVector(rng.dirichlet(np.ones(dim)))
        q = random_majorized(r, int(rng.integers(1, 5)), seed=trial)
        p = random_majorized(q, int(rng.integers(1, 5)), seed=trial + 1000)
        verdict = compare(p, r)
        assert verdict.relation is not Relation.INCOMPARABLE
        assert verdict.relation in (Relation.MAJORIZED_BY, Relation.EQUAL)


def test_schur_concavity_contract():
    rng = np.random.default_rng(9)
    for trial in range(120):
        dim = int(rng.integers(2, 10))
        q = ProbVector(rng.dirichlet(np.ones(dim)))
        p = random_majorized(q, int(rng.integers(1, 6)), seed=trial)
        for alpha in ALPHAS:
            assert renyi(p, alpha) >= renyi(q, alpha) - 1e-12


def test_mixture_matrix_round_trip():
    # Applying any doubly stochastic matrix can only flatten the vector.
    rng = np.random.default_rng(21)
    for trial in range(60):
        d = int(rng.integers(2, 9))
        D = DoublyStochasticMatrix(random_mixture_matrix(rng, d, int(rng.integers(1, 6))))
        q = ProbVector(rng.dirichlet(np.ones(d)))
        verdict = compare(ds_apply(D, q), q)
        assert verdict.relation is not Relation.INCOMPARABLE
        assert verdict.relation in (Relation.MAJORIZED_BY, Relation.EQUAL)


def test_verdict_serialization_round_trip():
    v = compare(spectrum(3, 0.72), spectrum(3, 0.62))
    again = MajorizationVerdict.from_dict(v.to_dict())
    assert again.relation is v.relation
    assert again.first_violation == v.first_violation
    assert np.allclose(again.partial_sum_gaps, v.partial_sum_gaps, atol=0.0)
