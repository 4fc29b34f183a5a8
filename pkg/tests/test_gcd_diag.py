import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from p1seq.errors import DomainError
from p1seq.gcd_diag import (
    BoundSequence,
    GcdHypothesisReport,
    IndexSet,
    PartitionReport,
    choose_M,
    counting_check,
    delta_bound,
    delta_divergence_probe,
    index_set,
    partition_check,
    spacing_check,
    verify_gcd_hypothesis,
)
from p1seq.arith import nu
from p1seq.sequences import SequenceSpec, materialize, validate_increasing


def fermat_prefix(n=12):
    return validate_increasing([2 ** (2**k) + 1 for k in range(n)])


def test_fermat_hypothesis_holds():
    prefix = fermat_prefix()
    # oracle: direct gcd of all pairs
    for i in range(12):
        for j in range(i + 1, 12):
            assert math.gcd(prefix.terms[i], prefix.terms[j]) == 1
    rep = verify_gcd_hypothesis(prefix, BoundSequence.linear(1), 5)
    assert rep.holds and rep.violations == ()


def test_even_numbers_violate_everywhere():
    prefix = validate_increasing([2 * k for k in range(1, 21)])
    rep = verify_gcd_hypothesis(prefix, [2, 3, 4], 3)
    # m_l = 2, 3, 4 as explicit values; gcd(2k, 2k+2l) is even and >= 2
    assert all(g % 2 == 0 for _, _, g, _ in rep.violations)
    rep = verify_gcd_hypothesis(prefix, BoundSequence((2, 3, 4)), 3)
    assert {(k, l) for k, l, _, _ in rep.violations if l == 1} == {(k, 1) for k in range(1, 20)}


def test_pairs_checked_count():
    for L in range(1, 8):
        prefix = validate_increasing(range(1, L + 2))
        rep = verify_gcd_hypothesis(prefix, BoundSequence.linear(10), L)
        brute = sum(1 for k in range(1, L + 2) for l in range(1, L + 1) if k + l <= L + 1)
        assert rep.pairs_checked == brute == L * (L + 1) // 2


def test_bound_sequence_validation():
    with pytest.raises(DomainError):
        BoundSequence((3, 3, 4))
    with pytest.raises(DomainError):
        BoundSequence((5, 4))
    with pytest.raises(DomainError):
        BoundSequence.linear(-1)
    with pytest.raises(DomainError):
        verify_gcd_hypothesis(fermat_prefix(), [2, 2, 2], 3)
    with pytest.raises(DomainError):
        verify_gcd_hypothesis(fermat_prefix(3), BoundSequence.linear(1), 3)


@pytest.mark.parametrize("m_l, M", [(5, 3), (1, 1), (1024, 11), (4, 3), (7, 3), (8, 4)])
def test_choose_M(m_l, M):
    m = BoundSequence((m_l,))
    assert choose_M(m, 1) == M
    assert 2**M > m_l >= 2 ** (M - 1)


def test_index_set_examples():
    assert index_set(validate_increasing([2, 4, 8, 16]), 2, 2).indices == (3, 4)
    assert index_set(validate_increasing([3, 9, 27]), 2, 0).indices == ()
    rng = random.Random(7)
    terms = sorted({k * 2 ** rng.randint(0, 9) for k in range(1, 200)})[:50]
    prefix = validate_increasing(terms)
    for M in range(6):
        brute = tuple(k for k, n in enumerate(terms, 1) if nu(2, n) > M)
        assert index_set(prefix, 2, M).indices == brute


def test_spacing_examples():
    assert spacing_check([1, 5, 9], 3) == (4, True)
    assert spacing_check([1, 3], 3) == (2, False)
    A = index_set(fermat_prefix(), 2, 0)
    assert A.indices == () and spacing_check(A, 5) == (None, True)


def test_delta_examples():
    d = delta_bound(10, 2)
    assert d.delta == 2 and d.lower == pytest.approx(4 / 3) and d.delta > d.lower
    d = delta_bound(12, 2)
    assert d == (2, 2.0) and d.tight(12, 2)
    d = delta_bound(1, 1)
    assert d == (0, -0.5)


def test_delta_exhaustive():
    for l in range(1, 11):
        for N in range(1, 1001):
            d = delta_bound(N, l)
            assert d.delta == N - l * (N // (l + 1) + 1)
            gap = Fraction(d.delta) - (Fraction(N, l + 1) - l)
            assert gap >= 0
            assert (gap == 0) == (N % (l + 1) == 0)


def test_delta_diverges():
    for l in range(1, 11):
        probe = delta_divergence_probe(l, 10**4)
        assert probe["blockwise_increasing"]
        # the tail stays above the linear lower bound N/(l+1) - l at N = 10 * 5000
        assert probe["min_second_half"] >= 5 * 10**4 / (l + 1) - l


def test_delta_not_consecutively_monotone_for_l6():
    assert delta_bound(70, 6).delta < delta_bound(60, 6).delta
    assert not delta_divergence_probe(6, 100)["consecutive_nondecreasing"]


def _smooth_terms(rng, primes, length, max_exp):
    vals = set()
    while len(vals) < length:
        v = 1
        for p in primes:
            v *= p ** rng.randint(0, max_exp)
        vals.add(v)
    return sorted(vals)


@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(0, 3))
def test_lemma_transfer(seed, L, offset):
    rng = random.Random(seed)
    prefix = validate_increasing(_smooth_terms(rng, [2, 3, 5], 40, 6))
    m = BoundSequence.linear(offset)
    rep = verify_gcd_hypothesis(prefix, m, L)
    if not rep.holds:
        # keep only the longest initial stretch satisfying the hypothesis
        first_bad = min(k + l for k, l, _, _ in rep.violations)
        if first_bad - 1 <= L:
            return
        prefix = validate_increasing(prefix.terms[: first_bad - 1])
        assert verify_gcd_hypothesis(prefix, m, L).holds
    for l in range(1, L + 1):
        M = choose_M(m, l)
        for p in (2, 3, 5):
            A = index_set(prefix, p, M)
            assert spacing_check(A, l).passed
            assert counting_check(A, l, len(prefix)) is None


def test_counting_check_detects_packing():
    A = IndexSet(2, 0, (1, 2, 3))
    assert counting_check(A, 2, 3) == 2


def test_partition_examples():
    prefix = validate_increasing([2**i for i in range(1, 11)])
    rep = partition_check(prefix, [2], [2], 3)
    assert rep.residual_indices == (1, 2, 3) and rep.covered
    rep = partition_check(validate_increasing([6, 12, 24, 48]), [2, 3], [2], 1)
    assert rep.residual_indices == (1,)
    assert rep.valuation_trajectories[3] == ((1, 1),)
    assert PartitionReport.from_dict(rep.to_dict()) == rep
    with pytest.raises(DomainError):
        partition_check(validate_increasing([6, 14]), [2, 3], [2], 1)
    with pytest.raises(DomainError):
        partition_check(prefix, [2], [3], 1)


@given(st.integers(0, 10**6), st.integers(0, 4))
def test_partition_against_set_complement(seed, M):
    rng = random.Random(seed)
    primes = [2, 3, 5, 7]
    prefix = validate_increasing(_smooth_terms(rng, primes, 30, 5))
    unbounded = rng.sample(primes, rng.randint(1, 4))
    rep = partition_check(prefix, primes, unbounded, M)
    everything = set(range(1, len(prefix) + 1))
    hit = set()
    for p in unbounded:
        hit |= {k for k in everything if prefix.term(k) % p ** (M + 1) == 0}
    assert set(rep.residual_indices) == everything - hit
    assert rep.covered


def test_report_roundtrips():
    rep = verify_gcd_hypothesis(validate_increasing([2 * k for k in range(1, 8)]), BoundSequence((2, 3)), 2)
    assert GcdHypothesisReport.from_dict(rep.to_dict()) == rep
    A = index_set(validate_increasing([2, 4, 8, 16]), 2, 1)
    assert IndexSet.from_dict(A.to_dict()) == A
    m = BoundSequence((1, 5, 9))
    assert BoundSequence.from_dict(m.to_dict()) == m


def test_parallel_matches_sequential():
    prefix = materialize(SequenceSpec.polynomial([1, 0, 1], 300))
    m = BoundSequence.linear(3)
    assert verify_gcd_hypothesis(prefix, m, 6, workers=1) == verify_gcd_hypothesis(prefix, m, 6, workers=3)
