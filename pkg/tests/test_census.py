import pytest

from p1seq.arith import primes_up_to
from p1seq.census import CensusReport, prime_census
from p1seq.errors import IncompleteFactorizationError
from p1seq.sequences import SequenceSpec, materialize, validate_increasing
import p1seq.census as census_mod


def test_powers_of_two():
    rep = prime_census(validate_increasing([2, 4, 8, 16]))
    assert rep.primes_found == (2,)
    assert rep.growth_curve == ((1, 1),)
    assert [rep.distinct_at(k) for k in range(1, 5)] == [1, 1, 1, 1]


def test_identity_gives_primes_up_to_K():
    K = 500
    rep = prime_census(validate_increasing(range(1, K + 1)))
    assert rep.primes_found == primes_up_to(K)
    counts = [rep.distinct_at(k) for k in range(1, K + 1)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


def test_n_squared_plus_one_golden():
    # sympy.factorint oracle (scripts/derive_oracles.py): 70 distinct primes for n = 1..100
    rep = prime_census(materialize(SequenceSpec.polynomial([1, 0, 1], 100)))
    assert len(rep.primes_found) == 70


@pytest.mark.parametrize("S", [(2, 3), (2, 3, 5), (5, 7, 11)])
def test_smooth_census_subset(S):
    rep = prime_census(materialize(SequenceSpec.smooth(S, 400)))
    assert set(rep.primes_found) <= set(S)


def test_order_insensitive():
    terms = list(materialize(SequenceSpec.polynomial([1, 1, 1], 150)).terms)
    a = prime_census(terms)
    b = prime_census(terms[::-1])
    assert a.primes_found == b.primes_found


def test_every_prime_divides_a_term():
    prefix = materialize(SequenceSpec.builtin("factorial-plus-one", 15))
    rep = prime_census(prefix)
    for p in rep.primes_found:
        assert any(n % p == 0 for n in prefix.terms)


def test_incomplete_factorizations_degrade(monkeypatch):
    real = census_mod.factorize

    def flaky(n, trial_bound=100_000):
        if n == 26:
            raise IncompleteFactorizationError(n, real(2), 13)
        return real(n, trial_bound)

    monkeypatch.setattr(census_mod, "factorize", flaky)
    rep = prime_census(validate_increasing([2, 5, 10, 17, 26]))
    assert rep.incomplete_terms == (5,)
    assert rep.primes_found == (2, 5, 17)


def test_parallel_identical_and_roundtrip():
    prefix = materialize(SequenceSpec.polynomial([1, 0, 1], 400))
    a = prime_census(prefix, workers=1)
    b = prime_census(prefix, workers=4)
    assert a == b
    assert CensusReport.from_dict(a.to_dict()) == a
