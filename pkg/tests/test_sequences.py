import pytest
from hypothesis import given, strategies as st

from p1seq.errors import DomainError, ValidationError
from p1seq.sequences import (
    SequencePrefix,
    SequenceSpec,
    eventual_start,
    materialize,
    poly_eval,
    read_sequence_file,
    validate_increasing,
    write_sequence_file,
)


def brute_start(cs, requested, horizon):
    """Oracle: scan down from a far horizon to the first failing integer."""
    n = horizon
    while n >= requested:
        if poly_eval(cs, n) < 1 or poly_eval(cs, n + 1) <= poly_eval(cs, n):
            return n + 1
        n -= 1
    return requested


def test_polynomial_examples():
    assert materialize(SequenceSpec.polynomial([1, 0, 1], 4)).terms == (2, 5, 10, 17)
    p = materialize(SequenceSpec.polynomial([-100, 1], 5))
    assert p.origin["effective_start"] == 101
    assert p.origin["start_shifted"] is True
    assert p.terms[0] == 1
    assert brute_start([-100, 1], 1, 1000) == 101


def test_smooth_example():
    assert materialize(SequenceSpec.smooth([2, 3], 6)).terms == (2, 3, 4, 6, 8, 9)


def test_builtins():
    assert materialize(SequenceSpec.builtin("fermat", 4)).terms == (3, 5, 17, 257)
    assert materialize(SequenceSpec.builtin("mersenne", 3)).terms == (3, 7, 15)
    assert materialize(SequenceSpec.builtin("mersenne", 2, start=0)).terms == (3, 7)
    assert materialize(SequenceSpec.builtin("factorial-plus-one", 4)).terms == (2, 3, 7, 25)
    assert materialize(SequenceSpec.builtin("identity", 3, start=5)).terms == (5, 6, 7)


@pytest.mark.parametrize("cs", [[1, 0, 1], [-100, 1], [6, -5, 1], [0, -10, 0, 1], [1, -30, 0, 1],
                                [5, 0, -7, 0, 1], [-3, 0, 0, 0, 0, 2], [10**6, -2 * 10**3, 1]])
def test_eventual_start_matches_scan(cs):
    assert eventual_start(cs, 1) == brute_start(cs, 1, 5000)


@given(st.lists(st.integers(-60, 60), min_size=1, max_size=4), st.integers(1, 5), st.integers(0, 20))
def test_eventual_start_random(lower, lead, requested):
    cs = lower + [lead]
    n0 = eventual_start(cs, requested)
    assert n0 == brute_start(cs, requested, 400)
    terms = [poly_eval(cs, n) for n in range(n0, n0 + 50)]
    assert terms[0] >= 1 and all(a < b for a, b in zip(terms, terms[1:]))


def test_polynomial_validation():
    with pytest.raises(DomainError):
        SequenceSpec.polynomial([5], 3)
    with pytest.raises(DomainError):
        SequenceSpec.polynomial([1, 0, 0], 3)
    with pytest.raises(DomainError):
        SequenceSpec.polynomial([1, -1], 3)
    with pytest.raises(DomainError):
        SequenceSpec.builtin("lucas", 3)


def test_validate_increasing():
    assert validate_increasing([1, 2, 3]).terms == (1, 2, 3)
    assert validate_increasing([5]).terms == (5,)
    with pytest.raises(ValidationError) as err:
        validate_increasing([1, 2, 2])
    assert err.value.position == 3
    with pytest.raises(ValidationError) as err:
        validate_increasing([0, 2])
    assert err.value.position == 1


def test_materialize_deterministic():
    spec = SequenceSpec.polynomial([7, -3, 0, 1], 200)
    assert materialize(spec) == materialize(spec)


def test_file_roundtrip(tmp_path):
    prefix = materialize(SequenceSpec.builtin("fermat", 9))
    path = tmp_path / "f.txt"
    write_sequence_file(prefix, path, comment="fermat numbers\nF_0..F_8")
    back = materialize(SequenceSpec.file(path))
    assert back.terms == prefix.terms
    assert read_sequence_file(path, limit=3).terms == prefix.terms[:3]


def test_file_errors_name_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# header\n3\n5\n\n5\n")
    with pytest.raises(ValidationError) as err:
        read_sequence_file(path)
    assert err.value.position == 5
    assert ":5:" in str(err.value)
    path.write_text("3\nx7\n")
    with pytest.raises(ValidationError) as err:
        read_sequence_file(path)
    assert err.value.position == 2


def test_spec_roundtrip():
    for spec in [SequenceSpec.polynomial([1, 0, 1], 4), SequenceSpec.builtin("fermat", 3),
                 SequenceSpec.smooth([3, 2], 5), SequenceSpec.file("x.txt", 4)]:
        assert SequenceSpec.from_dict(spec.to_dict()) == spec
    p = materialize(SequenceSpec.polynomial([1, 0, 1], 4))
    assert SequencePrefix.from_dict(p.to_dict()) == p
