import pytest

from krich.errors import UsageError
from krich.gaps import (
    ChainData,
    ChainStep,
    chain_from_gaps,
    enumerate_gap_sequences,
    gaps_from_chain,
    gaps_from_semigroup,
    genus_of_chain,
    h1_profile,
    is_symmetric,
    semigroup_from_gaps,
    validate_chain,
    validate_gaps,
)


def test_semigroups():
    assert semigroup_from_gaps([1, 3]) == (2, 5)
    for g in range(1, 5):
        assert semigroup_from_gaps(range(1, g + 1)) == tuple(range(g + 1, 2 * g + 2))
        assert semigroup_from_gaps(range(1, 2 * g, 2)) == (2, 2 * g + 1)
    assert gaps_from_semigroup((3, 4)) == (1, 2, 5)


def test_invalid_gaps():
    with pytest.raises(UsageError):
        validate_gaps([2])
    with pytest.raises(UsageError):
        validate_gaps([1, 3, 4])  # 4 = 2 + 2


def test_symmetry():
    assert is_symmetric([1, 3, 5])
    assert is_symmetric([1, 2, 5])
    assert not is_symmetric([1, 2, 3])


def test_gap_counts():
    assert [len(enumerate_gap_sequences(g)) for g in range(6)] == [1, 1, 2, 4, 7, 12]


def test_chain_of_a_genus_two_sequence():
    c = chain_from_gaps([1, 3])
    assert c.s == 1
    assert c.steps[-1].dplus == (3,)
    assert [st.dminus[0] for st in c.steps[1:]] == [2]
    assert genus_of_chain(c) == 2
    assert [(q, a) for q, a, _ in h1_profile(c)] == [(0, 2), (1, 1)]
    assert [x for _, a, b in h1_profile(c) for x in (a, b)] == [2, 1, 1, 0]
    assert gaps_from_chain(c) == (1, 3)
    assert chain_from_gaps([1]).s == 0


def test_chain_round_trip_and_json():
    for g in range(1, 5):
        for gaps in enumerate_gap_sequences(g):
            c = chain_from_gaps(gaps)
            assert gaps_from_chain(ChainData.from_json(c.to_json())) == gaps
            assert genus_of_chain(c) == g


def test_invalid_chains():
    bad_start = ChainData(1, (ChainStep((1,), (1,)),))
    assert not validate_chain(bad_start).ok
    jump = ChainData(1, (ChainStep((0,), (1,)), ChainStep((3,), (3,), 1)))
    assert validate_chain(jump).failure.startswith("D_q^-")
    supp = ChainData(1, (ChainStep((0,), (1,)), ChainStep((2,), (2,), 1)))
    assert "supp" in validate_chain(supp).failure
    with pytest.raises(UsageError):
        genus_of_chain(supp)
    with pytest.raises(UsageError):
        ChainData.from_json({"points": 1})
