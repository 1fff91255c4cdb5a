import pytest
from hypothesis import given, strategies as st

from shannonpda.builders import build_beal_heller, build_dyck, build_markov_dyck, clone_controls, golden_mean_graph
from shannonpda.engine import member
from shannonpda.semigroup import (
    ONE,
    ZERO,
    SemigroupElement,
    semigroup_admissible,
    semigroup_alphabet,
    semigroup_reduce,
    word_admissible,
)

GOLDEN = golden_mean_graph()


def test_basic_relations():
    assert semigroup_reduce(GOLDEN, []) is ONE
    assert semigroup_reduce(GOLDEN, ["e1-", "e1+"]) == SemigroupElement((), (), "u")
    assert semigroup_reduce(GOLDEN, ["e1-", "e2+"]) is ZERO
    assert semigroup_reduce(GOLDEN, ["e2-", "e2-"]) is ZERO  # not a path
    assert semigroup_reduce(GOLDEN, ["e2-", "e3-"]) == SemigroupElement((), ("e2", "e3"), "u")


def test_normal_form_plus_part_first():
    x = semigroup_reduce(GOLDEN, ["e3+", "e2+", "e1-"])
    assert x == SemigroupElement(("e3", "e2"), ("e1",), "u")
    assert str(x) == "e3+ e2+ 1_u e1-"
    # a push followed by an unmatched pop is zero
    assert semigroup_reduce(GOLDEN, ["e1-", "e3+"]) is ZERO


def test_zero_absorbs():
    assert semigroup_reduce(GOLDEN, ["e1-", "e2+", "e1+", "e1-"]) is ZERO


def test_bad_generator():
    with pytest.raises(ValueError):
        semigroup_reduce(GOLDEN, ["e1"])
    with pytest.raises(Exception):
        semigroup_reduce(GOLDEN, ["e9+"])


def test_alphabet_of_dyck():
    assert semigroup_alphabet(build_dyck(2)) == {"p1": ("d1", "-"), "p2": ("d2", "-"), "q1": ("d1", "+"), "q2": ("d2", "+")}


@pytest.mark.parametrize("spec", [build_beal_heller({"1": 2}), clone_controls()])
def test_alphabet_rejects_other_shapes(spec):
    with pytest.raises(ValueError):
        semigroup_alphabet(spec)


def test_dyck_pairs_count_14():
    d = build_dyck(2)
    syms = sorted(d.alphabet)
    pairs = [(a, b) for a in syms for b in syms]
    assert sum(word_admissible(d, w) for w in pairs) == 14


MD = build_markov_dyck(GOLDEN)
MD_GENS = semigroup_alphabet(MD)


@given(st.lists(st.sampled_from(sorted(MD.alphabet)), max_size=10))
def test_member_agrees_with_semigroup(word):
    assert member(MD, word) == word_admissible(MD, word, MD_GENS)


@given(st.lists(st.sampled_from(["e1-", "e2-", "e3-", "e1+", "e2+", "e3+"]), max_size=8))
def test_admissible_is_factorial(word):
    if semigroup_admissible(GOLDEN, word):
        assert semigroup_admissible(GOLDEN, word[1:])
        assert semigroup_admissible(GOLDEN, word[:-1])
