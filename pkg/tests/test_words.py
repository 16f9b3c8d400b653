import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from semirat.errors import BudgetExceeded, WordSyntaxError
from semirat.words import Word, canonical_form, cyclic_reduce, enumerate_words, invert, parse, words_of_length


def test_parse_examples():
    w = parse("x*y*x^2*y^3")
    assert w.letters == ((1, 1), (2, 1), (1, 2), (2, 3)) and w.rank == 2
    assert parse("x*x^-1").letters == () and len(parse("x*x^-1")) == 0
    assert parse("x1*x2^2*x1^4*x2^3").letters == ((1, 1), (2, 2), (1, 4), (2, 3))
    assert parse("").letters == () and parse("   ").rank == 0


def test_parse_merges_and_aliases():
    assert parse(" x3 ^ -2 * z ").letters == ((3, -1),)
    assert parse("x*x*x").letters == ((1, 3),)
    assert parse("y*x^0*y").letters == ((2, 2),)
    assert parse("x", rank=3).rank == 3


@pytest.mark.parametrize("text,pos", [
    ("x*", 2), ("*x", 0), ("x^", 2), ("x^y", 2), ("x y", 2), ("x*q", 2), ("x0", 0), ("x^^2", 2),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse(text)
    assert exc.value.position == pos


def test_invert_and_cyclic_reduce():
    assert invert(Word()) == Word()
    assert invert(parse("x*y")) == parse("y^-1*x^-1")
    assert cyclic_reduce(parse("x*y*x^-1")) == parse("y")
    assert cyclic_reduce(parse("x^2*y*x^-1")) == parse("x*y")
    assert cyclic_reduce(parse("x*y*x^-1*y^-1")).letters == ((1, 1), (2, 1), (1, -1), (2, -1))


def test_print_format():
    assert str(parse("x*y^-2*z^3")) == "x1*x2^-2*x3^3"
    assert str(Word()) == ""


def test_canonical_examples():
    xy = canonical_form(parse("x*y"))
    assert canonical_form(parse("y*x")) == xy
    assert canonical_form(parse("x^-1*y")) == xy
    w = parse("x*y*x^2*y^3")
    assert canonical_form(w) == canonical_form(invert(w))
    # oracle: the inverse lies in the brute-force symmetry orbit of w
    orbit = oracles.word_symmetry_orbit(w.letters, 2)
    assert invert(w).letters in orbit
    assert canonical_form(w).letters in orbit


def test_canonical_constant_on_orbit():
    w = parse("x*y*x^2*y^3")
    orbit = oracles.word_symmetry_orbit(w.letters, 2)
    assert len(orbit) > 8
    assert {canonical_form(Word(s, 2)) for s in orbit} == {canonical_form(w)}


def test_enumeration_small():
    assert [str(w) for w in enumerate_words(1, 3)] == ["x1", "x1^2", "x1^3"]
    assert {str(w) for w in enumerate_words(2, 2)} == {"x1", "x1^2", "x1*x2"}


def test_enumeration_matches_hand_classes():
    # distinct symmetry orbits among all cyclically reduced words, by brute force
    for max_len in (2, 3, 4, 5):
        classes = set()
        for seq in oracles.reduced_words_up_to(2, max_len):
            classes.add(oracles.word_symmetry_orbit(seq, 2))
        got = list(enumerate_words(2, max_len))
        assert len(got) == len(classes)
        assert {oracles.word_symmetry_orbit(w.letters, 2) for w in got} == classes


def test_enumeration_order_and_distinct():
    ws = list(enumerate_words(2, 8))
    lengths = [len(w) for w in ws]
    assert lengths == sorted(lengths)
    assert len({canonical_form(w) for w in ws}) == len(ws)
    assert all(canonical_form(w) == w for w in ws)
    assert ws == list(enumerate_words(2, 8))


def test_rank2_counts_by_length():
    assert [len(words_of_length(2, L)) for L in range(1, 11)] == [1, 2, 2, 6, 7, 19, 30, 84, 168, 460]


@pytest.mark.parametrize("L", range(1, 9))
def test_rank1_count_equals_length(L):
    assert len(list(enumerate_words(1, L))) == L


def test_witness_word_class_appears_by_length_7():
    target = canonical_form(parse("x*y*x^2*y^3"))
    assert target in list(enumerate_words(2, 7))


def test_enumeration_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_words(4, 3)
    with pytest.raises(BudgetExceeded):
        enumerate_words(2, 17)


def test_start_length():
    assert [len(w) for w in enumerate_words(2, 4, start_length=4)] == [4] * 6


# --- properties --------------------------------------------------------------

letters = st.lists(st.tuples(st.integers(1, 3), st.integers(-4, 4).filter(bool)), max_size=8)


@given(letters)
def test_print_parse_round_trip(ls):
    w = Word(tuple(ls))
    assert parse(str(w)) == Word(w.letters)
    assert str(parse(str(w))) == str(w)


@given(letters)
def test_freely_reduced(ls):
    w = Word(tuple(ls))
    assert all(a[0] != b[0] for a, b in zip(w.letters, w.letters[1:]))
    assert all(e for _, e in w.letters)
    assert invert(invert(w)) == w


@settings(max_examples=60, deadline=None)
@given(letters.filter(lambda ls: len(ls) <= 5), st.permutations([1, 2, 3]), st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3), st.integers(0, 10))
def test_canonical_invariant_under_symmetries(ls, perm, signs, rot):
    w = Word(tuple(ls), 3)
    c = canonical_form(w)
    assert canonical_form(c) == c
    mapped = Word(tuple((perm[v - 1], e * signs[v - 1]) for v, e in ls), 3)
    assert canonical_form(mapped) == c
    assert canonical_form(invert(w)) == c
    base = cyclic_reduce(w).letters
    if base:
        k = rot % len(base)
        assert canonical_form(Word(base[k:] + base[:k], 3)) == c
