import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab import (Alphabet, AlphabetMismatchError, FiniteTypeSpec,
                      HorizonExceededError, build_block_graph, complexity,
                      format_word, lex_compare, sft_oracle, special_words,
                      subwords)


def test_alphabet_basics(alph2):
    assert len(alph2) == 2
    assert list(alph2) == ["0", "1"]
    assert "1" in alph2 and "2" not in alph2
    assert alph2.index("1") == 1
    assert alph2.word("010") == ("0", "1", "0")
    assert alph2.word(["0", "1"]) == ("0", "1")


def test_alphabet_rejects_junk():
    with pytest.raises(AlphabetMismatchError):
        Alphabet(())
    with pytest.raises(AlphabetMismatchError):
        Alphabet(("0", "0"))
    a = Alphabet(("0", "1"))
    with pytest.raises(AlphabetMismatchError):
        a.check_word(("0", "2"))


def test_format_word():
    assert format_word(()) == "(empty)"
    assert format_word(("0", "1", "1")) == "011"
    assert format_word(("10", "0")) == "10.0"


def test_lex_compare(alph2):
    assert lex_compare((), ("0",), alph2) < 0
    assert lex_compare(("0", "1"), ("1",), alph2) < 0
    assert lex_compare(("1", "0"), ("1", "0"), alph2) == 0


def test_subwords():
    w = ("a", "b", "c")
    assert subwords(w, 2) == {("a", "b"), ("b", "c")}
    assert ("b",) in subwords(w)
    assert () in subwords(w)


def test_golden_complexity_is_fibonacci(golden_oracle):
    # p(n) for the golden mean shift follows the Fibonacci recurrence
    p = complexity(golden_oracle, 10)
    assert p == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]


def test_words_sorted_and_factorial(golden_oracle):
    words = golden_oracle.words_of_length(5)
    assert words == tuple(sorted(words, key=golden_oracle.alphabet.key))
    allowed4 = set(golden_oracle.words_of_length(4))
    for w in words:
        assert w[:4] in allowed4 and w[1:] in allowed4


def test_oracle_horizon_guard(golden_oracle):
    with pytest.raises(HorizonExceededError):
        golden_oracle.contains(("0",) * 21)
    with pytest.raises(HorizonExceededError):
        golden_oracle.words_of_length(25)


def test_special_words_golden(golden_oracle):
    rep = special_words(golden_oracle, 1)
    # 0 extends both ways freely; 1 forces 0 on either side
    assert rep.left_special == (("0",),)
    assert rep.right_special == (("0",),)
    assert rep.bispecial == (("0",),)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.text(alphabet="01", min_size=1, max_size=3), max_size=3),
       st.integers(min_value=1, max_value=6))
def test_factoriality_random_sft(forbidden, n):
    # every factor of an allowed word is allowed
    alph = Alphabet(("0", "1"))
    spec = FiniteTypeSpec(alph, frozenset(alph.word(t) for t in forbidden))
    oracle = sft_oracle(build_block_graph(spec), 8)
    shorter = set(oracle.words_of_length(n - 1))
    for w in oracle.words_of_length(n):
        assert w[:-1] in shorter and w[1:] in shorter
