import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab import (Alphabet, AlphabetMismatchError, BlockCode,
                      FiniteTypeSpec, apply_block_code, block_graph_as_labeled,
                      build_block_graph, compose_codes, determinize,
                      finite_type_presentation, identity_code, is_sft,
                      language_equal_exact, language_equal_up_to,
                      make_labeled_graph, mfw_length_set, minimal_forbidden,
                      prune_labeled, sofic_entropy, sofic_oracle,
                      sofic_per_enumerate, theorem1_diagnostic)

GOLDEN = (1 + math.sqrt(5)) / 2


def test_labeled_graph_construction(alph2):
    g = make_labeled_graph(alph2, ("a",), [("a", "0", "a"), ("a", "1", "a")])
    assert g.states == ("a",)
    assert sorted(g.successors("a", "0")) == ["a"]
    with pytest.raises(AlphabetMismatchError):
        make_labeled_graph(alph2, ("a",), [("a", "2", "a")])


def test_pruning_drops_dead_branch(alph2):
    # b has no outgoing edge, so words reaching only b occur in no point
    edges = [("a", "0", "a"), ("a", "1", "b")]
    g = prune_labeled(make_labeled_graph(alph2, ("a", "b"), edges))
    assert g.states == ("a",)
    o = sofic_oracle(make_labeled_graph(alph2, ("a", "b"), edges), 5)
    assert not o.contains(("1",))
    assert o.contains(("0", "0", "0"))


def test_even_oracle_language(even_oracle):
    assert even_oracle.contains(("0", "1", "1", "0"))
    assert not even_oracle.contains(("0", "1", "0"))
    assert even_oracle.contains(("1", "1", "1"))


def test_determinize_preserves_language(even_graph):
    det = determinize(even_graph)
    assert language_equal_exact(det, even_graph)
    for s in det.states:
        for a in det.alphabet:
            assert len(det.successors(s, a)) <= 1


def test_language_equal_bounds(golden_graph, even_graph):
    gold = block_graph_as_labeled(golden_graph)
    assert not language_equal_up_to(gold, even_graph, 3)
    assert language_equal_up_to(even_graph, determinize(even_graph), 13)
    assert not language_equal_exact(gold, even_graph)


def test_is_sft_tags(golden_graph, even_graph):
    tag = is_sft(block_graph_as_labeled(golden_graph))
    assert tag.is_sft
    tag = is_sft(even_graph)
    assert not tag.is_sft
    assert tag.decision_bound >= 2


def test_sofic_entropy_even(even_graph):
    # even shift entropy equals the golden mean shift entropy
    assert sofic_entropy(even_graph) == pytest.approx(math.log(GOLDEN), abs=1e-12)


def test_sofic_per_enumerate_even(even_graph):
    entries = sorted(sofic_per_enumerate(even_graph, 2).entries)
    assert entries == [(("0", "0"), 1), (("1", "1"), 1)]
    entries = sorted(sofic_per_enumerate(even_graph, 4).entries)
    assert entries == [(("0", "0", "0", "0"), 1),
                       (("0", "0", "1", "1"), 4), (("0", "1", "1", "0"), 4),
                       (("1", "0", "0", "1"), 4), (("1", "1", "0", "0"), 4),
                       (("1", "1", "1", "1"), 1)]


def test_mfw_length_set_even(even_graph):
    assert mfw_length_set(even_graph, 11) == (3, 5, 7, 9, 11)


def test_theorem1_diagnostic_even(even_graph):
    rep = theorem1_diagnostic(even_graph, 21)
    assert not rep.tag.is_sft
    assert rep.mfw_lengths == tuple(range(3, 22, 2))
    assert rep.density_lower_bound == pytest.approx(4 / 9)


def test_theorem1_diagnostic_golden(golden_graph):
    rep = theorem1_diagnostic(block_graph_as_labeled(golden_graph), 12)
    assert rep.tag.is_sft
    assert rep.mfw_lengths == (2,)


def test_finite_type_presentation_golden(golden_spec, golden_oracle):
    g = finite_type_presentation(golden_spec)
    o = sofic_oracle(g, 8)
    for n in range(9):
        assert o.words_of_length(n) == golden_oracle.words_of_length(n)


def test_finite_type_presentation_empty(alph2):
    spec = FiniteTypeSpec(alph2, frozenset([()]))
    assert finite_type_presentation(spec).states == ()


def test_block_code_validation(alph2):
    with pytest.raises(AlphabetMismatchError):
        # missing rule entries
        BlockCode(alph2, alph2, 1, {("0", "0", "0"): "0"})
    flip = BlockCode(alph2, alph2, 0, {("0",): "1", ("1",): "0"})
    assert flip.apply_to_word(("0", "1", "1")) == ("1", "0", "0")
    assert flip.apply_to_cycle(("0", "1")) == ("1", "0")


def test_block_code_window_semantics(alph2):
    # range 1: output at i reads input i-1..i+1, so words shrink by 2
    majority = {}
    for w in [(a, b, c) for a in "01" for b in "01" for c in "01"]:
        majority[w] = "1" if w.count("1") >= 2 else "0"
    code = BlockCode(alph2, alph2, 1, majority)
    assert code.apply_to_word(("0", "1", "1", "0")) == ("1", "1")


def test_compose_codes(alph2):
    flip = BlockCode(alph2, alph2, 0, {("0",): "1", ("1",): "0"})
    ident = identity_code(alph2)
    comp = compose_codes(flip, flip)
    w = ("0", "1", "0", "0")
    assert comp.apply_to_word(w) == ident.apply_to_word(w)


def test_apply_block_code_golden_flip(golden_graph, alph2):
    flip = BlockCode(alph2, alph2, 0, {("0",): "1", ("1",): "0"})
    image = apply_block_code(golden_graph, flip)
    o = sofic_oracle(image, 6)
    table = minimal_forbidden(o, 4)
    assert table.by_length == {2: (("0", "0"),)}


def test_apply_block_code_even_from_golden(golden_graph, even_graph, alph2):
    # XOR of adjacent symbols sends the golden mean shift onto the even shift
    rule = {}
    for a in "01":
        for b in "01":
            for c in "01":
                rule[(a, b, c)] = "1" if b != c else "0"
    code = BlockCode(alph2, alph2, 1, rule)
    image = apply_block_code(golden_graph, code)
    assert language_equal_exact(image, even_graph)


@settings(max_examples=25, deadline=None)
@given(st.sets(st.text(alphabet="01", min_size=1, max_size=4), max_size=4))
def test_presentations_agree_random(forbidden):
    # the prefix automaton and the block graph present the same shift
    alph = Alphabet(("0", "1"))
    spec = FiniteTypeSpec(alph, frozenset(alph.word(t) for t in forbidden))
    via_prefix = finite_type_presentation(spec)
    via_blocks = block_graph_as_labeled(build_block_graph(spec))
    if not via_prefix.states:
        assert not via_blocks.states
        return
    assert language_equal_exact(via_prefix, via_blocks)
