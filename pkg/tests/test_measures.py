import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab import (Alphabet, BlockCode, CylinderMeasure, EmptySupportError,
                      FiniteTypeSpec, NotAnAutomorphismError, ShiftlabError,
                      automorphism_invariance_check, build_block_graph,
                      cylinder_table, eval_cylinder, full_shift,
                      max_entropy_decomposition, mu_y_average, nu_cylinder_measure,
                      nu_measure, parry_measure, per_le_enumerate, pushforward,
                      sft_oracle, weak_star_distance)

GOLDEN = (1 + math.sqrt(5)) / 2


def flip_code(alph):
    return BlockCode(alph, alph, 0, {("0",): "1", ("1",): "0"})


def test_cylinder_measure_validates(alph2):
    with pytest.raises(ShiftlabError):
        CylinderMeasure(alph2, 1, {(): 1.0, ("0",): 0.7, ("1",): 0.4})
    ok = CylinderMeasure(alph2, 1, {(): 1.0, ("0",): 0.7, ("1",): 0.3})
    assert ok.values[("0",)] == 0.7


def test_nu_measure_golden_exact(golden_graph, alph2):
    # 1/14 of the mass on each orbit point through cylinder counting
    nu = nu_measure(per_le_enumerate(golden_graph, 14), alph2, 14)
    tab = cylinder_table(nu, 3)
    assert tab.values[("1",)] == Fraction(73, 264)
    assert tab.values[("1", "1")] == 0
    assert tab.values[("0",)] + tab.values[("1",)] == 1


def test_nu_cylinder_measure_matches_enumeration(golden_graph, alph2):
    # transfer-matrix path and explicit enumeration must agree exactly
    direct = cylinder_table(nu_measure(per_le_enumerate(golden_graph, 12),
                                       alph2, 12), 3)
    counted = nu_cylinder_measure(golden_graph, 12, 3)
    for w, v in counted.values.items():
        assert direct.values[w] == v


def test_parry_measure_golden(golden_graph):
    pm = parry_measure(golden_graph)
    assert pm.perron == pytest.approx(GOLDEN, abs=1e-12)
    tab = cylinder_table(pm, 3)
    # stationary mass of the 1-cylinder is (5 - sqrt(5))/10
    assert tab.values[("1",)] == pytest.approx((5 - math.sqrt(5)) / 10, abs=1e-12)
    assert tab.values[("1", "1")] == pytest.approx(0, abs=1e-15)
    assert eval_cylinder(pm, ("0", "0")) == pytest.approx(
        tab.values[("0", "0")], abs=1e-12)


def test_nu_converges_to_parry(golden_graph, alph2):
    pm = parry_measure(golden_graph)
    dists = []
    for n in (6, 12, 18):
        nu = nu_measure(per_le_enumerate(golden_graph, n), alph2, n)
        dists.append(float(weak_star_distance(nu, pm, 3)))
    assert dists[0] > dists[1] > dists[2]
    assert dists[2] < 2e-4


def test_pushforward_flip_on_full_shift(alph2):
    g = full_shift(alph2)
    nu = nu_measure(per_le_enumerate(g, 8), alph2, 8)
    pushed = pushforward(nu, flip_code(alph2))
    assert float(weak_star_distance(nu, pushed, 3)) == 0.0
    # mass is preserved entry by entry
    assert sum(w for _, _, w in pushed.entries) == 1


def test_pushforward_collapse(alph2):
    g = full_shift(alph2)
    nu = nu_measure(per_le_enumerate(g, 6), alph2, 6)
    const = BlockCode(alph2, alph2, 0, {("0",): "0", ("1",): "0"})
    pushed = pushforward(nu, const)
    assert pushed.entries == ((("0",), 1, Fraction(1)),)


def test_automorphism_check_flip(alph2):
    g = full_shift(alph2)
    oracle = sft_oracle(g, 12)
    flip = flip_code(alph2)
    rep = automorphism_invariance_check(oracle, per_le_enumerate(g, 8), 8,
                                        flip, flip, 3, 1e-9)
    assert rep.within_tol
    assert rep.distance == 0


def test_automorphism_check_rejects_non_inverse(alph2):
    g = full_shift(alph2)
    oracle = sft_oracle(g, 12)
    rule = {}
    for a in "01":
        for b in "01":
            for c in "01":
                rule[(a, b, c)] = "1" if b == "1" and c == "1" else "0"
    and_code = BlockCode(alph2, alph2, 1, rule)
    with pytest.raises(NotAnAutomorphismError):
        automorphism_invariance_check(oracle, per_le_enumerate(g, 6), 6,
                                      and_code, and_code, 3, 1e-9)


def test_max_entropy_decomposition_golden(golden_graph, alph2):
    comps = max_entropy_decomposition(golden_graph, flip_code(alph2), depth=4)
    assert len(comps) == 1
    assert comps[0].entropy == pytest.approx(math.log(GOLDEN), abs=1e-9)
    # the image forbids 00, mirroring the source
    tab = comps[0].measure
    assert tab.values[("0", "0")] == pytest.approx(0, abs=1e-12)


def test_max_entropy_decomposition_reducible():
    # two recurrent pieces collapse to two distinct fixed points, tied at 0
    a3 = Alphabet(("0", "1", "2"))
    forb = frozenset([("0", "2"), ("2", "0"), ("1", "2"), ("2", "1")])
    red = build_block_graph(FiniteTypeSpec(a3, forb))
    collapse = BlockCode(a3, Alphabet(("a", "b")), 0,
                         {("0",): "a", ("1",): "a", ("2",): "b"})
    comps = max_entropy_decomposition(red, collapse, depth=3)
    assert len(comps) == 2
    assert all(c.entropy == pytest.approx(0.0, abs=1e-12) for c in comps)
    avg = mu_y_average(comps, 3, 2)
    assert avg.weights == (Fraction(1, 2), Fraction(1, 2))
    assert avg.measure.values[("a",)] == pytest.approx(0.5)


def test_mu_y_average_empty_components():
    with pytest.raises(EmptySupportError):
        mu_y_average([], 3, 2)


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=2, max_value=10))
def test_nu_cylinder_additivity(golden_graph, n):
    alph = golden_graph.alphabet
    tab = cylinder_table(nu_measure(per_le_enumerate(golden_graph, n), alph, n), 4)
    for w, v in tab.values.items():
        if len(w) >= 4:
            continue
        assert v == sum(tab.values[w + (a,)] for a in alph)


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=2, max_value=10))
def test_nu_shift_invariance(golden_graph, n):
    # nu is shift invariant: extending on the left splits the mass too
    alph = golden_graph.alphabet
    tab = cylinder_table(nu_measure(per_le_enumerate(golden_graph, n), alph, n), 4)
    for w, v in tab.values.items():
        if len(w) >= 4:
            continue
        assert v == sum(tab.values[(a,) + w] for a in alph)
