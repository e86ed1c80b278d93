import pytest

from shiftlab import (Alphabet, FiniteTypeSpec, Substitution, build_block_graph,
                      make_labeled_graph, sofic_oracle, sft_oracle, subst_oracle)


@pytest.fixture(scope="session")
def alph2():
    return Alphabet(("0", "1"))


@pytest.fixture(scope="session")
def golden_spec(alph2):
    return FiniteTypeSpec(alph2, frozenset([("1", "1")]), "golden")


@pytest.fixture(scope="session")
def golden_graph(golden_spec):
    return build_block_graph(golden_spec)


@pytest.fixture(scope="session")
def golden_oracle(golden_graph):
    return sft_oracle(golden_graph, 20)


@pytest.fixture(scope="session")
def even_graph(alph2):
    # runs of 1 between consecutive 0s have even length
    edges = [("e", "0", "e"), ("e", "1", "o"), ("o", "1", "e")]
    return make_labeled_graph(alph2, ("e", "o"), edges, "even")


@pytest.fixture(scope="session")
def even_oracle(even_graph):
    return sofic_oracle(even_graph, 22)


@pytest.fixture(scope="session")
def full2_spec(alph2):
    return FiniteTypeSpec(alph2, frozenset(), "full-2")


@pytest.fixture(scope="session")
def fib():
    return Substitution({"0": ("0", "1"), "1": ("0",)}, "0")


@pytest.fixture(scope="session")
def run_doubler():
    # fixed point 010011010010110100110100..., runs of 1 doubling in length
    return Substitution({"0": ("0", "1", "0"), "1": ("1", "1")}, "0")
