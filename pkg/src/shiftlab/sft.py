"""Shifts of finite type: higher-block presentations, languages, entropy,
and exact periodic-point counts.

A finite list of forbidden words over an alphabet determines the shift of
all bi-infinite sequences avoiding them.  With memory f (the longest
forbidden length), the shift is presented by the block graph whose
vertices are the allowed (f-1)-words and whose edges append one letter.
Vertices that cannot lie on a bi-infinite path are pruned away, so the
label words of finite paths are exactly the words occurring in points of
the shift.  An empty pruned graph is the empty shift; it is flagged, not
raised, because downstream diagnostics want to report it.
"""

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import (AlphabetMismatchError, EmptyShiftError,
                     EnumerationCapError, UndefinedEntropyError)
from .language import EMPTY_WORD, Alphabet, LanguageOracle, subwords
from .spectral import (int_matmul, int_matpow, int_trace,
                       spectral_radius_certified,
                       strongly_connected_components)

DEFAULT_CAP = 10 ** 6


@dataclass(frozen=True)
class FiniteTypeSpec:
    """Finite description of an SFT: alphabet plus forbidden words.

    ``memory`` is the length of the longest forbidden word, at least 1,
    so the block presentation below is always well defined.
    """

    alphabet: Alphabet
    forbidden: frozenset
    label: str = ""

    def __post_init__(self):
        for w in self.forbidden:
            if not isinstance(w, tuple):
                raise AlphabetMismatchError("forbidden words must be tuples; got %r" % (w,))
            self.alphabet.check_word(w)

    @property
    def memory(self):
        lengths = [len(w) for w in self.forbidden]
        return max(lengths, default=1) or 1

    def scan_allows(self, word):
        """True when ``word`` contains no forbidden subword.

        This is weaker than membership in the shift's language: a scan-
        allowed word may still fail to extend to a bi-infinite point.
        """
        if EMPTY_WORD in self.forbidden:
            return False
        lengths = {len(w) for w in self.forbidden}
        for ell in lengths:
            for i in range(len(word) - ell + 1):
                if word[i:i + ell] in self.forbidden:
                    return False
        return True


@dataclass(frozen=True)
class BlockGraph:
    """Pruned higher-block presentation of an SFT.

    ``vertices`` are allowed (memory-1)-words; ``edges[u][a]`` is the
    vertex reached from u by appending letter a (at most one per letter,
    so the presentation is deterministic).  For memory 1 the single
    vertex is the empty word and edges are the allowed letters.
    """

    alphabet: Alphabet
    memory: int
    vertices: tuple
    edges: dict
    label: str = ""

    @property
    def is_empty(self):
        return not self.vertices

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self):
        """Integer adjacency matrix counting parallel edges."""
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        idx = self.vertex_index
        for u in self.vertices:
            for _, v in self.edges.get(u, {}).items():
                a[idx[u]][idx[v]] += 1
        return a

    def label_matrix(self, letter):
        """0/1 matrix of the edges carrying one letter."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        idx = self.vertex_index
        for u in self.vertices:
            v = self.edges.get(u, {}).get(letter)
            if v is not None:
                m[idx[u]][idx[v]] = 1
        return m

    def edge_list(self):
        out = []
        for u in self.vertices:
            for a in self.alphabet:
                v = self.edges.get(u, {}).get(a)
                if v is not None:
                    out.append((u, a, v))
        return out


def _prune(vertices, edges):
    """Restrict to vertices with both an incoming and an outgoing edge,
    iterating to a fixpoint."""
    alive = set(vertices)
    while True:
        has_out = {u for u in alive
                   if any(v in alive for v in edges.get(u, {}).values())}
        has_in = set()
        for u in alive:
            for v in edges.get(u, {}).values():
                if v in alive and u in has_out:
                    has_in.add(v)
        keep = has_out & has_in
        if keep == alive:
            break
        alive = keep
    kept_edges = {}
    for u in sorted(alive):
        row = {a: v for a, v in edges.get(u, {}).items() if v in alive}
        if row:
            kept_edges[u] = row
    return tuple(sorted(alive)), kept_edges


def build_block_graph(spec):
    """Block presentation of an SFT, pruned to its essential part."""
    f = spec.memory
    alphabet = spec.alphabet
    if EMPTY_WORD in spec.forbidden:
        return BlockGraph(alphabet, f, (), {}, label=spec.label)
    # candidate vertices: scan-allowed (f-1)-words, built incrementally
    level = [EMPTY_WORD]
    for _ in range(f - 1):
        level = [w + (a,) for w in level for a in alphabet
                 if spec.scan_allows(w + (a,))]
    vertices = tuple(sorted(level))
    edges = {}
    for u in vertices:
        row = {}
        for a in alphabet:
            ua = u + (a,)
            if spec.scan_allows(ua):
                row[a] = ua[1:] if f >= 2 else EMPTY_WORD
        if row:
            edges[u] = row
    vertices, edges = _prune(vertices, edges)
    return BlockGraph(alphabet, f, vertices, edges, label=spec.label)


def _survivors(graph, word, start=None):
    states = set(graph.vertices) if start is None else set(start)
    for a in word:
        states = {graph.edges[u][a] for u in states
                  if a in graph.edges.get(u, {})}
        if not states:
            break
    return states


def sft_oracle(graph, horizon, label=None):
    """Language oracle of the shift presented by a pruned block graph.

    Membership is a survivor scan over the graph, exact at every length;
    the declared horizon only bounds what callers may ask for.
    """
    if label is None:
        label = graph.label or "sft"

    def membership(word):
        if graph.is_empty:
            return False
        return bool(_survivors(graph, word))

    return LanguageOracle(graph.alphabet, membership, horizon, label)


def sft_language(graph, n):
    """Sorted tuple of the length-n words of the shift."""
    return sft_oracle(graph, n).words_of_length(n)


def sft_entropy(graph):
    """Topological entropy: log of the adjacency Perron root.

    Raises undefined-entropy on the empty shift.  The Perron root is
    certified by a Collatz-Wielandt bracket per irreducible component.
    """
    if graph.is_empty:
        raise UndefinedEntropyError("entropy of the empty shift is undefined")
    radius, _, _ = spectral_radius_certified(graph.adjacency)
    return math.log(radius)


def per_count(graph, p):
    """Number of points of period p (σ^p x = x), exactly: trace of A^p."""
    if p < 1:
        raise EnumerationCapError("period must be >= 1")
    if graph.is_empty:
        return 0
    return int_trace(int_matpow(graph.adjacency, p))


def _moebius_table(n):
    mu = [0] * (n + 1)
    if n >= 1:
        mu[1] = 1
        for d in range(1, n + 1):
            for mult in range(2 * d, n + 1, d):
                mu[mult] -= mu[d]
    return mu


def periodic_count_le(graph, n):
    """Exact number of points with minimal period <= n."""
    mu = _moebius_table(n)
    counts = {p: per_count(graph, p) for p in range(1, n + 1)}
    total = 0
    for q in range(1, n + 1):
        exact_q = sum(mu[q // d] * counts[d] for d in range(1, q + 1) if q % d == 0)
        total += exact_q
    return total


@dataclass(frozen=True)
class PeriodicPointSet:
    """Points of one period, each tagged with its minimal period.

    A point of period p is recorded as the length-p word w of its
    coordinates 0..p-1; distinct words are distinct points, so rotations
    of a primitive word all appear.
    """

    period: int
    entries: tuple  # of (word, minimal_period)

    @property
    def words(self):
        return tuple(w for w, _ in self.entries)

    @property
    def count(self):
        return len(self.entries)


def _minimal_period(word):
    p = len(word)
    for d in range(1, p + 1):
        if p % d == 0 and word == word[:d] * (p // d):
            return d
    return p


def per_enumerate(graph, p, cap=DEFAULT_CAP):
    """All points of period p as label words of closed p-paths.

    In a block graph a closed path is determined by its cyclic label
    word, so no deduplication is needed.  Refuses when trace(A^p)
    exceeds the cap.
    """
    if graph.is_empty:
        return PeriodicPointSet(p, ())
    total = per_count(graph, p)
    if total > cap:
        raise EnumerationCapError(
            "per_%d holds %d points, above the cap %d" % (p, total, cap))
    n = len(graph.vertices)
    adj = graph.adjacency
    # reach[k][i][j]: path of exactly k edges from i to j exists
    reach = [[[i == j for j in range(n)] for i in range(n)]]
    cur = reach[0]
    for _ in range(p):
        adj_bool = adj
        nxt = [[False] * n for _ in range(n)]
        for i in range(n):
            row = cur[i]
            out = nxt[i]
            for k in range(n):
                if row[k]:
                    ak = adj_bool[k]
                    for j in range(n):
                        if ak[j]:
                            out[j] = True
        reach.append(nxt)
        cur = nxt
    idx = graph.vertex_index
    words = []
    for start in graph.vertices:
        s = idx[start]
        stack = [(start, ())]
        while stack:
            v, labels = stack.pop()
            depth = len(labels)
            if depth == p:
                if v == start:
                    words.append(labels)
                continue
            for a in sorted(graph.edges.get(v, {}), key=graph.alphabet.index, reverse=True):
                w = graph.edges[v][a]
                if reach[p - depth - 1][idx[w]][s]:
                    stack.append((w, labels + (a,)))
    words.sort(key=graph.alphabet.key)
    return PeriodicPointSet(p, tuple((w, _minimal_period(w)) for w in words))


def per_le_enumerate(graph, n, cap=DEFAULT_CAP):
    """Points of minimal period <= n, as (word of minimal length, period).

    The union of per_p over p <= n as a set of points; each point appears
    once, keyed by its coordinates over one minimal period.
    """
    if periodic_count_le(graph, n) > cap:
        raise EnumerationCapError("per_<=%d exceeds the cap %d" % (n, cap))
    out = []
    for p in range(1, n + 1):
        for w, d in per_enumerate(graph, p, cap=cap).entries:
            if d == p:
                out.append((w, p))
    return out


def sft_cover(oracle, n):
    """SFT approximation X_n: forbid the minimal forbidden words up to n.

    The result's language agrees with the oracle's up to length n and can
    only be larger beyond.
    """
    from .forbidden import minimal_forbidden  # deferred: forbidden imports this module
    table = minimal_forbidden(oracle, n)
    words = frozenset(w for ws in table.by_length.values() for w in ws)
    return FiniteTypeSpec(oracle.alphabet, words,
                          label="cover-%d(%s)" % (n, oracle.label))


def sft_equal(g1, g2):
    """Exact equality of the two presented shifts.

    Two SFTs with memories f1, f2 coincide iff their languages agree up
    to length f1 + f2 (each is determined by its windows of its own
    memory length).
    """
    if g1.alphabet != g2.alphabet:
        raise AlphabetMismatchError("cannot compare shifts over different alphabets")
    if g1.is_empty or g2.is_empty:
        return g1.is_empty and g2.is_empty
    n = g1.memory + g2.memory
    return sft_language(g1, n) == sft_language(g2, n)


def scc_subgraphs(graph):
    """Recurrent strongly connected pieces of the block graph.

    Every transitive subshift of the SFT lives inside one of these.
    Loopless single vertices carry no bi-infinite path and are skipped.
    """
    if graph.is_empty:
        raise EmptyShiftError("the empty shift has no components")
    n = len(graph.vertices)
    idx = graph.vertex_index
    succ = [[] for _ in range(n)]
    for u in graph.vertices:
        for v in graph.edges.get(u, {}).values():
            succ[idx[u]].append(idx[v])
    out = []
    for comp in strongly_connected_components(n, succ):
        if len(comp) == 1:
            i = comp[0]
            if i not in succ[i]:
                continue
        keep = {graph.vertices[i] for i in comp}
        edges = {}
        for u in sorted(keep):
            row = {a: v for a, v in graph.edges.get(u, {}).items() if v in keep}
            if row:
                edges[u] = row
        out.append(BlockGraph(graph.alphabet, graph.memory, tuple(sorted(keep)),
                              edges, label=graph.label))
    return out


def scc_max_entropy_components(graph, rel_tol=1e-9):
    """Entropy-maximal transitive subshifts of an SFT.

    Returns the recurrent strongly connected pieces whose Perron root is
    within ``rel_tol`` (relatively) of the maximum.
    """
    candidates = []
    for sub in scc_subgraphs(graph):
        radius, _, _ = spectral_radius_certified(sub.adjacency)
        candidates.append((radius, sub))
    if not candidates:
        raise EmptyShiftError("no recurrent part; the shift is empty")
    best = max(r for r, _ in candidates)
    out = [g for r, g in candidates if r >= best * (1.0 - rel_tol)]
    out.sort(key=lambda g: g.vertices)
    return out


def full_shift(alphabet):
    """The full shift over an alphabet, as a pruned block graph."""
    return build_block_graph(FiniteTypeSpec(alphabet, frozenset(), label="full"))
