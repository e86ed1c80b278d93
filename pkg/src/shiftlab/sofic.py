"""Sofic shifts: labeled graph presentations, block-code images,
determinization, and the finite-type decision.

A sofic shift is the set of bi-infinite label sequences of paths in a
finite labeled graph, equivalently the image of an SFT under a sliding
block code.  Everything here works with pruned presentations (every
state on a bi-infinite path), so a word is in the shift's language
exactly when it labels some finite path.

The finite-type decision uses the m-step transitivity criterion: the
shift equals its memory-m approximation iff for every word w of length m
and every left context u, the follower language after uw equals the
follower language after w.  Both sides live in the lattice of survivor
sets of the determinized presentation, so the test is a finite
reachability computation, with no language enumeration anywhere.
"""

from dataclasses import dataclass
from functools import cached_property
import math

from .errors import (AlphabetMismatchError, EnumerationCapError,
                     UndefinedEntropyError)
from .language import EMPTY_WORD, Alphabet, LanguageOracle
from .sft import DEFAULT_CAP, PeriodicPointSet, _minimal_period, sft_language
from .spectral import spectral_radius_certified
from .forbidden import window_density_report


@dataclass(frozen=True)
class BlockCode:
    """Sliding block code with symmetric range R.

    The rule maps every (2R+1)-word over the source alphabet to one
    target symbol; the code sends x to y with y_t determined by the
    window x_{t-R} .. x_{t+R}.
    """

    source_alphabet: Alphabet
    target_alphabet: Alphabet
    range_: int
    rule: dict

    def __post_init__(self):
        if self.range_ < 0:
            raise AlphabetMismatchError("code range must be >= 0")
        width = 2 * self.range_ + 1
        expected = len(self.source_alphabet) ** width
        if len(self.rule) != expected:
            raise AlphabetMismatchError(
                "rule must be total: expected %d windows, got %d" % (expected, len(self.rule)))
        for window, out in self.rule.items():
            if len(window) != width:
                raise AlphabetMismatchError("rule window %r has wrong width" % (window,))
            self.source_alphabet.check_word(window)
            if out not in self.target_alphabet:
                raise AlphabetMismatchError("rule output %r outside target alphabet" % (out,))

    def apply_to_word(self, word):
        """Image of a finite word; the output is 2R shorter."""
        r = self.range_
        if len(word) < 2 * r + 1:
            return EMPTY_WORD
        return tuple(self.rule[word[i:i + 2 * r + 1]] for i in range(len(word) - 2 * r))

    def apply_to_cycle(self, word):
        """Image of the periodic point w^inf, as a word of the same length.

        Output position t reads the cyclic window centered at t.
        """
        p = len(word)
        r = self.range_
        out = []
        for t in range(p):
            window = tuple(word[(t - r + i) % p] for i in range(2 * r + 1))
            out.append(self.rule[window])
        return tuple(out)


def identity_code(alphabet):
    return BlockCode(alphabet, alphabet, 0, {(a,): a for a in alphabet})


def compose_codes(outer, inner):
    """The code computing outer(inner(x)); range adds."""
    if inner.target_alphabet != outer.source_alphabet:
        raise AlphabetMismatchError("inner code output alphabet must feed the outer code")
    r = outer.range_ + inner.range_
    width = 2 * r + 1
    rule = {}

    def windows(k):
        if k == 0:
            yield EMPTY_WORD
            return
        for w in windows(k - 1):
            for a in inner.source_alphabet:
                yield w + (a,)

    for w in windows(width):
        mid = inner.apply_to_word(w)
        rule[w] = outer.rule[mid]
    return BlockCode(inner.source_alphabet, outer.target_alphabet, r, rule)


@dataclass(frozen=True)
class LabeledGraph:
    """Finite labeled graph presenting a sofic shift.

    ``transitions[s][a]`` is the tuple of successors of state s under
    letter a; absent entries mean no edge.  The presentation is
    deterministic when every (state, letter) has at most one successor.
    """

    alphabet: Alphabet
    states: tuple
    transitions: dict
    label: str = ""

    @property
    def is_empty(self):
        return not self.states

    @cached_property
    def state_index(self):
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def deterministic(self):
        return all(len(ts) <= 1
                   for row in self.transitions.values()
                   for ts in row.values())

    def successors(self, state, letter):
        return self.transitions.get(state, {}).get(letter, ())

    @cached_property
    def adjacency(self):
        n = len(self.states)
        a = [[0] * n for _ in range(n)]
        idx = self.state_index
        for s, row in self.transitions.items():
            for ts in row.values():
                for t in ts:
                    a[idx[s]][idx[t]] += 1
        return a

    def edge_list(self):
        out = []
        for s in self.states:
            for a in self.alphabet:
                for t in self.successors(s, a):
                    out.append((s, a, t))
        return out


def make_labeled_graph(alphabet, states, edges, label=""):
    """Build a LabeledGraph from an edge list of (source, letter, target)."""
    states = tuple(states)
    seen = set(states)
    trans = {}
    for s, a, t in edges:
        if s not in seen or t not in seen:
            raise AlphabetMismatchError("edge endpoints must be declared states")
        if a not in alphabet:
            raise AlphabetMismatchError("edge label %r outside the alphabet" % (a,))
        trans.setdefault(s, {}).setdefault(a, set()).add(t)
    index = {s: i for i, s in enumerate(states)}
    frozen = {
        s: {a: tuple(sorted(ts, key=index.__getitem__)) for a, ts in row.items()}
        for s, row in trans.items()
    }
    return LabeledGraph(alphabet, states, frozen, label=label)


def prune_labeled(g):
    """Essential part: keep states with both an in- and an out-edge."""
    alive = set(g.states)
    while True:
        has_out = {s for s in alive
                   if any(t in alive for ts in g.transitions.get(s, {}).values() for t in ts)}
        has_in = set()
        for s in has_out:
            for ts in g.transitions.get(s, {}).values():
                for t in ts:
                    if t in alive:
                        has_in.add(t)
        keep = has_out & has_in
        if keep == alive:
            break
        alive = keep
    states = tuple(s for s in g.states if s in alive)
    index = {s: i for i, s in enumerate(states)}
    trans = {}
    for s in states:
        row = {}
        for a, ts in g.transitions.get(s, {}).items():
            kept = tuple(sorted((t for t in ts if t in alive), key=index.__getitem__))
            if kept:
                row[a] = kept
        if row:
            trans[s] = row
    return LabeledGraph(g.alphabet, states, trans, label=g.label)


def block_graph_as_labeled(graph):
    """View a block presentation as a labeled graph (it is deterministic)."""
    edges = [(u, a, v) for u, a, v in graph.edge_list()]
    return make_labeled_graph(graph.alphabet, graph.vertices, edges, label=graph.label)


def finite_type_presentation(spec):
    """Right-resolving presentation of an SFT from its forbidden words.

    States are the proper prefixes of the forbidden words (with the
    usual longest-suffix transitions), so the size is linear in the
    total forbidden length where the block presentation is exponential
    in the memory.  Pruned, so the presented language is the shift's.
    """
    words = sorted(tuple(w) for w in spec.forbidden)
    for w in words:
        spec.alphabet.check_word(w)
        if not w:
            return LabeledGraph(spec.alphabet, (), {}, label=spec.label)
    wset = set(words)

    def clean(u):
        return not any(u[i:j] in wset
                       for i in range(len(u)) for j in range(i + 1, len(u) + 1))

    states = {()}
    for w in words:
        for k in range(1, len(w)):
            if clean(w[:k]):
                states.add(w[:k])
    order = sorted(states)
    sset = set(order)
    edges = []
    for u in order:
        for a in spec.alphabet:
            v = u + (a,)
            if any(v[i:] in wset for i in range(len(v))):
                continue
            for i in range(len(v) + 1):
                if v[i:] in sset:
                    edges.append((u, a, v[i:]))
                    break
    g = make_labeled_graph(spec.alphabet, tuple(order), edges,
                           label=spec.label or "sft")
    return prune_labeled(g)


def apply_block_code(graph, code):
    """Image of an SFT under a block code, as a pruned labeled graph.

    Built on the (2R+f-1)-block presentation: vertices are allowed
    (2R+f-1)-words, an edge extends the window by one letter, and its
    label is the code output on the first (2R+1) letters of the extended
    window.  Bi-infinite label sequences are exactly the code images of
    the points of the source shift.
    """
    if graph.alphabet != code.source_alphabet:
        raise AlphabetMismatchError("code source alphabet must match the shift's")
    if graph.is_empty:
        return LabeledGraph(code.target_alphabet, (), {}, label="image")
    r = code.range_
    k = 2 * r + graph.memory - 1
    vertices = sft_language(graph, k)
    allowed_next = set(sft_language(graph, k + 1))
    edges = []
    for u in vertices:
        for a in graph.alphabet:
            merged = u + (a,)
            if merged in allowed_next:
                v = merged[1:]
                edges.append((u, code.rule[merged[:2 * r + 1]], v))
    g = make_labeled_graph(code.target_alphabet, vertices, edges,
                           label="image(%s)" % (graph.label or "sft"))
    return prune_labeled(g)


def _subset_step(g, states, letter):
    out = set()
    for s in states:
        out.update(g.successors(s, letter))
    return frozenset(out)


def sofic_oracle(g, horizon, label=None):
    """Language oracle of the presented shift (survivor-set scan).

    Prunes first: a word on a path into a dead end occurs in no point
    of the shift, so unpruned scanning would overcount.
    """
    if label is None:
        label = g.label or "sofic"
    g = prune_labeled(g)
    full = frozenset(g.states)

    def membership(word):
        states = full
        for a in word:
            states = _subset_step(g, states, a)
            if not states:
                return False
        return bool(states)

    return LanguageOracle(g.alphabet, membership, horizon, label)


def determinize(g):
    """Deterministic presentation of the same sofic shift.

    Subset construction seeded with the full state set, then pruned.
    States are renumbered 0..k-1 in discovery order, so the output is
    canonical for a given input.
    """
    g = prune_labeled(g)
    if g.is_empty:
        return LabeledGraph(g.alphabet, (), {}, label=g.label)
    start = frozenset(g.states)
    discovered = {start: 0}
    order = [start]
    edges = []
    queue = [start]
    while queue:
        cur = queue.pop(0)
        for a in g.alphabet:
            nxt = _subset_step(g, cur, a)
            if not nxt:
                continue
            if nxt not in discovered:
                discovered[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            edges.append((discovered[cur], a, discovered[nxt]))
    det = make_labeled_graph(g.alphabet, tuple(range(len(order))), edges,
                             label="det(%s)" % (g.label or "sofic"))
    det = prune_labeled(det)
    # renumber compactly after pruning
    relabel = {s: i for i, s in enumerate(det.states)}
    edges = [(relabel[s], a, relabel[t]) for s, a, t in det.edge_list()]
    return make_labeled_graph(g.alphabet, tuple(range(len(det.states))), edges,
                              label=det.label)


def _union_symbols(g1, g2):
    seen = list(g1.alphabet.symbols)
    for s in g2.alphabet.symbols:
        if s not in seen:
            seen.append(s)
    return tuple(seen)


def language_equal_up_to(g1, g2, n):
    """Do the two presented shifts share all words of length <= n?

    Product reachability over survivor-set pairs; a pair with exactly one
    empty side at depth d <= n witnesses a length-d word in one language
    only.  When the pair space is exhausted without a witness the
    languages agree at every length, so large n costs nothing extra.
    """
    g1 = prune_labeled(g1)
    g2 = prune_labeled(g2)
    symbols = _union_symbols(g1, g2)
    start = (frozenset(g1.states), frozenset(g2.states))
    if not start[0] or not start[1]:
        return (not start[0]) == (not start[1])
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier and depth < n:
        depth += 1
        nxt = []
        for s1, s2 in frontier:
            for a in symbols:
                t1 = _subset_step(g1, s1, a) if a in g1.alphabet else frozenset()
                t2 = _subset_step(g2, s2, a) if a in g2.alphabet else frozenset()
                if not t1 and not t2:
                    continue
                if not t1 or not t2:
                    return False
                pair = (t1, t2)
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
        frontier = nxt
    return True


def language_equal_exact(g1, g2):
    """Exact equality of the two presented shifts (all lengths)."""
    total = (2 ** 12)
    # the pair space is finite; a depth beyond its size forces closure
    bound = 2 ** (len(prune_labeled(g1).states) + len(prune_labeled(g2).states)) + 1
    return language_equal_up_to(g1, g2, max(total, bound))


def sofic_entropy(g):
    """Topological entropy via a deterministic presentation.

    A right-resolving presentation's label map is uniformly finite-to-
    one, so the entropy is the log Perron root of its adjacency matrix.
    """
    d = determinize(g)
    if d.is_empty:
        raise UndefinedEntropyError("entropy of the empty shift is undefined")
    radius, _, _ = spectral_radius_certified(d.adjacency)
    return math.log(radius)


def sofic_per_enumerate(g, p, cap=DEFAULT_CAP):
    """Points of period p of a sofic shift, by the pumping criterion.

    w^inf lies in the shift iff w^(V+1) labels a path, V the state count
    of the (determinized) presentation: a path spelling V+1 repetitions
    visits two equal checkpoints, closing a loop that spells a power of
    w, and (w^k)^inf = w^inf.
    """
    d = determinize(g)
    if d.is_empty:
        return PeriodicPointSet(p, ())
    v = len(d.states)
    oracle = sofic_oracle(d, p)
    candidates = oracle.words_of_length(p)
    if len(candidates) > cap:
        raise EnumerationCapError("too many length-%d candidates (%d)" % (p, len(candidates)))
    full = frozenset(d.states)
    out = []
    for w in candidates:
        states = full
        ok = True
        for _ in range(v + 1):
            for a in w:
                states = _subset_step(d, states, a)
                if not states:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append((w, _minimal_period(w)))
    return PeriodicPointSet(p, tuple(out))


@dataclass(frozen=True)
class SoficClassTag:
    """Outcome of the finite-type decision, with the bound that was used."""

    is_sft: bool
    decision_bound: int
    det_states: int


def _follower_contains(g, big, small, memo):
    """Is every word readable from ``big`` readable from ``small``?

    BFS over survivor pairs; a reachable (nonempty, empty) pair is a
    counterexample word.
    """
    key = (big, small)
    hit = memo.get(key)
    if hit is not None:
        return hit
    seen = {key}
    frontier = [key]
    ok = True
    while frontier and ok:
        nxt = []
        for b, s in frontier:
            for a in g.alphabet:
                tb = _subset_step(g, b, a)
                if not tb:
                    continue
                ts = _subset_step(g, s, a)
                if not ts:
                    ok = False
                    break
                pair = (tb, ts)
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
            if not ok:
                break
        frontier = nxt
    memo[key] = ok
    return ok


def is_sft(g, memory_bound=None):
    """Decide whether the presented sofic shift is a shift of finite type.

    The shift is an SFT iff it equals its memory-m approximation for
    m = V^2 + 2, V the determinized state count (pass ``memory_bound``
    to raise m).  Equality with the approximation is the m-step
    transitivity property: for every length-m word w and left context u,
    the follower language after uw equals the follower language after w.
    Both followers are unions over survivor sets, so the check walks the
    finite pair graph (delta(S, w), delta(Q, w)) for m steps (with cycle
    detection) and compares followers at the end.
    """
    d = determinize(g)
    if d.is_empty:
        return SoficClassTag(True, 0, 0)
    v = len(d.states)
    m = memory_bound if memory_bound is not None else v * v + 2
    full = frozenset(d.states)
    # reachable survivor sets
    subsets = {full}
    queue = [full]
    while queue:
        cur = queue.pop()
        for a in d.alphabet:
            nxt = _subset_step(d, cur, a)
            if nxt and nxt not in subsets:
                subsets.add(nxt)
                queue.append(nxt)
    pairs = frozenset((s, full) for s in subsets)
    seen_levels = {pairs: 0}
    trajectory = [pairs]
    target = None
    for step in range(1, m + 1):
        nxt = set()
        for s1, s2 in trajectory[-1]:
            for a in d.alphabet:
                t1 = _subset_step(d, s1, a)
                if not t1:
                    continue
                nxt.add((t1, _subset_step(d, s2, a)))
        level = frozenset(nxt)
        if level in seen_levels:
            first = seen_levels[level]
            cycle = step - first
            target = trajectory[first + (m - first) % cycle]
            break
        seen_levels[level] = step
        trajectory.append(level)
    if target is None:
        target = trajectory[m]
    memo = {}
    verdict = True
    for s1, s2 in sorted(target, key=lambda p: (sorted(p[0]), sorted(p[1]))):
        if s1 == s2:
            continue
        if not _follower_contains(d, s2, s1, memo):
            verdict = False
            break
    return SoficClassTag(verdict, m, v)


def mfw_length_set(g, horizon):
    """Lengths <= horizon carrying a minimal forbidden word.

    Pair-automaton scan: walk (delta(Q, a w), delta(Q, w)) level by
    level; a letter b with w b readable but a w b not readable witnesses
    a minimal forbidden word a w b.  Cost is polynomial in the survivor
    pair space and linear in the horizon, with no word enumeration.
    """
    d = determinize(g)
    lengths = set()
    if d.is_empty:
        if horizon >= 1:
            lengths.add(1)
        return tuple(sorted(lengths))
    full = frozenset(d.states)
    for a in d.alphabet:
        if not _subset_step(d, full, a):
            lengths.add(1)
    level = set()
    for a in d.alphabet:
        x = _subset_step(d, full, a)
        if x:
            level.add((x, full))
    for n in range(2, horizon + 1):
        # a pair (X, Y) = (delta(Q, a w), delta(Q, w)) with |a w| = n-1
        for x, y in level:
            for b in d.alphabet:
                if _subset_step(d, y, b) and not _subset_step(d, x, b):
                    lengths.add(n)
                    break
            else:
                continue
            break
        nxt = set()
        for x, y in level:
            for b in d.alphabet:
                tx = _subset_step(d, x, b)
                if tx:
                    nxt.add((tx, _subset_step(d, y, b)))
        level = nxt
        if not level:
            break
    return tuple(sorted(lengths))


@dataclass(frozen=True)
class Theorem1Report:
    """Finite-horizon evidence for the stability/finite-type dichotomy."""

    horizon: int
    tag: SoficClassTag
    mfw_lengths: tuple
    density_lower_bound: float
    window_densities: dict


def theorem1_diagnostic(g, horizon):
    """Report finite-type status against minimal-forbidden-length density.

    A sofic shift with a stable language is finite type, so a strictly
    sofic presentation should show relatively dense minimal-forbidden
    lengths; the report carries the observed window densities as
    evidence at this horizon.
    """
    tag = is_sft(g)
    lengths = mfw_length_set(g, horizon)
    _, _, densities = window_density_report(lengths, horizon)
    bound = max(densities.values(), default=0.0)
    return Theorem1Report(horizon, tag, lengths, bound, densities)
