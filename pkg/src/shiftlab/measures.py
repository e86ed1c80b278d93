"""Measures on subshifts backed by finite data.

Three concrete representations: finite supports on periodic points (the
empirical measures nu_n), stationary Markov chains on block graphs (the
Parry measure, the unique measure of maximal entropy of an irreducible
SFT), and plain cylinder tables up to a depth.  All limits in sight are
ineffective, so every operation takes explicit depth and period cutoffs
and reports what was actually computed.

nu_n cylinder values are also available exactly (as Fractions) through
transfer matrices, with no point enumeration; that is what makes period
bounds like 30 on the golden-mean shift tractable, where the point count
is in the millions.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import math

from .errors import (AlphabetMismatchError, EmptyShiftError,
                     EmptySupportError, HorizonExceededError,
                     NotAnAutomorphismError, ReducibleGraphError,
                     ShiftlabError, UnsupportedSpecError)
from .sft import _minimal_period, _moebius_table, scc_subgraphs
from .sofic import (apply_block_code, compose_codes, determinize,
                    language_equal_exact, sofic_entropy, sofic_per_enumerate)
from .spectral import (int_matmul, int_matpow, int_trace, is_irreducible,
                       perron_root, perron_vectors,
                       strongly_connected_components)

PROB_TOL = 1e-9


@dataclass(frozen=True)
class CylinderMeasure:
    """A measure known through its values on cylinders up to ``depth``.

    The table must be total and consistent: the empty word carries 1 and
    each value splits over one-letter extensions.
    """

    alphabet: object
    depth: int
    values: dict
    label: str = ""

    def __post_init__(self):
        if self.depth < 0:
            raise UnsupportedSpecError("depth must be >= 0")
        root = self.values.get(())
        if root is None or abs(root - 1) > PROB_TOL:
            raise ShiftlabError("cylinder table must give the empty word mass 1")
        words = [()]
        for _ in range(self.depth):
            nxt = []
            for w in words:
                total = 0
                for a in self.alphabet:
                    wa = w + (a,)
                    v = self.values.get(wa)
                    if v is None:
                        raise ShiftlabError("cylinder table missing %r" % (wa,))
                    if v < -1e-12:
                        raise ShiftlabError("negative cylinder value at %r" % (wa,))
                    total += v
                    nxt.append(wa)
                if abs(self.values[w] - total) > PROB_TOL:
                    raise ShiftlabError("cylinder table is not additive at %r" % (w,))
            words = nxt


@dataclass(frozen=True)
class PeriodicSupportMeasure:
    """Finitely supported measure on periodic points.

    Each entry is (word over one minimal period, minimal period, weight);
    the word is the point's coordinates 0..q-1, so rotations of a
    primitive word are distinct entries.
    """

    alphabet: object
    cutoff: int
    entries: tuple

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for word, q, weight in self.entries:
            if len(word) != q or _minimal_period(word) != q:
                raise ShiftlabError("entry %r is not keyed by its minimal period" % (word,))
            if weight <= 0:
                raise ShiftlabError("weights must be positive")
            if word in seen:
                raise ShiftlabError("duplicate support point %r" % (word,))
            seen.add(word)
            total += weight
        if self.entries and abs(total - 1) > 1e-12:
            raise ShiftlabError("support weights must sum to 1")


@dataclass(frozen=True)
class ParryMeasure:
    """Stationary Markov chain realizing maximal entropy on a block graph.

    transition holds P_{uv} = A_{uv} r_v / (lambda r_u) aggregated over
    parallel edges; cylinder evaluation resolves individual edges through
    ``right``, so parallel loops (memory-1 graphs) are handled correctly.
    """

    graph: object
    perron: float
    stationary: dict
    transition: tuple
    right: dict


def nu_measure(points, alphabet, cutoff):
    """Uniform empirical measure on the given periodic points.

    ``points`` is a list of (word, minimal period) pairs as produced by
    the period-<= enumerations: every point of minimal period <= cutoff,
    one entry per point.
    """
    points = list(points)
    if not points:
        raise EmptySupportError("no periodic points up to period %d" % cutoff)
    weight = Fraction(1, len(points))
    entries = tuple((w, q, weight) for w, q in points)
    return PeriodicSupportMeasure(alphabet, cutoff, entries)


def eval_cylinder(measure, word):
    """Measure of the cylinder [word] at coordinate 0."""
    if isinstance(measure, PeriodicSupportMeasure):
        measure.alphabet.check_word(word)
        total = Fraction(0)
        for w, q, weight in measure.entries:
            if all(word[i] == w[i % q] for i in range(len(word))):
                total += weight
        return total
    if isinstance(measure, ParryMeasure):
        return _parry_eval(measure, word)
    if isinstance(measure, CylinderMeasure):
        measure.alphabet.check_word(word)
        if len(word) > measure.depth:
            raise HorizonExceededError(
                "cylinder depth %d exceeded by %r" % (measure.depth, word))
        return measure.values[tuple(word)]
    raise UnsupportedSpecError("cannot evaluate cylinders of %r" % (type(measure),))


def _measure_alphabet(measure):
    if isinstance(measure, ParryMeasure):
        return measure.graph.alphabet
    return measure.alphabet


def weak_star_distance(m1, m2, depth):
    """Max cylinder discrepancy over words of length <= depth."""
    alphabet = _measure_alphabet(m1)
    if alphabet != _measure_alphabet(m2):
        raise AlphabetMismatchError("measures live over different alphabets")
    best = 0
    for k in range(1, depth + 1):
        for word in itertools.product(alphabet.symbols, repeat=k):
            d = abs(eval_cylinder(m1, word) - eval_cylinder(m2, word))
            if d > best:
                best = d
    return float(best)


def cylinder_table(measure, depth, label=""):
    """Tabulate any measure into a CylinderMeasure up to ``depth``."""
    alphabet = _measure_alphabet(measure)
    values = {}
    for k in range(depth + 1):
        for word in itertools.product(alphabet.symbols, repeat=k):
            values[word] = eval_cylinder(measure, word)
    return CylinderMeasure(alphabet, depth, values, label=label)


def pushforward(measure, code):
    """Image of a periodic-support measure under a block code.

    A period-q point maps to a period-q sequence whose minimal period
    divides q; colliding images merge by adding weights.
    """
    if code.source_alphabet != measure.alphabet:
        raise AlphabetMismatchError("code is not total on the measure's alphabet")
    merged = {}
    for w, q, weight in measure.entries:
        image = code.apply_to_cycle(w)
        mp = _minimal_period(image)
        key = image[:mp]
        merged[key] = merged.get(key, Fraction(0)) + weight
    entries = tuple((w, len(w), weight)
                    for w, weight in sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return PeriodicSupportMeasure(code.target_alphabet, measure.cutoff, entries)


# ---- exact nu_n cylinders through transfer matrices ---------------------

def nu_cylinder_measure(graph, n, depth):
    """Exact cylinder table of nu_n on an SFT, without enumerating points.

    Closed q-paths whose labels start with w are counted by
    trace(B_w A^{q-|w|}), B_w the product of per-letter edge matrices;
    for q < |w| the prefix forces q-periodicity of w as a string and the
    count collapses to trace(B_{w[:q]}).  Moebius inversion over divisors
    turns period counts into minimal-period counts, and every value is a
    ratio of exact integers.
    """
    if graph.is_empty:
        raise EmptyShiftError("nu_n of the empty shift is undefined")
    if n < 1:
        raise EmptySupportError("period bound must be >= 1")
    adj = graph.adjacency
    size = len(graph.vertices)
    mob = _moebius_table(n)
    powers = [None] * (n + 1)
    powers[0] = [[int(i == j) for j in range(size)] for i in range(size)]
    for q in range(1, n + 1):
        powers[q] = int_matmul(powers[q - 1], adj)
    letter_matrix = {a: graph.label_matrix(a) for a in graph.alphabet}

    def period_count(word, q):
        if q >= len(word):
            b = powers[0]
            for a in word:
                b = int_matmul(b, letter_matrix[a])
            return int_trace(int_matmul(b, powers[q - len(word)]))
        if any(word[i] != word[i % q] for i in range(len(word))):
            return 0
        b = powers[0]
        for a in word[:q]:
            b = int_matmul(b, letter_matrix[a])
        return int_trace(b)

    def minimal_le_count(word):
        total = 0
        for q in range(1, n + 1):
            for d in range(1, q + 1):
                if q % d == 0:
                    total += mob[q // d] * period_count(word, d)
        return total

    denominator = minimal_le_count(())
    if denominator <= 0:
        raise EmptySupportError("no periodic points up to period %d" % n)
    values = {}
    for k in range(depth + 1):
        for word in itertools.product(graph.alphabet.symbols, repeat=k):
            values[word] = Fraction(minimal_le_count(word), denominator)
    return CylinderMeasure(graph.alphabet, depth, values,
                           label="nu_%d(%s)" % (n, graph.label or "sft"))


# ---- Parry chains --------------------------------------------------------

def parry_measure(graph):
    """The measure of maximal entropy of an irreducible block graph.

    Per-edge probabilities r_v/(lambda r_u) make a stationary chain with
    entropy log lambda; reducible graphs are refused since no single
    chain carries all of their maximal-entropy mass.
    """
    if graph.is_empty:
        raise EmptyShiftError("the empty shift carries no measure")
    adj = graph.adjacency
    size = len(graph.vertices)
    succ = [[j for j in range(size) if adj[i][j]] for i in range(size)]
    if not is_irreducible(size, succ):
        raise ReducibleGraphError(
            "graph is reducible; decompose with max_entropy_decomposition first")
    lam, right, left = perron_vectors(adj)
    if lam <= 0:
        raise EmptyShiftError("no cycles; the shift is empty")
    norm = sum(left[i] * right[i] for i in range(size))
    stationary = {v: left[i] * right[i] / norm for i, v in enumerate(graph.vertices)}
    transition = tuple(
        tuple(adj[i][j] * right[j] / (lam * right[i]) for j in range(size))
        for i in range(size))
    measure = ParryMeasure(graph, lam, stationary, transition,
                           {v: right[i] for i, v in enumerate(graph.vertices)})
    _validate_parry(measure)
    return measure


def _validate_parry(measure):
    graph = measure.graph
    size = len(graph.vertices)
    lam = measure.perron
    pi = [measure.stationary[v] for v in graph.vertices]
    p = measure.transition
    for i in range(size):
        if abs(sum(p[i]) - 1) > 1e-10:
            raise ShiftlabError("Parry transition matrix is not row-stochastic")
    for j in range(size):
        flow = sum(pi[i] * p[i][j] for i in range(size))
        if abs(flow - pi[j]) > 1e-10:
            raise ShiftlabError("Parry stationary vector is not stationary")
    # edge-level entropy: parallel edges split P_{uv} evenly by construction
    adj = graph.adjacency
    r = [measure.right[v] for v in graph.vertices]
    h = 0.0
    for i in range(size):
        for j in range(size):
            if adj[i][j]:
                q = r[j] / (lam * r[i])
                h -= pi[i] * adj[i][j] * q * math.log(q)
    if abs(h - math.log(lam)) > 1e-8:
        raise ShiftlabError("Parry chain entropy does not match log(Perron root)")


def _parry_eval(measure, word):
    graph = measure.graph
    graph.alphabet.check_word(word)
    word = tuple(word)
    f = graph.memory
    if len(word) < f - 1:
        return sum(p for u, p in measure.stationary.items()
                   if u[:len(word)] == word)
    v = word[:f - 1]
    prob = measure.stationary.get(v)
    if prob is None:
        return 0.0
    for a in word[f - 1:]:
        t = graph.edges.get(v, {}).get(a)
        if t is None:
            return 0.0
        prob *= measure.right[t] / (measure.perron * measure.right[v])
        v = t
    return prob


# ---- maximal-entropy decomposition of sofic images -----------------------

@dataclass(frozen=True)
class MaxEntropyComponent:
    presentation: object
    measure: CylinderMeasure
    entropy: float


def _labeled_mme_table(g, depth, label):
    """Cylinder table of the maximal-entropy measure of a transitive
    sofic shift, via the Parry chain on the top component of its
    deterministic presentation.

    Right-resolving label maps preserve entropy, so the chain's
    pushforward is maximal; uniqueness for transitive sofic shifts makes
    the choice of top component immaterial.
    """
    det = determinize(g)
    if det.is_empty:
        raise EmptyShiftError("empty presentation")
    adj = det.adjacency
    size = len(det.states)
    succ = [[j for j in range(size) if adj[i][j]] for i in range(size)]
    best = None
    for comp in strongly_connected_components(size, succ):
        if len(comp) == 1 and adj[comp[0]][comp[0]] == 0:
            continue
        sub = [[adj[i][j] for j in comp] for i in comp]
        radius = float(sub[0][0]) if len(comp) == 1 else perron_root(sub)[0]
        if best is None or radius > best[0]:
            best = (radius, comp, sub)
    if best is None:
        raise EmptyShiftError("no recurrent part in the presentation")
    _, comp, sub = best
    lam, right, left = perron_vectors(sub)
    norm = sum(left[i] * right[i] for i in range(len(comp)))
    pi = [left[i] * right[i] / norm for i in range(len(comp))]
    states = [det.states[i] for i in comp]
    position = {s: i for i, s in enumerate(states)}

    def value(word):
        total = 0.0
        for s in states:
            prob = pi[position[s]]
            cur = s
            alive = True
            for a in word:
                targets = [t for t in det.successors(cur, a) if t in position]
                if not targets:
                    alive = False
                    break
                nxt = targets[0]
                prob *= right[position[nxt]] / (lam * right[position[cur]])
                cur = nxt
            if alive:
                total += prob
        return total

    values = {}
    for k in range(depth + 1):
        for word in itertools.product(g.alphabet.symbols, repeat=k):
            values[word] = value(word)
    return CylinderMeasure(g.alphabet, depth, values, label=label)


def max_entropy_decomposition(graph, code, depth=6, tol=1e-9):
    """Entropy-maximal transitive pieces of the image shift, with their
    maximal-entropy measures.

    Candidates are the code images of every recurrent strongly connected
    piece of the source graph; keeping those whose image entropy ties the
    maximum is what handles codes that collapse a high-entropy piece onto
    a small shift.  Images presenting the same shift are merged.
    """
    subgraphs = scc_subgraphs(graph)
    if not subgraphs:
        raise EmptyShiftError("no recurrent part; nothing to decompose")
    candidates = []
    for sub in subgraphs:
        image = apply_block_code(sub, code)
        if image.is_empty:
            continue
        candidates.append((image, sofic_entropy(image)))
    if not candidates:
        raise EmptyShiftError("the image shift is empty")
    top = max(h for _, h in candidates)
    components = []
    for image, h in candidates:
        if h < top - tol:
            continue
        if any(language_equal_exact(image, c.presentation) for c in components):
            continue
        table = _labeled_mme_table(image, depth,
                                   label="mme-component-%d" % len(components))
        components.append(MaxEntropyComponent(image, table, h))
    return components


@dataclass(frozen=True)
class MuAverageResult:
    measure: CylinderMeasure
    weights: tuple
    cutoff: int


def mu_y_average(components, cutoff, depth):
    """Periodic-point-weighted average of component measures.

    Component i receives c_i = |per_<=cutoff(Y_i)| / |union of all
    per_<=cutoff(Y_j)|, points counted individually and keyed by their
    minimal word; conjugate components thus weigh equally.
    """
    if not components:
        raise EmptySupportError("no components to average")
    point_sets = []
    for comp in components:
        pts = set()
        for p in range(1, cutoff + 1):
            for w, q in sofic_per_enumerate(comp.presentation, p).entries:
                if q == p:
                    pts.add(w)
        if not pts:
            raise EmptySupportError(
                "a component has no periodic points up to %d; raise the cutoff" % cutoff)
        point_sets.append(pts)
    union = set().union(*point_sets)
    weights = tuple(Fraction(len(s), len(union)) for s in point_sets)
    alphabet = components[0].measure.alphabet
    for comp in components:
        if comp.measure.alphabet != alphabet:
            raise AlphabetMismatchError("components over different alphabets")
        if comp.measure.depth < depth:
            raise HorizonExceededError(
                "component tables stop at depth %d" % comp.measure.depth)
    values = {}
    for k in range(depth + 1):
        for word in itertools.product(alphabet.symbols, repeat=k):
            values[word] = float(sum(
                wt * comp.measure.values[word]
                for wt, comp in zip(weights, components)))
    measure = CylinderMeasure(alphabet, depth, values, label="mu_Y")
    return MuAverageResult(measure, weights, cutoff)


# ---- automorphism invariance ---------------------------------------------

@dataclass(frozen=True)
class AutomorphismReport:
    period_bound: int
    depth: int
    tol: float
    distance: float
    within_tol: bool
    identity_checked_to: int


def automorphism_invariance_check(oracle, points, cutoff, code, code_inv,
                                  depth, tol):
    """Does the code preserve the periodic-point measure nu_n?

    First certifies that code and code_inv invert each other on all
    words up to length 4R+1 (R the composed range); then compares nu_n
    against its pushforward in weak* distance at the given depth.
    """
    if code.source_alphabet != oracle.alphabet:
        raise AlphabetMismatchError("code does not act on this shift's alphabet")
    r = code.range_ + code_inv.range_
    span = 4 * r + 1
    oracle.check_horizon(span)
    for outer, inner in ((code, code_inv), (code_inv, code)):
        composed = compose_codes(outer, inner)
        for length in range(2 * r + 1, span + 1):
            for w in oracle.words_of_length(length):
                if composed.apply_to_word(w) != w[r:length - r]:
                    raise NotAnAutomorphismError(
                        "composition moves %r; not an inverse pair" % (w,))
    nu = nu_measure(points, oracle.alphabet, cutoff)
    pushed = pushforward(nu, code)
    distance = weak_star_distance(nu, pushed, depth)
    return AutomorphismReport(cutoff, depth, tol, distance,
                              distance <= tol, span)
