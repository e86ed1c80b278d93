"""Substitution shifts, complexity diagnostics, and induced-map recodings.

The substitution language is the set of subwords of iterates of the seed
letter (the one-sided closure the worked examples use), not the minimal
two-sided substitutive system; the two differ for non-primitive rules
and the examples here are deliberately non-primitive.

Induced and sped-up systems are recoded over a superalphabet of
(2N+1)-windows.  Membership of a superword is decided by scanning the
base language for a realization: windows placed at the visit times the
return rule prescribes, with a no-earlier-visit constraint when the rule
is first-return.  This is pointwise and brute force on purpose; it stays
inside what a finite horizon certifies.
"""

from dataclasses import dataclass

from .errors import (HorizonExceededError, InfeasibleSetError,
                     NonGrowingSubstitutionError, ReturnTimeCapError,
                     UnsupportedSpecError)
from .forbidden import ls_report, minimal_forbidden
from .language import (Alphabet, LanguageOracle, format_word, special_words,
                       subwords)


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word rules iterated from a seed letter.

    Construction verifies the iterates grow without bound: letters that
    recur (reachable from a reachable cycle of the occurrence graph)
    must include one with an image of length >= 2, otherwise every
    iterate beyond the transient is a bounded word forever.
    """

    rules: dict
    seed: str

    def __post_init__(self):
        letters = tuple(sorted(self.rules))
        if not letters:
            raise UnsupportedSpecError("substitution needs at least one letter")
        if self.seed not in self.rules:
            raise UnsupportedSpecError("seed %r has no rule" % (self.seed,))
        for a, image in self.rules.items():
            if not image:
                raise NonGrowingSubstitutionError("empty image for %r" % (a,))
            for b in image:
                if b not in self.rules:
                    raise UnsupportedSpecError(
                        "image letter %r of %r has no rule" % (b, a))
        if not self._grows():
            raise NonGrowingSubstitutionError(
                "iterates of %r stay bounded" % (self.seed,))

    @property
    def alphabet(self):
        return Alphabet(tuple(sorted(self.rules)))

    def apply(self, word):
        out = []
        for a in word:
            out.extend(self.rules[a])
        return tuple(out)

    def _grows(self):
        # reachable letters from the seed
        reach = {self.seed}
        frontier = [self.seed]
        while frontier:
            a = frontier.pop()
            for b in self.rules[a]:
                if b not in reach:
                    reach.add(b)
                    frontier.append(b)
        # letters recurring at arbitrarily late iteration depth: those
        # reachable from a cycle of the occurrence graph inside reach
        on_cycle = set()
        for start in reach:
            seen = set()
            frontier = list(self.rules[start])
            while frontier:
                a = frontier.pop()
                if a == start:
                    on_cycle.add(start)
                    break
                if a in seen:
                    continue
                seen.add(a)
                frontier.extend(self.rules[a])
        recurring = set()
        frontier = list(on_cycle)
        while frontier:
            a = frontier.pop()
            if a in recurring:
                continue
            recurring.add(a)
            frontier.extend(self.rules[a])
        return any(len(self.rules[a]) >= 2 for a in recurring)


def subst_language(tau, n):
    """Length-n subwords of the iterates of the seed, in lex order.

    Iterates until the set is unchanged over two consecutive steps; the
    collected union is monotone and finite, so this terminates.
    """
    if n < 0:
        raise UnsupportedSpecError("length must be >= 0")
    if n == 0:
        return [()]
    current = (tau.seed,)
    collected = set(subwords(current, n))
    stable_steps = 0
    while stable_steps < 2:
        current = tau.apply(current)
        fresh = set(subwords(current, n))
        if fresh <= collected:
            if len(current) >= n:
                stable_steps += 1
        else:
            collected |= fresh
            stable_steps = 0
    key = tau.alphabet.key
    return sorted(collected, key=key)


def subst_oracle(tau, horizon, label=None):
    """Language oracle of the substitution system, exact to the horizon."""
    if label is None:
        label = "subst(%s)" % ",".join(
            "%s>%s" % (a, format_word(w)) for a, w in sorted(tau.rules.items()))
    cache = {}

    def words_at(n):
        if n not in cache:
            cache[n] = frozenset(subst_language(tau, n))
        return cache[n]

    def membership(word):
        return word in words_at(len(word))

    return LanguageOracle(tau.alphabet, membership, horizon, label)


@dataclass(frozen=True)
class ComplexityProfile:
    """First differences of the complexity function with a tail summary."""

    differences: tuple
    liminf_evidence: int
    tail_window: int


def cassaigne_profile(oracle, n_max):
    """p(n+1) - p(n) for n = 0..n_max-1.

    A bounded profile is the linear-complexity signature; the summary
    reports the minimum over the last third as liminf evidence.
    """
    oracle.check_horizon(n_max)
    counts = [len(oracle.words_of_length(n)) for n in range(n_max + 1)]
    diffs = tuple(counts[n + 1] - counts[n] for n in range(n_max))
    tail = max(1, n_max // 3)
    evidence = min(diffs[-tail:]) if diffs else 0
    return ComplexityProfile(diffs, evidence, tail)


def bispecial_lengths(oracle, n_max):
    """Lengths up to n_max carrying at least one bispecial word."""
    oracle.check_horizon(n_max + 1)
    out = []
    for n in range(n_max + 1):
        if special_words(oracle, n).bispecial:
            out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class AperiodicityReport:
    word_length_bound: int
    horizon: int
    power: object  # int or None


def aperiodicity_check(oracle, k, horizon):
    """Smallest p with u^p forbidden for every allowed word of length <= k.

    Shifts with a periodic point of small period have no such p (the
    point's word powers stay allowed); the report then carries None.
    """
    if k < 1:
        raise UnsupportedSpecError("word length bound must be >= 1")
    oracle.check_horizon(horizon)
    candidates = []
    for length in range(1, k + 1):
        candidates.extend(oracle.words_of_length(length))
    if not candidates:
        return AperiodicityReport(k, horizon, None)
    for p in range(1, horizon // k + 1):
        if all(not oracle.contains(u * p) for u in candidates
               if len(u) * p <= horizon):
            return AperiodicityReport(k, horizon, p)
    return AperiodicityReport(k, horizon, None)


# ---- induced maps and speedups -------------------------------------------

@dataclass(frozen=True)
class InducedSpec:
    """Recoding data for an induced or sped-up system.

    ``base`` is a language oracle of the base shift.  The set U is given
    by the (2N+1)-windows it allows (None means every allowed window).
    ``return_rule`` is a constant, a per-window map, or "first-return";
    either way the return time must be constant on (2N+1)-cylinders,
    which first-return resolution verifies by extending windows by
    ``cap`` letters.
    """

    base: LanguageOracle
    window: int
    clopen_set: object = None
    return_rule: object = 1
    cap: int = 32

    def __post_init__(self):
        if self.window < 0:
            raise UnsupportedSpecError("window radius must be >= 0")
        if isinstance(self.return_rule, int) and self.return_rule < 1:
            raise UnsupportedSpecError("return times must be >= 1")


def _superletters(spec):
    """Allowed (2N+1)-windows forming U, in lex order."""
    width = 2 * spec.window + 1
    spec.base.check_horizon(width)
    allowed = spec.base.words_of_length(width)
    if spec.clopen_set is None:
        chosen = list(allowed)
    else:
        wanted = set()
        for w in spec.clopen_set:
            w = tuple(w)
            if len(w) != width:
                raise UnsupportedSpecError(
                    "clopen set word %r is not a %d-window" % (w, width))
            spec.base.alphabet.check_word(w)
            wanted.add(w)
        chosen = [w for w in allowed if w in wanted]
    if not chosen:
        raise InfeasibleSetError("U misses the base language entirely")
    return sorted(chosen, key=spec.base.alphabet.key)


def _resolve_first_return(spec, letters):
    """Return time of each U-window, by exhausting extensions.

    Every continuation of the window by ``cap`` letters must hit U again
    at the same offset; differing offsets mean the return time is not
    constant on cylinders, and no hit within the cap is reported as such.
    """
    width = 2 * spec.window + 1
    uset = set(letters)
    spec.base.check_horizon(width + spec.cap)
    rho = {}
    for w in letters:
        agreed = None
        stack = [w]
        while stack:
            word = stack.pop()
            hit = None
            for t in range(1, len(word) - width + 1):
                if word[t:t + width] in uset:
                    hit = t
                    break
            if hit is not None:
                if agreed is None:
                    agreed = hit
                elif agreed != hit:
                    raise UnsupportedSpecError(
                        "first-return time is not constant on the cylinder %r"
                        % (format_word(w),))
                continue
            if len(word) - width >= spec.cap:
                raise ReturnTimeCapError(
                    "no return within %d steps after %r" % (spec.cap, format_word(w)))
            for a in spec.base.alphabet:
                ext = word + (a,)
                if spec.base.contains(ext):
                    stack.append(ext)
        if agreed is None:
            # w has no allowed continuation at all; dead window
            raise ReturnTimeCapError(
                "window %r admits no continuation" % (format_word(w),))
        rho[w] = agreed
    return rho


def induced_data(spec):
    """(superletter windows, return-time map) for the recoding."""
    letters = _superletters(spec)
    if spec.return_rule == "first-return":
        rho = _resolve_first_return(spec, letters)
    elif isinstance(spec.return_rule, dict):
        rho = {}
        for w in letters:
            value = spec.return_rule.get(tuple(w))
            if value is None:
                raise UnsupportedSpecError(
                    "return rule missing window %r" % (format_word(w),))
            if value < 1:
                raise UnsupportedSpecError("return times must be >= 1")
            rho[w] = value
    else:
        rho = {w: spec.return_rule for w in letters}
    return letters, rho


def induce_recode(spec, n, horizon=None):
    """Language oracle of the induced (sped-up) system, reliable to n.

    Superletters are the U-windows; a superword is allowed iff some base
    word realizes it, windows landing at the partial sums of the return
    times, never hitting U in between when the rule is first-return.
    """
    letters, rho = induced_data(spec)
    width = 2 * spec.window + 1
    max_rho = max(rho.values())
    needed = (n + 2) * max_rho + width
    if horizon is None:
        horizon = needed
    if horizon < needed or spec.base.max_reliable_length < needed:
        raise HorizonExceededError(
            "induced length %d needs base horizon %d" % (n, needed))
    uset = set(letters)
    first_return = spec.return_rule == "first-return"
    symbol_for = {w: format_word(w) for w in letters}
    word_for = {format_word(w): w for w in letters}
    alphabet = Alphabet(tuple(symbol_for[w] for w in letters))

    def membership(superword):
        windows = [word_for[s] for s in superword]
        m = len(windows)
        if m == 0:
            return True
        centers = [spec.window]
        for w in windows[:-1]:
            centers.append(centers[-1] + rho[w])
        length = centers[-1] + spec.window + 1
        window_at = dict(zip(centers, windows))
        blocked = set()
        if first_return:
            for i in range(m - 1):
                blocked.update(range(centers[i] + 1, centers[i + 1]))

        # Depth-first search over base words, pruning each extension the
        # moment a window (or a blocked in-between position) is decided.
        def extend(prefix):
            if len(prefix) == length:
                return True
            for a in spec.base.alphabet:
                cand = prefix + (a,)
                if not spec.base.contains(cand):
                    continue
                c = len(cand) - 1 - spec.window
                if c >= spec.window:
                    piece = cand[c - spec.window:]
                    want = window_at.get(c)
                    if want is not None and piece != want:
                        continue
                    if want is None and c in blocked and piece in uset:
                        continue
                if extend(cand):
                    return True
            return False

        return extend(())

    return LanguageOracle(alphabet, membership, n,
                          "induced(%s)" % (spec.base.label,))


@dataclass(frozen=True)
class SpeedupReport:
    """Side-by-side stability evidence for a base shift and its speedup.

    Each correlation row checks the return-time bound on consecutive
    induced minimal-forbidden lengths: some pair of base lengths in the
    matching windows may differ by at most (dl + 2) * max rho.  The
    report does not verify that the return rule defines a homeomorphism;
    that hypothesis is taken on faith and recorded here.
    """

    base_ls: object
    induced_ls: object
    rows: tuple
    min_rho: int
    max_rho: int
    note: str = "return map assumed to induce a homeomorphism; not verified"


def speedup_gap_compare(base_oracle, spec, horizon):
    """Compare minimal-forbidden-length patterns across a speedup."""
    base_table = minimal_forbidden(base_oracle, horizon)
    base_report = ls_report(base_table)
    letters, rho = induced_data(spec)
    width = 2 * spec.window + 1
    max_rho = max(rho.values())
    min_rho = min(rho.values())
    n_ind = (base_oracle.max_reliable_length - width) // max_rho - 2
    if n_ind < 2:
        raise HorizonExceededError("base horizon too small for any induced words")
    induced = induce_recode(spec, n_ind)
    induced_report = ls_report(minimal_forbidden(induced, n_ind))

    def window_for(ell):
        lo = max(1, (width - 1) + (ell - 2) * min_rho - max_rho + 1)
        hi = (width - 1) + (ell - 1) * max_rho + 1
        return lo, hi

    base_ls = set(base_report.ls_set)
    rows = []
    lengths = [l for l in induced_report.ls_set if l >= 2]
    for l1, l2 in zip(lengths, lengths[1:]):
        lo1, hi1 = window_for(l1)
        lo2, hi2 = window_for(l2)
        hits1 = [b for b in base_ls if lo1 <= b <= hi1]
        hits2 = [b for b in base_ls if lo2 <= b <= hi2]
        bound = (l2 - l1 + 2) * max_rho
        witness = None
        for b1 in hits1:
            for b2 in hits2:
                if b1 <= b2 and b2 - b1 <= bound:
                    witness = (b1, b2)
                    break
            if witness:
                break
        rows.append({
            "induced_pair": (l1, l2),
            "base_window_low": window_for(l1),
            "base_window_high": window_for(l2),
            "bound": bound,
            "witness": witness,
            "satisfied": witness is not None,
        })
    return SpeedupReport(base_report, induced_report, tuple(rows),
                         min_rho, max_rho)
