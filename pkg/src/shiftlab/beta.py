"""Beta-shifts: expansions of 1, their languages, presentations, and
stability diagnostics.

The expansion d(1, beta) is the greedy digit sequence d_i = floor(beta
T^i(1)) with T(x) = beta x - floor(beta x), 0-indexed so digits[0] =
floor(beta).  A word belongs to the beta-shift iff every suffix is
lexicographically at most the corresponding prefix of the working
stream, which is d(1, beta) itself, or its periodic replacement
d0 .. d_{k-1} (d_k - 1) repeated when the expansion terminates.

Three digit engines, chosen by how beta is described: exact Fractions
for rationals, exact arithmetic in Q(beta) for algebraic numbers (both
detect termination and revisits, so status is decided), and interval
arithmetic for decimal literals, where every floor is certified by
escalating precision and the status honestly stays truncated.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import re

import mpmath

from .algebraic import AlgebraicNumber
from .errors import (AmbiguousDigitError, CannotCloseError,
                     InsufficientDigitsError, UnsupportedSpecError,
                     WrongStatusError)
from .forbidden import MFWTable
from .language import EQUAL, GREATER, LESS, Alphabet, LanguageOracle
from .sofic import make_labeled_graph, prune_labeled


@dataclass(frozen=True)
class DigitStream:
    """A digit sequence known either forever or up to a cutoff.

    kind "eventually-periodic": digits holds preperiod + period entries
    and the tail cycles.  kind "truncated": digits is all that is known.
    """

    kind: str
    digits: tuple
    preperiod: int = 0
    period: int = 0

    def __post_init__(self):
        if self.kind == "eventually-periodic":
            if self.period < 1 or self.preperiod < 0:
                raise UnsupportedSpecError("bad periodic structure")
            if len(self.digits) != self.preperiod + self.period:
                raise UnsupportedSpecError(
                    "periodic stream must carry exactly preperiod+period digits")
        elif self.kind == "truncated":
            if not self.digits:
                raise UnsupportedSpecError("empty digit stream")
        else:
            raise UnsupportedSpecError("unknown stream kind %r" % (self.kind,))

    def digit(self, i):
        if self.kind == "eventually-periodic":
            if i < self.preperiod:
                return self.digits[i]
            return self.digits[self.preperiod + (i - self.preperiod) % self.period]
        if i >= len(self.digits):
            raise InsufficientDigitsError(
                "digit %d lies beyond the computed prefix (length %d)"
                % (i, len(self.digits)))
        return self.digits[i]

    def prefix(self, n):
        return tuple(self.digit(i) for i in range(n))

    @property
    def known_length(self):
        """Length of the reliable prefix; None means unbounded."""
        if self.kind == "eventually-periodic":
            return None
        return len(self.digits)


@dataclass(frozen=True)
class BetaExpansion:
    """Greedy expansion of 1 in base beta.

    status is "finite", "eventually-periodic", or "truncated"; the
    periodic case carries (preperiod, period) and digits extended out to
    the requested count.  alphabet_max is floor(beta), the first digit.
    """

    digits: tuple
    status: str
    preperiod: int = 0
    period: int = 0
    alphabet_max: int = 0

    def working_stream(self):
        """The stream all language work runs on: d itself, or d* when finite."""
        if self.status == "finite":
            return star_expansion(self)
        if self.status == "eventually-periodic":
            head = self.digits[:self.preperiod + self.period]
            return DigitStream("eventually-periodic", head, self.preperiod, self.period)
        return DigitStream("truncated", self.digits)


@dataclass
class BetaNumber:
    """A real beta > 1 given exactly (rational, algebraic) or as a
    decimal literal taken at face value with certified interval floors."""

    kind: str
    rational: Fraction = None
    algebraic: AlgebraicNumber = None
    literal: str = None
    start_precision: int = 64
    precision_ceiling: int = 1 << 16

    def value_hint(self):
        """Float approximation for display only."""
        if self.kind == "rational":
            return float(self.rational)
        if self.kind == "algebraic":
            return self.algebraic.root_float()
        return float(self.literal)


def beta_rational(value):
    value = Fraction(value)
    if value <= 1:
        raise UnsupportedSpecError("beta must exceed 1")
    return BetaNumber(kind="rational", rational=value)


def beta_algebraic(coeffs, lo, hi):
    num = AlgebraicNumber(coeffs, Fraction(lo), Fraction(hi))
    one = num.from_rational(1)
    if num.compare(num.generator, one) <= 0:
        raise UnsupportedSpecError("the isolated root must exceed 1")
    return BetaNumber(kind="algebraic", algebraic=num)


def beta_decimal(literal, start_precision=64, precision_ceiling=1 << 16):
    try:
        value = Fraction(literal)
    except ValueError:
        raise UnsupportedSpecError("cannot parse decimal literal %r" % (literal,))
    if value <= 1:
        raise UnsupportedSpecError("beta must exceed 1")
    if start_precision > precision_ceiling:
        raise UnsupportedSpecError("starting precision above the ceiling")
    return BetaNumber(kind="decimal", literal=literal,
                      start_precision=start_precision,
                      precision_ceiling=precision_ceiling)


def _expand_rational(beta, n):
    x = Fraction(1)
    seen = {x: 0}
    digits = []
    for step in range(n):
        y = beta * x
        d = y.numerator // y.denominator
        digits.append(d)
        x = y - d
        if x == 0:
            return digits, "finite", 0, 0
        j = seen.get(x)
        if j is not None:
            return digits, "eventually-periodic", j, step + 1 - j
        seen[x] = step + 1
    return digits, "truncated", 0, 0


def _expand_algebraic(num, n):
    beta_el = num.generator
    x = num.from_rational(1)
    seen = {x: 0}
    trail = [x]
    digits = []
    for step in range(n):
        y = num.mul(beta_el, x)
        d = num.floor(y)
        digits.append(d)
        x = num.sub(y, num.from_rational(d))
        if num.is_zero(x):
            return digits, "finite", 0, 0
        j = seen.get(x)
        if j is None:
            # residue tuples can differ while the values agree when the
            # defining polynomial is reducible; fall back to exact tests
            for k, prev in enumerate(trail):
                if num.is_zero(num.sub(x, prev)):
                    j = k
                    break
        if j is not None:
            return digits, "eventually-periodic", j, step + 1 - j
        seen[x] = step + 1
        trail.append(x)
    return digits, "truncated", 0, 0


def _expand_decimal(literal, n, start_precision, ceiling):
    iv = mpmath.iv
    prec = start_precision
    last_bad = 0
    while prec <= ceiling:
        saved = iv.prec
        try:
            iv.prec = prec
            beta = iv.mpf(literal)
            x = iv.mpf(1)
            digits = []
            ambiguous = None
            for i in range(n):
                y = beta * x
                flo = int(mpmath.floor(y.a))
                fhi = int(mpmath.floor(y.b))
                if flo != fhi:
                    ambiguous = i
                    break
                digits.append(flo)
                x = y - flo
            if ambiguous is None:
                return digits, "truncated", 0, 0
            last_bad = ambiguous
        finally:
            iv.prec = saved
        prec *= 2
    raise AmbiguousDigitError(last_bad)


def beta_expand(beta, n):
    """First n digits of d(1, beta) with exact or certified floors.

    Rational and algebraic engines detect a terminating or revisiting
    orbit of 1, settling the status; decimal literals always report
    truncated, and raise naming the digit index if a floor cannot be
    certified below the precision ceiling.
    """
    if n < 1:
        raise UnsupportedSpecError("at least one digit is needed")
    if beta.kind == "rational":
        digits, status, pre, per = _expand_rational(beta.rational, n)
    elif beta.kind == "algebraic":
        digits, status, pre, per = _expand_algebraic(beta.algebraic, n)
    elif beta.kind == "decimal":
        digits, status, pre, per = _expand_decimal(
            beta.literal, n, beta.start_precision, beta.precision_ceiling)
    else:
        raise UnsupportedSpecError("unknown beta engine %r" % (beta.kind,))
    d0 = digits[0]
    if any(d < 0 or d > d0 for d in digits):
        raise UnsupportedSpecError("digit outside [0, %d]; is beta > 1?" % d0)
    if status == "eventually-periodic" and len(digits) < n:
        stream = DigitStream("eventually-periodic", tuple(digits), pre, per)
        digits = [stream.digit(i) for i in range(n)]
    return BetaExpansion(tuple(digits), status, pre, per, alphabet_max=d0)


def star_expansion(expansion):
    """Replace a finite expansion d0..dk by the periodic d0..d_{k-1}(dk-1).

    The raw finite expansion is degenerate for language work (at integer
    beta it is the single digit beta); the starred stream is the one the
    shift is defined from, and its alphabet is {0..first digit}, which
    at integer beta gives {0..beta-1} as it should.
    """
    if expansion.status != "finite":
        raise WrongStatusError("star replacement applies to finite expansions only")
    if expansion.digits[-1] < 1:
        raise WrongStatusError("finite expansion must end in a positive digit")
    block = expansion.digits[:-1] + (expansion.digits[-1] - 1,)
    return DigitStream("eventually-periodic", block, 0, len(block))


def stream_alphabet(stream):
    return Alphabet(tuple(str(i) for i in range(stream.digit(0) + 1)))


def compare_to_prefix(word_digits, stream):
    """Lexicographic comparison of a digit tuple against the stream
    prefix of the same length."""
    for i, w in enumerate(word_digits):
        d = stream.digit(i)
        if w != d:
            return LESS if w < d else GREATER
    return EQUAL


def beta_oracle(stream, horizon, label="beta"):
    """Language oracle of the beta-shift of the working stream.

    A word is allowed iff each of its suffixes is at most the stream
    prefix of equal length; sufficiency comes from padding with zeros,
    necessity from the domination condition on points.
    """
    known = stream.known_length
    if known is not None and horizon > known:
        raise InsufficientDigitsError(
            "oracle horizon %d exceeds the %d known digits" % (horizon, known))
    alphabet = stream_alphabet(stream)

    def membership(word):
        ints = tuple(int(a) for a in word)
        for k in range(len(ints)):
            if compare_to_prefix(ints[k:], stream) == GREATER:
                return False
        return True

    return LanguageOracle(alphabet, membership, horizon, label)


def beta_language(stream, n):
    """Length-n words of the beta-shift in lexicographic order."""
    oracle = beta_oracle(stream, n, label="beta-language")
    alphabet = oracle.alphabet
    return sorted(oracle.words_of_length(n), key=alphabet.key)


def beta_mfw(stream, n_max):
    """Minimal forbidden words up to length n_max, from the stream alone.

    They are exactly the words (prefix of d) b with b above the next
    digit, subject to every strict suffix w' of the prefix keeping
    w' b at most d; the suffix condition is what makes the one-letter
    extensions minimal rather than merely forbidden.
    """
    known = stream.known_length
    if known is not None and n_max > known:
        raise InsufficientDigitsError(
            "need %d digits but only %d were computed" % (n_max, known))
    d0 = stream.digit(0)
    by_length = {}
    for ell in range(n_max):
        d_ell = stream.digit(ell)
        w = stream.prefix(ell)
        found = []
        for b in range(d_ell + 1, d0 + 1):
            if all(compare_to_prefix(w[j:] + (b,), stream) != GREATER
                   for j in range(1, ell + 1)):
                found.append(tuple(str(c) for c in w + (b,)))
        if found:
            by_length[ell + 1] = tuple(sorted(found))
    return MFWTable(n_max, by_length)


def validate_expansion(d, horizon):
    """Check the admissibility condition: shifted tails sit strictly
    below the stream.

    Eventually periodic streams are compared exactly, so a genuine tie
    (a shift equal to the whole stream) fails.  Truncated streams are
    compared on the window the prefix supports: a strict violation
    fails, a tie that survives to the cutoff cannot be refuted and
    passes.
    """
    if d.kind == "eventually-periodic":
        window = d.preperiod + d.period + 1
        for s in range(1, horizon):
            verdict = None
            for i in range(window):
                a, b = d.digit(s + i), d.digit(i)
                if a != b:
                    verdict = a < b
                    break
            if verdict is None:
                # agreement across preperiod + period pins the whole tail
                verdict = False
            if not verdict:
                return False
        return True
    n = len(d.digits)
    if horizon > n:
        raise InsufficientDigitsError(
            "validation horizon %d exceeds the %d known digits" % (horizon, n))
    for s in range(1, horizon):
        for i in range(n - s):
            a, b = d.digits[s + i], d.digits[i]
            if a != b:
                if a > b:
                    return False
                break
    return True


@dataclass(frozen=True)
class BetaLSReport:
    """Occurrence statistics of stream prefixes, as stability evidence.

    An occurrence of a prefix w is an index j with d_j .. d_{j+|w|-1}
    equal to w and j + |w| <= horizon; prefix_reoccurrence counts the
    occurrences at j >= 1.
    """

    horizon: int
    prefix_reoccurrence: dict
    d0_positions: tuple
    verdict: str


def beta_ls_diagnostic(stream, horizon):
    """Finite-horizon evidence for or against language stability.

    The first digit d0 vanishing from the late half of the window is
    the signature of an unstable language; every short prefix reoccurring
    is the signature of a stable one.  Anything in between is reported
    as inconclusive rather than guessed.
    """
    known = stream.known_length
    if known is not None and horizon > known:
        raise InsufficientDigitsError(
            "horizon %d exceeds the %d known digits" % (horizon, known))
    d = [stream.digit(i) for i in range(horizon)]
    d0 = d[0]
    d0_positions = tuple(i for i in range(horizon) if d[i] == d0)
    reoccurrence = {}
    for plen in range(1, horizon + 1):
        w = tuple(d[:plen])
        reoccurrence[plen] = sum(
            1 for j in range(1, horizon - plen + 1)
            if tuple(d[j:j + plen]) == w)
    if not any(i >= max(1, horizon // 2) for i in d0_positions):
        verdict = "unstable-evidence"
    elif all(reoccurrence[k] >= 1 for k in range(1, max(1, horizon // 4) + 1)):
        verdict = "stable-evidence"
    else:
        verdict = "inconclusive"
    return BetaLSReport(horizon, reoccurrence, d0_positions, verdict)


def beta_presentation(stream):
    """Labeled graph presenting the beta-shift of an eventually periodic
    stream.

    Vertex i advances to i+1 reading d_i (the last vertex closes onto
    the start of the periodic block), and falls back to vertex 0 reading
    any smaller digit.  Bi-infinite label sequences are exactly the
    sequences all of whose tails sit at most the stream.
    """
    if stream.kind != "eventually-periodic":
        raise CannotCloseError(
            "a truncated stream cannot be closed into a finite presentation")
    p, q = stream.preperiod, stream.period
    m = p + q
    digits = [stream.digit(i) for i in range(m)]
    alphabet = stream_alphabet(stream)
    edges = []
    for i in range(m):
        succ = i + 1 if i + 1 < m else p
        edges.append((i, str(digits[i]), succ))
        for b in range(digits[i]):
            edges.append((i, str(b), 0))
    g = make_labeled_graph(alphabet, tuple(range(m)), edges, label="beta-shift")
    return prune_labeled(g)


def example_betashift(mode, steps):
    """Digit stream prefixes w_r of the doubling construction
    w_{n+1} = w_n u_n w_n, starting from w_0 = 222, u_0 = 111.

    The separators grow per mode (longer runs of 1, or of 0) and each
    stays lexicographically below u_n w_n, which keeps every computed
    prefix admissible; prefixes of the limit stream reoccur forever, so
    the stability diagnostic reads stable on these.
    """
    if mode not in ("specified", "synchronized"):
        raise UnsupportedSpecError("mode must be 'specified' or 'synchronized'")
    if steps < 0:
        raise UnsupportedSpecError("steps must be >= 0")
    w = (2, 2, 2)
    u = (1, 1, 1)
    for _ in range(steps):
        tail = u + w
        w = w + u + w
        u = ((1,) if mode == "specified" else (0,)) * (len(u) + 1)
        if compare_to_prefix(u, DigitStream("truncated", tail)) == GREATER:
            raise UnsupportedSpecError("separator escaped its lexicographic bound")
    return DigitStream("truncated", w)


def parse_polynomial(text):
    """Parse forms like 'x^2-x-1' or '2x^3 + 1/2x - 3' into coefficients,
    constant term first."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise UnsupportedSpecError("empty polynomial")
    coeffs = {}
    for term in re.findall(r"[+-]?[^+-]+", s):
        m = re.fullmatch(r"([+-]?)(\d+(?:/\d+)?)?(x(?:\^(\d+))?)?", term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise UnsupportedSpecError("cannot parse polynomial term %r" % (term,))
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        exp = (1 if m.group(4) is None else int(m.group(4))) if m.group(3) else 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    top = max(coeffs)
    return tuple(coeffs.get(i, Fraction(0)) for i in range(top + 1))


def parse_beta_spec(text):
    """Beta descriptions: 'rational:5/2', 'poly:x^2-x-1@[1.6,1.7]', or a
    bare decimal literal like '1.8'."""
    text = text.strip()
    if text.startswith("rational:"):
        return beta_rational(Fraction(text[len("rational:"):]))
    if text.startswith("poly:"):
        body = text[len("poly:"):]
        if "@" not in body:
            raise UnsupportedSpecError("polynomial beta needs @[lo,hi] interval")
        poly_text, interval = body.split("@", 1)
        m = re.fullmatch(r"\[([^,\]]+),([^,\]]+)\]", interval.strip())
        if not m:
            raise UnsupportedSpecError("cannot parse interval %r" % (interval,))
        return beta_algebraic(parse_polynomial(poly_text),
                              Fraction(m.group(1)), Fraction(m.group(2)))
    if re.fullmatch(r"\d+(\.\d+)?", text):
        return beta_decimal(text)
    raise UnsupportedSpecError("unrecognized beta description %r" % (text,))
