"""Alphabets, words, language oracles, and special-word analysis.

A word is a tuple of symbols drawn from an :class:`Alphabet`.  Symbols are
opaque strings; the alphabet fixes their order, which every lexicographic
comparison and enumeration in the package uses.  Multi-character symbols
are legal (recoded systems use whole windows as single letters), so words
are never plain strings internally.  ``Alphabet.word`` parses the
single-character shorthand "0110" into a proper tuple.

A :class:`LanguageOracle` is the universal handle on a shift's language:
a membership test that is exact up to a declared horizon, plus the
alphabet.  Every operation that consumes an oracle checks the horizon and
refuses to answer beyond it rather than silently degrading.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .errors import AlphabetMismatchError, HorizonExceededError

LESS, EQUAL, GREATER = -1, 0, 1

EMPTY_WORD = ()


@dataclass(frozen=True)
class Alphabet:
    """Ordered, finite set of distinct symbols.

    The ordering of ``symbols`` is the lexicographic base order.

    Examples
    --------
    >>> binary = Alphabet(("0", "1"))
    >>> binary.index("1")
    1
    >>> binary.word("010")
    ('0', '1', '0')
    """

    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise AlphabetMismatchError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetMismatchError("alphabet symbols must be distinct")
        for s in self.symbols:
            if not isinstance(s, str) or not s:
                raise AlphabetMismatchError("alphabet symbols must be nonempty strings")

    @cached_property
    def _index(self):
        return {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatchError("symbol %r is not in the alphabet" % (symbol,)) from None

    @cached_property
    def single_char(self):
        return all(len(s) == 1 for s in self.symbols)

    def word(self, letters):
        """Build a validated word from a string or an iterable of symbols.

        A plain string is split into characters only when every symbol of
        the alphabet is a single character; otherwise pass a sequence.
        """
        if isinstance(letters, str):
            if not self.single_char:
                raise AlphabetMismatchError(
                    "alphabet has multi-character symbols; pass a sequence, not a string")
            w = tuple(letters)
        else:
            w = tuple(letters)
        self.check_word(w)
        return w

    def check_word(self, word):
        for s in word:
            if s not in self._index:
                raise AlphabetMismatchError("symbol %r is not in the alphabet" % (s,))

    def key(self, word):
        """Sort key implementing the alphabet's lexicographic order."""
        return tuple(self._index[s] for s in word)


def format_word(word):
    """Render a word for reports: concatenated when unambiguous, dotted otherwise."""
    if not word:
        return "(empty)"
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)


def lex_compare(u, v, alphabet):
    """Three-way lexicographic comparison of two words.

    Returns LESS, EQUAL or GREATER.  A strict prefix is strictly less than
    any of its extensions, so comparisons of unequal lengths are total.
    """
    alphabet.check_word(u)
    alphabet.check_word(v)
    ku, kv = alphabet.key(u), alphabet.key(v)
    if ku < kv:
        return LESS
    if ku > kv:
        return GREATER
    return EQUAL


def subwords(word, length=None):
    """All distinct subwords of ``word``, optionally only those of one length."""
    n = len(word)
    out = set()
    if length is None:
        out.add(EMPTY_WORD)
        for i in range(n):
            for j in range(i + 1, n + 1):
                out.add(word[i:j])
    else:
        for i in range(n - length + 1):
            out.add(word[i:i + length])
    return out


@dataclass(frozen=True)
class LanguageOracle:
    """Membership oracle for a factorial language, exact up to a horizon.

    Parameters
    ----------
    alphabet : Alphabet
    membership : callable
        Word tuple -> bool.  Must be factorial (subwords of allowed words
        allowed) on the reliable range; enumeration relies on it.
    max_reliable_length : int
        Largest word length for which ``membership`` is exact.
    label : str
        Free-form tag used in reports.
    """

    alphabet: Alphabet
    membership: object
    max_reliable_length: int
    label: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def check_horizon(self, n):
        if n > self.max_reliable_length:
            raise HorizonExceededError(
                "length %d exceeds the oracle horizon %d" % (n, self.max_reliable_length))
        if n < 0:
            raise HorizonExceededError("negative word length")

    def contains(self, word):
        word = tuple(word)
        self.alphabet.check_word(word)
        self.check_horizon(len(word))
        hit = self._cache.get(word)
        if hit is None:
            hit = bool(self.membership(word))
            self._cache[word] = hit
        return hit

    def words_of_length(self, n):
        """All allowed words of length ``n``, sorted lexicographically.

        Built incrementally: allowed words of length n are one-letter
        extensions of allowed words of length n-1, by factoriality.
        """
        self.check_horizon(n)
        key = ("L", n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if n == 0:
            words = (EMPTY_WORD,) if self.contains(EMPTY_WORD) else ()
        else:
            shorter = self.words_of_length(n - 1)
            words = tuple(
                w + (a,)
                for w in shorter
                for a in self.alphabet
                if self.contains(w + (a,)))
        self._cache[key] = words
        return words

    def is_empty_language(self):
        return not self.contains(EMPTY_WORD)


def oracle_from_membership(alphabet, membership, horizon, label=""):
    return LanguageOracle(alphabet, membership, horizon, label)


def enumerate_language(oracle, n):
    """Sorted tuple of the allowed words of length ``n``."""
    return oracle.words_of_length(n)


def complexity(oracle, n_max):
    """Complexity profile [p(0), p(1), ..., p(n_max)].

    p(0) is 1 for a nonempty shift (the empty word) and 0 for the empty
    shift.
    """
    oracle.check_horizon(n_max)
    return [len(oracle.words_of_length(n)) for n in range(n_max + 1)]


@dataclass(frozen=True)
class SpecialReport:
    """Left-special, right-special and bispecial words of one length."""

    length: int
    left_special: tuple
    right_special: tuple
    bispecial: tuple


def special_words(oracle, n):
    """Special words of length ``n``; needs the language at length n+1.

    A word is left special when at least two letters extend it on the
    left, right special symmetrically, bispecial when both.
    """
    oracle.check_horizon(n + 1)
    left = {}
    right = {}
    for u in oracle.words_of_length(n + 1):
        left.setdefault(u[1:], set()).add(u[0])
        right.setdefault(u[:-1], set()).add(u[-1])
    key = oracle.alphabet.key
    ls = tuple(sorted((w for w, ext in left.items() if len(ext) >= 2), key=key))
    rs = tuple(sorted((w for w, ext in right.items() if len(ext) >= 2), key=key))
    bs = tuple(sorted(set(ls) & set(rs), key=key))
    return SpecialReport(n, ls, rs, bs)
