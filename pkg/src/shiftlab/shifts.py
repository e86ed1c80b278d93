"""Shift-description documents and their realizations.

One JSON document per shift.  The surface is flat: a ``kind`` field, an
optional ``label``, and kind-specific payload keys at top level.  Parsing
validates structure only; realizing a document builds the oracle and
whatever finite presentation the kind affords, bounded by a horizon.

Realization is the seam between descriptions and computation: every
command downstream works off a RealizedShift and never re-dispatches on
the kind, except where a capability (periodic enumeration, entropy)
genuinely needs a finite presentation.
"""

import json
from dataclasses import dataclass

from .beta import (beta_expand, beta_oracle, beta_presentation,
                   example_betashift, parse_beta_spec)
from .dynamics import (InducedSpec, Substitution, induce_recode,
                       induced_data, subst_oracle)
from .errors import UnsupportedSpecError
from .forbidden import example_nonempty_shift
from .language import Alphabet
from .sft import (DEFAULT_CAP, FiniteTypeSpec, build_block_graph,
                  per_le_enumerate, sft_entropy)
from .sofic import (BlockCode, finite_type_presentation, make_labeled_graph,
                    sofic_entropy, sofic_oracle, sofic_per_enumerate)

KINDS = ("finite-type", "sofic", "beta", "substitution", "induced",
         "example-nonempty", "example-betashift")

DEFAULT_BETA_DIGITS = 64


@dataclass(frozen=True)
class ShiftDocument:
    kind: str
    payload: dict
    label: str = ""


def _fail(msg):
    raise UnsupportedSpecError("shift document: " + msg)


def _check_word_item(item, where):
    if isinstance(item, str):
        return
    if isinstance(item, list) and all(isinstance(s, str) for s in item):
        return
    _fail("%s must be a string or a list of symbols" % (where,))


def _check_keys(payload, required, optional=()):
    for key in required:
        if key not in payload:
            _fail("missing key %r" % (key,))
    for key in payload:
        if key not in required and key not in optional:
            _fail("unknown key %r" % (key,))


def _validate_payload(kind, payload):
    if kind == "finite-type":
        _check_keys(payload, ("alphabet", "forbidden"))
        if not isinstance(payload["alphabet"], list):
            _fail("alphabet must be a list of symbols")
        if not isinstance(payload["forbidden"], list):
            _fail("forbidden must be a list of words")
        for w in payload["forbidden"]:
            _check_word_item(w, "forbidden word")
    elif kind == "sofic":
        _check_keys(payload, ("alphabet", "states", "edges"))
        if not isinstance(payload["states"], list) or not payload["states"]:
            _fail("states must be a nonempty list")
        for e in payload["edges"]:
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[1], str)):
                _fail("edges must be [source, label, target] triples")
    elif kind == "beta":
        _check_keys(payload, ("beta",), ("digits",))
        if not isinstance(payload["beta"], str):
            _fail("beta must be a specification string")
        if "digits" in payload and (not isinstance(payload["digits"], int)
                                    or payload["digits"] < 1):
            _fail("digits must be a positive integer")
    elif kind == "substitution":
        _check_keys(payload, ("rules", "seed"))
        if not isinstance(payload["rules"], dict) or not payload["rules"]:
            _fail("rules must be a nonempty map letter -> word")
        for a, w in payload["rules"].items():
            _check_word_item(w, "rule image of %r" % (a,))
        if not isinstance(payload["seed"], str):
            _fail("seed must be a letter")
    elif kind == "induced":
        _check_keys(payload, ("base", "window", "return_rule"), ("clopen", "cap"))
        if not isinstance(payload["base"], dict):
            _fail("base must be a nested shift document object")
        if not isinstance(payload["window"], int) or payload["window"] < 0:
            _fail("window must be a nonnegative integer")
        rule = payload["return_rule"]
        if not (rule == "first-return" or isinstance(rule, (int, dict))):
            _fail("return_rule must be an integer, a map, or \"first-return\"")
        if payload.get("clopen") is not None:
            for w in payload["clopen"]:
                _check_word_item(w, "clopen window")
        if "cap" in payload and (not isinstance(payload["cap"], int)
                                 or payload["cap"] < 1):
            _fail("cap must be a positive integer")
    elif kind == "example-nonempty":
        _check_keys(payload, ("lengths",))
        if not isinstance(payload["lengths"], list) or not all(
                isinstance(x, int) for x in payload["lengths"]):
            _fail("lengths must be a list of integers")
    elif kind == "example-betashift":
        _check_keys(payload, ("mode", "steps"))
        if payload["mode"] not in ("specified", "synchronized"):
            _fail("mode must be \"specified\" or \"synchronized\"")
        if not isinstance(payload["steps"], int) or payload["steps"] < 0:
            _fail("steps must be a nonnegative integer")
    else:
        _fail("unknown kind %r" % (kind,))


def document_from_object(obj):
    if not isinstance(obj, dict):
        _fail("top level must be an object")
    if "kind" not in obj:
        _fail("missing key 'kind'")
    kind = obj["kind"]
    label = obj.get("label", "")
    if not isinstance(label, str):
        _fail("label must be a string")
    payload = {k: v for k, v in obj.items() if k not in ("kind", "label")}
    _validate_payload(kind, payload)
    return ShiftDocument(kind, payload, label)


def parse_shift_document(text):
    try:
        obj = json.loads(text)
    except ValueError as exc:
        raise UnsupportedSpecError("shift document is not valid JSON: %s" % (exc,))
    return document_from_object(obj)


def serialize_shift_document(doc):
    obj = dict(doc.payload)
    obj["kind"] = doc.kind
    if doc.label:
        obj["label"] = doc.label
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_shift_document(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_shift_document(handle.read())


# ---- realization ----------------------------------------------------------

@dataclass
class RealizedShift:
    """A document made computable: oracle plus whatever structure exists.

    ``labeled`` is a sofic presentation when one is available (this
    includes eventually periodic beta expansions), ``spec`` the
    finite-type data when the kind has it, the rest are kind artifacts.
    The block presentation is exponential in the memory, so it is built
    on first demand, not at realization.
    """

    document: ShiftDocument
    horizon: int
    oracle: object
    spec: object = None
    labeled: object = None
    expansion: object = None
    stream: object = None
    substitution: object = None
    induced_spec: object = None
    base: object = None
    _graph: object = None

    def block_graph(self):
        if self._graph is None:
            if self.spec is None:
                raise UnsupportedSpecError(
                    "kind %r has no finite-type data" % (self.document.kind,))
            self._graph = build_block_graph(self.spec)
        return self._graph


def _parse_word(alphabet, item):
    return alphabet.word(item if isinstance(item, str) else tuple(item))


def _realize_finite_type(doc, horizon):
    alphabet = Alphabet(tuple(doc.payload["alphabet"]))
    words = frozenset(_parse_word(alphabet, w) for w in doc.payload["forbidden"])
    spec = FiniteTypeSpec(alphabet, words, label=doc.label)
    labeled = finite_type_presentation(spec)
    return RealizedShift(doc, horizon,
                         sofic_oracle(labeled, horizon, doc.label or None),
                         spec=spec, labeled=labeled)


def _realize_sofic(doc, horizon):
    alphabet = Alphabet(tuple(doc.payload["alphabet"]))
    states = tuple(str(s) for s in doc.payload["states"])
    edges = [(str(s), a, str(t)) for s, a, t in doc.payload["edges"]]
    g = make_labeled_graph(alphabet, states, edges, label=doc.label)
    return RealizedShift(doc, horizon, sofic_oracle(g, horizon, doc.label or None),
                         labeled=g)


def _realize_beta(doc, horizon):
    number = parse_beta_spec(doc.payload["beta"])
    digits = doc.payload.get("digits", max(DEFAULT_BETA_DIGITS, horizon + 2))
    expansion = beta_expand(number, digits)
    stream = expansion.working_stream()
    if stream.known_length is not None:
        horizon = min(horizon, stream.known_length)
    labeled = None
    if stream.kind == "eventually-periodic":
        labeled = beta_presentation(stream)
    oracle = beta_oracle(stream, horizon, doc.label or "beta")
    return RealizedShift(doc, horizon, oracle, labeled=labeled,
                         expansion=expansion, stream=stream)


def _realize_substitution(doc, horizon):
    rules = {a: tuple(w) for a, w in doc.payload["rules"].items()}
    tau = Substitution(rules, doc.payload["seed"])
    oracle = subst_oracle(tau, horizon, doc.label or None)
    return RealizedShift(doc, horizon, oracle, substitution=tau)


def _realize_induced(doc, horizon):
    base_doc = document_from_object(doc.payload["base"])
    window = doc.payload["window"]
    cap = doc.payload.get("cap", 32)
    width = 2 * window + 1
    rule = doc.payload["return_rule"]

    # probe pass: enough base horizon to resolve return times
    probe = realize(base_doc, width + (cap if rule == "first-return" else 0))
    alphabet = probe.oracle.alphabet
    clopen = doc.payload.get("clopen")
    if clopen is not None:
        clopen = frozenset(_parse_word(alphabet, w) for w in clopen)
    if isinstance(rule, dict):
        rule = {_parse_word(alphabet, w): int(t) for w, t in rule.items()}
    spec = InducedSpec(probe.oracle, window, clopen, rule, cap)
    _, rho = induced_data(spec)

    needed = (horizon + 2) * max(rho.values()) + width
    base = realize(base_doc, max(needed, probe.horizon))
    spec = InducedSpec(base.oracle, window, clopen, rule, cap)
    oracle = induce_recode(spec, horizon)
    return RealizedShift(doc, horizon, oracle, induced_spec=spec, base=base)


def _realize_example_nonempty(doc, horizon):
    spec = example_nonempty_shift(doc.payload["lengths"])
    labeled = finite_type_presentation(spec)
    return RealizedShift(doc, horizon, sofic_oracle(labeled, horizon, spec.label),
                         spec=spec, labeled=labeled)


def _realize_example_betashift(doc, horizon):
    stream = example_betashift(doc.payload["mode"], doc.payload["steps"])
    horizon = min(horizon, stream.known_length)
    oracle = beta_oracle(stream, horizon, doc.label or "betashift-example")
    return RealizedShift(doc, horizon, oracle, stream=stream)


_REALIZERS = {
    "finite-type": _realize_finite_type,
    "sofic": _realize_sofic,
    "beta": _realize_beta,
    "substitution": _realize_substitution,
    "induced": _realize_induced,
    "example-nonempty": _realize_example_nonempty,
    "example-betashift": _realize_example_betashift,
}


def realize(doc, horizon):
    if horizon < 1:
        raise UnsupportedSpecError("horizon must be >= 1")
    return _REALIZERS[doc.kind](doc, horizon)


def periodic_points_le(realized, n, cap=DEFAULT_CAP):
    """All points of minimal period <= n, as (word, period) pairs.

    Needs a finite presentation; an oracle alone only bounds periodicity
    by evidence, which is not good enough to weight a measure.
    """
    if realized.spec is not None:
        return per_le_enumerate(realized.block_graph(), n, cap)
    if realized.labeled is not None:
        out = []
        for p in range(1, n + 1):
            for word, q in sofic_per_enumerate(realized.labeled, p, cap).entries:
                if q == p:
                    out.append((word, p))
        return out
    raise UnsupportedSpecError(
        "periodic enumeration needs a finite presentation; kind %r has none"
        % (realized.document.kind,))


def shift_entropy(realized):
    """Topological entropy from the finite presentation, certified."""
    if realized.labeled is not None:
        return sofic_entropy(realized.labeled)
    if realized.spec is not None:
        return sft_entropy(realized.block_graph())
    raise UnsupportedSpecError(
        "entropy needs a finite presentation; kind %r has none"
        % (realized.document.kind,))


def parse_block_code(obj, source_alphabet):
    """Block code from a JSON object {"range": R, "rule": {window: letter}}.

    Window keys are words over the source alphabet; the target alphabet
    is the set of output letters unless given explicitly as "target".
    """
    if not isinstance(obj, dict):
        _fail("block code must be an object")
    if "range" not in obj or "rule" not in obj:
        _fail("block code needs 'range' and 'rule'")
    radius = obj["range"]
    if not isinstance(radius, int) or radius < 0:
        _fail("range must be a nonnegative integer")
    rule = {}
    for key, out in obj["rule"].items():
        window = _parse_word(source_alphabet, key)
        if not isinstance(out, str):
            _fail("rule values must be letters")
        rule[window] = out
    if "target" in obj:
        target = Alphabet(tuple(obj["target"]))
    else:
        target = Alphabet(tuple(sorted(set(rule.values()))))
    return BlockCode(source_alphabet, target, radius, rule)
