"""Dense coding and teleportation over a shared correlated pair.

Teleportation branches are derived, not tabulated: the shared state is
rebased into the input's basis, the sender's two-system products are written
as superpositions of correlated states found by search, and each correlated
state is read back in the ``xx`` basis of the test.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian

from .errors import BadSharedState, InconsistentTable, ToyModelError, UndefinedForVariant
from .joint import CorrelatedDomain, ontic_equal, rebase, representations, superpose_joint
from .measurement import _same_basis_domain, global_same_basis, measure
from .model import ModelConfig, Variant
from .transform import Transformation, apply, dense_coding_set, named
from .values import Correlated, Ket, Pair, Signed

DENSE_CODING = "dense-coding"
TELEPORTATION = "teleportation"


def default_shared() -> Signed:
    return Signed(1, Correlated("C", 1, 1, ("x", "x")))


@dataclass
class ProtocolTranscript:
    protocol: str
    variant: str
    input: str
    shared: str
    events: list = field(default_factory=list)
    output: str = ""
    success: bool = False

    def to_dict(self) -> dict:
        return {"schema": 1, "protocol": self.protocol, "variant": self.variant,
                "input": self.input, "sharedState": self.shared, "events": self.events,
                "output": self.output, "success": self.success}


def _bits(index: int) -> str:
    return format(index, "02b")


def _check_shared(shared: Signed, config: ModelConfig) -> CorrelatedDomain:
    dom = _same_basis_domain(config)
    if not isinstance(shared.body, Correlated) or dom.index_of(shared, config) is None:
        raise BadSharedState(f"{shared.render()} is not one of the same-basis correlated states")
    return dom


def _test_pair(shared: Signed) -> tuple[str, str]:
    a, b = shared.body.domains
    return (a, b)


# --- dense coding ---------------------------------------------------------------


def dense_coding_images(shared: Signed, config: ModelConfig) -> list[tuple[Transformation, Signed]]:
    """The sender's four operations and the joint state each one produces."""
    _check_shared(shared, config)
    return [(g, apply(g, shared, config, system=1)) for g in dense_coding_set(config)]


def dense_coding(message: str, shared: Signed | None = None, config: ModelConfig | None = None,
                 rng: random.Random | None = None) -> ProtocolTranscript:
    """Send two classical bits by acting on one half of ``shared``."""
    shared = shared or default_shared()
    if len(message) != 2 or set(message) - {"0", "1"}:
        raise ValueError(f"message must be two bits, got {message!r}")
    rng = rng or random.Random(0)
    images = dense_coding_images(shared, config)
    g, sent = images[int(message, 2)]
    spec = global_same_basis(_test_pair(shared), config)
    record = measure(sent, spec, rng, config)
    decoded = None
    for i, (_, image) in enumerate(images):
        if ontic_equal(image, record.post_state, config):
            decoded = _bits(i)
            break
    return ProtocolTranscript(
        DENSE_CODING, config.variant.value, message, shared.render(),
        [{"event": "transform", "system": 1, "transformation": g.name, "state": sent.render()},
         {"event": "measure", **record.to_dict()}],
        decoded or "", decoded == message,
    )


# --- teleportation --------------------------------------------------------------


def _bell_decomposition(product: Signed, bells: tuple[Signed, ...], kind: int,
                        config: ModelConfig) -> list[tuple[Signed, int]]:
    """Write a two-system product as a superposition of two correlated states.

    Returns ``[(bell, coefficient sign), (bell, coefficient sign)]`` with
    ``product = sign * c_{op,kind}(X, Y)`` read as the formal sum ``sign*X + sign*op*Y``.
    """
    found = []
    for (i, x), (j, y) in cartesian(enumerate(bells), enumerate(bells)):
        if i >= j:
            continue
        for op in (1, -1):
            try:
                value = superpose_joint(kind, op, x, y, config)
            except ToyModelError:
                continue
            if value.body == product.body:
                sign = value.sign * product.sign
                found.append([(x, sign), (y, sign * op)])
    if len(found) != 1:
        raise InconsistentTable(f"{product.render()} has {len(found)} decompositions into correlated states")
    return found[0]


def teleport_branches(unknown: Signed, config: ModelConfig, shared: Signed | None = None,
                      read_in: tuple[str, str] | None = None) -> list[tuple[Signed, Signed]]:
    """``(test outcome, receiver's state)`` for all four outcomes.

    Outcomes are read in the shared state's basis unless ``read_in`` names
    another pair of local bases.
    """
    shared = shared or default_shared()
    return list(_branches(unknown, config, shared, tuple(read_in) if read_in else None))


@lru_cache(maxsize=None)
def _branches(unknown: Signed, config: ModelConfig, shared: Signed,
              read_in: tuple[str, str] | None) -> tuple[tuple[Signed, Signed], ...]:
    dom = _check_shared(shared, config)
    if not isinstance(unknown.body, Ket) or not config.has_domain(unknown.body.domain):
        raise UndefinedForVariant(f"{unknown.render()} is not a single-system state of this model")
    d = unknown.body.domain
    spelled = rebase(shared, (d, d), config)
    corr = spelled.body
    if corr.parity != "C" or corr.op != 1:
        raise BadSharedState(f"{shared.render()} does not read as a C+ state in basis {d}{d}")
    bells = tuple(row[(d, d)] for row in dom.rows)
    test_pair = tuple(read_in) if read_in else _test_pair(shared)
    branches: dict = {}
    # |s> (|0>|0> +k |1>|1>), regrouped by the sender's pair
    for i in (0, 1):
        product = Signed(unknown.sign, Pair(unknown.body, Ket(d, i)))
        for bell, coeff in _bell_decomposition(product, bells, corr.kind, config):
            label = rebase(bell, test_pair, config)
            # bell = label.sign * (label read in the test basis)
            sign = spelled.sign * coeff * label.sign
            key = Signed(1, label.body)
            if key in branches:
                raise InconsistentTable(f"outcome {key.render()} appears twice for {unknown.render()}")
            branches[key] = Signed(sign, Ket(d, i))
    order = [Signed(1, rebase(row[dom.rep_pair], test_pair, config).body) for row in dom.rows]
    return tuple((b, branches[b]) for b in order)


def derive_correction_table(config: ModelConfig, shared: Signed | None = None) -> dict[str, str]:
    """For each outcome, the unique sender-set operation that restores every input."""
    return dict(_corrections(config, shared or default_shared()))


@lru_cache(maxsize=None)
def _corrections(config: ModelConfig, shared: Signed) -> tuple[tuple[str, str], ...]:
    inputs = [Signed(s, k) for k in config.basis_states() for s in (1, -1)]
    table = {k: teleport_branches(k, config, shared) for k in inputs}
    out = {}
    for col in range(4):
        label = table[inputs[0]][col][0]
        fits = [g for g in dense_coding_set(config)
                if all(ontic_equal(apply(g, table[k][col][1], config), k, config) for k in inputs)]
        if len(fits) != 1:
            raise InconsistentTable(f"{len(fits)} corrections restore every input after {label.render()}")
        out[label.render()] = fits[0].name
    return tuple(out.items())


def emit_outcome_table(config: ModelConfig, shared: Signed | None = None) -> dict:
    """Receiver's state (before correction) for each input and each outcome."""
    shared = shared or default_shared()
    rows = {}
    columns = None
    for k in config.basis_states():
        branches = teleport_branches(Signed(1, k), config, shared)
        columns = [b.render() for b, _ in branches]
        rows[k.render()] = {b.render(): state.render() for b, state in branches}
    return {"columns": columns, "rows": rows}


def teleport(unknown: Signed, shared: Signed | None = None, config: ModelConfig | None = None,
             rng: random.Random | None = None) -> ProtocolTranscript:
    """Move ``unknown`` to the receiver using one shared pair and two bits."""
    shared = shared or default_shared()
    rng = rng or random.Random(0)
    branches = teleport_branches(unknown, config, shared)
    corrections = derive_correction_table(config, shared)
    index = rng.randrange(4)
    outcome, received = branches[index]
    g = named(corrections[outcome.render()], config)
    output = apply(g, received, config)
    test = global_same_basis(_test_pair(shared), config)
    return ProtocolTranscript(
        TELEPORTATION, config.variant.value, unknown.render(), shared.render(),
        [{"event": "measure", "test": test.label, "systems": ["A1", "A2"], "outcome": index,
          "label": outcome.render(), "conclusive": False},
         {"event": "send", "bits": _bits(index)},
         {"event": "receive", "state": received.render()},
         {"event": "correct", "transformation": g.name, "state": output.render()}],
        output.render(), ontic_equal(output, unknown, config),
    )


def replay(transcript: ProtocolTranscript, config: ModelConfig) -> str:
    """Recompute a transcript's output from its recorded events alone."""
    from .joint import canonicalize_joint
    from .parser import parse

    shared = canonicalize_joint(parse(transcript.shared, config), config)
    if transcript.protocol == DENSE_CODING:
        images = dense_coding_images(shared, config)
        g = named(transcript.events[0]["transformation"], config)
        sent = apply(g, shared, config, system=1)
        observed = transcript.events[1]["postState"]
        if sent.render() != observed:
            return ""
        for i, (_, image) in enumerate(images):
            if ontic_equal(image, sent, config):
                return _bits(i)
        return ""
    unknown = canonicalize_joint(parse(transcript.input, config), config)
    index = int(transcript.events[1]["bits"], 2)
    _, received = teleport_branches(unknown, config, shared)[index]
    g = named(transcript.events[3]["transformation"], config)
    return apply(g, received, config).render()


def teleport_channel(config: ModelConfig, shared: Signed | None = None) -> list[dict]:
    """Every input and every outcome, corrected; the channel is perfect if all match."""
    shared = shared or default_shared()
    corrections = derive_correction_table(config, shared)
    rows = []
    for k in config.basis_states():
        for s in (1, -1):
            unknown = Signed(s, k)
            for outcome, received in teleport_branches(unknown, config, shared):
                g = named(corrections[outcome.render()], config)
                out = apply(g, received, config)
                rows.append({"input": unknown.render(), "outcome": outcome.render(),
                             "received": received.render(), "correction": g.name,
                             "output": out.render(), "ok": ontic_equal(out, unknown, config)})
    return rows


def supported(config: ModelConfig) -> bool:
    return config.variant in (Variant.TWO_DOMAIN, Variant.FOUR_DOMAIN)
