"""Tests on single systems and pairs, with an injectable random source.

A test either confirms a state that already belongs to its domain, or reports
one of the domain's states uniformly at random and leaves the system in the
reported state.
"""
from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass

from .errors import IllFormed, NoRepresentation, ScopeMismatch, UndefinedForVariant
from .joint import CorrelatedDomain, domain_containing, rebase, representations
from .model import ModelConfig
from .values import Correlated, Ket, Pair, Signed

DEFAULT_SEED = 20110301
SEED_ENV = "ONTIC_TOY_SEED"

LOCAL = "local"
GLOBAL_SAME = "global-same"
GLOBAL_CROSS = "global-cross"


def default_seed() -> int:
    """The seed used when none is given; ``$ONTIC_TOY_SEED`` overrides it."""
    value = os.environ.get(SEED_ENV)
    return int(value) if value else DEFAULT_SEED


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent, reproducible stream for one trial of a seeded run."""
    return random.Random(f"{seed}/{trial}")


@dataclass(frozen=True)
class MeasurementSpec:
    scope: str
    outcomes: tuple[Signed, ...]
    system: int | None = None
    domain: str | None = None
    pair: tuple[str, str] | None = None

    @property
    def label(self) -> str:
        if self.scope == LOCAL:
            return f"M{self.domain}" + ("" if self.system in (None, 1) else f"@{self.system}")
        if self.scope == GLOBAL_SAME:
            return f"Mc-ii:{''.join(self.pair)}"
        return "Mc-ij"

    def to_dict(self) -> dict:
        return {"test": self.label, "scope": self.scope,
                "outcomes": [o.render() for o in self.outcomes]}


def local_test(domain: str, config: ModelConfig, system: int = 1) -> MeasurementSpec:
    if not config.has_domain(domain):
        raise UndefinedForVariant(f"no domain {domain!r} in the {config.variant.value} model")
    if system not in (1, 2):
        raise IllFormed(f"system must be 1 or 2, got {system}")
    outcomes = (Signed(1, Ket(domain, 0)), Signed(1, Ket(domain, 1)))
    return MeasurementSpec(LOCAL, outcomes, system=system, domain=domain)


def _same_basis_domain(config: ModelConfig) -> CorrelatedDomain:
    first = config.domains[0]
    dom = domain_containing(Signed(1, Correlated("C", 1, 1, (first, first))), config)
    if dom is None:
        raise UndefinedForVariant(f"no same-basis correlated domain in {config.variant.value}")
    return dom


def global_same_basis(pair: tuple[str, str], config: ModelConfig) -> MeasurementSpec:
    """Bell-like test distinguishing the same-basis correlated states, read in ``pair``."""
    dom = _same_basis_domain(config)
    pair = tuple(pair)
    if pair not in dom.rows[0]:
        raise NoRepresentation(f"the same-basis correlated states have no spelling in {''.join(pair)}")
    return MeasurementSpec(GLOBAL_SAME, tuple(row[pair] for row in dom.rows), pair=pair)


def global_cross_basis(config: ModelConfig) -> MeasurementSpec:
    """Test distinguishing the complementary-basis correlated states."""
    a, b = config.domains[0], config.domains[1]
    dom = domain_containing(Signed(1, Correlated("C", 1, 1, (a, b))), config)
    if dom is None:
        raise UndefinedForVariant(f"no complementary-basis correlated domain in {config.variant.value}")
    return MeasurementSpec(GLOBAL_CROSS, dom.states(), pair=dom.rep_pair)


def parse_test(text: str, config: ModelConfig, system: int = 1) -> MeasurementSpec:
    """Read ``Mx``, ``Mc-ii:ab`` or ``Mc-ij``."""
    if text == "Mc-ij":
        return global_cross_basis(config)
    if text.startswith("Mc-ii"):
        pair = text.partition(":")[2] or config.domains[0] * 2
        if len(pair) != 2:
            raise IllFormed(f"expected two domain labels after 'Mc-ii:', got {pair!r}")
        return global_same_basis((pair[0], pair[1]), config)
    if len(text) == 2 and text[0] == "M":
        return local_test(text[1], config, system)
    raise IllFormed(f"unknown test {text!r}")


@dataclass(frozen=True)
class MeasurementRecord:
    spec: MeasurementSpec
    outcome: int
    post_state: Signed
    conclusive: bool

    @property
    def outcome_label(self) -> str:
        return self.spec.outcomes[self.outcome].render()

    def to_dict(self) -> dict:
        return {"test": self.spec.label, "outcome": self.outcome, "label": self.outcome_label,
                "postState": self.post_state.render(), "conclusive": self.conclusive}


def _measure_ket(k: Ket, domain: str, rng: random.Random) -> tuple[int, Ket, bool]:
    if k.domain == domain:
        return k.index, k, True
    index = rng.randrange(2)
    return index, Ket(domain, index), False


def measure_local_on_joint(state: Signed | Correlated, system: int, domain: str,
                           rng: random.Random, config: ModelConfig) -> tuple[int, Signed]:
    """Test one half of a correlated state; the partner collapses by parity.

    The state is first spelled with ``domain`` as the measured system's local
    basis (the partner's basis is the first legal one, preferring ``domain``).
    """
    body = state if isinstance(state, Correlated) else state.body
    if not isinstance(body, Correlated):
        raise IllFormed("measure_local_on_joint needs a correlated state")
    if system not in (1, 2):
        raise IllFormed(f"system must be 1 or 2, got {system}")
    slot = system - 1
    pairs = [p for p in representations(body, config) if p[slot] == domain]
    if not pairs:
        raise NoRepresentation(f"{body.render()} cannot be read with local basis {domain} on system {system}")
    pairs.sort(key=lambda p: p[1 - slot] != domain)
    spelled = rebase(Signed(1, body), pairs[0], config).body
    outcome = rng.randrange(2)
    partner = outcome if spelled.parity == "C" else 1 - outcome
    a, b = spelled.domains
    i, j = (outcome, partner) if slot == 0 else (partner, outcome)
    return outcome, Signed(1, Pair(Ket(a, i), Ket(b, j)))


def measure(state: Signed, spec: MeasurementSpec, rng: random.Random,
            config: ModelConfig) -> MeasurementRecord:
    """Perform the test ``spec`` on a canonical state."""
    if state.is_null:
        raise IllFormed("null is not an ontic state and cannot be tested")
    body = state.body
    if spec.scope == LOCAL:
        if isinstance(body, Ket):
            index, post, sure = _measure_ket(body, spec.domain, rng)
            return MeasurementRecord(spec, index, Signed(1, post), sure)
        if isinstance(body, Pair):
            part = body.first if spec.system == 1 else body.second
            index, post, sure = _measure_ket(part, spec.domain, rng)
            pair = Pair(post, body.second) if spec.system == 1 else Pair(body.first, post)
            return MeasurementRecord(spec, index, Signed(1, pair), sure)
        outcome, post = measure_local_on_joint(body, spec.system, spec.domain, rng, config)
        return MeasurementRecord(spec, outcome, post, False)
    if isinstance(body, Ket):
        raise ScopeMismatch(f"{spec.label} is a test of two systems; {state.render()} is a single system")
    if isinstance(body, Correlated):
        for i, candidate in enumerate(spec.outcomes):
            if candidate.body == body or (
                    spec.pair in representations(body, config)
                    and rebase(Signed(1, body), spec.pair, config).body == candidate.body):
                return MeasurementRecord(spec, i, candidate, True)
    index = rng.randrange(4)
    return MeasurementRecord(spec, index, spec.outcomes[index], False)


def frequencies(state: Signed, spec: MeasurementSpec, trials: int, seed: int,
                config: ModelConfig) -> Counter:
    """Outcome counts over ``trials`` independent seeded repetitions."""
    counts: Counter = Counter()
    for i in range(trials):
        counts[measure(state, spec, trial_rng(seed, i), config).outcome] += 1
    return counts
