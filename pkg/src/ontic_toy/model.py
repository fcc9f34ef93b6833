"""Model variants: domain labels and the graph of superposition maps.

A map edge ``(kind, source -> target, plus, minus)`` states that
``|0)_source +_kind |1)_source`` is ``|plus)_target`` and
``|0)_source -_kind |1)_source`` is ``|minus)_target``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .values import DOMAIN_ORDER, Ket, domain_key


class Variant(str, Enum):
    TWO_DOMAIN = "2d"
    THREE_DOMAIN_FRUSTRATED = "3d"
    FOUR_DOMAIN = "4d"
    RAW = "raw"


@dataclass(frozen=True, order=True)
class MapEdge:
    kind: int
    source: str
    target: str
    image_plus: int = 0
    image_minus: int = 1

    def __post_init__(self):
        if self.kind not in (1, 2, 3):
            raise ValueError(f"map kind must be 1, 2 or 3, got {self.kind}")
        if {self.image_plus, self.image_minus} - {0, 1}:
            raise ValueError(f"image indices must be 0 or 1 in {self}")

    def image(self, op: int) -> Ket:
        return Ket(self.target, self.image_plus if op > 0 else self.image_minus)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source,
            "target": self.target,
            "imagePlus": self.image_plus,
            "imageMinus": self.image_minus,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MapEdge":
        return cls(
            int(data["kind"]),
            data["source"],
            data["target"],
            int(data.get("imagePlus", 0)),
            int(data.get("imageMinus", 1)),
        )


@dataclass(frozen=True)
class ModelConfig:
    variant: Variant
    domains: tuple[str, ...]
    edges: tuple[MapEdge, ...]
    states_per_domain: int = 2
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _into: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _hash: int = field(default=0, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.domains)) != len(self.domains):
            raise ValueError(f"duplicate domain labels in {self.domains}")
        for d in self.domains:
            if d not in DOMAIN_ORDER:
                raise ValueError(f"unsupported domain label {d!r}")
        if self.states_per_domain != 2:
            raise ValueError("only two-level systems are supported")
        expected = {Variant.TWO_DOMAIN: 2, Variant.THREE_DOMAIN_FRUSTRATED: 3, Variant.FOUR_DOMAIN: 4}
        if self.variant in expected and len(self.domains) != expected[self.variant]:
            raise ValueError(f"{self.variant.value} config needs {expected[self.variant]} domains")
        out: dict[tuple[int, str], list[MapEdge]] = {}
        into: dict[Ket, list[tuple[MapEdge, int]]] = {}
        for e in self.edges:
            if e.source not in self.domains or e.target not in self.domains:
                raise ValueError(f"edge {e} references a domain outside {self.domains}")
            out.setdefault((e.kind, e.source), []).append(e)
            into.setdefault(e.image(1), []).append((e, 1))
            into.setdefault(e.image(-1), []).append((e, -1))
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})
        object.__setattr__(self, "_into", {k: tuple(v) for k, v in into.items()})
        object.__setattr__(self, "_hash", hash((self.variant, self.domains, self.edges, self.states_per_domain)))

    def __hash__(self) -> int:
        # configs are memoization keys all over the engine
        return self._hash

    @property
    def kinds(self) -> tuple[int, ...]:
        return tuple(sorted({e.kind for e in self.edges}))

    def edges_from(self, kind: int, source: str) -> tuple[MapEdge, ...]:
        return self._out.get((kind, source), ())

    def edge(self, kind: int, source: str, target: str) -> MapEdge | None:
        for e in self.edges_from(kind, source):
            if e.target == target:
                return e
        return None

    def decompositions(self, ket: Ket) -> tuple[tuple[MapEdge, int], ...]:
        """Every ``(edge, op)`` whose image is ``ket``."""
        return self._into.get(ket, ())

    def kind_between(self, a: str, b: str) -> tuple[int, ...]:
        return tuple(sorted(e.kind for e in self.edges if e.source == a and e.target == b))

    def basis_states(self) -> tuple[Ket, ...]:
        return tuple(Ket(d, i) for d in self.domains for i in (0, 1))

    def has_domain(self, label: str) -> bool:
        return label in self.domains

    def is_symmetric(self) -> bool:
        pairs = {(e.kind, e.source, e.target) for e in self.edges}
        return all((k, t, s) in pairs for k, s, t in pairs)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "variant": self.variant.value,
            "domains": list(self.domains),
            "statesPerDomain": self.states_per_domain,
            "edges": [e.to_dict() for e in self.edges],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        return cls(
            Variant(data.get("variant", "raw")),
            tuple(data["domains"]),
            tuple(MapEdge.from_dict(e) for e in data["edges"]),
            int(data.get("statesPerDomain", 2)),
        )

    @classmethod
    def from_json(cls, text: str) -> "ModelConfig":
        return cls.from_dict(json.loads(text))


def _both_ways(kind: int, a: str, b: str) -> list[MapEdge]:
    return [MapEdge(kind, a, b), MapEdge(kind, b, a)]


def _build(variant: Variant, domains: str, links: Iterable[tuple[int, str, str]]) -> ModelConfig:
    edges: list[MapEdge] = []
    for kind, a, b in links:
        edges.extend(_both_ways(kind, a, b))
    edges.sort(key=lambda e: (e.kind, domain_key(e.source), domain_key(e.target)))
    return ModelConfig(variant, tuple(domains), tuple(edges))


def standard_two_domain() -> ModelConfig:
    return _build(Variant.TWO_DOMAIN, "xy", [(1, "x", "y")])


def frustrated_three_domain() -> ModelConfig:
    """Three domains joined pairwise by kinds 1 and 2; fails closure on purpose."""
    return _build(
        Variant.THREE_DOMAIN_FRUSTRATED,
        "xyz",
        [(1, "x", "y"), (2, "x", "z"), (2, "y", "z")],
    )


def standard_four_domain() -> ModelConfig:
    """Kind 1 on x-y and z-t, kind 2 on y-z and t-x, kind 3 on the diagonals."""
    return _build(
        Variant.FOUR_DOMAIN,
        "xyzt",
        [(1, "x", "y"), (1, "z", "t"), (2, "y", "z"), (2, "t", "x"), (3, "x", "z"), (3, "y", "t")],
    )


def config_for(variant: str | Variant) -> ModelConfig:
    variant = Variant(variant)
    if variant is Variant.TWO_DOMAIN:
        return standard_two_domain()
    if variant is Variant.FOUR_DOMAIN:
        return standard_four_domain()
    if variant is Variant.THREE_DOMAIN_FRUSTRATED:
        return frustrated_three_domain()
    raise ValueError("raw configs must be loaded from JSON")
