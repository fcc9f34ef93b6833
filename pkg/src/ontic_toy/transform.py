"""Local transformations: in-domain permutations and domain rotations.

A transformation is stored as a signed permutation of the basis states of one
system.  Permuting a domain swaps its two states; every domain that is not
permuted picks up a minus sign on its ``|1)`` state.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IllFormed, UndefinedForVariant
from .joint import canonicalize_joint, expand
from .model import ModelConfig, Variant
from .states import Leaf, Superpose
from .values import NULL, Correlated, Ket, Pair, Signed


@dataclass(frozen=True)
class Transformation:
    name: str
    mapping: tuple[tuple[Ket, Signed], ...]

    def image(self, k: Ket) -> Signed:
        for src, dst in self.mapping:
            if src == k:
                return dst
        raise UndefinedForVariant(f"{self.name} is not defined on {k.render()}")

    def as_dict(self) -> dict[Ket, Signed]:
        return dict(self.mapping)


def identity(config: ModelConfig) -> Transformation:
    return Transformation("I", tuple((k, Signed(1, k)) for k in config.basis_states()))


def permutation(swapped: str, config: ModelConfig) -> Transformation:
    out = []
    for k in config.basis_states():
        if k.domain in swapped:
            out.append((k, Signed(1, k.flipped)))
        else:
            out.append((k, Signed(-1 if k.index else 1, k)))
    return Transformation("P" + swapped, tuple(out))


def rotation(a: str, b: str, config: ModelConfig) -> Transformation:
    """``|i)_a <-> |i)_b``, other domains untouched."""
    swap = {a: b, b: a}
    out = tuple((k, Signed(1, Ket(swap.get(k.domain, k.domain), k.index))) for k in config.basis_states())
    return Transformation(f"T{a}{b}", out)


PRIMITIVES = {
    Variant.TWO_DOMAIN: ("I", "Px", "Py", "Txy"),
    Variant.FOUR_DOMAIN: ("I", "Pxz", "Pyt"),
}


def primitive(name: str, config: ModelConfig) -> Transformation:
    allowed = PRIMITIVES.get(config.variant, ())
    if name not in allowed:
        raise UndefinedForVariant(
            f"{name} is not a transformation of the {config.variant.value} model "
            f"(available: {', '.join(allowed) or 'none'})"
        )
    if name == "I":
        return identity(config)
    if name.startswith("T"):
        return rotation(name[1], name[2], config)
    return permutation(name[1:], config)


def compose(a: Transformation, b: Transformation) -> Transformation:
    """``a`` after ``b``."""
    out = []
    for k, mid in b.mapping:
        dst = a.image(mid.body).times(mid.sign)
        out.append((k, dst))
    if a.name == "I":
        name = b.name
    elif b.name == "I":
        name = a.name
    else:
        name = a.name + b.name
    return Transformation(name, tuple(out))


_TOKEN = re.compile(r"I|P[xyzt]+|T[xyzt]{2}")


def named(name: str, config: ModelConfig) -> Transformation:
    """Look up a transformation; products like ``PyPx`` apply right to left."""
    tokens = _TOKEN.findall(name)
    if not tokens or "".join(tokens) != name:
        raise UndefinedForVariant(f"cannot read transformation name {name!r}")
    result = primitive(tokens[-1], config)
    for tok in reversed(tokens[:-1]):
        result = compose(primitive(tok, config), result)
    return result


def equal_signed(a: Transformation, b: Transformation) -> bool:
    return a.as_dict() == b.as_dict()


def equal_up_to_sign(a: Transformation, b: Transformation) -> bool:
    """Same action up to one overall sign (the sign is not observable)."""
    bd = b.as_dict()
    ratios = set()
    for k, v in a.mapping:
        w = bd[k]
        if v.body != w.body:
            return False
        ratios.add(v.sign * w.sign)
    return len(ratios) == 1


def apply(t: Transformation, state: Signed, config: ModelConfig, system: int = 1) -> Signed:
    """Apply ``t`` to a single system, or locally to one half of a joint state."""
    if state.is_null:
        return NULL
    body = state.body
    if isinstance(body, Ket):
        return t.image(body).times(state.sign)
    if system not in (1, 2):
        raise IllFormed(f"system must be 1 or 2, got {system}")
    if isinstance(body, Pair):
        if system == 1:
            moved = t.image(body.first)
            return Signed(state.sign * moved.sign, Pair(moved.body, body.second))
        moved = t.image(body.second)
        return Signed(state.sign * moved.sign, Pair(body.first, moved.body))
    if isinstance(body, Correlated):
        sup = expand(state)
        left = apply(t, sup.left.value, config, system)
        right = apply(t, sup.right.value, config, system)
        return canonicalize_joint(Superpose(sup.kind, sup.op, Leaf(left), Leaf(right)), config)
    raise TypeError(f"cannot transform {state!r}")


def dense_coding_set(config: ModelConfig) -> tuple[Transformation, ...]:
    """The four local operations indexed by two message bits."""
    if config.variant is Variant.TWO_DOMAIN:
        names = ("I", "Px", "Py", "PyPx")
    elif config.variant is Variant.FOUR_DOMAIN:
        names = ("I", "Pxz", "Pyt", "PytPxz")
    else:
        raise UndefinedForVariant(f"no dense-coding operations for {config.variant.value}")
    return tuple(named(n, config) for n in names)


def group_closure(generators, config: ModelConfig) -> list[Transformation]:
    """All products of ``generators``, one representative per up-to-sign class."""
    elements = [identity(config)]
    frontier = list(elements)
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                c = compose(h, g)
                if not any(equal_up_to_sign(c, e) for e in elements):
                    elements.append(c)
                    nxt.append(c)
        frontier = nxt
    return elements


def composition_table(elements, config: ModelConfig) -> dict[tuple[str, str], str]:
    """``(a, b) -> name of the element equal to a after b`` (up to sign)."""
    table = {}
    for a in elements:
        for b in elements:
            c = compose(a, b)
            match = next(e for e in elements if equal_up_to_sign(c, e))
            table[a.name, b.name] = match.name
    return table
