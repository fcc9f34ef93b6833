"""Single-system term algebra and its bottom-up canonicalizer."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import IllFormed, UnknownDomain, UnknownEdge
from .model import MapEdge, ModelConfig
from .values import NULL, Ket, Signed, sign_char


@dataclass(frozen=True)
class Leaf:
    value: Signed

    def render(self) -> str:
        return self.value.render()


@dataclass(frozen=True)
class Superpose:
    kind: int
    op: int
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Product:
    left: "Expr"
    right: "Expr"


Expr = Union[Leaf, Superpose, Product]


def ket(domain: str, index: int, sign: int = 1) -> Leaf:
    return Leaf(Signed(sign, Ket(domain, index)))


def null() -> Leaf:
    return Leaf(NULL)


def sup(kind: int, op: int, left: Expr, right: Expr) -> Superpose:
    return Superpose(kind, op, left, right)


def pull_signs(kind: int, op: int, s_left: int, s_right: int, swapped: bool) -> tuple[int, int]:
    """Reduce ``c_{op,kind}(s_left*P, s_right*Q)`` to ``sign * c_{eff,kind}(X, Y)``.

    ``(X, Y)`` is the canonical ordered pair of disjoint operands; ``swapped``
    means the left operand is ``Y``.  Returns ``(sign, eff)``.

    Kinds 1 and 2: a sign on the left factors out and the product of signs
    folds into the operator; swapping arguments costs the sign of the
    resulting operator.  Kind 3: ``+3`` carries the sign of its left argument,
    ``-3`` the sign of its right argument, and swapping arguments flips the
    operator.
    """
    if kind == 3:
        if swapped:
            op, s_left, s_right = -op, s_right, s_left
        return (s_left, 1) if op > 0 else (s_right, -1)
    eff = op * s_left * s_right
    if swapped:
        return s_left * eff, eff
    return s_left, eff


def null_or_self(kind: int, op: int, left: Signed, right: Signed) -> Signed | None:
    """Null-operand and self-superposition rules; ``None`` when neither applies."""
    if left.is_null and right.is_null:
        return NULL
    if right.is_null:
        return left
    if left.is_null:
        return right.times(op)
    if left.body == right.body:
        sign, eff = pull_signs(kind, op, left.sign, right.sign, False)
        return Signed(sign, left.body) if eff > 0 else NULL
    return None


def _check_domain(k: Ket, config: ModelConfig) -> None:
    if not config.has_domain(k.domain):
        raise UnknownDomain(f"domain {k.domain!r} is not part of the {config.variant.value} model")


def direct_images(kind: int, op: int, left: Signed, right: Signed,
                  config: ModelConfig) -> list[tuple[MapEdge | None, Signed]]:
    """Every result of combining two canonical single-system values directly.

    One entry per applicable map edge; the edge is ``None`` for the null and
    self rules.  Raises :class:`IllFormed` for operands from different domains
    and :class:`UnknownEdge` when the domain has no edge of this kind.
    """
    for v in (left, right):
        if not v.is_null and not isinstance(v.body, Ket):
            raise IllFormed(f"{v.render()} is not a single-system state")
        if not v.is_null:
            _check_domain(v.body, config)
    trivial = null_or_self(kind, op, left, right)
    if trivial is not None:
        return [(None, trivial)]
    a, b = left.body, right.body
    if a.domain != b.domain:
        raise IllFormed(
            f"cannot superpose {left.render()} and {right.render()}: "
            "superpositions are only defined within one domain"
        )
    edges = config.edges_from(kind, a.domain)
    if not edges:
        raise UnknownEdge(f"no kind-{kind} map leaves domain {a.domain}")
    sign, eff = pull_signs(kind, op, left.sign, right.sign, swapped=a.index == 1)
    return [(e, Signed(sign, e.image(eff))) for e in edges]


def superpose_values(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig) -> Signed:
    """Deterministic combination step; uses the first declared edge."""
    return direct_images(kind, op, left, right, config)[0][1]


def canonicalize(expr: Expr, config: ModelConfig) -> Signed:
    """Rewrite a single-system expression to a signed basis state or null."""
    if isinstance(expr, Leaf):
        v = expr.value
        if v.is_null:
            return v
        if not isinstance(v.body, Ket):
            raise IllFormed(f"{v.render()} is a joint state; use canonicalize_joint")
        _check_domain(v.body, config)
        return v
    if isinstance(expr, Superpose):
        left = canonicalize(expr.left, config)
        right = canonicalize(expr.right, config)
        return superpose_values(expr.kind, expr.op, left, right, config)
    if isinstance(expr, Product):
        raise IllFormed("tensor products are joint expressions; use canonicalize_joint")
    raise TypeError(f"not an expression: {expr!r}")


def are_disjoint(a: Ket, b: Ket) -> bool:
    return a.domain == b.domain


def overlap_probability(state: Ket, outcome: Ket) -> Fraction:
    """Probability that the test of ``outcome``'s domain reports ``outcome``."""
    if state.domain != outcome.domain:
        return Fraction(1, 2)
    return Fraction(1) if state == outcome else Fraction(0)


def op_symbol(kind: int, op: int) -> str:
    return f"{sign_char(op)}{kind}"
