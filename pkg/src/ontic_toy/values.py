"""Canonical value types: single kets, product kets, correlated states, signs.

Every canonical result of the engine is a :class:`Signed` wrapping one of
:class:`Ket`, :class:`Pair` or :class:`Correlated`, or the null state
(:data:`NULL`, a ``Signed`` whose body is ``None``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

DOMAIN_ORDER = "xyzt"


def domain_key(label: str) -> int:
    return DOMAIN_ORDER.index(label)


def pair_key(pair: tuple[str, str]) -> tuple[int, int]:
    return domain_key(pair[0]), domain_key(pair[1])


def sign_char(sign: int) -> str:
    return "+" if sign > 0 else "-"


@dataclass(frozen=True, order=True)
class Ket:
    """One ontic state ``|index)_domain`` of a single system."""

    domain: str
    index: int

    def __post_init__(self):
        if self.index not in (0, 1):
            raise ValueError(f"ket index must be 0 or 1, got {self.index}")

    @property
    def flipped(self) -> "Ket":
        return Ket(self.domain, 1 - self.index)

    def render(self) -> str:
        return f"|{self.index}>_{self.domain}"


@dataclass(frozen=True, order=True)
class Pair:
    """Product ontic state of two systems."""

    first: Ket
    second: Ket

    @property
    def domains(self) -> tuple[str, str]:
        return self.first.domain, self.second.domain

    def render(self) -> str:
        return self.first.render() + self.second.render()


@dataclass(frozen=True, order=True)
class Correlated:
    """``C`` (equal indices) or ``A`` (opposite indices) joint state.

    ``C^{ab}_{op,kind}`` abbreviates ``|0)_a|0)_b op_kind |1)_a|1)_b`` and
    ``A^{ab}_{op,kind}`` abbreviates ``|0)_a|1)_b op_kind |1)_a|0)_b``.
    """

    parity: str
    op: int
    kind: int
    domains: tuple[str, str]

    def __post_init__(self):
        if self.parity not in ("C", "A"):
            raise ValueError(f"parity must be 'C' or 'A', got {self.parity!r}")
        if self.op not in (1, -1):
            raise ValueError(f"op must be +1 or -1, got {self.op}")

    def operands(self) -> tuple[Pair, Pair]:
        """The ordered product pair this state superposes."""
        a, b = self.domains
        if self.parity == "C":
            return Pair(Ket(a, 0), Ket(b, 0)), Pair(Ket(a, 1), Ket(b, 1))
        return Pair(Ket(a, 0), Ket(b, 1)), Pair(Ket(a, 1), Ket(b, 0))

    def render(self) -> str:
        return f"{self.parity}{sign_char(self.op)}{self.kind}^{self.domains[0]}{self.domains[1]}"

    @property
    def row(self) -> int:
        """Position in the conventional ordering C+, C-, A+, A-."""
        return (0 if self.parity == "C" else 2) + (0 if self.op > 0 else 1)


Body = Union[Ket, Pair, Correlated]


@dataclass(frozen=True)
class Signed:
    """A body with a sign in {+1, -1}; ``body is None`` is the null state."""

    sign: int
    body: Optional[Body]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.body is None and self.sign != 1:
            object.__setattr__(self, "sign", 1)

    @property
    def is_null(self) -> bool:
        return self.body is None

    @property
    def arity(self) -> Optional[int]:
        if self.body is None:
            return None
        return 1 if isinstance(self.body, Ket) else 2

    def __neg__(self) -> "Signed":
        return self if self.body is None else Signed(-self.sign, self.body)

    def times(self, sign: int) -> "Signed":
        return self if sign == 1 else -self

    def render(self) -> str:
        if self.body is None:
            return "null"
        return ("-" if self.sign < 0 else "") + self.body.render()

    def __str__(self) -> str:
        return self.render()


NULL = Signed(1, None)


def plus(body: Body) -> Signed:
    return Signed(1, body)
