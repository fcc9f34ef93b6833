"""Two-system states: products, distributive expansion and correlated domains.

Correlated states are rebased between local bases one hop at a time.  A hop
moves both local domains across one map edge.  Hops that only involve kind-1
maps are derived by distributive expansion into formal signed sums; every
other hop uses the joint-superposition rule blocks of the four-domain model,
which are axioms of the theory rather than consequences of the single-system
laws.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from .errors import IllFormed, InconsistentTable, MixedParity, NoRepresentation, UnknownDomain
from .model import ModelConfig, Variant
from .states import Expr, Leaf, Product, Superpose, null_or_self, pull_signs, superpose_values
from .values import NULL, Correlated, Ket, Pair, Signed, pair_key

ROWS = (("C", 1), ("C", -1), ("A", 1), ("A", -1))

# (expansion kind, outer kind) -> target state for rows C+, C-, A+, A-.
# Each entry is (parity, op, kind) in the new local bases.
RULE_BLOCKS: dict[tuple[int, int], tuple[tuple[str, int, int], ...]] = {
    (2, 1): (("C", 1, 2), ("A", 1, 2), ("C", -1, 2), ("A", -1, 2)),
    (1, 2): (("C", 1, 2), ("A", 1, 2), ("C", -1, 2), ("A", -1, 2)),
    (2, 2): (("C", 1, 1), ("A", 1, 1), ("C", -1, 1), ("A", -1, 1)),
    (3, 1): (("C", 1, 2), ("C", -1, 2), ("A", 1, 2), ("A", -1, 2)),
    # same as (3, 1) with the roles of kinds 1 and 2 interchanged
    (3, 2): (("C", 1, 1), ("C", -1, 1), ("A", 1, 1), ("A", -1, 1)),
}


def _local_expansion(k: Ket, domain: str, config: ModelConfig) -> dict[int, int] | None:
    """Coefficients of ``k`` as a kind-1 superposition of ``domain`` states."""
    if k.domain == domain:
        return {k.index: 1}
    e = config.edge(1, domain, k.domain)
    if e is None:
        return None
    for op in (1, -1):
        if e.image(op) == k:
            return {0: 1, 1: op}
    return None


def distributive_hop(state: Correlated, target: tuple[str, str],
                     config: ModelConfig) -> Signed | None:
    """Rebase a kind-1 correlated state by expanding into formal signed sums.

    Returns ``None`` when a local expansion does not exist or the expanded sum
    does not regroup into a single correlated state of the target bases.
    """
    if state.kind != 1:
        return None
    coeff = {(i, j): 0 for i in (0, 1) for j in (0, 1)}
    for weight, operand in zip((1, state.op), state.operands()):
        left = _local_expansion(operand.first, target[0], config)
        right = _local_expansion(operand.second, target[1], config)
        if left is None or right is None:
            return None
        for (i, ci), (j, cj) in cartesian(left.items(), right.items()):
            coeff[i, j] += weight * ci * cj
    terms = {ij: c for ij, c in coeff.items() if c}
    if len(terms) != 2:
        return None
    (p, cp), (q, cq) = sorted(terms.items())
    if abs(cp) != abs(cq) or p[0] == q[0] or p[1] == q[1]:
        return None
    # sorted() puts the first-index-0 term first
    parity = "C" if p[1] == 0 else "A"
    sign = 1 if cp > 0 else -1
    op = sign * (1 if cq > 0 else -1)
    return Signed(sign, Correlated(parity, op, 1, target))


def axiom_hop(state: Correlated, target: tuple[str, str], config: ModelConfig) -> Signed | None:
    a, b = state.domains
    a2, b2 = target
    if a != b or a2 != b2 or a == a2:
        return None
    for m in config.kind_between(a2, a):
        block = RULE_BLOCKS.get((m, state.kind))
        if block is None:
            continue
        parity, op, kind = block[state.row]
        return Signed(1, Correlated(parity, op, kind, target))
    return None


def hop(state: Correlated, target: tuple[str, str], config: ModelConfig) -> Signed | None:
    """One rebase step, or ``None`` if no rule connects the two spellings."""
    if tuple(target) == state.domains:
        return Signed(1, state)
    result = distributive_hop(state, target, config)
    if result is None:
        result = axiom_hop(state, target, config)
    return result


def _pairs(config: ModelConfig) -> list[tuple[str, str]]:
    pairs = [(a, b) for a in config.domains for b in config.domains]
    return sorted(pairs, key=pair_key)


@lru_cache(maxsize=None)
def representations(state: Correlated, config: ModelConfig) -> dict[tuple[str, str], Signed]:
    """Breadth-first rebase of ``state`` into every reachable pair of local bases.

    Paths are explored shortest first, ties broken by domain order, so the
    sign carried along is deterministic.
    """
    for d in state.domains:
        if not config.has_domain(d):
            raise UnknownDomain(f"domain {d!r} is not part of the {config.variant.value} model")
    found = {state.domains: Signed(1, state)}
    frontier = [state.domains]
    all_pairs = _pairs(config)
    while frontier:
        nxt = []
        for pair in frontier:
            here = found[pair]
            for target in all_pairs:
                if target in found:
                    continue
                step = hop(here.body, target, config)
                if step is not None:
                    found[target] = step.times(here.sign)
                    nxt.append(target)
        frontier = nxt
    return dict(sorted(found.items(), key=lambda kv: pair_key(kv[0])))


def rebase(state: Signed | Correlated, target: tuple[str, str], config: ModelConfig) -> Signed:
    """Spell a correlated state in the local bases ``target``."""
    if isinstance(state, Correlated):
        state = Signed(1, state)
    if not isinstance(state.body, Correlated):
        raise NoRepresentation(f"{state.render()} is not a correlated state")
    reps = representations(state.body, config)
    target = tuple(target)
    if target not in reps:
        raise NoRepresentation(f"{state.render()} has no spelling in local bases {target}")
    return reps[target].times(state.sign)


rebase_correlated = rebase


def canonical(value: Signed, config: ModelConfig) -> Signed:
    """Canonical spelling: correlated states move to their smallest legal pair."""
    if isinstance(value.body, Correlated):
        reps = representations(value.body, config)
        first = next(iter(reps.values()))
        return first.times(value.sign)
    return value


def ontic_equal(a: Signed, b: Signed, config: ModelConfig) -> bool:
    """Equality of ontic content: the sign is ignored."""
    return canonical(a, config).body == canonical(b, config).body


def _check_domains(value: Signed, config: ModelConfig) -> None:
    body = value.body
    if body is None:
        return
    labels = (body.domain,) if isinstance(body, Ket) else (
        body.domains if isinstance(body, (Pair, Correlated)) else ())
    for d in labels:
        if not config.has_domain(d):
            raise UnknownDomain(f"domain {d!r} is not part of the {config.variant.value} model")


def _superpose_pairs(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig) -> Signed:
    p, q = left.body, right.body
    if p.first == q.first:
        inner = superpose_values(kind, op, Signed(left.sign, p.second), Signed(right.sign, q.second), config)
        return NULL if inner.is_null else Signed(inner.sign, Pair(p.first, inner.body))
    if p.second == q.second:
        inner = superpose_values(kind, op, Signed(left.sign, p.first), Signed(right.sign, q.first), config)
        return NULL if inner.is_null else Signed(inner.sign, Pair(inner.body, p.second))
    if p.domains != q.domains:
        raise IllFormed(
            f"cannot superpose {left.render()} and {right.render()}: "
            "local parts must be identical or disjoint"
        )
    parity = "C" if p.first.index == p.second.index else "A"
    sign, eff = pull_signs(kind, op, left.sign, right.sign, swapped=p.first.index == 1)
    return Signed(sign, Correlated(parity, eff, kind, p.domains))


def _superpose_correlated(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig) -> Signed:
    lreps = representations(left.body, config)
    rreps = representations(right.body, config)
    for pair, lrep in lreps.items():
        rrep = rreps.get(pair)
        if rrep is None:
            continue
        lq, rq = lrep.body, rrep.body
        if lq.parity != rq.parity or lq.kind != kind or rq.kind != kind or lq.op == rq.op:
            continue
        sign, eff = pull_signs(kind, op, left.sign * lrep.sign, right.sign * rrep.sign,
                               swapped=lq.op < 0)
        first, second = lq.operands()
        return Signed(sign, first if eff > 0 else second)
    raise MixedParity(
        f"{left.render()} and {right.render()} share no correlated domain with kind-{kind} spellings"
    )


def superpose_joint(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig) -> Signed:
    """Combine two canonical values of equal arity (or null)."""
    left, right = canonical(left, config), canonical(right, config)
    trivial = null_or_self(kind, op, left, right)
    if trivial is not None:
        return canonical(trivial, config)
    if left.arity != right.arity:
        raise IllFormed(f"cannot superpose {left.render()} with {right.render()}: different arity")
    if left.arity == 1:
        return superpose_values(kind, op, left, right, config)
    lb, rb = left.body, right.body
    if isinstance(lb, Pair) and isinstance(rb, Pair):
        return canonical(_superpose_pairs(kind, op, left, right, config), config)
    if isinstance(lb, Correlated) and isinstance(rb, Correlated):
        return canonical(_superpose_correlated(kind, op, left, right, config), config)
    raise MixedParity(f"no rule combines {left.render()} with {right.render()}")


def tensor(left: Signed, right: Signed) -> Signed:
    if left.is_null or right.is_null:
        return NULL
    if left.arity != 1 or right.arity != 1:
        raise IllFormed("only products of two single systems are joint states")
    return Signed(left.sign * right.sign, Pair(left.body, right.body))


def canonicalize_joint(expr: Expr, config: ModelConfig) -> Signed:
    """Canonicalize a single- or two-system expression."""
    if isinstance(expr, Leaf):
        _check_domains(expr.value, config)
        return canonical(expr.value, config)
    if isinstance(expr, Product):
        return tensor(canonicalize_joint(expr.left, config), canonicalize_joint(expr.right, config))
    if isinstance(expr, Superpose):
        left = canonicalize_joint(expr.left, config)
        right = canonicalize_joint(expr.right, config)
        return superpose_joint(expr.kind, expr.op, left, right, config)
    raise TypeError(f"not an expression: {expr!r}")


def expand(state: Signed) -> Expr:
    """The defining superposition of a correlated state (products left as leaves)."""
    body = state.body
    if not isinstance(body, Correlated):
        return Leaf(state)
    u, v = body.operands()
    return Superpose(body.kind, body.op, Leaf(Signed(state.sign, u)), Leaf(Signed(state.sign, v)))


# --- correlated domains -------------------------------------------------------


@dataclass(frozen=True)
class CorrelatedDomain:
    """Four mutually disjoint correlated states and all their spellings.

    ``rows[i]`` maps each legal pair of local bases to the spelling of the
    i-th state (ordered C+, C-, A+, A- in ``rep_pair``).
    """

    rep_pair: tuple[str, str]
    kind: int
    rows: tuple[dict, ...]

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(self.rows[0].keys())

    def states(self) -> tuple[Signed, ...]:
        return tuple(row[self.rep_pair] for row in self.rows)

    def index_of(self, value: Signed, config: ModelConfig) -> int | None:
        for i, row in enumerate(self.rows):
            if ontic_equal(row[self.rep_pair], value, config):
                return i
        return None


def domain_labels(config: ModelConfig) -> list[Correlated]:
    """Correlated states whose domains are enumerated for this variant."""
    if config.variant is Variant.TWO_DOMAIN:
        pairs = _pairs(config)
    else:
        pairs = [(d, d) for d in config.domains]
    kinds = [k for k in config.kinds if k in (1, 2)]
    return [Correlated(p, o, k, pair) for pair in pairs for k in kinds for p, o in ROWS]


def enumerate_correlated_domains(config: ModelConfig) -> list[CorrelatedDomain]:
    """Every correlated domain of disjointness with all cross-basis identities."""
    return list(_correlated_domains(config))


@lru_cache(maxsize=None)
def _correlated_domains(config: ModelConfig) -> tuple[CorrelatedDomain, ...]:
    seen: dict[tuple, CorrelatedDomain] = {}
    for label in domain_labels(config):
        rep = canonical(Signed(1, label), config).body
        key = (rep.domains, rep.kind)
        if key in seen:
            continue
        rows = tuple(
            representations(Correlated(p, o, rep.kind, rep.domains), config) for p, o in ROWS
        )
        if any(set(r) != set(rows[0]) for r in rows):
            raise InconsistentTable(f"states of the {rep.domains} kind-{rep.kind} domain disagree on legal bases")
        for pair in rows[0]:
            bodies = [r[pair].body for r in rows]
            if len(set(bodies)) != 4:
                raise InconsistentTable(f"two states of one domain share the spelling in {pair}")
        seen[key] = CorrelatedDomain(rep.domains, rep.kind, rows)
    return tuple(sorted(seen.values(), key=lambda d: (pair_key(d.rep_pair), d.kind)))


def domain_containing(value: Signed, config: ModelConfig) -> CorrelatedDomain | None:
    for dom in enumerate_correlated_domains(config):
        if dom.index_of(value, config) is not None:
            return dom
    return None
