"""Independent checks of the engine.

Two devices live here:

* a real-vector model of the two-domain theory (kets as integer 2-vectors,
  ``+1``/``-1`` as vector sum/difference, states compared as rays), and
* a bounded confluence checker that explores every rewrite order of every
  expression up to a depth bound.

Both enumerate expressions by equivalence class rather than one tree at a
time.  The value (or set of reachable values) of a tree depends only on the
classes of its children, so evaluating each distinct ``(node, class, class)``
combination once covers every tree; the tree counts are tracked alongside so
the reports state exactly how many expressions were covered.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from math import gcd
from typing import Optional

from .errors import DepthTooLarge, IllFormed, ToyModelError, UnknownEdge
from .joint import _pairs, canonical, canonicalize_joint, domain_labels, hop, representations
from .model import ModelConfig, Variant, standard_two_domain
from .parser import render
from .states import Expr, Leaf, Product, Superpose, direct_images, null_or_self, pull_signs
from .values import NULL, Correlated, Ket, Pair, Signed

DEFAULT_BUDGET = 10**7

# --- vector model ---------------------------------------------------------------

KET_VECTORS = {
    Ket("x", 0): (1, 0),
    Ket("x", 1): (0, 1),
    Ket("y", 0): (1, 1),
    Ket("y", 1): (1, -1),
}

Vector = Optional[tuple[int, ...]]  # None is the zero vector of any length


def _add(u: Vector, v: Vector, op: int) -> Vector:
    if u is None:
        return None if v is None else tuple(op * b for b in v)
    if v is None:
        return u
    if len(u) != len(v):
        raise ValueError("vectors of different length")
    return tuple(a + op * b for a, b in zip(u, v))


def _kron(u: Vector, v: Vector) -> Vector:
    if u is None or v is None:
        return None
    return tuple(a * b for a in u for b in v)


def ray(v: Vector) -> Vector:
    """Canonical representative up to positive scaling; zero maps to ``None``."""
    if v is None or not any(v):
        return None
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return tuple(a // g for a in v)


def vector_of_value(value: Signed) -> Vector:
    body = value.body
    if body is None:
        return None
    if isinstance(body, Ket):
        vec = KET_VECTORS[body]
    elif isinstance(body, Pair):
        vec = _kron(KET_VECTORS[body.first], KET_VECTORS[body.second])
    elif isinstance(body, Correlated):
        if body.kind != 1:
            raise ValueError("the vector model only covers kind-1 maps")
        u, v = body.operands()
        vec = _add(vector_of_value(Signed(1, u)), vector_of_value(Signed(1, v)), body.op)
    else:
        raise TypeError(body)
    return tuple(value.sign * a for a in vec)


def vector_of_expr(expr: Expr) -> Vector:
    """Vector of an expression, reduced to its ray at every node.

    States are rays, so each superposition combines the primitive
    representatives of its operands (this is what makes ``c+(s, s) = s``).
    """
    if isinstance(expr, Leaf):
        return ray(vector_of_value(expr.value))
    if isinstance(expr, Product):
        return ray(_kron(vector_of_expr(expr.left), vector_of_expr(expr.right)))
    if isinstance(expr, Superpose):
        if expr.kind != 1:
            raise ValueError("the vector model only covers kind-1 maps")
        return ray(_add(vector_of_expr(expr.left), vector_of_expr(expr.right), expr.op))
    raise TypeError(expr)


@dataclass(frozen=True)
class VectorVerdict:
    agree: bool
    engine: str
    vector: Vector
    engine_vector: Vector


def vector_check(expr: Expr, config: ModelConfig | None = None) -> VectorVerdict:
    """Compare the engine's canonical form of ``expr`` with the vector model."""
    config = config or standard_two_domain()
    value = canonicalize_joint(expr, config)
    expected = ray(vector_of_expr(expr))
    got = ray(vector_of_value(value))
    return VectorVerdict(expected == got, value.render(), expected, got)


@dataclass
class VectorReport:
    max_depth: int
    trees_checked: int
    trees_ill_formed: int
    classes: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


_ILL = "ill-formed"


def _vector_leaves(config: ModelConfig) -> list[Signed]:
    leaves = [NULL]
    for k in config.basis_states():
        leaves += [Signed(1, k), Signed(-1, k)]
    for label in domain_labels(config):
        leaves += [Signed(1, label), Signed(-1, label)]
    return leaves


def vector_agreement(max_depth: int, config: ModelConfig | None = None) -> VectorReport:
    """Engine versus vector model on every kind-1 expression up to ``max_depth``.

    Trees are built from signed kets, null and correlated leaves with kind-1
    superpositions and tensor products.  Ill-formed trees (the engine raises)
    are counted separately and excluded from the comparison.
    """
    config = config or standard_two_domain()
    # class key: (engine value or _ILL, vector ray); value: [count, witness]
    classes: dict = {}
    for leaf in _vector_leaves(config):
        key = (canonicalize_joint(Leaf(leaf), config), ray(vector_of_value(leaf)))
        entry = classes.setdefault(key, [0, Leaf(leaf)])
        entry[0] += 1
    memo: dict = {}
    for _ in range(max_depth):
        items = list(classes.items())
        # leaves are re-added so counts stay "depth <= d"
        nxt: dict = {}
        for leaf in _vector_leaves(config):
            key = (canonicalize_joint(Leaf(leaf), config), ray(vector_of_value(leaf)))
            entry = nxt.setdefault(key, [0, Leaf(leaf)])
            entry[0] += 1
        for (k1, (n1, w1)), (k2, (n2, w2)) in cartesian(items, items):
            v1, r1 = k1
            v2, r2 = k2
            if v1 is _ILL or v2 is _ILL:
                continue
            for node in ("+", "-", "*"):
                mkey = (node, k1, k2)
                if mkey not in memo:
                    memo[mkey] = _vector_step(node, v1, r1, v2, r2, config)
                out = memo[mkey]
                tree = (Product(w1, w2) if node == "*"
                        else Superpose(1, 1 if node == "+" else -1, w1, w2))
                entry = nxt.setdefault(out, [0, tree])
                entry[0] += n1 * n2
        classes = nxt
    checked = ill = 0
    mismatches = []
    for (value, vec), (count, witness) in classes.items():
        if value is _ILL:
            ill += count
            continue
        checked += count
        if ray(vector_of_value(value)) != vec:
            mismatches.append((render(witness), value.render(), vec))
    return VectorReport(max_depth, checked, ill, len(classes), mismatches)


def _vector_step(node, v1, r1, v2, r2, config):
    if node == "*":
        expr = Product(Leaf(v1), Leaf(v2))
    else:
        expr = Superpose(1, 1 if node == "+" else -1, Leaf(v1), Leaf(v2))
    try:
        value = canonicalize_joint(expr, config)
    except ToyModelError:
        return (_ILL, None)
    if node == "*":
        return (value, ray(_kron(r1, r2)))
    return (value, ray(_add(r1, r2, expr.op)))


# --- confluence checker ---------------------------------------------------------

STUCK = "stuck"


def _cascades(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig):
    """Results of first expanding both operands one level down.

    When ``left`` and ``right`` are the two images of one pair ``(a0, a1)``
    under a map of kind ``k1``, the outer superposition may be evaluated by
    expansion: same kinds collapse back to ``a0``/``a1``, kinds 1 and 2 mixed
    give the kind-3 image of the pair.
    """
    out = []
    for e1, el in config.decompositions(left.body):
        for e2, er in config.decompositions(right.body):
            if e1.kind != e2.kind or e1.source != e2.source or el == er:
                continue
            sign, eff = pull_signs(kind, op, left.sign, right.sign, swapped=el < 0)
            src = e1.source
            path = f"expand via {e1.kind}-map from {src}"
            if e1.kind == kind:
                out.append((Signed(sign, Ket(src, 0 if eff > 0 else 1)), path))
            elif {kind, e1.kind} == {1, 2}:
                for e3 in config.edges_from(3, src):
                    out.append((Signed(sign, e3.image(eff)),
                                f"{path}, regroup as 3-map {src}->{e3.target}"))
    return out


def _single_steps(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig):
    if not (left.is_null or right.is_null) and left.body.domain != right.body.domain:
        return []
    try:
        direct = direct_images(kind, op, left, right, config)
    except (IllFormed, UnknownEdge, ToyModelError):
        direct = []
    out = [(v, "null/self rule" if e is None else f"{e.kind}-map {e.source}->{e.target}")
           for e, v in direct]
    if left.is_null or right.is_null:
        return out
    if left.body.domain == right.body.domain:
        out += _cascades(kind, op, left, right, config)
    return out


def _correlated_steps(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig):
    out = []
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
        out.append((Signed(sign, first if eff > 0 else second), f"spell both in {''.join(pair)}"))
    return out


def _pair_steps(kind: int, op: int, left: Signed, right: Signed, config: ModelConfig):
    p, q = left.body, right.body
    out = []
    if p.first == q.first:
        for v, how in _single_steps(kind, op, Signed(left.sign, p.second), Signed(right.sign, q.second), config):
            out.append((NULL if v.is_null else Signed(v.sign, Pair(p.first, v.body)), f"second factor: {how}"))
    if p.second == q.second:
        for v, how in _single_steps(kind, op, Signed(left.sign, p.first), Signed(right.sign, q.first), config):
            out.append((NULL if v.is_null else Signed(v.sign, Pair(v.body, p.second)), f"first factor: {how}"))
    if not out and p.domains == q.domains and p.first != q.first and p.second != q.second:
        parity = "C" if p.first.index == p.second.index else "A"
        sign, eff = pull_signs(kind, op, left.sign, right.sign, swapped=p.first.index == 1)
        out.append((Signed(sign, Correlated(parity, eff, kind, p.domains)), "correlate"))
    return out


def step_results(node, left: Signed, right: Signed, config: ModelConfig) -> list[tuple]:
    """Every ``(result, how)`` a single rewrite of ``node(left, right)`` can give.

    ``node`` is ``"*"`` for the tensor product or ``(kind, op)``.  Results are
    normalized (correlated states to their canonical spelling); an empty list
    means no rule applies.
    """
    if node == "*":
        if left.is_null or right.is_null:
            return [(NULL, "null factor")]
        if left.arity != 1 or right.arity != 1:
            return []
        return [(Signed(left.sign * right.sign, Pair(left.body, right.body)), "product")]
    kind, op = node
    lb, rb = left.body, right.body
    if lb is not None and rb is not None:
        if type(lb) is Ket:
            if type(rb) is not Ket or lb.domain != rb.domain:
                return []
        elif type(rb) is Ket or (type(lb) is Pair and type(rb) is Pair
                                 and lb.domains != rb.domains
                                 and lb.first != rb.first and lb.second != rb.second):
            return []
    if (left.arity or right.arity) == 1:
        out = _single_steps(kind, op, left, right, config)
    else:
        trivial = null_or_self(kind, op, canonical(left, config), canonical(right, config))
        if trivial is not None:
            out = [(trivial, "null/self rule")]
        elif isinstance(left.body, Pair) and isinstance(right.body, Pair):
            out = _pair_steps(kind, op, left, right, config)
        elif isinstance(left.body, Correlated) and isinstance(right.body, Correlated):
            out = _correlated_steps(kind, op, left, right, config)
        else:
            out = []
    return [(canonical(v, config), how) for v, how in out]


@dataclass
class Violation:
    expression: str
    depth: int
    results: list  # rendered conflicting normal forms
    paths: list  # {"result", "steps"} for each distinct rewrite path

    def to_dict(self) -> dict:
        return {"expression": self.expression, "depth": self.depth,
                "results": self.results, "paths": self.paths}


@dataclass
class ConsistencyReport:
    variant: str
    max_depth: int
    checked_expressions: int = 0
    ill_formed_expressions: int = 0
    classes: int = 0
    violations: list = field(default_factory=list)
    rebase_checks: int = 0
    rebase_clashes: list = field(default_factory=list)
    sign_holonomies: list = field(default_factory=list)
    published_diffs: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.rebase_clashes

    @property
    def minimal_violation(self) -> Violation | None:
        return min(self.violations, key=lambda v: (v.depth, len(v.expression)), default=None)

    def to_dict(self) -> dict:
        minimal = self.minimal_violation
        return {
            "schema": 1,
            "variant": self.variant,
            "maxDepth": self.max_depth,
            "checkedExpressions": self.checked_expressions,
            "illFormedExpressions": self.ill_formed_expressions,
            "classes": self.classes,
            "violations": [v.to_dict() for v in self.violations],
            "minimalViolation": minimal.to_dict() if minimal else None,
            "rebaseChecks": self.rebase_checks,
            "rebaseClashes": self.rebase_clashes,
            "signHolonomies": self.sign_holonomies,
            "publishedDiffs": self.published_diffs,
        }


def _leaves(config: ModelConfig) -> list[Signed]:
    out = [NULL]
    for k in config.basis_states():
        out += [Signed(1, k), Signed(-1, k)]
    return out


def _nodes(config: ModelConfig, products: bool = True) -> list:
    nodes = [(k, op) for k in config.kinds for op in (1, -1)]
    return nodes + ["*"] if products else nodes


def _class_step(node, c1: frozenset, c2: frozenset, config: ModelConfig) -> frozenset:
    out = set()
    for a in c1:
        for b in c2:
            if a == STUCK or b == STUCK:
                out.add(STUCK)
                continue
            results = step_results(node, a, b, config)
            if not results:
                out.add(STUCK)
            out.update(v for v, _ in results)
    return frozenset(out)


def _conflict(results: frozenset, config: ModelConfig) -> bool:
    """More than one outcome, ignoring the sign of joint states."""
    seen = set()
    for v in results:
        if v == STUCK:
            seen.add(STUCK)
        elif v.arity == 2:
            seen.add(("joint", v.body))
        else:
            seen.add(v)
    return len(seen) > 1


def _tree(node, left: Expr, right: Expr) -> Expr:
    return Product(left, right) if node == "*" else Superpose(node[0], node[1], left, right)


def explain(expr: Expr, config: ModelConfig, limit: int = 4) -> dict:
    """Normal forms of ``expr`` under every rewrite order.

    Maps each normal form (or ``STUCK``) to up to ``limit`` distinct rewrite
    paths, each a list of single steps.
    """
    if isinstance(expr, Leaf):
        return {expr.value: [[]]}
    node = "*" if isinstance(expr, Product) else (expr.kind, expr.op)
    lefts = explain(expr.left, config, limit)
    rights = explain(expr.right, config, limit)
    out: dict = {}

    def add(value, path):
        paths = out.setdefault(value, [])
        if path not in paths and len(paths) < limit:
            paths.append(path)

    for a, pas in lefts.items():
        for b, pbs in rights.items():
            prefixes = [pa + pb for pa in pas for pb in pbs]
            if a == STUCK or b == STUCK:
                for pre in prefixes:
                    add(STUCK, pre)
                continue
            here = render(_tree(node, Leaf(a), Leaf(b)))
            results = step_results(node, a, b, config)
            for pre in prefixes:
                if not results:
                    add(STUCK, pre + [f"{here} : no rule applies"])
                for v, how in results:
                    add(v, pre + [f"{here} -> {v.render()} ({how})"])
    return out


def _rebase_consistency(config: ModelConfig, report: ConsistencyReport) -> None:
    """Compare each one-hop rebase with the breadth-first spelling it should reproduce.

    Every cycle of rebase hops is a sum of these elementary checks, so an
    ontic clash on any cycle shows up here; sign differences are recorded as
    holonomies only, since the overall sign of a state is not observable.
    """
    for label in domain_labels(config):
        reps = representations(label, config)
        for src, here in reps.items():
            for dst in _pairs(config):
                if dst == src or dst not in reps:
                    continue
                moved = hop(here.body, dst, config)
                if moved is None:
                    continue
                report.rebase_checks += 1
                moved = moved.times(here.sign)
                expected = reps[dst]
                entry = {"state": label.render(), "from": "".join(src), "to": "".join(dst),
                         "viaHop": moved.render(), "viaSearch": expected.render()}
                if moved.body != expected.body:
                    if entry not in report.rebase_clashes:
                        report.rebase_clashes.append(entry)
                elif moved.sign != expected.sign:
                    report.sign_holonomies.append(entry)


def _shape(results: frozenset, config: ModelConfig):
    """Coarse type of a class, enough to rule out whole blocks of combinations."""
    if len(results) != 1:
        return ("mixed", id(results))
    (v,) = results
    body = v.body
    if body is None:
        return ("null",)
    if isinstance(body, Ket):
        return ("ket", body.domain)
    if isinstance(body, Pair):
        return ("pair", body.domains)
    spellings = representations(body, config)
    return ("correlated", frozenset((pair, rep.body.kind) for pair, rep in spellings.items()))


def _compatible(node, s1, s2) -> bool:
    """False only when no rule can combine any members of the two shapes."""
    if s1[0] in ("null", "mixed") or s2[0] in ("null", "mixed"):
        return True
    if node == "*":
        return s1[0] == "ket" and s2[0] == "ket"
    if s1[0] != s2[0]:
        return False
    if s1[0] == "ket":
        return s1[1] == s2[1]
    if s1[0] == "pair":
        return s1[1][0] == s2[1][0] or s1[1][1] == s2[1][1]
    # equal shapes may hold the same state, where the self rule applies
    return s1 == s2 or any(kind == node[0] for _, kind in s1[1] & s2[1])


def confluence_check(config: ModelConfig, max_depth: int, budget: int = DEFAULT_BUDGET,
                     products: bool = True) -> ConsistencyReport:
    """Explore every rewrite order of every expression up to ``max_depth``.

    Leaves are the signed basis states and null; inner nodes are every
    superposition kind of the model and the tensor product.  An expression
    whose normal forms differ (or where one order gets stuck while another
    succeeds) is a violation.  ``budget`` bounds the number of distinct
    class combinations evaluated.  ``products=False`` restricts the search to
    single-system expressions (much faster; used when screening many configs).
    """
    if max_depth < 2:
        raise ValueError("max_depth must be at least 2")
    report = ConsistencyReport(config.variant.value, max_depth)
    leaf_classes: dict = {}
    for leaf in _leaves(config):
        entry = leaf_classes.setdefault(frozenset([leaf]), [0, Leaf(leaf), 0])
        entry[0] += 1
    classes = dict(leaf_classes)
    nodes = _nodes(config, products)
    memo: dict = {}
    stuck = frozenset([STUCK])
    for depth in range(1, max_depth + 1):
        groups: dict = {}
        for c, (n, w, d) in classes.items():
            if c != stuck:
                groups.setdefault(_shape(c, config), []).append((c, n, w, d))
        totals = {sh: sum(m[1] for m in g) for sh, g in groups.items()}
        nxt = {k: list(v) for k, v in leaf_classes.items()}
        for node in nodes:
            for (s1, g1), (s2, g2) in cartesian(groups.items(), groups.items()):
                if not _compatible(node, s1, s2):
                    # every tree here is stuck; only the count matters
                    entry = nxt.setdefault(stuck, [0, _tree(node, g1[0][2], g2[0][2]), depth])
                    entry[0] += totals[s1] * totals[s2]
                    continue
                for (c1, n1, w1, d1), (c2, n2, w2, d2) in cartesian(g1, g2):
                    key = (node, c1, c2)
                    if key not in memo:
                        if len(memo) >= budget:
                            raise DepthTooLarge(
                                f"more than {budget} class combinations needed for depth {max_depth}")
                        memo[key] = _class_step(node, c1, c2, config)
                    out = memo[key]
                    tree_depth = 1 + max(d1, d2)
                    entry = nxt.get(out)
                    if entry is None:
                        nxt[out] = [n1 * n2, _tree(node, w1, w2), tree_depth]
                    else:
                        entry[0] += n1 * n2
                        if tree_depth < entry[2]:
                            entry[1:] = [_tree(node, w1, w2), tree_depth]
        classes = nxt
    for results, (count, witness, depth) in classes.items():
        if results == {STUCK}:
            report.ill_formed_expressions += count
            continue
        report.checked_expressions += count
        if _conflict(results, config):
            paths = explain(witness, config)
            report.violations.append(Violation(
                render(witness), depth,
                [STUCK if v == STUCK else v.render() for v in paths],
                [{"result": STUCK if v == STUCK else v.render(), "steps": p}
                 for v, ps in paths.items() for p in ps],
            ))
    report.classes = len(classes)
    report.violations.sort(key=lambda v: (v.depth, len(v.expression), v.expression))
    _rebase_consistency(config, report)
    return report
