"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run on its own with ``python tests/test_acceptance.py`` or through pytest,
where the lines are repeated in the terminal summary.
"""
from __future__ import annotations

import contextlib
import io
import json
import random
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from ontic_toy.cli import main
from ontic_toy.joint import canonicalize_joint, enumerate_correlated_domains, ontic_equal, rebase
from ontic_toy.measurement import frequencies, local_test, measure, measure_local_on_joint, trial_rng
from ontic_toy.model import standard_four_domain, standard_two_domain
from ontic_toy.oracle import vector_agreement
from ontic_toy.parser import parse, render
from ontic_toy.protocols import dense_coding, derive_correction_table, teleport, teleport_channel
from ontic_toy.states import Leaf, Product, Superpose
from ontic_toy.transform import apply, named
from ontic_toy.values import Correlated, Ket, Signed

RESULTS: list[str] = []
SEED = 20110301


def record(number: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _cli(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


# --- 1: golden identities of the two-domain model --------------------------------

# (expression, canonical spelling) that must hold with their signs
SIGNED_IDENTITIES = [
    ("|0>_x +1 |1>_x", "|0>_y"),
    ("|0>_x -1 |1>_x", "|1>_y"),
    ("|0>_y +1 |1>_y", "|0>_x"),
    ("|0>_y -1 |1>_y", "|1>_x"),
    ("|1>_x +1 |1>_x", "|1>_x"),
    ("|1>_x -1 |1>_x", "null"),
    ("|0>_y +1 null", "|0>_y"),
    ("|0>_y -1 null", "|0>_y"),
    ("null +1 |0>_y", "|0>_y"),
    ("null -1 |0>_y", "-|0>_y"),
    ("null +1 null", "null"),
    ("(|0>_x +1 |1>_x) +1 (|0>_x -1 |1>_x)", "|0>_x"),
    ("(|0>_x +1 |1>_x) -1 (|0>_x -1 |1>_x)", "|1>_x"),
    ("(|0>_y +1 |1>_y) +1 (|0>_y -1 |1>_y)", "|0>_y"),
    ("|0>_x|0>_x +1 |0>_x|1>_x", "|0>_x|0>_y"),
    ("|0>_x (|0>_y +1 |1>_y) +1 |0>_x (|0>_y -1 |1>_y)", "|0>_x|0>_y"),
    ("(|0>_x|0>_y +1 |0>_x|1>_y) +1 (|0>_x|0>_y -1 |0>_x|1>_y)", "|0>_x|0>_y"),
    ("(|0>_y|0>_y +1 |1>_y|0>_y) +1 (|0>_y|1>_y +1 |1>_y|1>_y)", "|0>_x|0>_x"),
    ("(|0>_y|0>_y -1 |1>_y|0>_y) -1 (|0>_y|1>_y -1 |1>_y|1>_y)", "|1>_x|1>_x"),
    ("|0>_x|0>_x +1 |1>_x|1>_x", "C+1^xx"),
]

# pairs of expressions that must denote the same ontic state
ONTIC_IDENTITIES = [
    ("|0>_x|0>_x +1 |1>_x|1>_x", "|0>_y|0>_y +1 |1>_y|1>_y"),
    ("|0>_x|0>_x -1 |1>_x|1>_x", "|0>_y|1>_y +1 |1>_y|0>_y"),
    ("|0>_x|1>_x +1 |1>_x|0>_x", "|0>_y|0>_y -1 |1>_y|1>_y"),
    ("|0>_x|1>_x -1 |1>_x|0>_x", "|0>_y|1>_y -1 |1>_y|0>_y"),
    ("|0>_x|0>_y +1 |1>_x|1>_y", "|0>_y|0>_x +1 |1>_y|1>_x"),
    ("|0>_x|0>_y -1 |1>_x|1>_y", "|0>_y|1>_x +1 |1>_y|0>_x"),
    ("|0>_x|1>_y +1 |1>_x|0>_y", "|0>_y|0>_x -1 |1>_y|1>_x"),
    ("|0>_x|1>_y -1 |1>_x|0>_y", "|0>_y|1>_x -1 |1>_y|0>_x"),
]

SUMMARY_TABLE = {
    ("x", "x"): [("C+1^xx", "C+1^yy"), ("C-1^xx", "A+1^yy"), ("A+1^xx", "C-1^yy"), ("A-1^xx", "A-1^yy")],
    ("x", "y"): [("C+1^xy", "C+1^yx"), ("C-1^xy", "A+1^yx"), ("A+1^xy", "C-1^yx"), ("A-1^xy", "A-1^yx")],
}


def check_golden_identities() -> bool:
    config = standard_two_domain()
    start = time.perf_counter()
    bad = []
    for expr, expected in SIGNED_IDENTITIES:
        got = canonicalize_joint(parse(expr, config), config).render()
        if got != expected:
            bad.append(f"{expr} -> {got}")
    for lhs, rhs in ONTIC_IDENTITIES:
        a = canonicalize_joint(parse(lhs, config), config)
        b = canonicalize_joint(parse(rhs, config), config)
        if not ontic_equal(a, b, config):
            bad.append(f"{lhs} != {rhs}")
    generated = {}
    for dom in enumerate_correlated_domains(config):
        other = [p for p in dom.pairs if p != dom.rep_pair][0]
        generated[dom.rep_pair] = [(row[dom.rep_pair].render(), row[other].render().lstrip("-")) for row in dom.rows]
    if generated != SUMMARY_TABLE:
        bad.append(f"summary table {generated}")
    elapsed = time.perf_counter() - start
    total = len(SIGNED_IDENTITIES) + len(ONTIC_IDENTITIES) + 8
    return record(1, not bad and elapsed < 1.0,
                  f"{total - len(bad)}/{total} golden identities in {elapsed:.3f}s" + (f"; {bad}" if bad else ""))


def test_criterion_1_golden_identities():
    assert check_golden_identities()


# --- 2: vector oracle ---------------------------------------------------------------

def check_vector_oracle() -> bool:
    start = time.perf_counter()
    report = vector_agreement(4)
    elapsed = time.perf_counter() - start
    return record(2, report.ok and elapsed < 60,
                  f"{report.trees_checked} well-formed trees to depth 4, {len(report.mismatches)} mismatches, "
                  f"{elapsed:.2f}s")


def test_criterion_2_vector_oracle():
    assert check_vector_oracle()


# --- 3: frustration -------------------------------------------------------------------

def check_frustration() -> bool:
    code, out = _cli("check", "--variant", "3d", "--depth", "3")
    data = json.loads(out)
    witness = data["minimalViolation"] or {}
    ok = (code == 0 and witness.get("expression") == "|0>_z +2 |1>_z"
          and set(witness.get("results", ())) == {"|0>_y", "|0>_x"} and witness.get("depth") == 1)
    return record(3, ok, f"exit {code}; minimal witness {witness.get('expression')} -> "
                         f"{' vs '.join(witness.get('results', ()))}")


def test_criterion_3_frustration():
    assert check_frustration()


# --- 4: four-domain consistency and the diff set ----------------------------------------

EXPECTED_DIFFS = {
    ("expansion", "|0>_z -1 |1>_y", "|0>_y -1 |1>_y"),
    ("pattern", "|0>_x|0>_x -1 |1>_x|0>_x", "|0>_x|1>_x -1 |1>_x|0>_x"),
    ("pattern", "|0>_x|0>_y -1 |1>_x|0>_y", "|0>_x|1>_y -1 |1>_x|0>_y"),
    ("map-list", "|0>_x +3 |1>_x -> |0>_x", "|0>_x +3 |1>_x -> |0>_z"),
    ("map-list", "|0>_x -3 |1>_x -> |1>_x", "|0>_x -3 |1>_x -> |1>_z"),
    ("map-list", "|0>_t -3 |1>_t -> |0>_y", "|0>_t -3 |1>_t -> |1>_y"),
    ("map-list", "|0>_x -2 |1>_x -> |0>_t", "|0>_x -2 |1>_x -> |1>_t"),
    ("correlated-table", "C+2^tt", "C-2^tt"),
    ("outcome-table", "|1>_z", "|1>_t"),
    ("outcome-table", "|0>_z", "|0>_t"),
}


def check_four_domain() -> bool:
    code, out = _cli("check", "--variant", "4d", "--depth", "3")
    data = json.loads(out)
    got = {(d["category"], d["published"], d["derived"]) for d in data["publishedDiffs"]}
    missing, extra = EXPECTED_DIFFS - got, got - EXPECTED_DIFFS
    ok = code == 0 and not data["violations"] and not data["rebaseClashes"] and not missing and not extra
    detail = (f"exit {code}; {len(data['violations'])} violations; {len(got)} diffs "
              f"({len(missing)} missing, {len(extra)} unexpected)")
    return record(4, ok, detail)


def test_criterion_4_four_domain_consistency():
    assert check_four_domain()


# --- 5: dense coding -------------------------------------------------------------------

DENSE_CODING_ROWS = {
    "2d": [("I", "C+1^xx", "C+1^yy"), ("Px", "A+1^xx", "C-1^yy"),
           ("Py", "C-1^xx", "A+1^yy"), ("PyPx", "A-1^xx", "A-1^yy")],
}


def check_dense_coding() -> bool:
    runs = wins = 0
    for config in (standard_two_domain(), standard_four_domain()):
        trial = 0
        for message in ("00", "01", "10", "11"):
            for _ in range(100):
                t = dense_coding(message, None, config, trial_rng(SEED, trial))
                trial += 1
                runs += 1
                wins += t.success and t.output == message
    config = standard_two_domain()
    shared = canonicalize_joint(parse("C+1^xx"), config)
    rows_ok = all(
        ontic_equal(apply(named(g, config), shared, config), canonicalize_joint(parse(label), config), config)
        for g, xx, yy in DENSE_CODING_ROWS["2d"] for label in (xx, yy)
    )
    return record(5, wins == runs == 800 and rows_ok,
                  f"{wins}/{runs} messages decoded; table rows {'match' if rows_ok else 'differ'}")


def test_criterion_5_dense_coding():
    assert check_dense_coding()


# --- 6: teleportation ------------------------------------------------------------------

CORRECTIONS = {
    "2d": {"C+1^xx": "I", "C-1^xx": "Py", "A+1^xx": "Px", "A-1^xx": "PyPx"},
    "4d": {"C+1^xx": "I", "C-1^xx": "Pyt", "A+1^xx": "Pxz", "A-1^xx": "PytPxz"},
}


def check_teleportation() -> bool:
    branches = good = 0
    tables_ok = True
    for name, config in (("2d", standard_two_domain()), ("4d", standard_four_domain())):
        rows = teleport_channel(config)
        branches += len(rows)
        good += sum(r["ok"] for r in rows)
        tables_ok &= derive_correction_table(config) == CORRECTIONS[name]
    return record(6, good == branches == 96 and tables_ok,
                  f"{good}/{branches} branches give back the input; corrections "
                  f"{'match' if tables_ok else 'differ'}")


def test_criterion_6_teleportation():
    assert check_teleportation()


# --- 7: measurement statistics ----------------------------------------------------------

def check_statistics() -> bool:
    start = time.perf_counter()
    config = standard_two_domain()
    n = 10_000
    counts = frequencies(canonicalize_joint(parse("|0>_y"), config), local_test("x", config), n, SEED, config)
    local = counts[0] / n
    four = standard_four_domain()
    inputs = [Signed(s, k) for k in four.basis_states() for s in (1, -1)]
    bell = Counter()
    for i in range(n):
        rng = trial_rng(SEED, i)
        t = teleport(inputs[i % len(inputs)], None, four, rng)
        bell[t.events[0]["outcome"]] += 1
    marginals = [bell[j] / n for j in range(4)]
    elapsed = time.perf_counter() - start
    ok = abs(local - 0.5) <= 0.02 and all(abs(m - 0.25) <= 0.02 for m in marginals) and elapsed < 10
    return record(7, ok, f"local p(0)={local:.4f}; Bell marginals "
                         f"{', '.join(f'{m:.4f}' for m in marginals)}; {elapsed:.2f}s")


def test_criterion_7_statistics():
    assert check_statistics()


# --- 8: parity --------------------------------------------------------------------------

def check_parity() -> bool:
    violations = cases = 0
    for config in (standard_two_domain(), standard_four_domain()):
        same_basis = [d for d in enumerate_correlated_domains(config) if d.rep_pair[0] == d.rep_pair[1]]
        for dom in same_basis:
            for row in dom.rows:
                for pair in dom.pairs:
                    state = row[dom.rep_pair]
                    expected = 0 if rebase(state, pair, config).body.parity == "C" else 1
                    for seed in range(1000):
                        rng = random.Random(seed)
                        first, post = measure_local_on_joint(state, 1, pair[0], rng, config)
                        second = measure(post, local_test(pair[1], config, system=2), rng, config)
                        cases += 1
                        violations += (first ^ second.outcome) != expected
    return record(8, violations == 0, f"{cases} bilateral measurements, {violations} parity violations")


def test_criterion_8_parity():
    assert check_parity()


# --- 9: parser round trip --------------------------------------------------------------------

def _random_expr(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        pick = rng.random()
        if pick < 0.1:
            return Leaf(Signed(1, None))
        sign = rng.choice((1, -1))
        if pick < 0.3:
            return Leaf(Signed(sign, Correlated(rng.choice("CA"), rng.choice((1, -1)), rng.choice((1, 2, 3)),
                                                (rng.choice("xyzt"), rng.choice("xyzt")))))
        return Leaf(Signed(sign, Ket(rng.choice("xyzt"), rng.randrange(2))))
    left, right = _random_expr(rng, depth - 1), _random_expr(rng, depth - 1)
    if rng.random() < 0.3:
        return Product(left, right)
    return Superpose(rng.choice((1, 2, 3)), rng.choice((1, -1)), left, right)


def check_round_trip() -> bool:
    rng = random.Random(SEED)
    n = 10_000
    failures = 0
    for _ in range(n):
        expr = _random_expr(rng, rng.randrange(1, 6))
        text = render(expr)
        failures += parse(text) != expr or render(parse(text)) != text
    return record(9, failures == 0, f"{n} random expressions, {failures} round-trip failures")


def test_criterion_9_parser_round_trip():
    assert check_round_trip()


CHECKS = [check_golden_identities, check_vector_oracle, check_frustration, check_four_domain,
          check_dense_coding, check_teleportation, check_statistics, check_parity, check_round_trip]


if __name__ == "__main__":
    results = [check() for check in CHECKS]
    sys.exit(0 if all(results) else 1)
