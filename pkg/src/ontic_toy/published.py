"""Transcriptions of the published tables, and an audit of them against the engine.

Everything in this module is data as printed, spelled in the ASCII syntax of
:mod:`ontic_toy.parser`; nothing here feeds the engine.  :func:`published_diffs`
recomputes every audited cell from the rewrite rules and lists the cells where
print and derivation disagree.
"""
from __future__ import annotations

from itertools import product as cartesian

from .errors import ToyModelError
from .joint import canonicalize_joint, enumerate_correlated_domains, expand, ontic_equal, rebase
from .model import MapEdge, ModelConfig, Variant, standard_four_domain, standard_two_domain
from .parser import parse, render
from .protocols import derive_correction_table, emit_outcome_table, teleport_branches
from .transform import apply, dense_coding_set
from .values import Ket, Signed

# --- transcriptions ---------------------------------------------------------------

# single-system map list of the four-domain model, one (kind, source, target,
# plus image, minus image) per printed pair of lines
FOUR_DOMAIN_MAP_LIST = (
    (1, "x", "y", 0, 1), (2, "y", "z", 0, 1), (1, "z", "t", 0, 1), (2, "t", "x", 0, 1),
    (1, "y", "x", 0, 1), (2, "z", "y", 0, 1), (1, "t", "z", 0, 1), (2, "x", "t", 0, 0),
    (3, "x", "x", 0, 1), (3, "z", "x", 0, 1), (3, "y", "t", 0, 1), (3, "t", "y", 0, 0),
)

# (kind, source) of the printed lines that cannot all be right
SUSPECT_MAPS = ((3, "x"), (3, "t"), (2, "x"))

# y-basis expansion of |1>_x inside the joint distributivity example
DISTRIBUTIVITY_EXAMPLE_EXPANSION = ("|1>_x", "|0>_z -1 |1>_y")

# correlated domains of the two-domain model: (superposition, printed equal spelling)
SAME_BASIS_LINES = (
    ("|0>_x|0>_x +1 |1>_x|1>_x", "|0>_y|0>_y +1 |1>_y|1>_y"),
    ("|0>_x|0>_x -1 |1>_x|1>_x", "|0>_y|1>_y +1 |1>_y|0>_y"),
    ("|0>_x|1>_x +1 |1>_x|0>_x", "|0>_y|0>_y -1 |1>_y|1>_y"),
    ("|0>_x|0>_x -1 |1>_x|0>_x", "|0>_y|1>_y -1 |1>_y|0>_y"),
)
CROSS_BASIS_LINES = (
    ("|0>_x|0>_y +1 |1>_x|1>_y", "|0>_y|0>_x +1 |1>_y|1>_x"),
    ("|0>_x|0>_y -1 |1>_x|1>_y", "|0>_y|1>_x +1 |1>_y|0>_x"),
    ("|0>_x|1>_y +1 |1>_x|0>_y", "|0>_y|0>_x -1 |1>_y|1>_x"),
    ("|0>_x|0>_y -1 |1>_x|0>_y", "|0>_y|1>_x -1 |1>_y|0>_x"),
)

# two-domain summary: product in xx, product in yy, then the two equal labels
TWO_DOMAIN_SUMMARY = (
    ("|0>_x|0>_x", "|0>_y|0>_y", "C+1^xx", "C+1^yy", "|0>_x|0>_y", "|0>_y|0>_x", "C+1^xy", "C+1^yx"),
    ("|0>_x|1>_x", "|0>_y|1>_y", "C-1^xx", "A+1^yy", "|0>_x|1>_y", "|0>_y|1>_x", "C-1^xy", "A+1^yx"),
    ("|1>_x|0>_x", "|1>_y|0>_y", "A+1^xx", "C-1^yy", "|1>_x|0>_y", "|1>_y|0>_x", "A+1^xy", "C-1^yx"),
    ("|1>_x|1>_x", "|1>_y|1>_y", "A-1^xx", "A-1^yy", "|1>_x|1>_y", "|1>_y|1>_x", "A-1^xy", "A-1^yx"),
)

FOUR_DOMAIN_CORRELATED = (
    ("C+1^xx", "C+1^yy", "C+2^zz", "C+2^tt"),
    ("C-1^xx", "A+1^yy", "C-2^zz", "A+2^tt"),
    ("A+1^xx", "C-1^yy", "A+2^zz", "C+2^tt"),
    ("A-1^xx", "A-1^yy", "A-2^zz", "A-2^tt"),
)

# sender's operation on C+1^xx -> (label in xx, label in yy)
DENSE_CODING_TABLE = {
    "2d": (("I", "C+1^xx", "C+1^yy"), ("Px", "A+1^xx", "C-1^yy"),
           ("Py", "C-1^xx", "A+1^yy"), ("PyPx", "A-1^xx", "A-1^yy")),
}
DENSE_CODING_SETS = {"2d": ("I", "Px", "Py", "PyPx"), "4d": ("I", "Pxz", "Pyt", "PytPxz")}

CORRECTIONS = {
    "2d": {"C+1^xx": "I", "C-1^xx": "Py", "A+1^xx": "Px", "A-1^xx": "PyPx"},
    "4d": {"C+1^xx": "I", "C-1^xx": "Pyt", "A+1^xx": "Pxz", "A-1^xx": "PytPxz"},
}

# teleportation branch expansions: input -> {outcome label: receiver state}
TELEPORT_EXPANSIONS = {
    "2d": {
        "|0>_x": {"C+1^xx": "|0>_x", "C-1^xx": "|0>_x", "A+1^xx": "|1>_x", "A-1^xx": "|1>_x"},
        "|1>_x": {"A+1^xx": "|0>_x", "A-1^xx": "-|0>_x", "C+1^xx": "|1>_x", "C-1^xx": "-|1>_x"},
        "|0>_y": {"C+1^xx": "|0>_y", "A+1^xx": "|0>_y", "C-1^xx": "|1>_y", "A-1^xx": "|1>_y"},
        "|1>_y": {"C-1^xx": "|0>_y", "A-1^xx": "-|0>_y", "C+1^xx": "|1>_y", "A+1^xx": "-|1>_y"},
    },
    "4d": {
        "|0>_x": {"C+1^xx": "|0>_x", "C-1^xx": "|0>_x", "A+1^xx": "|1>_x", "A-1^xx": "|1>_x"},
        "|1>_x": {"A+1^xx": "|0>_x", "A-1^xx": "-|0>_x", "C+1^xx": "|1>_x", "C-1^xx": "-|1>_x"},
        "|0>_y": {"C+1^yy": "|0>_y", "C-1^yy": "|0>_y", "A+1^yy": "|1>_y", "A-1^yy": "|1>_y"},
        "|1>_y": {"A+1^yy": "|0>_y", "A-1^yy": "-|0>_y", "C+1^yy": "|1>_y", "C-1^yy": "-|1>_y"},
        "|0>_z": {"C+2^zz": "|0>_z", "C-2^zz": "|0>_z", "A+2^zz": "|1>_z", "A-2^zz": "|1>_z"},
        "|1>_z": {"A+2^zz": "|0>_z", "A-2^zz": "-|0>_z", "C+2^zz": "|1>_z", "C-2^zz": "-|1>_z"},
        "|0>_t": {"C+2^tt": "|0>_t", "C-2^tt": "|0>_t", "A+2^tt": "|1>_t", "A-2^tt": "|1>_t"},
        "|1>_t": {"A+2^tt": "|0>_t", "A-2^tt": "-|0>_t", "C+2^tt": "|1>_t", "C-2^tt": "-|1>_t"},
    },
}

OUTCOME_COLUMNS = ("C+1^xx", "C-1^xx", "A+1^xx", "A-1^xx")
FOUR_DOMAIN_OUTCOMES = {
    "|0>_x": ("|0>_x", "|0>_x", "|1>_x", "|1>_x"),
    "|1>_x": ("|1>_x", "|1>_x", "|0>_x", "|0>_x"),
    "|0>_y": ("|0>_y", "|1>_y", "|0>_y", "|1>_y"),
    "|1>_y": ("|1>_y", "|0>_y", "|1>_y", "|0>_y"),
    "|0>_z": ("|0>_z", "|0>_z", "|1>_z", "|1>_z"),
    "|1>_z": ("|1>_z", "|1>_z", "|0>_z", "|0>_z"),
    "|0>_t": ("|0>_t", "|1>_z", "|0>_t", "|1>_t"),
    "|1>_t": ("|1>_t", "|0>_z", "|1>_t", "|0>_t"),
}

# prose claims with a count that the constructions contradict
TEXT_NOTES = (
    {"location": "four-domain dense coding, prose", "published": "four bits",
     "derived": "2 bits (4 operations, 4-outcome test)"},
    {"location": "four-domain teleportation, prose", "published": "six possible ontic states",
     "derived": "8 ontic states (4 domains x 2)"},
)


def published_four_domain_config() -> ModelConfig:
    """The four-domain map list exactly as printed, suspect lines included."""
    edges = tuple(MapEdge(*row) for row in FOUR_DOMAIN_MAP_LIST)
    return ModelConfig(Variant.RAW, tuple("xyzt"), edges)


# --- audit ----------------------------------------------------------------------


def _diff(category: str, location: str, published: str, derived: str) -> dict:
    return {"category": category, "location": location, "published": published, "derived": derived}


def _value(text: str, config: ModelConfig) -> Signed | None:
    try:
        return canonicalize_joint(parse(text, config), config)
    except ToyModelError:
        return None


def _with_maps(replacements: dict) -> ModelConfig:
    """The printed map list with the given ``(kind, source) -> edge`` substitutions."""
    edges = []
    for row in FOUR_DOMAIN_MAP_LIST:
        edges.append(replacements.get((row[0], row[1]), MapEdge(*row)))
    return ModelConfig(Variant.RAW, tuple("xyzt"), tuple(edges))


def _candidates(kind: int, source: str):
    for target in "xyzt":
        for plus, minus in cartesian((0, 1), repeat=2):
            yield MapEdge(kind, source, target, plus, minus)


def _consistent(config: ModelConfig) -> bool:
    from .oracle import confluence_check

    return confluence_check(config, 2, products=False).ok


def completion_search(joint: bool = False) -> list[dict]:
    """Every way of re-filling the suspect map lines that passes the confluence check.

    With ``joint=False`` each suspect line is varied on its own while the
    others hold their corrected value (24 configurations); ``joint=True``
    varies all of them together (4096 configurations, slow).
    """
    corrected = {(e.kind, e.source): e for e in standard_four_domain().edges
                 if (e.kind, e.source) in SUSPECT_MAPS}
    survivors = []
    if joint:
        pools = [list(_candidates(k, s)) for k, s in SUSPECT_MAPS]
        for choice in cartesian(*pools):
            replacements = {(e.kind, e.source): e for e in choice}
            if _consistent(_with_maps(replacements)):
                survivors.append({f"{e.kind}:{e.source}": e.to_dict() for e in choice})
        return survivors
    for key in SUSPECT_MAPS:
        for cand in _candidates(*key):
            if cand.target != corrected[key].target and key != (3, "x"):
                continue  # only the x kind-3 target is in doubt
            replacements = dict(corrected)
            replacements[key] = cand
            if _consistent(_with_maps(replacements)):
                survivors.append({f"{cand.kind}:{cand.source}": cand.to_dict()})
    return survivors


def _map_line(kind: int, source: str, op: int, target: Ket) -> str:
    return f"|0>_{source} {'+' if op > 0 else '-'}{kind} |1>_{source} -> {target.render()}"


def map_list_diffs(search: list[dict] | None = None) -> list[dict]:
    """Printed map lines that differ from the unique consistent completion."""
    search = completion_search() if search is None else search
    chosen: dict = {}
    for item in search:
        for key, edge in item.items():
            chosen.setdefault(key, []).append(MapEdge.from_dict(edge))
    out = []
    for kind, source in SUSPECT_MAPS:
        options = chosen.get(f"{kind}:{source}", [])
        printed = next(MapEdge(*r) for r in FOUR_DOMAIN_MAP_LIST if r[:2] == (kind, source))
        if len(options) != 1:
            out.append(_diff("map-list", f"four-domain map list, kind {kind} from {source}",
                             _map_line(kind, source, 1, printed.image(1)),
                             f"{len(options)} consistent completions"))
            continue
        derived = options[0]
        for op in (1, -1):
            if printed.image(op) != derived.image(op):
                out.append(_diff("map-list",
                                 f"four-domain map list, kind {kind} from {source}, {'plus' if op > 0 else 'minus'} line",
                                 _map_line(kind, source, op, printed.image(op)),
                                 _map_line(kind, source, op, derived.image(op))))
    return out


def _y_expansion(k: Ket, config: ModelConfig) -> str:
    for op in (1, -1):
        expr = parse(f"|0>_y {'+' if op > 0 else '-'}1 |1>_y", config)
        if canonicalize_joint(expr, config).body == k:
            return render(expr)
    raise ToyModelError(f"{k.render()} has no y-basis expansion")


def two_domain_diffs() -> list[dict]:
    config = standard_two_domain()
    out = []
    target, printed = DISTRIBUTIVITY_EXAMPLE_EXPANSION
    derived = _y_expansion(parse(target).value.body, config)
    if _value(printed, config) is None or printed != derived:
        out.append(_diff("expansion", f"joint distributivity example, y-basis expansion of {target}",
                         printed, derived))
    for name, lines in (("same-basis", SAME_BASIS_LINES), ("cross-basis", CROSS_BASIS_LINES)):
        for i, (lhs, rhs) in enumerate(lines, start=1):
            left, right = _value(lhs, config), _value(rhs, config)
            if left is not None and right is not None and ontic_equal(left, right, config):
                continue
            # what the left side must be for the printed right side to hold
            first = parse(lhs).left
            pair = (first.left.value.body.domain, first.right.value.body.domain)
            spelled = rebase(right, pair, config)
            derived = render(expand(Signed(1, spelled.body)))
            out.append(_diff("pattern", f"{name} correlated domain, line {i}, left side", lhs, derived))
    return out


def _summary_diffs() -> list[dict]:
    config = standard_two_domain()
    out = []
    for r, row in enumerate(TWO_DOMAIN_SUMMARY, start=1):
        for a, b in ((row[2], row[3]), (row[6], row[7])):
            if not ontic_equal(_value(a, config), _value(b, config), config):
                out.append(_diff("table", f"two-domain summary, row {r}", f"{a}={b}", "not equal"))
    return out


def four_domain_table_diffs() -> list[dict]:
    config = standard_four_domain()
    dom = next(d for d in enumerate_correlated_domains(config) if d.rep_pair == ("x", "x") and d.kind == 1)
    out = []
    columns = (("x", "x"), ("y", "y"), ("z", "z"), ("t", "t"))
    for printed_row, derived_row in zip(FOUR_DOMAIN_CORRELATED, dom.rows):
        for pair, cell in zip(columns, printed_row):
            derived = derived_row[pair]
            if not ontic_equal(_value(cell, config), derived, config):
                clash = [row[0] for row in FOUR_DOMAIN_CORRELATED if row is not printed_row
                         and row[columns.index(pair)] == cell]
                where = f"four-domain same-basis correlated table, row {printed_row[0]}, column {''.join(pair)}"
                if clash:
                    where += f" (same entry as row {', '.join(clash)})"
                out.append(_diff("correlated-table", where, cell, Signed(1, derived.body).render()))
    return out


def outcome_table_diffs() -> list[dict]:
    config = standard_four_domain()
    table = emit_outcome_table(config)
    out = []
    for row, printed in FOUR_DOMAIN_OUTCOMES.items():
        for col, cell in zip(OUTCOME_COLUMNS, printed):
            derived = _value(table["rows"][row][col], config)
            if _value(cell, config).body != derived.body:
                out.append(_diff("outcome-table", f"four-domain teleportation outcomes, row {row}, column {col}",
                                 cell, Signed(1, derived.body).render()))
    return out


def protocol_diffs(variant: str) -> list[dict]:
    """Dense coding, corrections and branch expansions (expected to agree)."""
    config = standard_two_domain() if variant == "2d" else standard_four_domain()
    out = []
    shared = _value("C+1^xx", config)
    names = [g.name for g in dense_coding_set(config)]
    if tuple(names) != DENSE_CODING_SETS[variant]:
        out.append(_diff("protocol", f"{variant} dense-coding operations",
                         ", ".join(DENSE_CODING_SETS[variant]), ", ".join(names)))
    for g_name, xx, yy in DENSE_CODING_TABLE.get(variant, ()):
        g = next(g for g in dense_coding_set(config) if g.name == g_name)
        image = apply(g, shared, config, system=1)
        for label in (xx, yy):
            if not ontic_equal(image, _value(label, config), config):
                out.append(_diff("protocol", f"{variant} dense-coding table, row {g_name}", label, image.render()))
    derived = derive_correction_table(config)
    for label, g_name in CORRECTIONS[variant].items():
        if derived.get(label) != g_name:
            out.append(_diff("protocol", f"{variant} teleportation corrections, {label}", g_name, derived.get(label)))
    for unknown, branches in TELEPORT_EXPANSIONS[variant].items():
        k = _value(unknown, config)
        pair = next(iter(branches)).split("^")[1]
        derived_branches = teleport_branches(k, config, read_in=(pair[0], pair[1]))
        for label, state in branches.items():
            want = _value(label, config)
            got = next(s for b, s in derived_branches if ontic_equal(b, want, config))
            if got.body != _value(state, config).body:
                out.append(_diff("protocol", f"{variant} teleportation expansion of {unknown}, branch {label}",
                                 state, got.render()))
    return out


def published_diffs(variant: str, search: list[dict] | None = None) -> list[dict]:
    """Every audited cell where the printed value and the derivation disagree."""
    variant = Variant(variant).value
    if variant not in ("2d", "4d"):
        return []
    out = two_domain_diffs() + _summary_diffs() + protocol_diffs("2d")
    if variant == "4d":
        out += map_list_diffs(search) + four_domain_table_diffs() + outcome_table_diffs() + protocol_diffs("4d")
    return out
