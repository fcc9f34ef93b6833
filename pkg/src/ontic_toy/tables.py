"""Machine-generated tables: products, correlated domains and the protocol tables.

Every cell is computed by the engine; the JSON form is stable (``"schema": 1``)
and the text form is laid out for reading side by side with printed tables.
"""
from __future__ import annotations

from .errors import UndefinedForVariant
from .joint import enumerate_correlated_domains
from .model import ModelConfig, Variant
from .protocols import default_shared, dense_coding_images, derive_correction_table, emit_outcome_table
from .values import Ket, Pair, Signed, pair_key

WHICH = ("products", "correlated", "dense-coding", "teleport-outcomes", "teleport-corrections")


def product_table(config: ModelConfig) -> dict:
    """The product states, one column of four per pair of local domains."""
    pairs = sorted(((a, b) for a in config.domains for b in config.domains), key=pair_key)
    columns = {}
    for a, b in pairs:
        columns["D_" + a + b] = [Signed(1, Pair(Ket(a, i), Ket(b, j))).render() for i in (0, 1) for j in (0, 1)]
    return columns


def correlated_table(config: ModelConfig) -> list[dict]:
    """Each correlated domain with every state spelled in every legal pair of bases."""
    out = []
    for dom in enumerate_correlated_domains(config):
        rows = []
        for row in dom.rows:
            rows.append({"".join(pair): value.render() for pair, value in row.items()})
        out.append({"basis": "".join(dom.rep_pair), "kind": dom.kind,
                    "pairs": ["".join(p) for p in dom.pairs], "states": rows})
    return out


def dense_coding_table(config: ModelConfig) -> list[dict]:
    shared = default_shared()
    rows = []
    for i, (g, image) in enumerate(dense_coding_images(shared, config)):
        rows.append({"bits": format(i, "02b"), "transformation": g.name,
                     "shared": shared.render(), "result": image.render()})
    return rows


def build(config: ModelConfig, which: str | None = None) -> dict:
    """All tables for ``config`` (or just ``which``) as a JSON-ready dict."""
    makers = {
        "products": product_table,
        "correlated": correlated_table,
        "dense-coding": dense_coding_table,
        "teleport-outcomes": emit_outcome_table,
        "teleport-corrections": derive_correction_table,
    }
    protocol_tables = {"dense-coding", "teleport-outcomes", "teleport-corrections"}
    names = WHICH if which is None else (which,)
    out: dict = {"schema": 1, "variant": config.variant.value}
    for name in names:
        if name not in makers:
            raise ValueError(f"unknown table {name!r}; choose from {', '.join(WHICH)}")
        if name in protocol_tables and config.variant not in (Variant.TWO_DOMAIN, Variant.FOUR_DOMAIN):
            if which is not None:
                raise UndefinedForVariant(f"no {name} table for the {config.variant.value} model")
            continue
        out[name] = makers[name](config)
    return out


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def to_text(tables: dict) -> str:
    """Aligned plain-text rendering of :func:`build` output."""
    parts = []
    if "products" in tables:
        cols = tables["products"]
        header = list(cols)
        parts.append("product states\n" + _grid(header, [list(r) for r in zip(*cols.values())]))
    for dom in tables.get("correlated", ()):
        header = dom["pairs"]
        rows = [[state[p] for p in header] for state in dom["states"]]
        parts.append(f"correlated domain {dom['basis']} (kind {dom['kind']})\n" + _grid(header, rows))
    if "dense-coding" in tables:
        rows = [[r["bits"], r["transformation"], r["result"]] for r in tables["dense-coding"]]
        parts.append("dense coding\n" + _grid(["bits", "operation", "state"], rows))
    if "teleport-outcomes" in tables:
        t = tables["teleport-outcomes"]
        rows = [[k] + [v[c] for c in t["columns"]] for k, v in t["rows"].items()]
        parts.append("teleportation outcomes\n" + _grid(["input"] + t["columns"], rows))
    if "teleport-corrections" in tables:
        rows = [[k, v] for k, v in tables["teleport-corrections"].items()]
        parts.append("teleportation corrections\n" + _grid(["outcome", "correction"], rows))
    return "\n\n".join(parts) + "\n"
