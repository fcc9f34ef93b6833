import pytest

from ontic_toy.errors import UndefinedForVariant
from ontic_toy.model import frustrated_three_domain, standard_four_domain, standard_two_domain
from ontic_toy.tables import build, to_text

TWO = standard_two_domain()


def test_sixteen_product_states():
    products = build(TWO, "products")["products"]
    assert list(products) == ["D_xx", "D_xy", "D_yx", "D_yy"]
    assert products["D_xx"] == ["|0>_x|0>_x", "|0>_x|1>_x", "|1>_x|0>_x", "|1>_x|1>_x"]
    assert sum(len(v) for v in products.values()) == 16


def test_correlated_domains():
    tables = build(TWO, "correlated")["correlated"]
    assert [(t["basis"], t["pairs"]) for t in tables] == [("xx", ["xx", "yy"]), ("xy", ["xy", "yx"])]
    assert tables[0]["states"][1] == {"xx": "C-1^xx", "yy": "A+1^yy"}


def test_four_domain_correlated_columns():
    tables = build(standard_four_domain(), "correlated")["correlated"]
    same = next(t for t in tables if t["basis"] == "xx" and t["kind"] == 1)
    assert same["pairs"] == ["xx", "yy", "zz", "tt"]
    assert same["states"][2]["tt"] == "C-2^tt"


def test_three_domain_skips_protocol_tables():
    tables = build(frustrated_three_domain())
    assert "dense-coding" not in tables and "products" in tables
    with pytest.raises(UndefinedForVariant):
        build(frustrated_three_domain(), "teleport-corrections")


def test_unknown_table():
    with pytest.raises(ValueError):
        build(TWO, "nope")


def test_text_layout():
    text = to_text(build(TWO, "teleport-corrections"))
    assert text.splitlines()[:3] == ["teleportation corrections", "outcome  correction", "-------  ----------"]
