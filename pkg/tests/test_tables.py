from pathlib import Path

import pytest

import oracles
from ymstrata.errors import UnsupportedGroup, UnsupportedStratum
from ymstrata.series import ONE_MINUS, RationalFunction
from ymstrata.tables import (PoincareTable, bg_series, default_table, flat_closed_form,
                             parse_denominator, stratum_series)

DATA = Path(__file__).resolve().parents[1] / "src" / "ymstrata" / "data" / "tables.txt"


def rf(num, *ks):
    return RationalFunction(num, [(ONE_MINUS, k, 1) for k in ks])


def poly(*factors):
    out = [1]
    for f in factors:
        out = oracles.pmul(out, f)
    return out


def test_table_loads_with_version():
    t = default_table()
    assert t.version == "1"
    assert {"U1", "U2", "SU2", "U3", "SU3"} <= set(t.groups())
    assert {e.status for e in t.entries} == {"published", "derived", "external"}


def test_bg_examples():
    assert bg_series("SU2", 1) == rf([1, 0, 0, 1], 4)
    assert bg_series("U3", 0) == rf([1], 2, 4, 6)
    assert [int(c) for c in bg_series("U2", 1).expand(4).coeffs] == [1, 1, 1, 2, 3]
    assert bg_series("U1", 3) == RationalFunction(oracles.ppow([1, 1], 3), [(ONE_MINUS, 2, 1)])


def test_bg_external_gated():
    with pytest.raises(UnsupportedGroup):
        bg_series("U4", 1)
    assert bg_series("U4", 0, allow_external=True) == rf([1], 2, 4, 6, 8)
    with pytest.raises(UnsupportedGroup):
        bg_series("Sp2", 1)


def test_stratum_examples():
    assert stratum_series("SU2", "(r,-r)", 2) == RationalFunction([1, 2, 1])
    assert stratum_series("U2", "(r,-r)", 0) == rf([1], 2)
    with pytest.raises(UnsupportedStratum):
        stratum_series("U2", "(r,0,-r)", 1)


def test_stratum_u3_genus_one_expansion():
    got = [int(c) for c in stratum_series("U3", "(r,0,-r)", 1).expand(3).coeffs]
    want = oracles.divide(oracles.ppow([1, 1], 3), oracles.ppow(oracles.one_minus(2), 2), 3)
    assert got == want == [1, 3, 5, 7]


def test_flat_examples():
    assert flat_closed_form("U2", 0, 1) == rf([2], 2, 4)
    assert flat_closed_form("SU2", 0) == rf([2], 4)
    g = 1
    num = oracles.padd(poly(oracles.one_plus(3), oracles.one_plus(5)),
                       poly(oracles.mono(3 * g), [1, 2, 1], [1, 0, 1, 0, 1]))
    assert flat_closed_form("SU3", 1) == RationalFunction(num, [(ONE_MINUS, 4, 1), (ONE_MINUS, 6, 1)])


@pytest.mark.parametrize("g", range(0, 9))
def test_flat_u2_parity_branches(g):
    a = oracles.ppow([1, 1], g)
    plain = poly(a, oracles.padd(oracles.ppow(oracles.one_plus(3), g), poly(oracles.mono(g), a)))
    shifted = poly(a, oracles.padd(oracles.ppow(oracles.one_plus(3), g), poly(oracles.mono(g + 2), a)))
    assert flat_closed_form("U2", g, (-1) ** g) == RationalFunction(plain, [(ONE_MINUS, 2, 1), (ONE_MINUS, 4, 1)])
    assert flat_closed_form("U2", g, (-1) ** (g + 1)) == RationalFunction(shifted, [(ONE_MINUS, 2, 1), (ONE_MINUS, 4, 1)])
    su = flat_closed_form("SU2", g)
    branch = g if g % 2 == 0 else g + 2
    assert su == RationalFunction(oracles.padd(oracles.ppow(oracles.one_plus(3), g), poly(oracles.mono(branch), a)),
                                  [(ONE_MINUS, 4, 1)])


def test_flat_u2_needs_parity():
    with pytest.raises(ValueError):
        flat_closed_form("U2", 1)


def test_negative_genus_rejected():
    with pytest.raises(ValueError):
        bg_series("U2", -1)


def test_formula_text():
    entry = default_table().find("SU2", "bg", 2)
    assert entry.formula() == "((1+t^3)^g)/((1-t^4))"
    assert entry.formula(2) == "((1+t^3)^2)/((1-t^4))"
    assert entry.status == "published"


def test_denominator_parser():
    assert parse_denominator("1-t^2, (1-t^2)^2, 1+t") == (("one_minus", 2, 1), ("one_minus", 2, 2), ("one_plus", 1, 1))
    assert parse_denominator("") == ()
    with pytest.raises(ValueError):
        parse_denominator("1-2t")


def test_from_path_matches_default(tmp_path):
    copy = tmp_path / "t.txt"
    copy.write_text(DATA.read_text())
    t = PoincareTable.from_path(copy)
    assert len(t.entries) == len(default_table().entries)


@pytest.mark.parametrize("bad", [
    "U2 | bg | any | (1+t)^g",
    "U2 | flavour | any | 1 | 1-t^2 | published",
    "U2 | bg | any | 1 | 1-t^2 | rumour",
    "U2 | bg | any | (1+t | 1-t^2 | published",
    "U2 | bg | any | 1 | 2-t | published",
])
def test_malformed_tables(bad):
    with pytest.raises(ValueError):
        PoincareTable.from_text(bad)


def test_numerator_rejects_unknown_names():
    t = PoincareTable.from_text("U2 | bg | any | x + 1 | 1-t^2 | published")
    with pytest.raises(ValueError):
        bg_series("U2", 1, table=t)


def test_ambiguous_entries():
    t = PoincareTable.from_text("U2 | bg | any | 1 | 1-t^2 | published\nU2 | bg | any | 2 | 1-t^2 | published")
    with pytest.raises(ValueError):
        bg_series("U2", 0, table=t)


def test_rp2_point_counts_match_table():
    # Hom(pi_1 RP^2, G) = {a : a^2 = 1}; classes diag(1^p, (-1)^q)
    N = 40
    cases = [("U2", "U", 2, 1), ("U2", "U", 2, -1), ("SU2", "SU", 2, 1),
             ("U3", "U", 3, 1), ("U3", "U", 3, -1), ("SU3", "SU", 3, 1)]
    for key, group, n, det in cases:
        parity = det if group == "U" else None
        table = flat_closed_form(key, 0, parity).expand(N)
        assert list(table.coeffs) == oracles.rp2_flat_series(group, n, det, N), key
    assert oracles.rp2_class_count("U", 2, 1) == 2 and oracles.rp2_class_count("SU", 2, 1) == 2
