from fractions import Fraction

import pytest

from sl2cert import chartab, groups
from sl2cert.groups import ClassLabel


def test_degrees_and_count(table13):
    q = 13
    degs = sorted(c.degree for c in table13.characters)
    want = sorted([1, q] + [q + 1] * 5 + [q - 1] * 6
                  + [(q + 1) // 2] * 2 + [(q - 1) // 2] * 2)
    assert degs == want
    assert table13.verify_degrees()


def test_row_orthogonality(table13):
    assert table13.verify_row_orthogonality()


def test_column_orthogonality(table13):
    assert table13.verify_column_orthogonality()


def test_steinberg_values(table13):
    st = table13["St"]
    assert st(ClassLabel("1")).as_int() == 13
    assert st(ClassLabel("c")).as_int() == 0
    assert st(ClassLabel("a", 2)).as_int() == 1
    assert st(ClassLabel("b", 3)).as_int() == -1


def test_eta1_unipotent_value(table13):
    # eta1 is pinned by its value (-1 + sqrt(q))/2 on the first unipotent class
    val = table13["eta1"](ClassLabel("c"))
    two_val_plus_one = val + val + chartab._const(1)
    assert ((two_val_plus_one * two_val_plus_one)
            - chartab._const(13)).is_zero()


def test_inner_product_is_kronecker(table13):
    names = ["triv", "St", "eta1", "eta2", "xi1", "theta_1"]
    for i, a in enumerate(names):
        for b in names[i:]:
            want = Fraction(1) if a == b else Fraction(0)
            assert table13.inner(table13[a], table13[b]) == want


def test_sum_of_degree_squares(table13):
    assert sum(c.degree ** 2 for c in table13.characters) == 2184


def test_central_character_signs(table13):
    z = ClassLabel("z")
    one = ClassLabel("1")
    for c in table13.characters:
        ratio = c(z) - c(one)
        neg = c(z) + c(one)
        assert ratio.is_zero() or neg.is_zero()


@pytest.mark.parametrize("q", [13, 29])
def test_power_labels_match_group(q):
    sl = groups.enumerate_group(q, "SL")
    a, b = sl.gen_a, sl.gen_b
    x = sl.identity
    for j in range(1, q - 1):
        x = sl.mul(x, a)
        assert groups.classify(sl, x) == chartab.split_power_label(q, j)
    x = sl.identity
    for j in range(1, q + 1):
        x = sl.mul(x, b)
        assert groups.classify(sl, x) == chartab.nonsplit_power_label(q, j)


def test_eigenvalue_multiplicities_sum(table13, sl13):
    g1, g3 = groups.edge_generators(sl13)
    for g in (g1, g3):
        mults = chartab.eigenvalue_multiplicities(table13["eta1"], g, sl13)
        assert sum(mults.values()) == 6
        assert all(m >= 0 for m in mults.values())


def test_census_matches_subgroup_size(sl13, subgroups13):
    for handle in subgroups13.values():
        census = chartab.subgroup_census(sl13, handle.elements)
        assert sum(census.values()) == len(handle)
