import itertools

import pytest

from latin_chroma import errors
from latin_chroma.groups import (
    AT_LEAST_N_PLUS_2,
    EQUAL_N,
    cayley_square,
    cyclic,
    dihedral,
    direct_product,
    element_orders,
    format_group,
    group_by_name,
    hall_paige_product,
    involutions,
    parse_group,
    predict_chi_class,
    quaternion,
    unique_involution,
    validate_group,
)
from latin_chroma.transversals import count_transversals


def brute_hall_paige(G):
    return any(
        _product(G, p) == G.identity for p in itertools.permutations(range(G.n))
    )


def _product(G, seq):
    acc = G.identity
    for a in seq:
        acc = G(acc, a)
    return acc


@pytest.mark.parametrize("name", ["d3", "q8", "d4"])
def test_nonabelian_dp_matches_permutations(name):
    G = group_by_name(name)
    ok, order = hall_paige_product(G)
    assert ok == brute_hall_paige(G)
    if ok:
        assert sorted(order) == list(range(G.n)) and _product(G, order) == G.identity


def test_nonabelian_groups_are_nonabelian():
    assert not dihedral(3).is_abelian()
    assert not quaternion().is_abelian()
    assert cyclic(6).is_abelian()


def test_validate_group_errors():
    with pytest.raises(errors.NotLatin):
        validate_group([[0, 0], [1, 1]])
    # x*y = -x-y mod 3: Latin, no identity
    with pytest.raises(errors.NoIdentity):
        validate_group([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    with pytest.raises(errors.NoIdentity):
        validate_group(cyclic(3).mult, identity=1)
    # loop of order 5 is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(errors.NotAssociative):
        validate_group(loop)


def test_constructed_tables_are_groups():
    for G in (cyclic(5), dihedral(4), quaternion(), direct_product(cyclic(2), cyclic(4))):
        assert validate_group(G.mult).identity == G.identity


def test_element_orders():
    assert sorted(element_orders(cyclic(6)).values()) == [1, 2, 3, 3, 6, 6]
    assert len(involutions(quaternion())) == 1
    assert len(involutions(group_by_name("z2xz2"))) == 3


def test_predictions():
    assert predict_chi_class(cyclic(4)) == AT_LEAST_N_PLUS_2
    assert predict_chi_class(cyclic(5)) == EQUAL_N
    assert predict_chi_class(group_by_name("z2xz2")) == EQUAL_N
    # S3 has a cyclic Sylow 2-subgroup, so no ordering works
    assert predict_chi_class(dihedral(3)) == AT_LEAST_N_PLUS_2
    assert predict_chi_class(dihedral(4)) == EQUAL_N
    assert unique_involution(cyclic(8))


def test_undecidable_above_limit():
    with pytest.raises(errors.Undecidable):
        predict_chi_class(dihedral(5))
    with pytest.raises(errors.OrderTooLarge):
        hall_paige_product(dihedral(5))


def test_group_file_roundtrip():
    G = group_by_name("z2xz4")
    H = parse_group(format_group(G))
    assert H.mult == G.mult and H.identity == G.identity
    with pytest.raises(errors.ParseError):
        parse_group("2\n0 1\n1 0\n")


def test_group_by_name_rejects():
    with pytest.raises(ValueError):
        group_by_name("s4")


def test_dihedral_transversals():
    assert count_transversals(cayley_square(dihedral(3))) == 0
    assert count_transversals(cayley_square(dihedral(4))) == 384
