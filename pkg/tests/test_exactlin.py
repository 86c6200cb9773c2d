import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdinv.exactlin import (
    ContainmentError,
    FinAbelianGroup,
    InputError,
    IntMatrix,
    Lattice,
    det,
    invert_unimodular,
    lattice_index,
    lattice_membership,
    row_hermite,
    saturation_torsion,
    smith_normal_form,
    subquotient_structure,
)


# --- independent oracles -----------------------------------------------------


def snf_2x2_oracle(m: IntMatrix) -> tuple[int, int]:
    """Invariant factors of a 2x2 matrix: gcd of entries, then |det|/gcd."""
    flat = [x for row in m.entries for x in row]
    d1 = math.gcd(*flat)
    d2 = abs(det(m)) // d1 if d1 else 0
    return d1, d2


def test_snf_identity():
    dec = smith_normal_form(IntMatrix.identity(2))
    assert dec.diagonal == (1, 1)
    assert dec.verify()


def test_snf_diag_2_3():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert snf_2x2_oracle(m) == (1, 6)
    dec = smith_normal_form(m)
    assert dec.diagonal == (1, 6)


def test_snf_columns_44_26():
    m = IntMatrix.from_columns([(4, 4), (2, 6)])
    assert snf_2x2_oracle(m) == (2, 8)
    dec = smith_normal_form(m)
    assert dec.diagonal == (2, 8)


def test_snf_unsorted_diagonal_chain_repair():
    # oracle via determinantal divisors: gcd of entries, gcd of 2x2 minors, det
    m = IntMatrix.from_rows([[6, 0, 0], [0, 4, 0], [0, 0, 3]])
    dec = smith_normal_form(m)
    assert dec.diagonal == (1, 6, 12)
    assert dec.verify()
    dec = smith_normal_form(IntMatrix.from_rows([[4, 0], [0, 6]]))
    assert dec.diagonal == (2, 12)


def test_snf_rectangular_and_zero():
    dec = smith_normal_form(IntMatrix.from_rows([[0, 0, 0], [0, 0, 0]]))
    assert dec.diagonal == (0, 0)
    assert dec.verify()
    dec = smith_normal_form(IntMatrix.from_rows([[6, 4, 2]]))
    assert dec.diagonal == (2,)
    assert dec.verify()


matrices = st.integers(min_value=1, max_value=12).flatmap(
    lambda r: st.integers(min_value=1, max_value=12).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-50, max_value=50), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_snf_invariants_random(rows):
    dec = smith_normal_form(IntMatrix.from_rows(rows))
    assert dec.verify()


# --- membership --------------------------------------------------------------


def test_membership_zero_vector():
    lat = Lattice.from_columns(2, [(2, 0), (0, 2)])
    res = lattice_membership((0, 0), lat)
    assert res.member and res.coordinates == (0, 0)
    assert res.check((0, 0), lat)


def test_membership_parity_obstruction():
    lat = Lattice.from_columns(2, [(2, 0), (0, 2)])
    res = lattice_membership((1, 0), lat)
    assert not res.member
    cert = res.certificate
    assert cert.kind == "modular" and cert.prime == 2
    assert res.check((1, 0), lat)


def test_membership_solves_linear_system():
    # oracle: 4a + 2b = 8 and 4a + 6b = 0 has the unique solution (3, -2)
    lat = Lattice.from_columns(2, [(4, 4), (2, 6)])
    res = lattice_membership((8, 0), lat)
    assert res.member and res.coordinates == (3, -2)


def test_membership_rank_obstruction():
    lat = Lattice.from_columns(2, [(1, 1)])
    res = lattice_membership((1, 0), lat)
    assert not res.member
    assert res.certificate.kind == "rank"
    assert res.check((1, 0), lat)


def test_membership_dimension_mismatch():
    lat = Lattice.from_columns(2, [(1, 0)])
    with pytest.raises(InputError):
        lattice_membership((1, 0, 0), lat)


vectors2 = st.tuples(
    st.integers(min_value=-30, max_value=30), st.integers(min_value=-30, max_value=30)
)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(vectors2, min_size=1, max_size=4),
    vectors2,
)
def test_membership_certificates_verify(gens, v):
    lat = Lattice.from_columns(2, gens)
    res = lattice_membership(v, lat)
    assert res.check(v, lat)
    if res.member:
        assert lat.generators.matvec(res.coordinates) == v


# --- canonical bases ----------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.lists(vectors2, min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_hermite_basis_invariance(gens, rng):
    lat = Lattice.from_columns(2, gens)
    shuffled = list(gens)
    rng.shuffle(shuffled)
    # appending a redundant generator (a sum of two others) changes nothing
    redundant = tuple(a + b for a, b in zip(shuffled[0], shuffled[-1]))
    lat2 = Lattice.from_columns(2, shuffled + [redundant])
    assert lat.same_lattice(lat2)
    assert lat.canonical().basis.entries == lat.basis.entries


def test_row_hermite_canonical_example():
    assert row_hermite([(2, 0), (0, 2), (1, 1)]) == ((1, 1), (0, 2))


# --- subquotients -------------------------------------------------------------


def test_subquotient_two_torsion_square():
    sub = Lattice.from_columns(2, [(2, 0), (0, 2)])
    sup = Lattice.standard(2)
    g = subquotient_structure(sub, sup)
    assert g.free_rank == 0 and g.invariant_factors == (2, 2)


def test_subquotient_paper_shape_n2():
    sub = Lattice.from_columns(2, [(2, 2), (4, 0), (0, 4)])
    sup = Lattice.from_columns(2, [(1, 3), (0, 4)])
    g = subquotient_structure(sub, sup)
    assert g.label() == "Z/2"


def test_subquotient_rank4_pair():
    sub = Lattice.from_columns(2, [(8, 0), (4, 4)])
    sup = Lattice.from_columns(2, [(4, 4), (2, 6)])
    g = subquotient_structure(sub, sup)
    assert g.label() == "Z/2"


def test_subquotient_self_trivial():
    lat = Lattice.from_columns(3, [(2, 1, 0), (0, 3, 1)])
    assert subquotient_structure(lat, lat).is_trivial


@settings(max_examples=40, deadline=None)
@given(st.lists(vectors2, min_size=1, max_size=4))
def test_subquotient_self_trivial_random(gens):
    lat = Lattice.from_columns(2, gens)
    assert subquotient_structure(lat, lat).is_trivial


def test_containment_error_names_generator():
    sub = Lattice.from_columns(2, [(2, 0), (1, 1)])
    sup = Lattice.from_columns(2, [(2, 0), (0, 2)])
    with pytest.raises(ContainmentError, match="generator 1"):
        subquotient_structure(sub, sup)


# --- saturation torsion -------------------------------------------------------


def test_saturation_torsion_single_relation():
    sub = Lattice.from_columns(2, [(2, 0)])
    sup = Lattice.standard(2)
    tors, wits = saturation_torsion(sub, sup)
    assert tors.label() == "Z/2"
    assert len(wits) == 1
    w = wits[0]
    assert w.order == 2 and w.vector == (1, 0)
    assert w.check(sub.canonical())


def test_saturation_torsion_mixed():
    sub = Lattice.from_columns(2, [(2, 0), (0, 1)])
    sup = Lattice.standard(2)
    tors, wits = saturation_torsion(sub, sup)
    assert tors.label() == "Z/2"
    assert wits[0].vector == (1, 0) and wits[0].order == 2


def test_saturation_witness_orders():
    sub = Lattice.from_columns(3, [(2, 0, 0), (0, 12, 0), (0, 0, 3)])
    sup = Lattice.standard(3)
    tors, wits = saturation_torsion(sub, sup)
    orders = sorted(w.order for w in wits)
    assert orders == [2, 3, 12] or orders == sorted(tors.invariant_factors)
    for w in wits:
        assert w.check(sub.canonical())


# --- index --------------------------------------------------------------------


def test_index_doubled_square():
    assert lattice_index(Lattice.from_columns(2, [(2, 0), (0, 2)]), Lattice.standard(2)) == 4


def test_index_infinite():
    assert lattice_index(Lattice.from_columns(2, [(2, 0)]), Lattice.standard(2)) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(vectors2, min_size=2, max_size=4))
def test_index_matches_invariant_factor_product_and_determinants(gens):
    sup = Lattice.standard(2)
    sub = Lattice.from_columns(2, gens)
    idx = lattice_index(sub, sup)
    g = subquotient_structure(sub, sup)
    if idx is None:
        assert g.free_rank > 0
    else:
        prod = 1
        for d in g.invariant_factors:
            prod *= d
        assert idx == prod
        if sub.rank == 2:
            assert idx == abs(det(sub.basis))


# --- misc ---------------------------------------------------------------------


def test_fin_abelian_group_labels():
    assert FinAbelianGroup.trivial().label() == "0"
    assert FinAbelianGroup.cyclic(2).label() == "Z/2"
    assert FinAbelianGroup(1, (2, 4)).label() == "Z + Z/2 + Z/4"
    with pytest.raises(InputError):
        FinAbelianGroup(0, (4, 2))


def test_invert_unimodular_roundtrip():
    m = IntMatrix.from_rows([[2, 1], [1, 1]])
    inv = invert_unimodular(m)
    assert m.mul(inv).entries == IntMatrix.identity(2).entries
