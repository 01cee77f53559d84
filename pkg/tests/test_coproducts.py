"""Coproducts, zero maps, decisions, and block matrices over Par models."""

import itertools

import pytest
from hypothesis import given, strategies as st

from rcat.coproducts import (
    PartialMatrix,
    check_restriction_coproducts,
    check_restriction_zero,
    decision_from_binary,
    discover_coproducts,
    extensive_subcategory,
    fam_completion,
    find_decision,
    find_restriction_zero,
    injection_retraction,
    is_decision,
    is_extensive_map,
    matrix_decompose,
    matrix_multiply,
    matrix_recompose,
    par_decision_fn,
    par_matrix_decompose,
    par_matrix_multiply,
    par_matrix_recompose,
    self_decisions,
    validate_matrix,
)
from rcat.core import RestrictionCategory
from rcat.errors import InvalidWitness, ShapeMismatch
from rcat.parfin import (
    PartialFn,
    all_partial_fns,
    par_compose,
    pf_name,
)


# -- discovery ----------------------------------------------------------------


def test_discovered_cocones_match_size_arithmetic(par2):
    cp = discover_coproducts(par2.rc)
    expected = {
        (a, b)
        for a in range(3)
        for b in range(3)
        if par2.sizes[a] + par2.sizes[b] in par2.sizes
    }
    assert set(cp.cocones) == expected
    for (a, b), cc in cp.cocones.items():
        assert par2.sizes[cc.apex] == par2.sizes[a] + par2.sizes[b]
        # chosen injections are the offset inclusions
        i = par2.fn(cc.inj1)
        j = par2.fn(cc.inj2)
        assert i.table == tuple(range(par2.sizes[a]))
        assert j.table == tuple(
            par2.sizes[a] + x for x in range(par2.sizes[b])
        )
    assert cp.initial == par2.oid(0)


def test_coproduct_laws(par2, par2_cp, par0124, par0124_cp):
    assert check_restriction_coproducts(par2.rc, par2_cp).passed
    assert check_restriction_coproducts(par0124.rc, par0124_cp).passed


def test_zero_laws(par2, par2_cp, par0124, par0124_cp):
    assert check_restriction_zero(par2.rc, par2_cp).passed
    assert check_restriction_zero(par0124.rc, par0124_cp).passed
    assert find_restriction_zero(par2.rc).obj == par2.oid(0)


def test_copair_and_sum_agree_with_tables(par0124, par0124_cp):
    rc, cp = par0124.rc, par0124_cp
    one = par0124.oid(1)
    f = par0124.mid(PartialFn(1, 2, (0,)))
    g = par0124.mid(PartialFn(1, 2, (-1,)))
    both = cp.copair(one, one, f, g)
    assert par0124.fn(both) == PartialFn(2, 2, (0, -1))
    summed = cp.sum_mor(f, g)
    assert par0124.fn(summed) == PartialFn(2, 4, (0, -1))
    assert par0124.fn(cp.codiagonal(one)) == PartialFn(2, 1, (0, 0))
    assert par0124.fn(cp.twist(one, one)) == PartialFn(2, 2, (1, 0))


def test_injection_retraction_is_partial_projection(par0124, par0124_cp, par0124_zero):
    rc = par0124.rc
    one = par0124.oid(1)
    star1 = injection_retraction(rc, par0124_cp, par0124_zero, one, one, 1)
    star2 = injection_retraction(rc, par0124_cp, par0124_zero, one, one, 2)
    assert par0124.fn(star1) == PartialFn(2, 1, (0, -1))
    assert par0124.fn(star2) == PartialFn(2, 1, (-1, 0))


# -- decisions ----------------------------------------------------------------


def test_every_binary_decision_exists_and_is_unique(par0124, par0124_cp, par0124_zero):
    rc, cp = par0124.rc, par0124_cp
    checked = 0
    for a, b in itertools.product(range(rc.n_objects), repeat=2):
        if not cp.has(a, b):
            continue
        apex = cp.apex(a, b)
        for c in range(rc.n_objects):
            if not cp.has(c, c):
                continue
            for f in rc.hom(c, apex):
                blocks = (a, b)
                d = find_decision(rc, cp, par0124_zero, f, blocks)
                assert d is not None and d.unique
                assert is_decision(rc, cp, par0124_zero, f, d.h, blocks)
                oracle = par_decision_fn(
                    par0124.fn(f), (par0124.sizes[a], par0124.sizes[b])
                )
                assert par0124.fn(d.h) == oracle
                checked += 1
    assert checked > 100


def test_decision_nowhere_defined_example(par2, par2_cp, par2_zero):
    rc = par2.rc
    f = par2.mid(PartialFn(1, 2, (-1,)))
    one = par2.oid(1)
    d = find_decision(rc, par2_cp, par2_zero, f, (one, one))
    assert d is not None and d.unique
    assert par2.fn(d.h) == PartialFn(1, 2, (-1,))


def test_ternary_decision_by_induction(par3):
    rc = par3.rc
    cp = discover_coproducts(rc)
    zero = find_restriction_zero(rc)
    one = par3.oid(1)
    blocks = (one, one, one)
    for f in rc.hom(one, par3.oid(3)):
        d = decision_from_binary(rc, cp, zero, f, blocks)
        assert is_decision(rc, cp, zero, f, d.h, blocks)
        assert par3.fn(d.h) == par_decision_fn(par3.fn(f), (1, 1, 1))
        direct = find_decision(rc, cp, zero, f, blocks)
        assert direct is not None and direct.h == d.h


def test_self_decisions_count(par3):
    rc = par3.rc
    cp = discover_coproducts(rc)
    one = par3.oid(1)
    found = self_decisions(rc, cp, one)
    # x -> left copy, x -> right copy, and nowhere defined
    assert {par3.fn(h) for h in found} == {
        PartialFn(1, 2, (0,)),
        PartialFn(1, 2, (1,)),
        PartialFn(1, 2, (-1,)),
    }


def test_extensive_maps_in_par(par0124, par0124_cp, par0124_zero):
    # wherever the doubled domain exists the pulled-back decision is
    # found; a domain without a doubling can only host one vacuously
    rc, cp = par0124.rc, par0124_cp
    for f in range(rc.n_morphisms):
        a, b = rc.dom(f), rc.cod(f)
        if not cp.has(b, b):
            assert is_extensive_map(rc, cp, par0124_zero, f)
        elif cp.has(a, a):
            assert is_extensive_map(rc, cp, par0124_zero, f)
        else:
            assert not is_extensive_map(rc, cp, par0124_zero, f)


def test_extensive_subcategory_of_par2(par2, par2_cp, par2_zero):
    # only maps out of the two-element object into a doubled target are
    # cut: their own decisions have nowhere to live
    sub, _, mmap = extensive_subcategory(par2.rc, par2_cp, par2_zero)
    assert sub.n_morphisms == 18 == len(mmap)
    two = par2.oid(2)
    dropped = set(range(par2.rc.n_morphisms)) - set(mmap)
    assert all(par2.rc.dom(f) == two for f in dropped)
    assert {par2.rc.cod(f) for f in dropped} == {par2.oid(0), par2.oid(1)}


# -- block matrices, abstract route ---------------------------------------------


def test_matrix_round_trip_abstract(par0124, par0124_cp, par0124_zero):
    rc, cp, zero = par0124.rc, par0124_cp, par0124_zero
    one = par0124.oid(1)
    rows = cols = (one, one)
    two = par0124.oid(2)
    for f in rc.hom(two, two):
        m = matrix_decompose(rc, cp, zero, f, rows, cols)
        assert matrix_recompose(rc, cp, zero, m) == f


def test_matrix_multiply_is_composition(par0124, par0124_cp, par0124_zero):
    rc, cp, zero = par0124.rc, par0124_cp, par0124_zero
    one = par0124.oid(1)
    blocks = (one, one)
    two = par0124.oid(2)
    for f in rc.hom(two, two):
        mf = matrix_decompose(rc, cp, zero, f, blocks, blocks)
        for g in rc.hom(two, two):
            mg = matrix_decompose(rc, cp, zero, g, blocks, blocks)
            prod = matrix_multiply(rc, cp, zero, mg, mf)
            assert matrix_recompose(rc, cp, zero, prod) == rc.compose(g, f)


def test_validate_matrix_rejects_bad_witness(par0124, par0124_cp, par0124_zero):
    rc, cp, zero = par0124.rc, par0124_cp, par0124_zero
    one = par0124.oid(1)
    f = par0124.mid(PartialFn(2, 2, (1, 0)))
    m = matrix_decompose(rc, cp, zero, f, (one, one), (one, one))
    g = par0124.mid(PartialFn(2, 2, (0, -1)))
    mg = matrix_decompose(rc, cp, zero, g, (one, one), (one, one))
    # the swap's entries with the half-defined map's witnesses
    bad = PartialMatrix(mg.rows, mg.cols, m.entries, mg.witnesses)
    with pytest.raises(InvalidWitness):
        validate_matrix(rc, cp, zero, bad)


def test_validate_matrix_rejects_bad_shape(par0124, par0124_cp, par0124_zero):
    rc, cp, zero = par0124.rc, par0124_cp, par0124_zero
    one = par0124.oid(1)
    f = par0124.mid(PartialFn(2, 2, (1, 0)))
    m = matrix_decompose(rc, cp, zero, f, (one, one), (one, one))
    with pytest.raises(ShapeMismatch):
        validate_matrix(
            rc, cp, zero, PartialMatrix(m.rows, m.cols, m.entries[:1], m.witnesses)
        )


# -- block matrices, concrete route ----------------------------------------------


block_shapes = st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3)


@st.composite
def blocked_fn(draw):
    rows = tuple(draw(block_shapes))
    cols = tuple(draw(block_shapes))
    src, tgt = sum(rows), sum(cols)
    table = tuple(
        draw(st.integers(min_value=-1, max_value=tgt - 1)) for _ in range(src)
    )
    return PartialFn(src, tgt, table), rows, cols


@given(blocked_fn())
def test_par_matrix_round_trip(case):
    f, rows, cols = case
    entries, witnesses = par_matrix_decompose(f, rows, cols)
    assert par_matrix_recompose(entries, witnesses, rows, cols) == f


@given(blocked_fn(), st.data())
def test_par_matrix_multiply_matches_composition(case, data):
    f, rows, mids = case
    outs = tuple(data.draw(block_shapes, label="outs"))
    tgt = sum(outs)
    g = PartialFn(
        sum(mids),
        tgt,
        tuple(
            data.draw(st.integers(min_value=-1, max_value=tgt - 1))
            for _ in range(sum(mids))
        ),
    )
    f_entries, f_wit = par_matrix_decompose(f, rows, mids)
    g_entries, g_wit = par_matrix_decompose(g, mids, outs)
    entries, witnesses = par_matrix_multiply(
        g_entries, f_entries, f_wit, rows, mids, outs
    )
    assert par_matrix_recompose(entries, witnesses, rows, outs) == par_compose(g, f)
    del g_wit


def test_par_matrix_entries_match_abstract(par0124, par0124_cp, par0124_zero):
    rc, cp, zero = par0124.rc, par0124_cp, par0124_zero
    one = par0124.oid(1)
    two = par0124.oid(2)
    for f in rc.hom(two, two):
        m = matrix_decompose(rc, cp, zero, f, (one, one), (one, one))
        entries, witnesses = par_matrix_decompose(par0124.fn(f), (1, 1), (1, 1))
        for l in range(2):
            assert par0124.fn(m.witnesses[l]) == witnesses[l]
            for k in range(2):
                assert par0124.fn(m.entries[l][k]) == entries[l][k]


# -- free family completion -------------------------------------------------------


def one_object_restriction_category():
    """An identity and one non-identity restriction idempotent."""
    return RestrictionCategory(
        ["A"],
        [("1", "A", "A"), ("e", "A", "A")],
        ["1"],
        {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        ["1", "e"],
    )


def test_fam_completion_counts_and_laws():
    base = one_object_restriction_category()
    fam, cp = fam_completion(base, 2)
    assert fam.n_objects == 3
    assert fam.n_morphisms == 29
    from rcat.core import check_restriction_axioms

    assert check_restriction_axioms(fam).passed
    assert check_restriction_coproducts(fam, cp).passed
    assert cp.initial is not None
    # object index equals family length here, and lengths add under
    # concatenation, so the bound cuts exactly at index sum two
    assert set(cp.cocones) == {
        (a, b) for a in range(3) for b in range(3) if a + b <= 2
    }


def test_fam_completion_has_binary_decisions():
    base = one_object_restriction_category()
    fam, cp = fam_completion(base, 2)
    singleton = 1  # the length-one family
    pair = cp.apex(singleton, singleton)
    for f in fam.hom(singleton, pair):
        d = find_decision(fam, cp, None, f, (singleton, singleton))
        assert d is not None
