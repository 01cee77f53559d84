"""Partial-function algebra against hand oracles, then the model builders."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcat.errors import CapExceeded, MalformedTable, ShapeMismatch
from rcat.parfin import (
    PartialFn,
    all_partial_fns,
    all_total_fns,
    copair_fn,
    delta_fn,
    identity_fn,
    inclusion_fn,
    is_total_fn,
    pair_fn,
    par_category,
    par_compose,
    par_restriction,
    par_to_rcat,
    parse_pf_text,
    pf_name,
    pf_text,
    finset_category,
    sum_fn,
    tensor_fn,
    tensor_p_fn,
    tensor_q_fn,
    terminal_fn,
    zero_fn,
)

# sizes stay tiny; the laws quantify over all entries anyway
sizes = st.integers(min_value=0, max_value=4)


@st.composite
def partial_fn(draw, src=None, tgt=None):
    a = draw(sizes) if src is None else src
    b = draw(sizes) if tgt is None else tgt
    table = tuple(draw(st.integers(min_value=-1, max_value=b - 1)) for _ in range(a))
    return PartialFn(a, b, table)


@st.composite
def composable_pair(draw):
    f = draw(partial_fn())
    g = draw(partial_fn(src=f.tgt))
    return g, f


def eval_at(f: PartialFn, x: int):
    v = f.table[x]
    return None if v == -1 else v


def test_compose_is_pointwise():
    f = PartialFn(3, 2, (1, -1, 0))
    g = PartialFn(2, 3, (2, -1))
    gf = par_compose(g, f)
    assert gf == PartialFn(3, 3, (-1, -1, 2))


def test_compose_rejects_mismatched_shapes():
    with pytest.raises(ShapeMismatch):
        par_compose(PartialFn(2, 2, (0, 1)), PartialFn(2, 3, (0, 1)))


def test_restriction_is_partial_identity():
    f = PartialFn(4, 2, (1, -1, 0, -1))
    assert par_restriction(f) == PartialFn(4, 4, (0, -1, 2, -1))


@given(composable_pair())
def test_compose_matches_per_point(pair):
    g, f = pair
    gf = par_compose(g, f)
    for x in range(f.src):
        v = eval_at(f, x)
        want = None if v is None else eval_at(g, v)
        assert eval_at(gf, x) == want


@given(partial_fn())
def test_restriction_laws_pointwise(f):
    r = par_restriction(f)
    assert par_compose(f, r) == f
    assert par_compose(r, r) == r
    assert par_restriction(r) == r


@given(composable_pair())
def test_slide_law_pointwise(pair):
    h, f = pair
    left = par_compose(par_restriction(h), f)
    right = par_compose(f, par_restriction(par_compose(h, f)))
    assert left == right


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3))
def test_all_partial_fns_count_and_order(a, b):
    fns = list(all_partial_fns(a, b))
    assert len(fns) == (b + 1) ** a
    assert len(set(fns)) == len(fns)
    tables = [f.table for f in fns]
    assert tables == sorted(tables)
    assert len(list(all_total_fns(a, b))) == b**a


def test_identity_and_zero():
    assert identity_fn(3) == PartialFn(3, 3, (0, 1, 2))
    assert zero_fn(3, 2) == PartialFn(3, 2, (-1, -1, -1))
    assert is_total_fn(identity_fn(3))
    assert not is_total_fn(zero_fn(3, 2))
    assert is_total_fn(zero_fn(0, 5))


def test_structural_maps():
    assert inclusion_fn(2, 5) == PartialFn(2, 5, (0, 1))
    assert inclusion_fn(2, 5, offset=3) == PartialFn(2, 5, (3, 4))
    assert terminal_fn(3) == PartialFn(3, 1, (0, 0, 0))
    assert delta_fn(2) == PartialFn(2, 4, (0, 3))
    assert tensor_p_fn(2, 3) == PartialFn(6, 2, (0, 0, 0, 1, 1, 1))
    assert tensor_q_fn(2, 3) == PartialFn(6, 3, (0, 1, 2, 0, 1, 2))


def test_tensor_pair_copair_sum():
    f = PartialFn(2, 2, (1, -1))
    g = PartialFn(2, 3, (0, 2))
    t = tensor_fn(f, g)
    assert t.src == 4 and t.tgt == 6
    # (x, y) -> (f x, g y) with pair (x, y) encoded as x*b + y
    assert t == PartialFn(4, 6, (3, 5, -1, -1))
    # pairing into the genuine Par product, laid out [B | BxC | C]
    assert pair_fn(f, g) == PartialFn(2, 11, (5, 10))
    assert copair_fn(f, PartialFn(2, 2, (0, -1))) == PartialFn(4, 2, (1, -1, 0, -1))
    assert sum_fn(f, g) == PartialFn(4, 5, (1, -1, 2, 4))


def test_name_and_text_forms():
    f = PartialFn(3, 20, (17, -1, 0))
    assert pf_name(PartialFn(2, 3, (2, -1))) == "2>3:2-"
    assert pf_name(PartialFn(2, 11, (5, 10))) == "2>11:5a"
    assert pf_name(f) == "3>20:17.-.0"
    assert parse_pf_text(pf_text(f)) == f


@given(partial_fn())
def test_text_round_trip(f):
    assert parse_pf_text(pf_text(f)) == f


def test_par_model_counts(par2, par3, par4, par0124):
    assert par2.rc.n_morphisms == 23
    assert par3.rc.n_morphisms == 144
    assert par4.rc.n_morphisms == 1279
    assert par0124.rc.n_morphisms == 777
    for model, a, b in ((par3, 2, 3), (par4, 4, 2)):
        i, j = model.oid(a), model.oid(b)
        assert len(model.rc.hom(i, j)) == (b + 1) ** a


def test_par_cap():
    with pytest.raises(CapExceeded) as exc:
        par_to_rcat(5)
    assert exc.value.required == 15035


def test_finset_counts(finset04):
    assert finset04.rc.n_morphisms == 499
    for f in range(finset04.rc.n_morphisms):
        assert is_total_fn(finset04.fn(f))


def test_model_lookup_round_trip(par2):
    for f in range(par2.rc.n_morphisms):
        fn = par2.fn(f)
        assert par2.mid(fn) == f
        assert par2.rc.mor_names[f] == pf_name(fn)


def test_model_compose_matches_tables(par2):
    rc = par2.rc
    for g, f in rc.composable_pairs():
        assert par2.fn(rc.compose(g, f)) == par_compose(par2.fn(g), par2.fn(f))
        assert par2.fn(rc.restriction(f)) == par_restriction(par2.fn(f))


def test_rejects_duplicate_sizes():
    with pytest.raises(MalformedTable):
        par_category((1, 1, 2))


def test_finset_is_subcategory_of_par(par0124, finset0124):
    par_names = set(par0124.rc.mor_names)
    for name in finset0124.rc.mor_names:
        assert name in par_names
