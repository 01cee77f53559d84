"""Restriction products, idempotent lattices, and restriction limits."""

import itertools

import pytest

from rcat.core import is_total, find_splitting
from rcat.errors import MalformedTable, NoProducts
from rcat.parfin import PartialFn
from rcat.products import (
    Diagram,
    RestrictionProductStructure,
    Span,
    check_p_category,
    check_restriction_products,
    check_substitution,
    derive_restriction,
    discover_restriction_products,
    find_ordinary_product,
    idempotent_lattice,
    par_products,
    pc_from_products,
    product_p_equivalence,
    products_from_pc,
    restriction_limit_of_arrow,
    restriction_limit_of_diagram,
    restriction_terminal_check,
    total_equalizer,
    triviality_guard,
    verify_restriction_limit,
)


def test_product_laws(par2, par2_rp):
    rep = check_restriction_products(par2.rc, par2_rp)
    assert rep.passed and rep.checked > 0


def test_p_category_laws(par2, par2_rp):
    rep = check_p_category(par2.rc, pc_from_products(par2_rp))
    assert rep.passed


def test_product_p_equivalence(par2, par2_rp):
    assert product_p_equivalence(par2.rc, par2_rp).passed


def test_round_trip_through_p_structure(par2, par2_rp):
    rc = par2.rc
    rp2 = products_from_pc(pc_from_products(par2_rp), par2_rp.terminal)
    assert not rp2.up_violations
    assert check_restriction_products(rc, rp2).passed
    for (a, b) in par2_rp.spans:
        assert rp2.span(a, b) == par2_rp.span(a, b)


def test_derived_restriction_matches_stored(par2, par2_rp):
    rc = par2.rc
    pc = pc_from_products(par2_rp)
    for f in range(rc.n_morphisms):
        a = rc.dom(f)
        if a in pc.delta and pc.has(a, rc.cod(f)):
            assert derive_restriction(pc, f) == rc.restriction(f)


def test_discovery_agrees_with_size_arithmetic(par2, par2_rp):
    rc = par2.rc
    found = discover_restriction_products(rc)
    assert set(found.spans) == set(par2_rp.spans)
    for key, sp in found.spans.items():
        assert sp.apex == par2_rp.spans[key].apex
    assert found.terminal == par2.oid(1)


def test_bad_span_is_reported(par0124):
    rc = par0124.rc
    two = par0124.oid(2)
    # the two-element object cannot carry the (2,2) span
    p = par0124.mid(PartialFn(2, 2, (0, 1)))
    rp = RestrictionProductStructure(rc, {(two, two): Span(two, p, p)})
    assert rp.up_violations
    rep = check_restriction_products(rc, rp)
    assert not rep.passed


def test_restriction_terminal(par2, par2_rp):
    rc = par2.rc
    rep = restriction_terminal_check(rc, par2.oid(1), rp=par2_rp)
    assert rep.passed
    for a in range(rc.n_objects):
        # maps into the one-point set are exactly the domain idempotents
        assert len(rep.rid_bijection[a]["to_rid"]) == 2 ** par2.sizes[a]
        assert len(rep.rid_bijection[a]["from_rid"]) == 2 ** par2.sizes[a]


def test_triviality_guard_stays_quiet_on_par(par2, par2_rp):
    rep = triviality_guard(par2.rc, par2_rp)
    assert rep.passed
    assert rep.strict_terminal is None
    assert not rep.genuine_products


def test_triviality_guard_fires_on_total_category(finset04):
    rep = triviality_guard(finset04.rc)
    assert rep.passed
    assert rep.strict_terminal == finset04.oid(1)


# -- ordinary products ---------------------------------------------------------


def test_ordinary_product_of_singletons_is_three_points(par3):
    one = par3.oid(1)
    search = find_ordinary_product(par3.rc, one, one)
    assert search.span is not None
    assert search.span.apex == par3.oid(3)
    assert search.witness_objects == (par3.oid(3),)


def test_ordinary_product_with_empty_absorbs_into_summand(par3):
    zero = par3.oid(0)
    for size in (1, 2, 3):
        a = par3.oid(size)
        search = find_ordinary_product(par3.rc, zero, a)
        assert search.span is not None and search.span.apex == a


def test_no_ordinary_square_of_doubleton_under_size_cap(par2):
    two = par2.oid(2)
    assert find_ordinary_product(par2.rc, two, two).span is None


# -- idempotent lattices ---------------------------------------------------------


def test_singleton_lattice_tables(par013):
    rc = par013.rc
    one = par013.oid(1)
    lat = idempotent_lattice(rc, one)
    assert lat.report.passed
    nowhere = par013.mid(PartialFn(1, 1, (-1,)))
    everywhere = rc.id_of(one)
    assert set(lat.elements) == {nowhere, everywhere}
    assert lat.bottom == nowhere and lat.top == everywhere
    assert lat.meet(nowhere, everywhere) == nowhere
    assert lat.join(nowhere, everywhere) == everywhere
    assert lat.join(nowhere, nowhere) == nowhere
    assert lat.meet(everywhere, everywhere) == everywhere


def test_lattice_requires_ordinary_square(par2):
    with pytest.raises(NoProducts):
        idempotent_lattice(par2.rc, par2.oid(2))


def test_substitution_preserves_lattice_structure(par013):
    rc = par013.rc
    objs = [par013.oid(0), par013.oid(1)]
    lats = {a: idempotent_lattice(rc, a) for a in objs}
    seen = 0
    for a in objs:
        for b in objs:
            for f in rc.hom(a, b):
                rep = check_substitution(rc, lats[a], lats[b], f)
                assert rep.passed
                seen += 1
    assert seen == 5


# -- restriction limits ----------------------------------------------------------


def test_arrow_limit_is_domain_splitting(par2):
    rc = par2.rc
    for f in range(rc.n_morphisms):
        got = restriction_limit_of_arrow(rc, f)
        split = find_splitting(rc, rc.restriction(f))
        assert (got is None) == (split is None)
        if got is None:
            continue
        assert got == split
        defined = sum(1 for v in par2.fn(f).table if v >= 0)
        assert par2.sizes[got[0]] == defined


def test_single_node_diagram_limit(par2):
    rc = par2.rc
    two = par2.oid(2)
    lim = restriction_limit_of_diagram(rc, Diagram((two,), ()))
    assert lim.apex == two
    assert lim.legs == (rc.id_of(two),)
    assert lim.report.passed and not lim.report.truncated


def test_discrete_pair_limit_is_tensor(par2):
    one, two = par2.oid(1), par2.oid(2)
    lim = restriction_limit_of_diagram(par2.rc, Diagram((one, two), ()))
    assert par2.sizes[lim.apex] == 2
    assert lim.report.passed


def test_one_arrow_diagram_limit_matches_arrow_form(par2):
    rc = par2.rc
    f = par2.mid(PartialFn(2, 1, (0, -1)))
    diag = Diagram((par2.oid(2), par2.oid(1)), ((0, 1, f),))
    lim = restriction_limit_of_diagram(rc, diag)
    p_obj, section, _ = restriction_limit_of_arrow(rc, f)
    assert lim.apex == p_obj
    assert lim.legs[0] == section
    assert par2.sizes[lim.apex] == 1


def test_verify_rejects_wrong_cone(par2):
    rc = par2.rc
    two, one = par2.oid(2), par2.oid(1)
    diag = Diagram((two,), ())
    inc = par2.mid(PartialFn(1, 2, (0,)))
    rep = verify_restriction_limit(rc, diag, one, (inc,))
    assert not rep.passed
    assert rep.violations[0].law == "limit-universal-property"


def test_diagram_validate_rejects_misplaced_arrow(par2):
    f = par2.mid(PartialFn(2, 1, (0, -1)))
    with pytest.raises(MalformedTable):
        Diagram((par2.oid(1), par2.oid(1)), ((0, 1, f),)).validate(par2.rc)


def test_total_equalizer_matches_pointwise_search(par0124):
    from rcat.errors import NotSplit

    model = par0124
    rc = model.rc
    rp = par_products(model)
    seen = split_failures = 0
    for x_size, y_size in itertools.product((1, 2, 4), (1, 2)):
        x, y = model.oid(x_size), model.oid(y_size)
        totals = [f for f in rc.hom(x, y) if is_total(rc, f)]
        for f, g in itertools.product(totals, totals):
            agree = {
                v for v in range(x_size) if model.fn(f).table[v] == model.fn(g).table[v]
            }
            if not model.has_size(len(agree)):
                # the equalizing idempotent has no home to split onto
                with pytest.raises(NotSplit):
                    total_equalizer(rc, rp, f, g)
                split_failures += 1
                continue
            e_obj, inc = total_equalizer(rc, rp, f, g)
            assert model.sizes[e_obj] == len(agree)
            assert is_total(rc, inc)
            assert {model.fn(inc).table[z] for z in range(len(agree))} == agree
            seen += 1
    assert seen > 50 and split_failures > 0
