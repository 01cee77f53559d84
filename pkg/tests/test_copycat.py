"""Monoidal structure, copy maps, monads, Kleisli models, and completion."""

import itertools

import pytest

from rcat.coproducts import Cocone, find_decision
from rcat.copycat import (
    CopyStructure,
    DistributiveCategoryData,
    check_copy_monad,
    check_counital_copy,
    check_distributive_copy,
    check_equational_lifting,
    check_monoidal_monad,
    check_strict_monoidal,
    comonoid_category,
    copy_to_products,
    decision_in_kleisli,
    diamond_lattice,
    distributive_copy_equivalence,
    enumerate_comonoids,
    extensive_completion,
    finset_distributive,
    finset_distributive_data,
    identity_monad,
    kleisli_plus_one_check,
    kleisli_restriction,
    lattice_category,
    monoid_category,
    par_copy,
    par_monoidal,
    perturb_phi,
    plus_one_monad,
    products_to_copy,
    search_copy_structures,
    completion_canonical_iso,
)
from rcat.core import RestrictionCategory, check_restriction_axioms
from rcat.errors import MalformedTable
from rcat.parfin import PartialFn
from rcat.products import Span, check_restriction_products
from rcat.splitting import check_extensive_category


def test_par_monoidal_laws(par2):
    m = par_monoidal(par2)
    assert check_strict_monoidal(par2.rc, m).passed


def test_monoidal_rejects_broken_unit_law(par2):
    from rcat.copycat import StrictMonoidalData

    one, two = par2.oid(1), par2.oid(2)
    # declaring I x I to be the two-element object breaks strictness
    with pytest.raises(MalformedTable):
        StrictMonoidalData(par2.rc, {(one, one): two}, lambda f, g: f, one, {})


def test_counital_copy_positive(par2):
    m = par_monoidal(par2)
    c = par_copy(par2)
    rep = check_counital_copy(par2.rc, m, c)
    assert rep.passed and rep.checked > 0


def criterion_fragment(par0124):
    pairs = {(a, b) for a in (0, 1, 2) for b in (0, 1, 2)}
    return par_monoidal(par0124, pairs=pairs), par_copy(par0124)


def test_broken_counit_is_caught(par0124):
    m, c = criterion_fragment(par0124)
    bad = CopyStructure(dict(c.delta), dict(c.eps))
    bad.eps[par0124.oid(2)] = par0124.mid(PartialFn(2, 1, (0, -1)))
    rep = check_counital_copy(par0124.rc, m, bad)
    assert not rep.passed
    assert rep.violations[0].law == "copy-counit"


def test_broken_diagonal_is_caught(par0124):
    m, c = criterion_fragment(par0124)
    bad = CopyStructure(dict(c.delta), dict(c.eps))
    bad.delta[par0124.oid(2)] = par0124.mid(PartialFn(2, 4, (0, 0)))
    rep = check_counital_copy(par0124.rc, m, bad)
    assert not rep.passed
    assert rep.violations[0].law == "copy-counit"


def test_broken_unit_diagonal_hits_monoidality(par0124):
    m, c = criterion_fragment(par0124)
    bad = CopyStructure(dict(c.delta), dict(c.eps))
    bad.delta[par0124.oid(1)] = par0124.mid(PartialFn(1, 1, (-1,)))
    rep = check_counital_copy(par0124.rc, m, bad, all_violations=True)
    assert not rep.passed
    assert "copy-monoidality-unit" in {v.law for v in rep.violations}


def test_products_to_copy_round_trip(par2, par2_rp):
    rc = par2.rc
    m, c = products_to_copy(par2_rp)
    assert check_counital_copy(rc, m, c).passed
    rp2 = copy_to_products(rc, m, c)
    assert not rp2.up_violations
    assert check_restriction_products(rc, rp2).passed
    for key, sp in par2_rp.spans.items():
        assert rp2.span(*key).apex == sp.apex


def test_copy_structure_is_unique_on_par(par2):
    m = par_monoidal(par2)
    found = search_copy_structures(par2.rc, m)
    assert len(found) == 1
    assert found[0] == par_copy(par2)


def test_comonoids_in_par_are_diagonals(par0124):
    rc = par0124.rc
    m = par_monoidal(par0124)
    cms = enumerate_comonoids(rc, m)
    assert sorted(par0124.sizes[c.obj] for c in cms) == [0, 1, 2]
    c = par_copy(par0124)
    for cm in cms:
        assert cm.delta == c.delta[cm.obj]
        assert cm.eps == c.eps[cm.obj]


def test_comonoid_category_carries_copy(par0124):
    rc = par0124.rc
    m = par_monoidal(par0124)
    ccat, m2, c2, rep = comonoid_category(rc, m)
    assert ccat.n_objects == 3
    assert ccat.n_morphisms == 23
    assert rep.passed
    # the size-two comonoid has no self-tensor partner, so only the
    # smaller objects carry an induced diagonal
    assert set(c2.delta) == {0, 1}
    assert set(c2.eps) == {0, 1, 2}


def test_comonoids_in_a_group_monoid():
    cat, m = monoid_category([1, -1], lambda a, b: a * b, 1)
    cms = enumerate_comonoids(cat, m)
    # delta must be grouplike: e * delta = 1 forces e = delta
    assert {(c.delta, c.eps) for c in cms} == {(0, 0), (1, 1)}


# -- monoidal monads ---------------------------------------------------------------


def test_maybe_monad_laws(finset0124):
    T = plus_one_monad(finset0124)
    assert check_monoidal_monad(T).passed
    assert check_copy_monad(T).passed
    assert check_equational_lifting(T).passed


def test_perturbed_strength_breaks_copy_square(finset0124):
    T = plus_one_monad(finset0124)
    bad = perturb_phi(finset0124, T, 1, 1)
    rep = check_copy_monad(bad)
    assert not rep.passed
    first = rep.violations[0]
    assert first.law == "copy-monad-square"
    assert first.witnesses == (finset0124.oid(1),)


def test_identity_monad_does_not_classify_partiality(par2):
    m = par_monoidal(par2)
    c = par_copy(par2)
    T = identity_monad(par2.rc, m, c)
    assert check_monoidal_monad(T).passed
    assert check_copy_monad(T).passed
    rep = check_equational_lifting(T, all_violations=True)
    assert not rep.passed
    assert {v.law for v in rep.violations} == {"classifying-total"}


def test_identity_monad_on_total_maps_lifts(finset0124):
    T = identity_monad(
        finset0124.rc, par_monoidal(finset0124), par_copy(finset0124)
    )
    assert check_equational_lifting(T).passed


# -- Kleisli categories -------------------------------------------------------------


def test_kleisli_finset_route_is_par(kleisli2):
    assert kleisli2.rc.n_morphisms == 23
    assert kleisli2.objects == (0, 1, 2)
    assert check_restriction_axioms(kleisli2.rc).passed


def test_kleisli_matches_partial_functions():
    rep = kleisli_plus_one_check(3)
    assert rep.passed and rep.checked > 0


def test_kleisli_table_route_agrees_with_sizes():
    D = finset_distributive_data((0, 1, 2, 4))
    K = kleisli_restriction(D)
    # only sizes whose successor is present can carry Kleisli maps
    assert K.rc.n_objects == 2
    assert K.rc.n_morphisms == 5
    assert check_restriction_axioms(K.rc).passed


def test_decisions_in_kleisli(kleisli2):
    K = kleisli2
    rc = K.rc
    seen = 0
    for (a, b), cc in sorted(K.cp.cocones.items()):
        for c in range(rc.n_objects):
            if not K.cp.has(c, c):
                continue
            for f in rc.hom(c, cc.apex):
                d = decision_in_kleisli(K, f, (a, b))
                assert d.unique
                seen += 1
    assert seen == 20


def test_decision_in_kleisli_at_larger_size(kleisli4):
    K = kleisli4
    rc = K.rc
    two = K.oid(2)
    cc = K.cp.cocone(K.oid(1), K.oid(3))
    for f in rc.hom(two, cc.apex):
        d = decision_in_kleisli(K, f, (K.oid(1), K.oid(3)))
        assert d.unique


# -- extensive completion -----------------------------------------------------------


def test_completion_of_two_point_sets(completion2):
    comp = completion2
    assert comp.total.n_objects == 7
    assert comp.total.n_morphisms == 43
    assert all(rep.passed for rep in comp.reports.values())
    assert sorted(comp.support.values()) == [
        (0, ()),
        (1, ()),
        (1, (0,)),
        (2, ()),
        (2, (0,)),
        (2, (0, 1)),
        (2, (1,)),
    ]


def test_completion_hom_count_between_supports(completion2):
    comp = completion2
    by_support = {v: k for k, v in comp.support.items()}
    full = by_support[(2, (0, 1))]
    half = by_support[(2, (0,))]
    assert len(comp.total.hom(full, half)) == 1


def test_completion_canonical_isos(completion2):
    comp = completion2
    for tot_obj in range(comp.total.n_objects):
        fwd, back = completion_canonical_iso(comp, tot_obj)
        assert comp.total.dom(fwd) == tot_obj and comp.total.cod(back) == tot_obj


def test_completion_functor_is_defined_everywhere(completion2):
    comp = completion2
    assert set(comp.n_obj) == {0, 1, 2}
    # the object part lands on full supports
    for k, tid in comp.n_obj.items():
        assert comp.support[tid] == (k, tuple(range(k)))


def test_completion_table_route():
    comp = extensive_completion(finset_distributive_data((0, 1, 2, 4)))
    assert comp.total.n_objects == 3
    assert all(rep.passed for rep in comp.reports.values())


def terminal_distributive():
    one = 0
    rc = RestrictionCategory(["*"], [("1", "*", "*")], ["1"], {(0, 0): 0}, ["1"])
    return DistributiveCategoryData(
        rc,
        {(0, 0): Span(0, one, one)},
        {(0, 0): Cocone(0, one, one)},
        0,
        0,
        {(0, 0, 0): one},
    )


def test_completion_idempotent_on_terminal_category():
    comp = extensive_completion(terminal_distributive())
    assert comp.total.n_objects == 1
    tot = comp.total
    again = extensive_completion(
        DistributiveCategoryData(
            tot,
            {(0, 0): Span(0, tot.id_of(0), tot.id_of(0))},
            {(0, 0): Cocone(0, tot.id_of(0), tot.id_of(0))},
            0,
            0,
            {(0, 0, 0): tot.id_of(0)},
        )
    )
    assert again.total.n_objects == 1
    # completing a completion adds nothing: the embedding is onto
    assert set(again.n_obj.values()) == set(range(again.total.n_objects))
    assert set(again.n_mor.values()) == set(range(again.total.n_morphisms))


# -- distributive copy categories ----------------------------------------------------


def test_par_is_a_distributive_copy_category(par2, par2_cp, par2_rp):
    rep = check_distributive_copy(par2.rc, par2_cp, par2_rp)
    assert rep.passed and rep.checked == 15


def test_distributive_copy_equivalence_bundle(par2, par2_cp, par2_rp):
    rep = distributive_copy_equivalence(par2.rc, par2_cp, par2_rp)
    assert rep.passed and rep.checked == 233


def test_diamond_lattice_is_not_distributive():
    rc, cp, rp = diamond_lattice()
    rep = check_distributive_copy(rc, cp, rp)
    assert not rep.passed
    assert rep.violations[0].law == "distributivity-not-invertible"
    assert "triple" in rep.violations[0].detail


def test_boolean_lattice_is_distributive():
    elems = [frozenset(s) for s in [(), (0,), (1,), (0, 1)]]
    rc, cp, rp = lattice_category(elems, lambda a, b: a <= b)
    assert check_distributive_copy(rc, cp, rp).passed
    assert check_counital_copy(rc, *products_to_copy(rp)).passed


def test_formula_decision_matches_search(par2, par2_cp, par2_rp, par2_zero):
    from rcat.copycat import decision_from_copy
    from rcat.errors import MissingStructure

    rc = par2.rc
    seen = 0
    for (a, b), cc in sorted(par2_cp.cocones.items()):
        for f in range(rc.n_morphisms):
            if rc.cod(f) != cc.apex:
                continue
            try:
                h = decision_from_copy(rc, par2_cp, par2_rp, f, (a, b))
            except MissingStructure:
                continue
            found = find_decision(rc, par2_cp, par2_zero, f, (a, b))
            assert found is not None and found.h == h
            seen += 1
    assert seen > 0
