"""Category plumbing and the restriction laws, with pointwise oracles."""

import pytest

from rcat.core import (
    RestrictionCategory,
    check_category_laws,
    check_restriction_axioms,
    dense_subcategory,
    find_splitting,
    is_restriction_monic,
    is_total,
    leq,
    restriction_idempotent_ids,
    restriction_inverse,
    total_morphism_ids,
    two_sided_inverse,
)
from rcat.errors import MalformedTable, UndefinedComposite
from rcat.parfin import PartialFn, is_total_fn, par_compose, par_restriction


def dom_set(f: PartialFn):
    return {x for x, v in enumerate(f.table) if v >= 0}


def test_category_laws_pass(par2):
    rep = check_category_laws(par2.rc)
    assert rep.passed and rep.checked > 0


def test_restriction_axioms_pass(par2):
    rep = check_restriction_axioms(par2.rc)
    assert rep.passed


def test_compose_rejects_non_composable(par2):
    rc = par2.rc
    f = par2.mid(PartialFn(1, 2, (0,)))
    with pytest.raises(UndefinedComposite):
        rc.compose(f, f)


def perturbed(model, victim: PartialFn, replacement: PartialFn):
    rc = model.rc
    v = model.mid(victim)
    restriction = [
        model.mid(replacement) if f == v else rc.restriction(f)
        for f in range(rc.n_morphisms)
    ]
    return RestrictionCategory(
        rc.objects,
        [(rc.mor_names[f], rc.dom(f), rc.cod(f)) for f in range(rc.n_morphisms)],
        [rc.id_of(a) for a in range(rc.n_objects)],
        rc.compose,
        restriction,
    )


def test_absorption_negative(par2):
    # a total map given a proper subidentity as restriction: f . rbar(f) != f
    broken = perturbed(par2, PartialFn(2, 1, (0, 0)), PartialFn(2, 2, (0, -1)))
    rep = check_restriction_axioms(broken, all_violations=True)
    assert not rep.passed
    laws = {v.law for v in rep.violations}
    assert "absorption" in laws
    victim = broken.mor_id("2>1:00")
    absorb = next(v for v in rep.violations if v.law == "absorption")
    assert victim in absorb.witnesses


def test_overdefined_restriction_negative(par2):
    # a partial map declared everywhere-defined; absorption survives
    # (f . id = f) but the interchange with other restrictions breaks
    broken = perturbed(par2, PartialFn(2, 1, (0, -1)), PartialFn(2, 2, (0, 1)))
    rep = check_restriction_axioms(broken)
    assert not rep.passed
    assert rep.violations[0].law == "skew-absorption"
    names = {broken.mor_names[w] for w in rep.violations[0].witnesses}
    assert names == {"2>1:-0", "2>1:0-"}


def test_axiom_sampling_budget(par3):
    full = check_restriction_axioms(par3.rc)
    sampled = check_restriction_axioms(par3.rc, max_pairs=500, seed=1)
    assert full.passed and sampled.passed
    assert sampled.truncated and not full.truncated
    assert sampled.checked < full.checked


def test_total_matches_tables(par2):
    rc = par2.rc
    for f in range(rc.n_morphisms):
        assert is_total(rc, f) == is_total_fn(par2.fn(f))
    totals = set(total_morphism_ids(rc))
    assert all(is_total_fn(par2.fn(f)) for f in totals)


def test_restriction_idempotents_are_partial_identities(par2):
    rc = par2.rc
    for a in range(rc.n_objects):
        size = par2.sizes[a]
        ids = restriction_idempotent_ids(rc, a)
        assert len(ids) == 2 ** size
        for e in ids:
            fn = par2.fn(e)
            assert fn == par_restriction(fn)


def test_restriction_inverse_oracle(par2):
    rc = par2.rc
    for f in range(rc.n_morphisms):
        fn = par2.fn(f)
        injective = len(dom_set(fn)) == len({fn.table[x] for x in dom_set(fn)})
        g = restriction_inverse(rc, f)
        assert (g is not None) == injective
        if g is not None:
            assert rc.compose(g, f) == rc.restriction(f)
            assert rc.compose(f, g) == rc.restriction(g)


def test_leq_is_domain_restriction_order(par2):
    rc = par2.rc
    for a in range(rc.n_objects):
        for b in range(rc.n_objects):
            for f in rc.hom(a, b):
                for g in rc.hom(a, b):
                    fn, gn = par2.fn(f), par2.fn(g)
                    oracle = dom_set(fn) <= dom_set(gn) and all(
                        fn.table[x] == gn.table[x] for x in dom_set(fn)
                    )
                    assert leq(rc, f, g) == oracle


def test_restriction_monic_oracle(par2):
    rc = par2.rc
    # total injections are restriction monic; non-injective maps are not
    m = par2.mid(PartialFn(1, 2, (1,)))
    assert is_restriction_monic(rc, m)
    c = par2.mid(PartialFn(2, 1, (0, 0)))
    assert not is_restriction_monic(rc, c)


def test_find_splitting_of_partial_identity(par2):
    rc = par2.rc
    e = par2.mid(PartialFn(2, 2, (0, -1)))
    found = find_splitting(rc, e)
    assert found is not None
    p, i, r = found
    assert rc.compose(r, i) == rc.id_of(p)
    assert rc.compose(i, r) == e
    assert par2.sizes[p] == 1


def test_two_sided_inverse(par2):
    rc = par2.rc
    swap = par2.mid(PartialFn(2, 2, (1, 0)))
    assert two_sided_inverse(rc, swap) == swap
    drop = par2.mid(PartialFn(2, 2, (0, -1)))
    assert two_sided_inverse(rc, drop) is None


def test_dense_subcategory_total_maps(par2):
    rc = par2.rc
    sub, omap, mmap = dense_subcategory(rc, total_morphism_ids(rc))
    assert sub.n_objects == rc.n_objects
    assert sub.n_morphisms == len(total_morphism_ids(rc))
    for f, sf in mmap.items():
        assert sub.mor_names[sf] == rc.mor_names[f]
    rep = check_restriction_axioms(sub)
    assert rep.passed


def test_dense_subcategory_rejects_non_closed(par2):
    rc = par2.rc
    f = par2.mid(PartialFn(2, 1, (0, -1)))
    with pytest.raises(MalformedTable):
        dense_subcategory(rc, [f])


def test_restriction_endpoint_validation():
    with pytest.raises(MalformedTable):
        RestrictionCategory(
            ["A", "B"],
            [("1A", "A", "A"), ("1B", "B", "B"), ("f", "A", "B")],
            ["1A", "1B"],
            {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2},
            ["1A", "1B", "1B"],
        )
