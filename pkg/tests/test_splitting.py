"""Idempotent splitting, total subcategories, and the two extensivity notions."""

import pytest

from rcat.core import check_restriction_axioms, is_total
from rcat.coproducts import (
    check_restriction_coproducts,
    discover_coproducts,
    find_restriction_zero,
)
from rcat.errors import CapExceeded
from rcat.parfin import PartialFn
from rcat.splitting import (
    check_extensive_category,
    is_extensive_rcat,
    plain_coproduct_search,
    plain_pullback,
    split_coproducts,
    split_idempotents,
    split_name,
    total_subcategory,
)


def test_split_model_shape(par2, split2):
    kr = split2.kr
    # one split per (object, restriction idempotent): 1 + 2 + 4
    assert kr.n_objects == 7
    assert kr.n_morphisms == 81
    assert check_restriction_axioms(kr).passed


def test_embedding_is_functorial(par2, split2):
    rc, kr = par2.rc, split2.kr
    for f in range(rc.n_morphisms):
        for g in range(rc.n_morphisms):
            if rc.dom(g) != rc.cod(f):
                continue
            assert kr.compose(split2.embed_mor(g), split2.embed_mor(f)) == split2.embed_mor(
                rc.compose(g, f)
            )
    for a in range(rc.n_objects):
        assert split2.embed_mor(rc.id_of(a)) == kr.id_of(split2.obj_embed[a])


def test_every_restriction_idempotent_splits(par2, split2):
    rc, kr = par2.rc, split2.kr
    for i, (a, e) in enumerate(split2.splits):
        p, r, s = split2.splitting_of(a, e)
        assert p == i
        assert kr.compose(r, s) == kr.id_of(p)
        assert kr.compose(s, r) == split2.embed_mor(e)
        # the section and retraction carry e itself as ambient map
        assert split2.under[r] == e and split2.under[s] == e


def test_split_object_names_escape_delimiters(par2, split2):
    assert split_name("2", "2>2:0-") == "(2|2>2:0-)"
    assert split_name("(2|e)", "f@1:2") == r"(\(2\|e\)|f@1:2)"
    assert split2.kr.objects[split2.obj_embed[par2.oid(2)]] == "(2|2>2:01)"


def test_resplitting_stays_well_formed(split2):
    kr = split2.kr
    again = split_idempotents(kr)
    assert again.kr.n_objects == 13
    assert check_restriction_axioms(again.kr).passed
    # names built from already-bracketed parts still parse apart
    assert any(name.startswith(r"(\(") for name in again.kr.objects)


def test_split_cap(par2):
    with pytest.raises(CapExceeded) as exc:
        split_idempotents(par2.rc, cap=10)
    assert exc.value.cap == 10


def test_split_coproducts_laws(par2, split2, par2_cp):
    cp_kr = split_coproducts(split2, par2_cp)
    assert not cp_kr.up_violations
    assert check_restriction_coproducts(split2.kr, cp_kr).passed
    # every ambient cocone induces one on each pair of splits over it
    n_over = sum(
        1
        for (a, _) in split2.splits
        for (b, _) in split2.splits
        if par2_cp.has(a, b)
    )
    assert len(cp_kr.cocones) == n_over


def test_total_subcategory_of_par2(par2):
    tot, omap, mmap = total_subcategory(par2.rc)
    assert tot.n_objects == 3
    assert tot.n_morphisms == 11
    assert all(is_total(par2.rc, f) for f in mmap)


def test_total_of_split_par2(total_of_split2):
    tot, _, _, cp_tot = total_of_split2
    assert tot.n_morphisms == 43
    assert check_extensive_category(tot, cp_tot).passed


def test_plain_pullback_in_finsets(par2):
    tot, _, mmap = total_subcategory(par2.rc)
    inv = {v: k for k, v in mmap.items()}
    f = mmap[par2.mid(PartialFn(2, 2, (0, 0)))]
    g = mmap[par2.mid(PartialFn(1, 2, (0,)))]
    pb = plain_pullback(tot, f, g)
    assert pb is not None
    apex, k1, k2 = pb
    # the fiber product of a constant map with the point it hits
    assert par2.fn(inv[tot.id_of(apex)]).src == 2
    assert tot.compose(f, k1) == tot.compose(g, k2)


def test_plain_coproduct_search_matches_sizes(par2):
    tot, omap, _ = total_subcategory(par2.rc)
    cc = plain_coproduct_search(tot, omap[par2.oid(1)], omap[par2.oid(1)])
    assert cc is not None and cc.apex == omap[par2.oid(2)]
    assert plain_coproduct_search(tot, omap[par2.oid(2)], omap[par2.oid(1)]) is None


def test_par_is_extensive_as_restriction_category(par2, par2_cp, par2_zero):
    rep = is_extensive_rcat(par2.rc, par2_cp, par2_zero)
    assert rep.passed and rep.checked > 0


def test_counterexample_fails_decisions(xce, xce_cp, xce_zero):
    rc = xce.rc
    rep = is_extensive_rcat(rc, xce_cp, xce_zero, all_violations=True)
    assert not rep.passed
    assert {v.law for v in rep.violations} == {"decision-missing"}
    names = {rc.mor_names[w] for v in rep.violations for w in v.witnesses}
    assert names == {"3>6:005", "3>6:332"}
    first = rep.violations[0]
    assert rc.mor_names[first.witnesses[0]] == "3>6:005"


def test_counterexample_total_side_fails_pullback_extensivity(xce):
    sm = split_idempotents(xce.rc, cap=None)
    tot, _, mmap = total_subcategory(sm.kr)
    assert tot.n_objects == 21
    assert tot.n_morphisms == 815
    cp_tot = discover_coproducts(tot, find_initial=False)
    rep = check_extensive_category(tot, cp_tot, all_violations=True)
    assert not rep.passed
    assert {v.law for v in rep.violations} == {
        "comparison-not-invertible",
        "no-coproduct-of-pullbacks",
    }
    # witnesses match the restriction-side report: the culprits reappear
    # over the three-element object, everything else is a six-element
    # composite built from them
    inv = {v: k for k, v in mmap.items()}
    over = {
        xce.rc.mor_names[sm.under[inv[w]]]
        for v in rep.violations
        for w in v.witnesses
    }
    culprits = {"3>6:005", "3>6:332"}
    assert {n for n in over if n.startswith("3>6")} == culprits
    assert all(n.startswith(("3>6", "6>6")) for n in over)
    first = rep.violations[0]
    assert xce.rc.mor_names[sm.under[inv[first.witnesses[0]]]] == "3>6:332"


def test_zero_survives_splitting(par2, split2):
    z = find_restriction_zero(split2.kr)
    assert z is not None
    assert split2.splits[z.obj] == (par2.oid(0), par2.rc.id_of(par2.oid(0)))
