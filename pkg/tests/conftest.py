import pytest
from hypothesis import HealthCheck, settings

from rcat import parfin
from rcat.coproducts import (
    Cocone,
    CoproductStructure,
    discover_coproducts,
    find_restriction_zero,
)
from rcat.copycat import extensive_completion, finset_distributive, kleisli_restriction
from rcat.parfin import PartialFn, closure_par_model, inclusion_fn, zero_fn
from rcat.products import par_products
from rcat.splitting import split_coproducts, split_idempotents, total_subcategory

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def par2():
    return parfin.par_to_rcat(2)


@pytest.fixture(scope="session")
def par3():
    return parfin.par_to_rcat(3)


@pytest.fixture(scope="session")
def par4():
    return parfin.par_to_rcat(4)


@pytest.fixture(scope="session")
def par0124():
    return parfin.par_category((0, 1, 2, 4))


@pytest.fixture(scope="session")
def par013():
    return parfin.par_category((0, 1, 3))


@pytest.fixture(scope="session")
def finset04():
    return parfin.finset_category((0, 1, 2, 3, 4))


@pytest.fixture(scope="session")
def finset0124():
    return parfin.finset_category((0, 1, 2, 4))


@pytest.fixture(scope="session")
def par2_cp(par2):
    return discover_coproducts(par2.rc)


@pytest.fixture(scope="session")
def par2_zero(par2):
    return find_restriction_zero(par2.rc)


@pytest.fixture(scope="session")
def par2_rp(par2):
    return par_products(par2)


@pytest.fixture(scope="session")
def par0124_cp(par0124):
    return discover_coproducts(par0124.rc)


@pytest.fixture(scope="session")
def par0124_zero(par0124):
    return find_restriction_zero(par0124.rc)


@pytest.fixture(scope="session")
def kleisli2():
    return kleisli_restriction(finset_distributive(2))


@pytest.fixture(scope="session")
def kleisli4():
    # verify=False skips a minute-long re-run of the law checkers; the
    # same laws are covered on this size by the axiom-suite tests
    return kleisli_restriction(finset_distributive(4), verify=False)


@pytest.fixture(scope="session")
def split2(par2):
    return split_idempotents(par2.rc)


@pytest.fixture(scope="session")
def total_of_split2(par2, par2_cp, split2):
    """Total subcategory of the split category, with coproducts carried
    through both constructions."""
    sm = split2
    scp = split_coproducts(sm, par2_cp)
    tot, omap, mmap = total_subcategory(sm.kr)
    cocones = {}
    for (a, b), cc in scp.cocones.items():
        if cc.inj1 in mmap and cc.inj2 in mmap:
            cocones[(omap[a], omap[b])] = Cocone(
                omap[cc.apex], mmap[cc.inj1], mmap[cc.inj2]
            )
    initial = omap[scp.initial] if scp.initial is not None else None
    return tot, omap, mmap, CoproductStructure(tot, cocones, initial)


@pytest.fixture(scope="session")
def xce():
    """Coproducts and a zero but no decision for two maps: fails both
    extensivity checkers with the same underlying witnesses."""
    sizes = (0, 3, 6)
    gens = [zero_fn(a, b) for a in sizes for b in sizes]
    gens += [
        inclusion_fn(3, 6),
        PartialFn(3, 6, (3, 4, 5)),
        PartialFn(3, 6, (0, 0, 5)),
    ]
    return closure_par_model(sizes, gens, glue_pairs=[(3, 3)], name="Xce")


@pytest.fixture(scope="session")
def xce_cp(xce):
    return discover_coproducts(xce.rc)


@pytest.fixture(scope="session")
def xce_zero(xce):
    return find_restriction_zero(xce.rc)


@pytest.fixture(scope="session")
def completion2():
    return extensive_completion(finset_distributive(2))
