"""Copy structure: strict monoidal data, counital copy categories,
copy and equational-lifting monads, the maybe-monad Kleisli category
with its restriction, distributive copy data, and the extensive
completion pipeline.

Tensor data on finite fragments is partial: laws quantify over the
object pairs whose tensors are actually present.  Strictness is a hard
requirement: associativity and unit must hold on the nose on objects,
and non-strict tables are rejected outright.

The finite-set skeleton is handled by index arithmetic throughout
(pair (x, y) in A x B is x*b + y; the added point of B+1 is index b),
so canonical maps are computed, never searched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import parfin
from .coproducts import (
    Cocone,
    CoproductStructure,
    ZeroWitness,
    check_restriction_coproducts,
    check_restriction_zero,
    find_decision,
    find_restriction_zero,
)
from .core import (
    FinCategory,
    LawReport,
    RestrictionCategory,
    Violation,
    check_restriction_axioms,
    is_total,
    two_sided_inverse,
)
from .errors import (
    CapExceeded,
    InvalidDistributiveData,
    MalformedTable,
    MissingStructure,
    ShapeMismatch,
)
from .parfin import DEFAULT_CAP, PartialFn, all_partial_fns
from .products import (
    RestrictionProductStructure,
    Span,
    find_ordinary_product,
    split_products,
)
from .splitting import (
    check_extensive_category,
    is_extensive_rcat,
    split_coproducts,
    split_idempotents,
    total_subcategory,
)

__all__ = [
    "StrictMonoidalData",
    "check_strict_monoidal",
    "par_monoidal",
    "par_copy",
    "CopyStructure",
    "check_counital_copy",
    "products_to_copy",
    "copy_to_products",
    "search_copy_structures",
    "Comonoid",
    "enumerate_comonoids",
    "comonoid_category",
    "monoid_category",
    "MonoidalMonadData",
    "check_monoidal_monad",
    "identity_monad",
    "plus_one_monad",
    "perturb_phi",
    "check_copy_monad",
    "check_equational_lifting",
    "FinSetDistributive",
    "finset_distributive",
    "DistributiveCategoryData",
    "finset_distributive_data",
    "KleisliModel",
    "kleisli_restriction",
    "decision_in_kleisli",
    "CompletionResult",
    "extensive_completion",
    "completion_canonical_iso",
    "check_distributive_copy",
    "decision_from_copy",
    "distributive_copy_equivalence",
    "lattice_category",
    "diamond_lattice",
    "kleisli_plus_one_check",
]


# -- strict monoidal data -------------------------------------------------------


class StrictMonoidalData:
    """Tensor-on-objects table, tensor on morphisms, unit, symmetry.
    Associativity and unit laws must hold on the nose on objects wherever
    both sides are statable; anything else is rejected."""

    def __init__(self, cat, ten_obj, ten_mor, unit: int, tau):
        self.cat = cat
        self.ten_obj: dict[tuple[int, int], int] = dict(ten_obj)
        self.ten_mor = ten_mor
        self.unit = unit
        self.tau: dict[tuple[int, int], int] = dict(tau)
        self._memo: dict[tuple[int, int], int] = {}
        for (a, b), p in sorted(self.ten_obj.items()):
            left = self.ten_obj.get((self.unit, a))
            if left is not None and left != a:
                raise MalformedTable(
                    f"tensor is not strictly unital: I x {cat.objects[a]} differs from it"
                )
            right = self.ten_obj.get((a, self.unit))
            if right is not None and right != a:
                raise MalformedTable(
                    f"tensor is not strictly unital: {cat.objects[a]} x I differs from it"
                )
            for c in range(cat.n_objects):
                l2 = self.ten_obj.get((p, c))
                bc = self.ten_obj.get((b, c))
                if l2 is not None and bc is not None:
                    r2 = self.ten_obj.get((a, bc))
                    if r2 is not None and l2 != r2:
                        raise MalformedTable(
                            "tensor on objects is not strictly associative at "
                            f"({cat.objects[a]}, {cat.objects[b]}, {cat.objects[c]})"
                        )

    def has(self, a: int, b: int) -> bool:
        return (a, b) in self.ten_obj

    def ten(self, a: int, b: int) -> int:
        try:
            return self.ten_obj[(a, b)]
        except KeyError:
            raise MissingStructure(
                f"no tensor of ({self.cat.objects[a]}, {self.cat.objects[b]})"
            ) from None

    def times(self, f: int, g: int) -> int:
        key = (f, g)
        out = self._memo.get(key)
        if out is None:
            out = self.ten_mor(f, g)
            self._memo[key] = out
        return out

    def sym(self, a: int, b: int) -> int:
        try:
            return self.tau[(a, b)]
        except KeyError:
            raise MissingStructure(
                f"no symmetry at ({self.cat.objects[a]}, {self.cat.objects[b]})"
            ) from None

    def tensorable(self):
        cat = self.cat
        for (a, b) in sorted(self.ten_obj):
            for (a2, b2) in sorted(self.ten_obj):
                for f in cat.hom(a, a2):
                    for g in cat.hom(b, b2):
                        yield f, g


def check_strict_monoidal(cat, m: StrictMonoidalData, *, all_violations: bool = False) -> LawReport:
    """Functoriality of the tensor, involutivity and naturality of the
    symmetry, and the strictness-degenerate hexagon."""
    report = LawReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    for (a, b), p in sorted(m.ten_obj.items()):
        report.checked += 1
        if m.times(cat.id_of(a), cat.id_of(b)) != cat.id_of(p):
            if record("tensor-identity", (cat.id_of(a), cat.id_of(b))):
                return report
    for f, g in m.tensorable():
        a2, b2 = cat.cod(f), cat.cod(g)
        for f2 in cat.morphisms_from(a2):
            for g2 in cat.morphisms_from(b2):
                if not m.has(cat.cod(f2), cat.cod(g2)):
                    continue
                report.checked += 1
                if m.times(cat.compose(f2, f), cat.compose(g2, g)) != cat.compose(
                    m.times(f2, g2), m.times(f, g)
                ):
                    if record("tensor-composition", (f2, g2, f, g)):
                        return report

    for (a, b), t in sorted(m.tau.items()):
        if cat.dom(t) != m.ten(a, b) or cat.cod(t) != m.ten_obj.get((b, a), -1):
            raise MalformedTable(f"symmetry at ({cat.objects[a]}, {cat.objects[b]}) has wrong endpoints")
        report.checked += 1
        if (b, a) in m.tau and cat.compose(m.sym(b, a), t) != cat.id_of(m.ten(a, b)):
            if record("symmetry-involution", (t,)):
                return report
    for f, g in m.tensorable():
        a, b = cat.dom(f), cat.dom(g)
        a2, b2 = cat.cod(f), cat.cod(g)
        if (a, b) in m.tau and (a2, b2) in m.tau and m.has(b, a) and m.has(b2, a2):
            report.checked += 1
            if cat.compose(m.sym(a2, b2), m.times(f, g)) != cat.compose(
                m.times(g, f), m.sym(a, b)
            ):
                if record("symmetry-not-natural", (f, g)):
                    return report

    # hexagon, degenerate under strictness
    for (a, b) in sorted(m.ten_obj):
        ab = m.ten(a, b)
        for c in range(cat.n_objects):
            if not (
                m.has(ab, c)
                and m.has(b, c)
                and m.has(a, m.ten(b, c))
                and (ab, c) in m.tau
                and (a, c) in m.tau
                and (b, c) in m.tau
                and m.has(a, c)
            ):
                continue
            report.checked += 1
            one_t = m.times(cat.id_of(a), m.sym(b, c))
            t_one = m.times(m.sym(a, c), cat.id_of(b))
            if m.sym(ab, c) != cat.compose(t_one, one_t):
                if record("hexagon", (m.sym(ab, c),)):
                    return report
    return report


def par_monoidal(model: parfin.ParModel, *, pairs=None) -> StrictMonoidalData:
    """Cartesian tensor on a partial-function or finite-set model."""
    wanted = None if pairs is None else {tuple(p) for p in pairs}
    ten_obj = {}
    tau = {}
    for a in model.sizes:
        for b in model.sizes:
            if wanted is not None and (a, b) not in wanted:
                continue
            if not model.has_size(a * b):
                continue
            ten_obj[(model.oid(a), model.oid(b))] = model.oid(a * b)
            table = [0] * (a * b)
            for x in range(a):
                for y in range(b):
                    table[x * b + y] = y * a + x
            tau[(model.oid(a), model.oid(b))] = model.mid(PartialFn(a * b, b * a, tuple(table)))

    def ten_mor(f: int, g: int) -> int:
        return model.mid(parfin.tensor_fn(model.fn(f), model.fn(g)))

    if not model.has_size(1):
        raise MissingStructure("no one-point object to act as the tensor unit")
    return StrictMonoidalData(model.rc, ten_obj, ten_mor, model.oid(1), tau)


def par_copy(model: parfin.ParModel, *, objs=None) -> CopyStructure:
    """Diagonals and total point maps on a partial-function model."""
    delta = {}
    eps = {}
    for a in model.sizes:
        if objs is not None and a not in objs:
            continue
        if model.has_size(a * a):
            delta[model.oid(a)] = model.mid(parfin.delta_fn(a))
        if model.has_size(1):
            eps[model.oid(a)] = model.mid(parfin.terminal_fn(a))
    return CopyStructure(delta, eps)


# -- counital copy categories -----------------------------------------------------


@dataclass
class CopyStructure:
    delta: dict[int, int]
    eps: dict[int, int]


def check_counital_copy(
    X, m: StrictMonoidalData, c: CopyStructure, *, all_violations: bool = False
) -> LawReport:
    """Coassociativity, cocommutativity, counit laws, naturality, and
    monoidality of the copy maps, on top of the monoidal laws.

    When X carries a restriction, the derived idempotent (1 x eps).(1 x f).delta
    must agree with it and the total maps must be exactly the
    counit-preserving ones.  When every morphism is statable, the derived
    restriction is assembled into a restriction category and the
    restriction axioms are checked on it.
    """
    cat = m.cat
    report = check_strict_monoidal(cat, m, all_violations=all_violations)
    if report.violations and not all_violations:
        return report

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    for a, d in sorted(c.delta.items()):
        if not m.has(a, a) or cat.dom(d) != a or cat.cod(d) != m.ten(a, a):
            raise MalformedTable(f"copy map at {cat.objects[a]} has wrong endpoints")
        aa = m.ten(a, a)
        if m.has(a, aa) and m.has(aa, a):
            report.checked += 1
            lhs = cat.compose(m.times(d, cat.id_of(a)), d)
            rhs = cat.compose(m.times(cat.id_of(a), d), d)
            if lhs != rhs:
                if record("copy-coassociativity", (d,)):
                    return report
        if (a, a) in m.tau:
            report.checked += 1
            if cat.compose(m.sym(a, a), d) != d:
                if record("copy-cocommutativity", (d,)):
                    return report
        e = c.eps.get(a)
        if e is not None:
            if cat.dom(e) != a or cat.cod(e) != m.unit:
                raise MalformedTable(f"counit at {cat.objects[a]} has wrong endpoints")
            report.checked += 2
            if cat.compose(m.times(e, cat.id_of(a)), d) != cat.id_of(a):
                if record("copy-counit", (d, e), "left"):
                    return report
            if cat.compose(m.times(cat.id_of(a), e), d) != cat.id_of(a):
                if record("copy-counit", (d, e), "right"):
                    return report

    for f in range(cat.n_morphisms):
        a, b = cat.dom(f), cat.cod(f)
        if a in c.delta and b in c.delta and m.has(a, a) and m.has(b, b):
            report.checked += 1
            if cat.compose(c.delta[b], f) != cat.compose(m.times(f, f), c.delta[a]):
                if record("copy-naturality", (f,)):
                    return report

    if m.unit in c.delta:
        report.checked += 1
        if c.delta[m.unit] != cat.id_of(m.unit):
            if record("copy-monoidality-unit", (c.delta[m.unit],)):
                return report
    for (a, b) in sorted(m.ten_obj):
        p = m.ten(a, b)
        if not (
            p in c.delta
            and a in c.delta
            and b in c.delta
            and m.has(a, a)
            and m.has(b, b)
            and (a, b) in m.tau
            and m.has(m.ten(a, a), m.ten(b, b))
        ):
            continue
        report.checked += 1
        dd = m.times(c.delta[a], c.delta[b])
        mid = m.times(m.times(cat.id_of(a), m.sym(a, b)), cat.id_of(b))
        if c.delta[p] != cat.compose(mid, dd):
            if record("copy-monoidality-tensor", (c.delta[p],)):
                return report

    # derived domain idempotents
    def statable(f: int) -> bool:
        a, b = cat.dom(f), cat.cod(f)
        return a in c.delta and b in c.eps and m.has(a, a) and m.has(a, b)

    def derived(f: int) -> int:
        a, b = cat.dom(f), cat.cod(f)
        p = m.times(cat.id_of(a), c.eps[b])  # A x B -> A
        return cat.compose(p, cat.compose(m.times(cat.id_of(a), f), c.delta[a]))

    is_restriction = isinstance(X, RestrictionCategory) or hasattr(X, "restriction")
    if is_restriction:
        for f in range(cat.n_morphisms):
            if statable(f):
                report.checked += 1
                if derived(f) != X.restriction(f):
                    if record("derived-restriction-mismatch", (f,)):
                        return report
        for f in range(cat.n_morphisms):
            a, b = cat.dom(f), cat.cod(f)
            if a in c.eps and b in c.eps:
                report.checked += 1
                preserves = cat.compose(c.eps[b], f) == c.eps[a]
                if preserves != is_total(X, f):
                    if record("total-counit-mismatch", (f,)):
                        return report

    if all(statable(f) for f in range(cat.n_morphisms)):
        table = [derived(f) for f in range(cat.n_morphisms)]
        rc2 = RestrictionCategory(
            list(cat.objects),
            [(cat.mor_names[i], cat.dom(i), cat.cod(i)) for i in range(cat.n_morphisms)],
            [cat.id_of(a) for a in range(cat.n_objects)],
            lambda g, f: cat.compose(g, f),
            table,
            name="derived",
        )
        sub = check_restriction_axioms(rc2, all_violations=all_violations)
        report.checked += sub.checked
        for v in sub.violations:
            if record("derived-axioms-" + v.law, v.witnesses, v.detail):
                return report
    return report


def products_to_copy(rp: RestrictionProductStructure):
    """Monoidal and copy data out of a product structure: tensor from the
    spans, symmetry as the twist pairing, counits as the terminal maps."""
    rc = rp.rc
    if rp.terminal is None:
        raise MissingStructure("copy data needs a chosen restriction terminal")
    ten_obj = {k: sp.apex for k, sp in rp.spans.items()}
    tau = {}
    for (a, b), sp in rp.spans.items():
        if rp.has(b, a):
            tau[(a, b)] = rp.pairing(sp.q, sp.p)
    m = StrictMonoidalData(rc, ten_obj, rp.times, rp.terminal, tau)
    delta = {a: rp.delta(a) for (a, b) in rp.spans if a == b}
    eps = {a: rp.t(a) for a in range(rc.n_objects)}
    return m, CopyStructure(delta, eps)


def copy_to_products(X, m: StrictMonoidalData, c: CopyStructure) -> RestrictionProductStructure:
    """Product spans out of copy data: p = 1 x eps and q = eps x 1.  The
    constructor's universal-property scan does the verification."""
    cat = m.cat
    spans = {}
    for (a, b), p_obj in sorted(m.ten_obj.items()):
        if a in c.eps and b in c.eps:
            spans[(a, b)] = Span(
                p_obj,
                m.times(cat.id_of(a), c.eps[b]),
                m.times(c.eps[a], cat.id_of(b)),
            )
    return RestrictionProductStructure(
        X, spans, m.unit, tensor=m.times, delta=dict(c.delta)
    )


def search_copy_structures(X, m: StrictMonoidalData, *, cap: int = DEFAULT_CAP):
    """Exhaustive search for copy structures on fixed monoidal data:
    per-object comonoid candidates where the self-tensor exists, every
    counit candidate elsewhere, then the full checker as the global
    filter."""
    cat = m.cat
    per_obj = []
    required = 0
    objs = list(range(cat.n_objects))
    for a in objs:
        cands = []
        if m.has(a, a):
            aa = m.ten(a, a)
            required += len(cat.hom(a, aa)) * len(cat.hom(a, m.unit))
            if required > cap:
                raise CapExceeded(required, cap)
            for d in cat.hom(a, aa):
                if (a, a) in m.tau and cat.compose(m.sym(a, a), d) != d:
                    continue
                for e in cat.hom(a, m.unit):
                    if cat.compose(m.times(e, cat.id_of(a)), d) != cat.id_of(a):
                        continue
                    if cat.compose(m.times(cat.id_of(a), e), d) != cat.id_of(a):
                        continue
                    cands.append((d, e))
        else:
            required += len(cat.hom(a, m.unit))
            if required > cap:
                raise CapExceeded(required, cap)
            cands = [(None, e) for e in cat.hom(a, m.unit)]
        per_obj.append(cands)

    total = 1
    for cands in per_obj:
        total *= max(len(cands), 1)
        if total > cap:
            raise CapExceeded(total, cap)

    out = []
    for choice in itertools.product(*per_obj):
        delta = {a: d for a, (d, e) in zip(objs, choice) if d is not None}
        eps = {a: e for a, (d, e) in zip(objs, choice)}
        cand = CopyStructure(delta, eps)
        if check_counital_copy(X, m, cand).passed:
            out.append(cand)
    return out


# -- comonoid enumeration -----------------------------------------------------------


@dataclass(frozen=True)
class Comonoid:
    obj: int
    delta: int
    eps: int


def enumerate_comonoids(cat, m: StrictMonoidalData, *, cap: int = DEFAULT_CAP):
    """All cocommutative comonoids (C, delta, eps) in the monoidal
    category, quantifying each law over the shapes present."""
    out = []
    required = 0
    for a in range(cat.n_objects):
        if not m.has(a, a):
            continue
        aa = m.ten(a, a)
        required += len(cat.hom(a, aa)) * len(cat.hom(a, m.unit))
        if required > cap:
            raise CapExceeded(required, cap)
        for d in cat.hom(a, aa):
            if (a, a) in m.tau and cat.compose(m.sym(a, a), d) != d:
                continue
            if m.has(a, aa) and m.has(aa, a):
                if cat.compose(m.times(d, cat.id_of(a)), d) != cat.compose(
                    m.times(cat.id_of(a), d), d
                ):
                    continue
            for e in cat.hom(a, m.unit):
                if cat.compose(m.times(e, cat.id_of(a)), d) != cat.id_of(a):
                    continue
                if cat.compose(m.times(cat.id_of(a), e), d) != cat.id_of(a):
                    continue
                out.append(Comonoid(a, d, e))
    return out


def comonoid_category(cat, m: StrictMonoidalData, comonoids=None, *, cap: int = DEFAULT_CAP):
    """The category of cocommutative comonoids and cosemigroup maps, with
    its inherited monoidal and copy structure.  Returns (category,
    monoidal, copy, report) where the report is the counital-copy check
    of the result."""
    if comonoids is None:
        comonoids = enumerate_comonoids(cat, m, cap=cap)
    comonoids = list(comonoids)
    index = {(cm.obj, cm.delta, cm.eps): i for i, cm in enumerate(comonoids)}

    morphisms = []
    for i, src in enumerate(comonoids):
        for j, tgt in enumerate(comonoids):
            if not (m.has(src.obj, src.obj) and m.has(tgt.obj, tgt.obj)):
                continue
            for f in cat.hom(src.obj, tgt.obj):
                if cat.compose(tgt.delta, f) == cat.compose(m.times(f, f), src.delta):
                    morphisms.append((f, i, j))
    if len(morphisms) > cap:
        raise CapExceeded(len(morphisms), cap)
    mor_index = {t: k for k, t in enumerate(morphisms)}

    names = []
    for f, i, j in morphisms:
        names.append((f"{cat.mor_names[f]}@{i}:{j}", i, j))
    identity = [mor_index[(cat.id_of(cm.obj), i, i)] for i, cm in enumerate(comonoids)]

    def compose(gk: int, fk: int) -> int:
        g, j2, k2 = morphisms[gk]
        f, i2, j3 = morphisms[fk]
        return mor_index[(cat.compose(g, f), i2, k2)]

    ccat = FinCategory(
        [f"C{i}" for i in range(len(comonoids))], names, identity, compose, name="comonoids"
    )

    ten_obj = {}
    tau = {}
    for i, ci in enumerate(comonoids):
        for j, cj in enumerate(comonoids):
            if not m.has(ci.obj, cj.obj):
                continue
            p_obj = m.ten(ci.obj, cj.obj)
            if not (m.has(p_obj, p_obj) and (ci.obj, cj.obj) in m.tau):
                continue
            dd = m.times(ci.delta, cj.delta)
            mid2 = m.times(m.times(cat.id_of(ci.obj), m.sym(ci.obj, cj.obj)), cat.id_of(cj.obj))
            d_p = cat.compose(mid2, dd)
            e_p = m.times(ci.eps, cj.eps)  # lands in I x I = I by strictness
            k = index.get((p_obj, d_p, e_p))
            if k is None:
                continue
            ten_obj[(i, j)] = k
            # symmetry of the comonoid category is the underlying symmetry
            if m.has(cj.obj, ci.obj):
                dd2 = m.times(cj.delta, ci.delta)
                mid3 = m.times(m.times(cat.id_of(cj.obj), m.sym(cj.obj, ci.obj)), cat.id_of(ci.obj))
                k2 = index.get((m.ten(cj.obj, ci.obj), cat.compose(mid3, dd2), m.times(cj.eps, ci.eps)))
                if k2 is not None:
                    key = (m.sym(ci.obj, cj.obj), k, k2)
                    if key in mor_index:
                        tau[(i, j)] = mor_index[key]

    unit_key = (m.unit, cat.id_of(m.unit), cat.id_of(m.unit))
    if unit_key not in index:
        raise MissingStructure("no trivial comonoid on the unit object")
    unit = index[unit_key]

    def ten_mor(fk: int, gk: int) -> int:
        f, i, j = morphisms[fk]
        g, i2, j2 = morphisms[gk]
        return mor_index[(m.times(f, g), ten_obj[(i, i2)], ten_obj[(j, j2)])]

    m2 = StrictMonoidalData(ccat, ten_obj, ten_mor, unit, tau)
    delta = {}
    eps = {}
    for i, cm in enumerate(comonoids):
        if (i, i) in ten_obj:
            delta[i] = mor_index.get((cm.delta, i, ten_obj[(i, i)]))
            if delta[i] is None:
                del delta[i]
        key = (cm.eps, i, unit)
        if key in mor_index:
            eps[i] = mor_index[key]
    c2 = CopyStructure(delta, eps)
    report = check_counital_copy(ccat, m2, c2)
    return ccat, m2, c2, report


def monoid_category(elements, mul, unit_el):
    """A commutative monoid as a one-object strict monoidal category:
    the tensor of endomorphisms is their product."""
    elements = list(elements)
    idx = {e: i for i, e in enumerate(elements)}
    morphisms = [(str(e), 0, 0) for e in elements]

    def compose(g: int, f: int) -> int:
        return idx[mul(elements[g], elements[f])]

    cat = FinCategory(["*"], morphisms, [idx[unit_el]], compose, name="monoid")
    m = StrictMonoidalData(
        cat, {(0, 0): 0}, lambda f, g: compose(f, g), 0, {(0, 0): idx[unit_el]}
    )
    return cat, m


# -- monoidal monads ---------------------------------------------------------------


@dataclass
class MonoidalMonadData:
    cat: object
    monoidal: StrictMonoidalData
    copy: CopyStructure | None
    t_obj: dict[int, int]
    t_mor: dict[int, int]
    eta: dict[int, int]
    mu: dict[int, int]
    phi: dict[tuple[int, int], int]

    def T(self, f: int) -> int:
        try:
            return self.t_mor[f]
        except KeyError:
            raise MissingStructure(
                f"the endofunctor is not defined at {self.cat.mor_names[f]}"
            ) from None

    def psi(self, a: int, b: int) -> int:
        """phi . (eta x 1) : A x TB -> T(A x B)."""
        m = self.monoidal
        return self.cat.compose(
            self.phi[(a, b)], m.times(self.eta[a], self.cat.id_of(self.t_obj[b]))
        )


def check_monoidal_monad(T: MonoidalMonadData, *, all_violations: bool = False) -> LawReport:
    """Functor and monad laws, naturality of eta/mu/phi, and the
    symmetry, unit, and multiplication squares for phi."""
    cat = T.cat
    m = T.monoidal
    report = LawReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    for a, ta in sorted(T.t_obj.items()):
        if cat.id_of(a) in T.t_mor:
            report.checked += 1
            if T.t_mor[cat.id_of(a)] != cat.id_of(ta):
                if record("functor-identity", (cat.id_of(a),)):
                    return report
    for f in sorted(T.t_mor):
        for g in cat.morphisms_from(cat.cod(f)):
            if g in T.t_mor and cat.compose(g, f) in T.t_mor:
                report.checked += 1
                if T.t_mor[cat.compose(g, f)] != cat.compose(T.t_mor[g], T.t_mor[f]):
                    if record("functor-composition", (g, f)):
                        return report

    for f in sorted(T.t_mor):
        a, b = cat.dom(f), cat.cod(f)
        if a in T.eta and b in T.eta:
            report.checked += 1
            if cat.compose(T.t_mor[f], T.eta[a]) != cat.compose(T.eta[b], f):
                if record("unit-not-natural", (f,)):
                    return report
        if a in T.mu and b in T.mu and T.t_mor[f] in T.t_mor:
            report.checked += 1
            if cat.compose(T.t_mor[f], T.mu[a]) != cat.compose(T.mu[b], T.t_mor[T.t_mor[f]]):
                if record("multiplication-not-natural", (f,)):
                    return report

    for a, mu_a in sorted(T.mu.items()):
        ta = T.t_obj[a]
        if ta in T.eta:
            report.checked += 1
            if cat.compose(mu_a, T.eta[ta]) != cat.id_of(ta):
                if record("monad-unit", (a,), "eta at TA"):
                    return report
        if a in T.eta and T.eta[a] in T.t_mor:
            report.checked += 1
            if cat.compose(mu_a, T.t_mor[T.eta[a]]) != cat.id_of(ta):
                if record("monad-unit", (a,), "T of eta"):
                    return report
        if ta in T.mu and mu_a in T.t_mor:
            report.checked += 1
            if cat.compose(mu_a, T.mu[ta]) != cat.compose(mu_a, T.t_mor[mu_a]):
                if record("monad-associativity", (a,)):
                    return report

    # phi: naturality, symmetry, unit, multiplication
    for (a, b), ph in sorted(T.phi.items()):
        ta, tb = T.t_obj[a], T.t_obj[b]
        if cat.dom(ph) != m.ten(ta, tb) or cat.cod(ph) != T.t_obj.get(m.ten(a, b), -1):
            raise MalformedTable(f"phi at ({cat.objects[a]}, {cat.objects[b]}) has wrong endpoints")
        report.checked += 1
        if cat.compose(ph, m.times(T.eta[a], T.eta[b])) != T.eta[m.ten(a, b)]:
            if record("phi-unit", (ph,)):
                return report
        if (b, a) in T.phi and (ta, tb) in m.tau and (a, b) in m.tau and m.ten(a, b) in T.t_obj:
            t_ab = m.sym(a, b)
            if t_ab in T.t_mor:
                report.checked += 1
                if cat.compose(T.t_mor[t_ab], ph) != cat.compose(T.phi[(b, a)], m.sym(ta, tb)):
                    if record("phi-symmetry", (ph,)):
                        return report
        if (
            ta in T.t_obj
            and tb in T.t_obj
            and (ta, tb) in T.phi
            and ph in T.t_mor
            and m.ten(a, b) in T.mu
        ):
            report.checked += 1
            lhs = cat.compose(T.mu[m.ten(a, b)], cat.compose(T.t_mor[ph], T.phi[(ta, tb)]))
            rhs = cat.compose(ph, m.times(T.mu[a], T.mu[b]))
            if lhs != rhs:
                if record("phi-multiplication", (ph,)):
                    return report

    for (a, b), ph in sorted(T.phi.items()):
        for f in sorted(T.t_mor):
            if cat.dom(f) != a:
                continue
            for g in sorted(T.t_mor):
                if cat.dom(g) != b:
                    continue
                a2, b2 = cat.cod(f), cat.cod(g)
                if (a2, b2) not in T.phi or not m.has(a, b) or not m.has(a2, b2):
                    continue
                fg = m.times(f, g)
                if fg not in T.t_mor:
                    continue
                report.checked += 1
                if cat.compose(T.t_mor[fg], ph) != cat.compose(
                    T.phi[(a2, b2)], m.times(T.t_mor[f], T.t_mor[g])
                ):
                    if record("phi-not-natural", (f, g)):
                        return report
    return report


def identity_monad(cat, m: StrictMonoidalData, c: CopyStructure | None = None) -> MonoidalMonadData:
    n = cat.n_morphisms
    return MonoidalMonadData(
        cat,
        m,
        c,
        {a: a for a in range(cat.n_objects)},
        {f: f for f in range(n)},
        {a: cat.id_of(a) for a in range(cat.n_objects)},
        {a: cat.id_of(a) for a in range(cat.n_objects)},
        {k: cat.id_of(p) for k, p in m.ten_obj.items()},
    )


def plus_one_monad(model: parfin.ParModel) -> MonoidalMonadData:
    """The maybe monad A -> A+1 on a finite-set fragment, with its
    monoidal strength computed by index arithmetic: a pair lands in the
    product summand when both coordinates do, and at the added point
    otherwise."""
    cat = model.rc
    m = par_monoidal(model)
    c = par_copy(model)
    t_obj = {}
    eta = {}
    mu = {}
    for a in model.sizes:
        if model.has_size(a + 1):
            t_obj[model.oid(a)] = model.oid(a + 1)
            eta[model.oid(a)] = model.mid(PartialFn(a, a + 1, tuple(range(a))))
        if model.has_size(a + 1) and model.has_size(a + 2):
            mu[model.oid(a)] = model.mid(
                PartialFn(a + 2, a + 1, tuple(list(range(a)) + [a, a]))
            )
    t_mor = {}
    for f in range(cat.n_morphisms):
        fn = model.fn(f)
        if model.has_size(fn.src + 1) and model.has_size(fn.tgt + 1):
            t_mor[f] = model.mid(
                PartialFn(fn.src + 1, fn.tgt + 1, tuple(list(fn.table) + [fn.tgt]))
            )
    phi = {}
    for a in model.sizes:
        for b in model.sizes:
            if not (
                model.has_size(a + 1)
                and model.has_size(b + 1)
                and model.has_size((a + 1) * (b + 1))
                and model.has_size(a * b)
                and model.has_size(a * b + 1)
            ):
                continue
            table = []
            for x in range(a + 1):
                for y in range(b + 1):
                    table.append(x * b + y if x < a and y < b else a * b)
            phi[(model.oid(a), model.oid(b))] = model.mid(
                PartialFn((a + 1) * (b + 1), a * b + 1, tuple(table))
            )
    return MonoidalMonadData(cat, m, c, t_obj, t_mor, eta, mu, phi)


def perturb_phi(model: parfin.ParModel, T: MonoidalMonadData, a: int, b: int) -> MonoidalMonadData:
    """Reroute the pair of added points of phi at (a, b) from the added
    point of the target to point 0 of the product summand.  This keeps
    the symmetry and unit squares intact and breaks the copy-monad
    square."""
    ph = T.phi[(model.oid(a), model.oid(b))]
    fn = model.fn(ph)
    table = list(fn.table)
    table[-1] = 0
    phi2 = dict(T.phi)
    phi2[(model.oid(a), model.oid(b))] = model.mid(PartialFn(fn.src, fn.tgt, tuple(table)))
    return MonoidalMonadData(T.cat, T.monoidal, T.copy, T.t_obj, T.t_mor, T.eta, T.mu, phi2)


def check_copy_monad(T: MonoidalMonadData, *, all_violations: bool = False) -> LawReport:
    """Monoidal-monad laws plus phi_(B,B) . delta_(TB) = T(delta_B); when
    those hold, the Kleisli copy maps are checked natural for every
    Kleisli morphism in range."""
    cat = T.cat
    m = T.monoidal
    c = T.copy
    if c is None:
        raise MissingStructure("a copy monad needs the ambient copy structure")
    report = LawReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    for b in sorted(T.t_obj):
        tb = T.t_obj[b]
        if (b, b) not in T.phi or tb not in c.delta or b not in c.delta:
            continue
        if c.delta[b] not in T.t_mor:
            continue
        report.checked += 1
        if cat.compose(T.phi[(b, b)], c.delta[tb]) != T.t_mor[c.delta[b]]:
            if record("copy-monad-square", (b,), f"at {cat.objects[b]}"):
                return report

    sub = check_monoidal_monad(T, all_violations=all_violations)
    report.checked += sub.checked
    report.violations.extend(sub.violations)
    if report.violations:
        return report

    # Kleisli copy maps are natural: T(delta_B).f = phi_(B,B).(f x f).delta_A
    for f in range(cat.n_morphisms):
        a = cat.dom(f)
        tb = cat.cod(f)
        bs = [b for b, t in T.t_obj.items() if t == tb]
        for b in bs:
            if (
                (b, b) not in T.phi
                or a not in c.delta
                or b not in c.delta
                or c.delta[b] not in T.t_mor
                or not m.has(a, a)
            ):
                continue
            report.checked += 1
            lhs = cat.compose(T.t_mor[c.delta[b]], f)
            rhs = cat.compose(T.phi[(b, b)], cat.compose(m.times(f, f), c.delta[a]))
            if lhs != rhs:
                if record("kleisli-copy-not-natural", (f,), f"summand {cat.objects[b]}"):
                    return report
    return report


def check_equational_lifting(T: MonoidalMonadData, *, all_violations: bool = False) -> LawReport:
    """psi_(TA,A) . delta_(TA) = T(eta_A x 1) . T(delta_A) wherever
    statable; a pass here must make the copy-monad check pass, and the
    two classifying equations are verified: the Kleisli restriction of
    eta_B . f is eta_A, and that of the identity on TA is T(eta_A)."""
    cat = T.cat
    m = T.monoidal
    c = T.copy
    if c is None:
        raise MissingStructure("equational lifting needs the ambient copy structure")
    report = LawReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    for a in sorted(T.t_obj):
        ta = T.t_obj[a]
        if (
            (ta, a) not in T.phi
            or ta not in c.delta
            or a not in c.delta
            or c.delta[a] not in T.t_mor
            or not m.has(ta, ta)
            or not m.has(ta, a)
        ):
            continue
        eta_one = m.times(T.eta[a], cat.id_of(a))
        if eta_one not in T.t_mor:
            continue
        report.checked += 1
        lhs = cat.compose(T.psi(ta, a), c.delta[ta])
        rhs = cat.compose(T.t_mor[eta_one], T.t_mor[c.delta[a]])
        if lhs != rhs:
            if record("lifting-square", (a,), f"at {cat.objects[a]}"):
                return report

    if report.violations:
        return report
    sub = check_copy_monad(T, all_violations=all_violations)
    report.checked += sub.checked
    for v in sub.violations:
        if record("lifting-without-copy-" + v.law, v.witnesses, v.detail):
            return report

    # Kleisli restriction of g : A -> TB, as T(p) . phi . (eta x 1) . <1,g>
    def k_restriction(g: int, a: int, b: int):
        try:
            if (
                a not in c.delta
                or b not in c.eps
                or not m.has(a, a)
                or not m.has(a, T.t_obj[b])
                or (a, b) not in T.phi
                or not m.has(a, b)
            ):
                return None
            pair = cat.compose(m.times(cat.id_of(a), g), c.delta[a])  # A -> A x TB
            p = m.times(cat.id_of(a), c.eps[b])  # A x B -> A
            if p not in T.t_mor:
                return None
            psi = T.psi(a, b)
            return cat.compose(T.t_mor[p], cat.compose(psi, pair))
        except (KeyError, MissingStructure):
            return None

    for f in range(cat.n_morphisms):
        a, b = cat.dom(f), cat.cod(f)
        if b not in T.eta or a not in T.eta:
            continue
        got = k_restriction(cat.compose(T.eta[b], f), a, b)
        if got is None:
            continue
        report.checked += 1
        if got != T.eta[a]:
            if record("classifying-total", (f,)):
                return report
    for a in sorted(T.t_obj):
        ta = T.t_obj[a]
        got = k_restriction(cat.id_of(ta), ta, a)
        if got is None or T.eta[a] not in T.t_mor:
            continue
        report.checked += 1
        if got != T.t_mor[T.eta[a]]:
            if record("classifying-identity", (a,)):
                return report
    return report


# -- distributive data and the Kleisli construction -------------------------------------


@dataclass(frozen=True)
class FinSetDistributive:
    """The finite-set skeleton up to max_size, with products, coproducts,
    terminal, initial, and distributivity all given by index arithmetic."""

    max_size: int


def finset_distributive(max_size: int) -> FinSetDistributive:
    if max_size < 0:
        raise InvalidDistributiveData("max_size must be at least 0")
    return FinSetDistributive(max_size)


class DistributiveCategoryData:
    """A plain finite category with chosen products, coproducts, terminal,
    initial, and explicit inverses for the canonical distributivity maps.
    Everything is verified on construction."""

    def __init__(self, cat, spans, cocones, terminal, initial, delta_inv):
        self.cat = cat
        self.spans: dict[tuple[int, int], Span] = dict(spans)
        self.cocones: dict[tuple[int, int], Cocone] = dict(cocones)
        self.terminal = terminal
        self.initial = initial
        self.delta_inv: dict[tuple[int, int, int], int] = dict(delta_inv)
        self._pair: dict[tuple[int, int], dict] = {}
        self._copair: dict[tuple[int, int], dict] = {}
        self._validate()

    def _validate(self) -> None:
        cat = self.cat
        for a in range(cat.n_objects):
            if len(cat.hom(a, self.terminal)) != 1:
                raise InvalidDistributiveData(
                    f"terminal fails at {cat.objects[a]}: {len(cat.hom(a, self.terminal))} maps"
                )
            if len(cat.hom(self.initial, a)) != 1:
                raise InvalidDistributiveData(
                    f"initial fails at {cat.objects[a]}: {len(cat.hom(self.initial, a))} maps"
                )
        for (a, b), sp in sorted(self.spans.items()):
            table = {}
            for u in range(cat.n_morphisms):
                if cat.cod(u) != sp.apex:
                    continue
                key = (cat.compose(sp.p, u), cat.compose(sp.q, u))
                if key in table:
                    raise InvalidDistributiveData(
                        f"product span ({cat.objects[a]}, {cat.objects[b]}): pairing ambiguous"
                    )
                table[key] = u
            for c in range(cat.n_objects):
                want = len(cat.hom(c, a)) * len(cat.hom(c, b))
                got = sum(1 for (f, g) in table if cat.dom(f) == c)
                if got != want:
                    raise InvalidDistributiveData(
                        f"product span ({cat.objects[a]}, {cat.objects[b]}): "
                        f"universal property fails from {cat.objects[c]}"
                    )
            self._pair[(a, b)] = table
        for (a, b), cc in sorted(self.cocones.items()):
            table = {}
            for u in range(cat.n_morphisms):
                if cat.dom(u) != cc.apex:
                    continue
                key = (cat.compose(u, cc.inj1), cat.compose(u, cc.inj2))
                if key in table:
                    raise InvalidDistributiveData(
                        f"coproduct ({cat.objects[a]}, {cat.objects[b]}): copairing ambiguous"
                    )
                table[key] = u
            for c in range(cat.n_objects):
                want = len(cat.hom(a, c)) * len(cat.hom(b, c))
                got = sum(1 for (f, g) in table if cat.cod(f) == c)
                if got != want:
                    raise InvalidDistributiveData(
                        f"coproduct ({cat.objects[a]}, {cat.objects[b]}): "
                        f"universal property fails into {cat.objects[c]}"
                    )
            self._copair[(a, b)] = table
        for (a, b, c), dinv in sorted(self.delta_inv.items()):
            d = self.delta(a, b, c)
            src, tgt = self.cat.dom(d), self.cat.cod(d)
            if self.cat.dom(dinv) != tgt or self.cat.cod(dinv) != src:
                raise InvalidDistributiveData(
                    f"stated inverse at ({self.cat.objects[a]}, {self.cat.objects[b]}, "
                    f"{self.cat.objects[c]}) has wrong endpoints"
                )
            if self.cat.compose(d, dinv) != self.cat.id_of(tgt) or self.cat.compose(
                dinv, d
            ) != self.cat.id_of(src):
                raise InvalidDistributiveData(
                    f"stated inverse fails at ({self.cat.objects[a]}, "
                    f"{self.cat.objects[b]}, {self.cat.objects[c]})"
                )

    def pairing(self, f: int, g: int) -> int:
        key = (self.cat.cod(f), self.cat.cod(g))
        try:
            return self._pair[key][(f, g)]
        except KeyError:
            raise InvalidDistributiveData("missing product structure for a pairing") from None

    def copairing(self, f: int, g: int) -> int:
        key = (self.cat.dom(f), self.cat.dom(g))
        try:
            return self._copair[key][(f, g)]
        except KeyError:
            raise InvalidDistributiveData("missing coproduct structure for a copairing") from None

    def span(self, a: int, b: int) -> Span:
        try:
            return self.spans[(a, b)]
        except KeyError:
            raise InvalidDistributiveData(
                f"no chosen product of ({self.cat.objects[a]}, {self.cat.objects[b]})"
            ) from None

    def cocone(self, a: int, b: int) -> Cocone:
        try:
            return self.cocones[(a, b)]
        except KeyError:
            raise InvalidDistributiveData(
                f"no chosen coproduct of ({self.cat.objects[a]}, {self.cat.objects[b]})"
            ) from None

    def times(self, f: int, g: int) -> int:
        sp = self.span(self.cat.dom(f), self.cat.dom(g))
        return self.pairing(self.cat.compose(f, sp.p), self.cat.compose(g, sp.q))

    def sum(self, f: int, g: int) -> int:
        cc = self.cocone(self.cat.cod(f), self.cat.cod(g))
        return self.copairing(
            self.cat.compose(cc.inj1, f), self.cat.compose(cc.inj2, g)
        )

    def bang(self, a: int) -> int:
        return self.cat.hom(a, self.terminal)[0]

    def delta(self, a: int, b: int, c: int) -> int:
        """The canonical map A x B + A x C -> A x (B + C)."""
        cat = self.cat
        cc = self.cocone(b, c)
        one_i = self.times(cat.id_of(a), cc.inj1)
        one_j = self.times(cat.id_of(a), cc.inj2)
        return self.copairing(one_i, one_j)


def finset_distributive_data(sizes, *, cap: int = DEFAULT_CAP) -> DistributiveCategoryData:
    """A materialized finite-set fragment as table-backed distributive
    data: spans, cocones, and distributivity inverses wherever the
    carrier sizes are present, all computed by index arithmetic."""
    model = parfin.finset_category(tuple(sizes), cap=cap)
    oid = model.oid
    spans = {}
    cocones = {}
    for a in model.sizes:
        for b in model.sizes:
            if model.has_size(a * b):
                spans[(oid(a), oid(b))] = Span(
                    oid(a * b),
                    model.mid(parfin.tensor_p_fn(a, b)),
                    model.mid(parfin.tensor_q_fn(a, b)),
                )
            if model.has_size(a + b):
                cocones[(oid(a), oid(b))] = Cocone(
                    oid(a + b),
                    model.mid(parfin.inclusion_fn(a, a + b)),
                    model.mid(parfin.inclusion_fn(b, a + b, a)),
                )
    delta_inv = {}
    for a in model.sizes:
        for b in model.sizes:
            for c in model.sizes:
                if not (
                    model.has_size(a * b)
                    and model.has_size(a * c)
                    and model.has_size(a * b + a * c)
                    and model.has_size(b + c)
                    and model.has_size(a * (b + c))
                ):
                    continue
                table = []
                for x in range(a):
                    for w in range(b + c):
                        table.append(x * b + w if w < b else a * b + x * c + (w - b))
                delta_inv[(oid(a), oid(b), oid(c))] = model.mid(
                    PartialFn(a * (b + c), a * b + a * c, tuple(table))
                )
    if not model.has_size(1) or not model.has_size(0):
        raise InvalidDistributiveData("the fragment needs one- and zero-element sets")
    return DistributiveCategoryData(
        model.rc, spans, cocones, oid(1), oid(0), delta_inv
    )


@dataclass
class KleisliModel:
    """The Kleisli category of the maybe monad, as a restriction category
    with coproducts, zero, and copy structure.  ``payload`` holds, per
    morphism, the underlying data: for the finite-set route a total table
    into B+1 (the added point is index b); for the table route the
    underlying category's morphism id."""

    rc: RestrictionCategory
    objects: tuple
    payload: tuple
    cp: CoproductStructure
    zero: ZeroWitness
    monoidal: StrictMonoidalData
    copy: CopyStructure
    _mid: dict = field(default_factory=dict)

    def oid(self, label) -> int:
        return self.objects.index(label)

    def mid(self, a: int, b: int, payload) -> int:
        if isinstance(payload, (list, tuple)):
            payload = tuple(payload)
        return self._mid[(a, b, payload)]

    def table(self, mor: int):
        return self.payload[mor]


def _kleisli_assert(model: KleisliModel, *, verify: bool) -> None:
    if not verify:
        return
    rep = check_restriction_axioms(model.rc)
    if not rep.passed:
        raise MalformedTable(f"restriction axioms fail: {rep.violations[0].law}")
    rep = check_restriction_coproducts(model.rc, model.cp)
    if not rep.passed:
        raise MalformedTable(f"coproduct laws fail: {rep.violations[0].law}")
    rep = check_restriction_zero(model.rc, model.cp)
    if not rep.passed:
        raise MalformedTable(f"zero laws fail: {rep.violations[0].law}")
    rep = check_counital_copy(model.rc, model.monoidal, model.copy)
    if not rep.passed:
        raise MalformedTable(f"copy laws fail: {rep.violations[0].law}")


def _finset_kleisli(D: FinSetDistributive, *, cap: int, verify: bool) -> KleisliModel:
    n = D.max_size
    sizes = list(range(n + 1))
    required = sum((b + 1) ** a for a in sizes for b in sizes)
    if required > cap:
        raise CapExceeded(required, cap)

    morphisms = []
    mid = {}
    for a in sizes:
        for b in sizes:
            for fn in all_partial_fns(a, b):
                table = tuple(b if v == -1 else v for v in fn.table)
                mid[(a, b, table)] = len(morphisms)
                morphisms.append((a, b, table, parfin.pf_name(fn)))

    names = [(nm, a, b) for a, b, t, nm in morphisms]
    identity = [mid[(a, a, tuple(range(a)))] for a in sizes]

    def compose(gk: int, fk: int) -> int:
        # mu . Tg . f, pointwise: follow f, then g where f landed in B
        b, c, tg, _ = morphisms[gk]
        a, _b, tf, _ = morphisms[fk]
        return mid[(a, c, tuple(tg[v] if v < b else c for v in tf))]

    def restriction(fk: int) -> int:
        # <1,f> ; delta-inverse ; (p + !), pointwise: keep x where f lands in B
        a, b, tf, _ = morphisms[fk]
        return mid[(a, a, tuple(x if tf[x] < b else a for x in range(a)))]

    rc = RestrictionCategory(
        [str(a) for a in sizes],
        names,
        identity,
        compose,
        [restriction(k) for k in range(len(morphisms))],
        name=f"kleisli(+1)<= {n}",
    )

    cocones = {}
    for a in sizes:
        for b in sizes:
            if a + b > n:
                continue
            cocones[(a, b)] = Cocone(
                a + b,
                mid[(a, a + b, tuple(range(a)))],
                mid[(b, a + b, tuple(a + y for y in range(b)))],
            )
    cp = CoproductStructure(rc, cocones, initial=0)

    ten_obj = {}
    tau = {}
    for a in sizes:
        for b in sizes:
            if a * b > n:
                continue
            ten_obj[(a, b)] = a * b
            tau[(a, b)] = mid[
                (a * b, b * a, tuple(y * a + x for x in range(a) for y in range(b)))
            ]

    def ten_mor(fk: int, gk: int) -> int:
        # phi . (f x g): a pair is defined when both coordinates are
        a1, b1, tf, _ = morphisms[fk]
        a2, b2, tg, _ = morphisms[gk]
        table = []
        for x in range(a1):
            for y in range(a2):
                table.append(
                    tf[x] * b2 + tg[y] if tf[x] < b1 and tg[y] < b2 else b1 * b2
                )
        return mid[(a1 * a2, b1 * b2, tuple(table))]

    monoidal = StrictMonoidalData(rc, ten_obj, ten_mor, 1 if n >= 1 else 0, tau)
    delta = {}
    eps = {}
    for a in sizes:
        if a * a <= n:
            delta[a] = mid[(a, a * a, tuple(x * a + x for x in range(a)))]
        if n >= 1:
            eps[a] = mid[(a, 1, (0,) * a)]
    copy = CopyStructure(delta, eps)

    model = KleisliModel(
        rc,
        tuple(sizes),
        tuple((a, b, t) for a, b, t, _ in morphisms),
        cp,
        find_restriction_zero(rc) or ZeroWitness(rc, 0),
        monoidal,
        copy,
        mid,
    )
    _kleisli_assert(model, verify=verify)
    return model


def _table_kleisli(D: DistributiveCategoryData, *, cap: int, verify: bool) -> KleisliModel:
    cat = D.cat
    J = [a for a in range(cat.n_objects) if (a, D.terminal) in D.cocones]

    def maybe(a: int) -> int:
        return D.cocone(a, D.terminal).apex

    morphisms = []
    mid = {}
    for ai, a in enumerate(J):
        for bi, b in enumerate(J):
            for f in cat.hom(a, maybe(b)):
                mid[(ai, bi, f)] = len(morphisms)
                morphisms.append((ai, bi, f))
    if len(morphisms) > cap:
        raise CapExceeded(len(morphisms), cap)

    def eta(b: int) -> int:
        return D.cocone(b, D.terminal).inj1

    def extend(g: int, b: int, c_obj: int) -> int:
        # [g, added point] : B+1 -> C+1; composing the multiplication with
        # the lifted g collapses to this copairing by the universal property
        return D.copairing(g, D.cocone(c_obj, D.terminal).inj2)

    def compose(gk: int, fk: int) -> int:
        bi, ci, g = morphisms[gk]
        ai, _bi, f = morphisms[fk]
        return mid[(ai, ci, cat.compose(extend(g, J[bi], J[ci]), f))]

    def restriction(fk: int) -> int:
        # <1,f> ; delta-inverse ; (p + !)
        ai, bi, f = morphisms[fk]
        a, b = J[ai], J[bi]
        try:
            dinv = D.delta_inv[(a, b, D.terminal)]
        except KeyError:
            raise InvalidDistributiveData(
                f"no stated distributivity inverse at ({cat.objects[a]}, "
                f"{cat.objects[b]}, terminal)"
            ) from None
        pair = D.pairing(cat.id_of(a), f)  # A -> A x (B+1)
        sp_ab = D.span(a, b)
        sp_a1 = D.span(a, D.terminal)
        cc_a = D.cocone(a, D.terminal)
        fold = D.copairing(
            cat.compose(cc_a.inj1, sp_ab.p), cat.compose(cc_a.inj2, D.bang(sp_a1.apex))
        )
        return mid[(ai, ai, cat.compose(fold, cat.compose(dinv, pair)))]

    names = []
    for ai, bi, f in morphisms:
        names.append((f"{cat.mor_names[f]}@{ai}>{bi}", ai, bi))
    identity = [mid[(ai, ai, eta(J[ai]))] for ai in range(len(J))]

    rc = RestrictionCategory(
        [cat.objects[a] for a in J],
        names,
        identity,
        compose,
        [restriction(k) for k in range(len(morphisms))],
        name="kleisli(+1)",
    )

    cocones = {}
    jindex = {a: i for i, a in enumerate(J)}
    for ai, a in enumerate(J):
        for bi, b in enumerate(J):
            if (a, b) not in D.cocones:
                continue
            cc = D.cocone(a, b)
            if cc.apex not in jindex:
                continue
            ci = jindex[cc.apex]
            cocones[(ai, bi)] = Cocone(
                ci,
                mid[(ai, ci, cat.compose(eta(cc.apex), cc.inj1))],
                mid[(bi, ci, cat.compose(eta(cc.apex), cc.inj2))],
            )
    initial = jindex.get(D.initial)
    cp = CoproductStructure(rc, cocones, initial=initial)

    ten_obj = {}
    tau = {}
    for ai, a in enumerate(J):
        for bi, b in enumerate(J):
            if (a, b) not in D.spans:
                continue
            sp = D.span(a, b)
            if sp.apex not in jindex:
                continue
            ten_obj[(ai, bi)] = jindex[sp.apex]
            if (b, a) in D.spans and D.span(b, a).apex in jindex:
                sp2 = D.span(b, a)
                tw = D.pairing(sp.q, sp.p)
                tau[(ai, bi)] = mid[(ten_obj[(ai, bi)], jindex[sp2.apex], cat.compose(eta(sp2.apex), tw))]

    def ten_mor(fk: int, gk: int) -> int:
        ai, bi, f = morphisms[fk]
        ci, di, g = morphisms[gk]
        b, d_obj = J[bi], J[di]
        # phi . (f x g) with phi = (B x D + !) . delta-inverses
        fg = D.times(f, g)
        ph = _table_phi(D, b, d_obj)
        tgt = jindex[D.span(b, d_obj).apex]
        src = ten_obj[(ai, ci)]
        return mid[(src, tgt, cat.compose(ph, fg))]

    unit = jindex.get(D.terminal)
    if unit is None:
        raise InvalidDistributiveData("the terminal object must itself have a maybe object")
    monoidal = StrictMonoidalData(rc, ten_obj, ten_mor, unit, tau)

    delta = {}
    eps = {}
    for ai, a in enumerate(J):
        if (ai, ai) in ten_obj:
            sp = D.span(a, a)
            dv = D.pairing(cat.id_of(a), cat.id_of(a))
            delta[ai] = mid[(ai, ten_obj[(ai, ai)], cat.compose(eta(sp.apex), dv))]
        eps[ai] = mid[(ai, unit, cat.compose(eta(D.terminal), D.bang(a)))]
    copy = CopyStructure(delta, eps)

    zero = find_restriction_zero(rc)
    if zero is None:
        raise InvalidDistributiveData("the Kleisli category has no zero object")
    model = KleisliModel(
        rc,
        tuple(cat.objects[a] for a in J),
        tuple(morphisms),
        cp,
        zero,
        monoidal,
        copy,
        mid,
    )
    _kleisli_assert(model, verify=verify)
    return model


def _table_phi(D: DistributiveCategoryData, b: int, d: int) -> int:
    """(B+1) x (D+1) -> B x D + 1 by distributing twice and folding the
    three mixed summands to the added point."""
    cat = D.cat
    mb = D.cocone(b, D.terminal).apex
    md = D.cocone(d, D.terminal).apex
    try:
        dinv1 = D.delta_inv[(md, b, D.terminal)]
    except KeyError:
        raise InvalidDistributiveData(
            f"no stated distributivity inverse at ({cat.objects[md]}, "
            f"{cat.objects[b]}, terminal)"
        ) from None
    # (B+1) x (D+1) ~ (D+1) x (B+1) -> (D+1) x B + (D+1) -> ...
    sp = D.span(mb, md)
    sp2 = D.span(md, mb)
    tw = D.pairing(sp.q, sp.p)
    cc_bd = D.cocone(b, d)

    # first distribute over B+1: (D+1) x B + (D+1) x 1
    sp_db = D.span(md, b)
    sp_d1 = D.span(md, D.terminal)
    # component 1: (D+1) x B -> B x (D+1) -> B x D + B x 1 -> BD + 1
    try:
        dinv2 = D.delta_inv[(b, d, D.terminal)]
    except KeyError:
        raise InvalidDistributiveData(
            f"no stated distributivity inverse at ({cat.objects[b]}, "
            f"{cat.objects[d]}, terminal)"
        ) from None
    bd = D.span(b, d).apex
    cc_bd1 = D.cocone(bd, D.terminal)
    tw2 = D.pairing(sp_db.q, sp_db.p)  # (D+1) x B -> B x (D+1)
    fold2 = D.copairing(
        cc_bd1.inj1, cat.compose(cc_bd1.inj2, D.bang(D.span(b, D.terminal).apex))
    )
    comp1 = cat.compose(fold2, cat.compose(dinv2, tw2))
    # component 2: (D+1) x 1 -> 1 -> BD + 1
    comp2 = cat.compose(cc_bd1.inj2, D.bang(sp_d1.apex))
    fold1 = D.copairing(comp1, comp2)
    return cat.compose(fold1, cat.compose(dinv1, tw))


def kleisli_restriction(D, *, cap: int = DEFAULT_CAP, verify: bool = True) -> KleisliModel:
    """The Kleisli category of the maybe monad as a restriction category:
    morphisms A -> B are maps A -> B+1, restriction keeps an input where
    the output lands in B.  Coproducts, the zero, and the copy structure
    come along, and all four law checks are asserted."""
    if isinstance(D, FinSetDistributive):
        return _finset_kleisli(D, cap=cap, verify=verify)
    if isinstance(D, DistributiveCategoryData):
        return _table_kleisli(D, cap=cap, verify=verify)
    raise InvalidDistributiveData("expected finite-set or table-backed distributive data")


def decision_in_kleisli(K: KleisliModel, f: int, blocks: tuple[int, int]):
    """For f : C -> A+B in the Kleisli category, the decision
    <1,f> ; distribute ; (p + p + !) : C -> C + C, evaluated pointwise:
    x goes left when f(x) lands in A, right when it lands in B, and is
    dropped otherwise.  Checked to be the unique decision."""
    from .coproducts import is_decision

    rc = K.rc
    a, b = blocks
    c_obj = rc.dom(f)
    if not isinstance(K.objects[a], int):
        raise MissingStructure("the decision formula is computed on the finite-set route")
    if not K.cp.has(a, b) or rc.cod(f) != K.cp.apex(a, b):
        raise ShapeMismatch("f does not target the chosen sum of the blocks")
    sa, sb = K.objects[a], K.objects[b]
    sc = K.objects[c_obj]
    _ai, _bi, tf = K.payload[f]
    table = []
    for x in range(sc):
        v = tf[x]
        if v < sa:
            table.append(x)
        elif v < sa + sb:
            table.append(sc + x)
        else:
            table.append(2 * sc)
    cc = K.cp.cocone(c_obj, c_obj)
    h = K.mid(c_obj, cc.apex, table)

    if not is_decision(rc, K.cp, K.zero, f, h, blocks):
        raise MalformedTable("the formula decision fails the decision laws")
    found = find_decision(rc, K.cp, K.zero, f, blocks=blocks)
    if found is None or not found.unique or found.h != h:
        raise MalformedTable("the formula decision disagrees with the searched one")
    return found


# -- extensive completion ---------------------------------------------------------------


@dataclass
class CompletionResult:
    dcat: object
    kleisli: KleisliModel
    sm: object
    total: object
    total_obj_map: dict
    total_mor_map: dict
    cp: CoproductStructure | None
    n_obj: dict
    n_mor: dict
    support: dict
    reports: dict


def extensive_completion(D, *, cap: int = DEFAULT_CAP) -> CompletionResult:
    """Kleisli category, idempotent splitting, total maps: the result is
    checked extensive with finite products, and the embedding of the
    input is checked to preserve the chosen products and coproducts up
    to invertible canonical comparisons."""
    K = kleisli_restriction(D, cap=cap)
    rc = K.rc
    sm = split_idempotents(rc, cap=cap)
    kr = sm.kr
    scp = split_coproducts(sm, K.cp)
    tot, obj_map, mor_map = total_subcategory(kr)

    cocones_tot = {}
    for (i, j), cc in scp.cocones.items():
        if cc.inj1 in mor_map and cc.inj2 in mor_map:
            cocones_tot[(obj_map[i], obj_map[j])] = Cocone(
                obj_map[cc.apex], mor_map[cc.inj1], mor_map[cc.inj2]
            )
    initial_tot = obj_map[scp.initial] if scp.initial is not None else None
    cp_tot = CoproductStructure(tot, cocones_tot, initial=initial_tot)

    reports = {}
    reports["extensive"] = check_extensive_category(tot, cp_tot)

    if isinstance(D, FinSetDistributive):
        dcat_model = parfin.finset_category(tuple(range(D.max_size + 1)))
        dcat = dcat_model.rc
        d_spans = {
            (dcat_model.oid(x), dcat_model.oid(y)): Span(
                dcat_model.oid(x * y),
                dcat_model.mid(parfin.tensor_p_fn(x, y)),
                dcat_model.mid(parfin.tensor_q_fn(x, y)),
            )
            for x in range(D.max_size + 1)
            for y in range(D.max_size + 1)
            if x * y <= D.max_size
        }
        d_cocones = {
            (dcat_model.oid(x), dcat_model.oid(y)): Cocone(
                dcat_model.oid(x + y),
                dcat_model.mid(parfin.inclusion_fn(x, x + y)),
                dcat_model.mid(PartialFn(y, x + y, tuple(x + k for k in range(y)))),
            )
            for x in range(D.max_size + 1)
            for y in range(D.max_size + 1)
            if x + y <= D.max_size
        }

        def d_mor_iter():
            for f in range(dcat.n_morphisms):
                yield f, dcat_model.fn(f)

        def embed(f: int) -> int:
            fn = dcat_model.fn(f)
            k = K._mid[(K.objects.index(fn.src), K.objects.index(fn.tgt), tuple(fn.table))]
            return mor_map[sm.embed_mor(k)]

        n_obj = {
            a: obj_map[sm.obj_embed[K.objects.index(dcat_model.sizes[a])]]
            for a in range(dcat.n_objects)
        }
        n_mor = {f: embed(f) for f in range(dcat.n_morphisms)}
    else:
        dcat = D.cat
        d_spans = D.spans
        d_cocones = D.cocones
        jindex = {lbl: i for i, lbl in enumerate(K.objects)}

        def embed(f: int) -> int:
            a, b = dcat.dom(f), dcat.cod(f)
            eta_b = D.cocone(b, D.terminal).inj1
            k = K._mid[(jindex[dcat.objects[a]], jindex[dcat.objects[b]], dcat.compose(eta_b, f))]
            return mor_map[sm.embed_mor(k)]

        n_obj = {}
        n_mor = {}
        for a in range(dcat.n_objects):
            if dcat.objects[a] in jindex:
                n_obj[a] = obj_map[sm.obj_embed[jindex[dcat.objects[a]]]]
        for f in range(dcat.n_morphisms):
            if dcat.dom(f) in n_obj and dcat.cod(f) in n_obj:
                n_mor[f] = embed(f)

    # functoriality of the embedding
    fun = LawReport(checked=0)
    for a in n_obj:
        fun.checked += 1
        if n_mor.get(dcat.id_of(a)) != tot.id_of(n_obj[a]):
            fun.violations.append(Violation("embedding-identity", (dcat.id_of(a),)))
    for f in n_mor:
        for g in dcat.morphisms_from(dcat.cod(f)):
            if g in n_mor:
                fun.checked += 1
                if n_mor.get(dcat.compose(g, f)) != tot.compose(n_mor[g], n_mor[f]):
                    fun.violations.append(Violation("embedding-composition", (g, f)))
    reports["embedding"] = fun

    # preservation up to invertible canonical comparison
    pres = LawReport(checked=0)
    for (a, b), sp in sorted(d_spans.items()):
        if a not in n_obj or b not in n_obj or sp.apex not in n_obj:
            continue
        search = find_ordinary_product(tot, n_obj[a], n_obj[b])
        if search.span is None:
            pres.violations.append(Violation("no-product-in-completion", (n_obj[a], n_obj[b])))
            continue
        tsp = search.span
        comparison = [
            u
            for u in tot.hom(n_obj[sp.apex], tsp.apex)
            if tot.compose(tsp.p, u) == n_mor[sp.p] and tot.compose(tsp.q, u) == n_mor[sp.q]
        ]
        pres.checked += 1
        if len(comparison) != 1 or two_sided_inverse(tot, comparison[0]) is None:
            pres.violations.append(
                Violation("product-not-preserved", (sp.p, sp.q), f"at ({a}, {b})")
            )
    for (a, b), cc in sorted(d_cocones.items()):
        if a not in n_obj or b not in n_obj or cc.apex not in n_obj:
            continue
        key = (n_obj[a], n_obj[b])
        if key not in cp_tot.cocones:
            continue
        tc = cp_tot.cocone(*key)
        comparison = [
            u
            for u in tot.hom(tc.apex, n_obj[cc.apex])
            if tot.compose(u, tc.inj1) == n_mor[cc.inj1]
            and tot.compose(u, tc.inj2) == n_mor[cc.inj2]
        ]
        pres.checked += 1
        if len(comparison) != 1 or two_sided_inverse(tot, comparison[0]) is None:
            pres.violations.append(
                Violation("coproduct-not-preserved", (cc.inj1, cc.inj2), f"at ({a}, {b})")
            )
    reports["preservation"] = pres

    support = {}
    if isinstance(D, FinSetDistributive):
        for k, (amb, e) in enumerate(sm.splits):
            _ai, _bi, te = K.payload[e]
            size = K.objects[_ai]
            support[obj_map[k]] = (size, tuple(x for x in range(size) if te[x] == x))

    return CompletionResult(
        D, K, sm, tot, obj_map, mor_map, cp_tot, n_obj, n_mor, support, reports
    )


def completion_canonical_iso(comp: CompletionResult, tot_obj: int):
    """For a completion object carried by (n, S), the explicit mutually
    inverse pair with the object carried by (|S|, full)."""
    n, S = comp.support[tot_obj]
    K = comp.kleisli
    sm = comp.sm
    tot = comp.total
    k = len(S)
    rank = {x: i for i, x in enumerate(S)}
    ai = K.objects.index(n)
    bi = K.objects.index(k)
    u = K._mid[(ai, bi, tuple(rank.get(x, k) for x in range(n)))]
    v = K._mid[(bi, ai, tuple(S))]
    inv_obj_map = {v2: k2 for k2, v2 in comp.total_obj_map.items()}
    split_src = inv_obj_map[tot_obj]
    split_tgt = sm.obj_embed[bi]
    fwd = comp.total_mor_map[sm.kid(u, split_src, split_tgt)]
    back = comp.total_mor_map[sm.kid(v, split_tgt, split_src)]
    if tot.compose(back, fwd) != tot.id_of(tot_obj):
        raise MalformedTable("canonical map is not a section")
    if tot.compose(fwd, back) != tot.id_of(comp.total_obj_map[split_tgt]):
        raise MalformedTable("canonical map is not a retraction")
    return fwd, back


# -- distributive copy categories ------------------------------------------------------


def check_distributive_copy(
    X,
    cp: CoproductStructure,
    rp: RestrictionProductStructure,
    *,
    all_violations: bool = False,
) -> LawReport:
    """Invertibility of the canonical A x B + A x C -> A x (B + C) for
    every statable triple."""
    report = LawReport(checked=0)
    for a, b, c in itertools.product(range(X.n_objects), repeat=3):
        d = _distributivity_map(X, cp, rp, a, b, c)
        if d is None:
            continue
        report.checked += 1
        if two_sided_inverse(X, d) is None:
            report.violations.append(
                Violation(
                    "distributivity-not-invertible",
                    (d,),
                    f"triple ({X.objects[a]}, {X.objects[b]}, {X.objects[c]})",
                )
            )
            if not all_violations:
                return report
    return report


def _distributivity_map(X, cp, rp, a: int, b: int, c: int):
    if not (cp.has(b, c) and rp.has(a, b) and rp.has(a, c)):
        return None
    cc = cp.cocone(b, c)
    if not (rp.has(a, cc.apex) and cp.has(rp.apex(a, b), rp.apex(a, c))):
        return None
    one_i = rp.times(X.id_of(a), cc.inj1)
    one_j = rp.times(X.id_of(a), cc.inj2)
    try:
        return cp.copair(rp.apex(a, b), rp.apex(a, c), one_i, one_j)
    except MissingStructure:
        return None


def decision_from_copy(X, cp, rp, f: int, blocks: tuple[int, int]):
    """The decision of f : C -> A + B as delta ; (C x f) ;
    distributivity-inverse ; (p + p)."""
    a, b = blocks
    c_obj = X.dom(f)
    d = _distributivity_map(X, cp, rp, c_obj, a, b)
    if d is None or not rp.has(c_obj, c_obj) or not cp.has(c_obj, c_obj):
        raise MissingStructure("the decision formula is not statable here")
    dinv = two_sided_inverse(X, d)
    if dinv is None:
        raise MissingStructure("the distributivity map is not invertible here")
    one_f = rp.times(X.id_of(c_obj), f)
    pp = cp.sum_mor(rp.span(c_obj, a).p, rp.span(c_obj, b).p)
    chain = X.compose(one_f, rp.delta(c_obj))
    return X.compose(pp, X.compose(dinv, chain))


def distributive_copy_equivalence(
    X, cp, rp, *, cap: int = DEFAULT_CAP
) -> LawReport:
    """The distributivity verdict must agree across X, its total maps,
    and its idempotent splitting; and extensivity must hold exactly when
    distributivity and a restriction zero do.  Formula decisions are
    checked against searched ones along the way."""
    report = LawReport(checked=0)
    verdict_x = check_distributive_copy(X, cp, rp)

    tot, obj_map, mor_map = total_subcategory(X)
    tot_verdict = True
    for a, b, c in itertools.product(range(X.n_objects), repeat=3):
        d = _distributivity_map(X, cp, rp, a, b, c)
        if d is None:
            continue
        report.checked += 1
        if d not in mor_map:
            tot_verdict = False
            continue
        inv = two_sided_inverse(X, d)
        if inv is None or inv not in mor_map:
            tot_verdict = False
    if tot_verdict != verdict_x.passed:
        report.violations.append(
            Violation("distributive-equivalence-mismatch", (), "total maps disagree")
        )

    sm = split_idempotents(X, cap=cap)
    cp_kr = split_coproducts(sm, cp)
    rp_kr = split_products(sm, rp)
    verdict_kr = check_distributive_copy(sm.kr, cp_kr, rp_kr)
    report.checked += verdict_kr.checked
    if verdict_kr.passed != verdict_x.passed:
        report.violations.append(
            Violation("distributive-equivalence-mismatch", (), "splitting disagrees")
        )

    zero = find_restriction_zero(X)
    ext = is_extensive_rcat(X, cp, zero)
    rhs = verdict_x.passed and zero is not None
    report.checked += ext.checked
    if ext.passed != rhs:
        report.violations.append(
            Violation(
                "extensive-theorem-mismatch",
                (),
                f"extensive={ext.passed} distributive-and-zero={rhs}",
            )
        )

    if zero is not None:
        for f in range(X.n_morphisms):
            for (a, b), cc in sorted(cp.cocones.items()):
                if X.cod(f) != cc.apex:
                    continue
                try:
                    h = decision_from_copy(X, cp, rp, f, (a, b))
                except MissingStructure:
                    continue
                found = find_decision(X, cp, zero, f, blocks=(a, b))
                report.checked += 1
                if found is None or found.h != h:
                    report.violations.append(Violation("formula-decision-mismatch", (f,)))
    report.violations.extend(verdict_x.violations)
    return report


# -- lattices as thin restriction categories ----------------------------------------


def lattice_category(elements, leq):
    """A finite lattice as a thin restriction category with trivial
    restriction: meets are the product spans, joins the coproduct
    cocones.  Returns (rc, cp, rp)."""
    elements = list(elements)
    n = len(elements)
    le = [[bool(leq(elements[i], elements[j])) for j in range(n)] for i in range(n)]

    def meet(i: int, j: int):
        cands = [k for k in range(n) if le[k][i] and le[k][j]]
        tops = [k for k in cands if all(le[x][k] for x in cands)]
        return tops[0] if tops else None

    def join(i: int, j: int):
        cands = [k for k in range(n) if le[i][k] and le[j][k]]
        bots = [k for k in cands if all(le[k][x] for x in cands)]
        return bots[0] if bots else None

    morphisms = []
    mid = {}
    for i in range(n):
        for j in range(n):
            if le[i][j]:
                mid[(i, j)] = len(morphisms)
                morphisms.append((f"{elements[i]}<={elements[j]}", i, j))

    def compose(g: int, f: int) -> int:
        return mid[(morphisms[f][1], morphisms[g][2])]

    identity = [mid[(i, i)] for i in range(n)]
    rc = RestrictionCategory(
        [str(e) for e in elements],
        morphisms,
        identity,
        compose,
        [mid[(morphisms[k][1], morphisms[k][1])] for k in range(len(morphisms))],
        name="lattice",
    )

    bottom = next(i for i in range(n) if all(le[i][j] for j in range(n)))
    top = next(i for i in range(n) if all(le[j][i] for j in range(n)))
    cocones = {}
    spans = {}
    for i in range(n):
        for j in range(n):
            jj = join(i, j)
            mm = meet(i, j)
            if jj is not None:
                cocones[(i, j)] = Cocone(jj, mid[(i, jj)], mid[(j, jj)])
            if mm is not None:
                spans[(i, j)] = Span(mm, mid[(mm, i)], mid[(mm, j)])
    cp = CoproductStructure(rc, cocones, initial=bottom)
    rp = RestrictionProductStructure(rc, spans, top)
    return rc, cp, rp


def diamond_lattice():
    """The five-element modular, non-distributive lattice: bottom, three
    incomparable middles, top."""
    elements = ["bot", "x", "y", "z", "top"]

    def leq(u, v):
        return u == v or u == "bot" or v == "top"

    return lattice_category(elements, leq)


# -- the bridge to partial functions -----------------------------------------------


def kleisli_plus_one_check(max_size: int, *, cap: int = DEFAULT_CAP) -> LawReport:
    """Tables A -> B+1 against partial functions A -> B: the undefined
    point of the one is the missing value of the other.  The bijection
    must respect identities, composition, and restriction."""
    K = kleisli_restriction(finset_distributive(max_size), cap=cap)
    P = parfin.par_category(tuple(range(max_size + 1)))
    rc_k, rc_p = K.rc, P.rc
    report = LawReport(checked=0)

    def to_par(mk: int) -> int:
        a, b, t = K.payload[mk]
        sa, sb = K.objects[a], K.objects[b]
        return P.mid(PartialFn(sa, sb, tuple(-1 if v == sb else v for v in t)))

    fwd = [to_par(mk) for mk in range(rc_k.n_morphisms)]
    if sorted(fwd) != list(range(rc_p.n_morphisms)):
        report.violations.append(Violation("bijection-not-onto", ()))
        return report

    for a in range(rc_k.n_objects):
        report.checked += 1
        if fwd[rc_k.id_of(a)] != rc_p.id_of(P.oid(K.objects[a])):
            report.violations.append(Violation("bijection-identity", (rc_k.id_of(a),)))
            return report
    for f in range(rc_k.n_morphisms):
        report.checked += 1
        if fwd[rc_k.restriction(f)] != rc_p.restriction(fwd[f]):
            report.violations.append(Violation("bijection-restriction", (f,)))
            return report
        for g in rc_k.morphisms_from(rc_k.cod(f)):
            report.checked += 1
            if fwd[rc_k.compose(g, f)] != rc_p.compose(fwd[g], fwd[f]):
                report.violations.append(Violation("bijection-composition", (g, f)))
                return report
    return report
