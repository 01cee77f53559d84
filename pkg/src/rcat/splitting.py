"""Splitting restriction idempotents, the total-map subcategory, and the
two extensivity checkers they connect.

split_idempotents builds the category whose objects are pairs (A, e) with
e a restriction idempotent on A; a morphism (A,e) -> (B,e') is an ambient
f : A -> B with f.e = f and e'.f = f, its identity is e itself, and its
restriction is r(f).e.  Every restriction idempotent then splits on the
nose through its own pair.

is_extensive_rcat asks for decisions of maps into chosen binary sums;
check_extensive_category asks, in a plain category, that pullbacks along
the two injections exist and recombine invertibly.  The two are run
against each other across the total-map subcategory of the splitting.
"""

from __future__ import annotations

from .coproducts import Cocone, CoproductStructure, ZeroWitness, find_decision, find_restriction_zero, check_restriction_coproducts, check_restriction_zero
from .core import (
    FinCategory,
    LawReport,
    RestrictionCategory,
    Violation,
    dense_subcategory,
    restriction_idempotent_ids,
    total_morphism_ids,
    two_sided_inverse,
)
from .errors import CapExceeded, MissingStructure
from .parfin import DEFAULT_CAP

__all__ = [
    "SplitModel",
    "split_name",
    "split_idempotents",
    "split_coproducts",
    "total_subcategory",
    "is_extensive_rcat",
    "plain_coproduct_search",
    "plain_pullback",
    "extensivity_failure",
    "check_extensive_category",
]


def split_name(obj: str, idem: str) -> str:
    """The generated object name for a split pair.  The components are
    escaped so the combined name parses back uniquely even when the
    input names already contain the delimiters, which keeps repeated
    splitting unambiguous."""

    def esc(s: str) -> str:
        out = []
        for ch in s:
            if ch in "\\(|)":
                out.append("\\")
            out.append(ch)
        return "".join(out)

    return f"({esc(obj)}|{esc(idem)})"


class SplitModel:
    """The split category plus the bookkeeping back to the ambient one."""

    def __init__(self, ambient, kr, splits, under, src_split, tgt_split):
        self.ambient = ambient
        self.kr = kr
        self.splits = splits  # split index -> (ambient object, idempotent)
        self.under = under  # kr morphism -> ambient morphism
        self.src_split = src_split
        self.tgt_split = tgt_split
        self.split_index = {s: i for i, s in enumerate(splits)}
        self._mor_index = {
            (under[m], src_split[m], tgt_split[m]): m for m in range(len(under))
        }
        self.obj_embed = tuple(
            self.split_index[(a, ambient.id_of(a))] for a in range(ambient.n_objects)
        )

    def kid(self, f: int, i: int, j: int) -> int:
        """The kr morphism with ambient part f between split objects i, j."""
        try:
            return self._mor_index[(f, i, j)]
        except KeyError:
            raise MissingStructure(
                f"{self.ambient.mor_names[f]} is not a morphism ({i}) -> ({j})"
            ) from None

    def embed_mor(self, f: int) -> int:
        """The inclusion of the ambient category on identity splits."""
        a = self.obj_embed[self.ambient.dom(f)]
        b = self.obj_embed[self.ambient.cod(f)]
        return self.kid(f, a, b)

    def splitting_of(self, a: int, e: int) -> tuple[int, int, int]:
        """(split object, retraction, section) exhibiting e = section .
        retraction with retraction . section = identity."""
        p = self.split_index[(a, e)]
        amb = self.obj_embed[a]
        r = self.kid(e, amb, p)
        i = self.kid(e, p, amb)
        kr = self.kr
        if kr.compose(r, i) != kr.id_of(p) or kr.compose(i, r) != self.embed_mor(e):
            raise MissingStructure("splitting equations fail; idempotent table broken")
        return p, r, i


def split_idempotents(rc: RestrictionCategory, *, cap: int | None = DEFAULT_CAP) -> SplitModel:
    """Objects: (object, restriction idempotent) in (object id, idempotent
    id) order.  Raises CapExceeded when the morphism count passes ``cap``."""
    splits: list[tuple[int, int]] = []
    for a in range(rc.n_objects):
        for e in restriction_idempotent_ids(rc, a):
            splits.append((a, e))

    under: list[int] = []
    src_s: list[int] = []
    tgt_s: list[int] = []
    for i, (a, e) in enumerate(splits):
        for j, (b, e2) in enumerate(splits):
            for f in rc.hom(a, b):
                if rc.compose(f, e) == f and rc.compose(e2, f) == f:
                    under.append(f)
                    src_s.append(i)
                    tgt_s.append(j)
                    if cap is not None and len(under) > cap:
                        raise CapExceeded(len(under), cap)

    index = {(under[m], src_s[m], tgt_s[m]): m for m in range(len(under))}
    identity = [index[(e, i, i)] for i, (a, e) in enumerate(splits)]
    restriction = [
        index[(rc.compose(rc.restriction(under[m]), splits[src_s[m]][1]), src_s[m], src_s[m])]
        for m in range(len(under))
    ]

    def compose(g: int, f: int) -> int:
        return index[(rc.compose(under[g], under[f]), src_s[f], tgt_s[g])]

    kr = RestrictionCategory(
        [split_name(rc.objects[a], rc.mor_names[e]) for (a, e) in splits],
        [
            (f"{rc.mor_names[under[m]]}@{src_s[m]}:{tgt_s[m]}", src_s[m], tgt_s[m])
            for m in range(len(under))
        ],
        identity,
        compose,
        restriction,
        name=f"split({rc.name or 'X'})",
    )
    return SplitModel(rc, kr, splits, under, src_s, tgt_s)


def split_coproducts(sm: SplitModel, cp: CoproductStructure) -> CoproductStructure:
    """Coproducts carry over: (A,e) + (B,e') = (A+B, e+e') wherever the
    ambient cocone exists.  The returned structure re-verifies them."""
    rc = sm.ambient
    cocones = {}
    for i, (a, e) in enumerate(sm.splits):
        for j, (b, e2) in enumerate(sm.splits):
            if not cp.has(a, b):
                continue
            cc = cp.cocone(a, b)
            esum = cp.sum_mor(e, e2)
            k = sm.split_index[(cc.apex, esum)]
            inj1 = sm.kid(rc.compose(cc.inj1, e), i, k)
            inj2 = sm.kid(rc.compose(cc.inj2, e2), j, k)
            cocones[(i, j)] = Cocone(k, inj1, inj2)
    initial = None
    if cp.initial is not None:
        initial = sm.obj_embed[cp.initial]
    return CoproductStructure(sm.kr, cocones, initial)


def total_subcategory(rc: RestrictionCategory):
    """The wide subcategory of total maps, with its trivial restriction.
    Returns (category, object map, morphism map)."""
    return dense_subcategory(rc, total_morphism_ids(rc))


def is_extensive_rcat(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None = None,
    *,
    all_violations: bool = False,
) -> LawReport:
    """Coproduct and zero laws, then a decision for every statable map
    into a chosen binary sum.  f : C -> A+B is statable when the (C,C)
    cocone needed to type its decisions is present; maps without that
    cocone are outside the checked fragment."""
    if zero is None:
        zero = find_restriction_zero(rc)
    report = LawReport(checked=0)
    for sub in (
        check_restriction_coproducts(rc, cp, all_violations=all_violations),
        check_restriction_zero(rc, cp, all_violations=all_violations),
    ):
        report.checked += sub.checked
        report.violations.extend(sub.violations)
        if report.violations and not all_violations:
            return report

    for (a, b), cc in sorted(cp.cocones.items()):
        for c in range(rc.n_objects):
            if not cp.has(c, c):
                continue
            for f in rc.hom(c, cc.apex):
                report.checked += 1
                d = find_decision(rc, cp, zero, f, (a, b))
                if d is None:
                    report.violations.append(
                        Violation(
                            "decision-missing",
                            (f,),
                            f"blocks ({rc.objects[a]}, {rc.objects[b]})",
                        )
                    )
                    if not all_violations:
                        return report
    return report


# -- plain-category side ----------------------------------------------------------


def plain_coproduct_search(cat: FinCategory, a: int, b: int) -> Cocone | None:
    """First (apex, i, j) in id order satisfying the plain coproduct
    universal property, by scan."""
    n = cat.n_objects
    counts = [[len(cat.hom(x, t)) for t in range(n)] for x in range(n)]
    for apex in range(n):
        if any(counts[apex][t] != counts[a][t] * counts[b][t] for t in range(n)):
            continue
        for i in cat.hom(a, apex):
            for j in cat.hom(b, apex):
                ok = True
                for t in range(n):
                    seen = set()
                    for h in cat.hom(apex, t):
                        key = (cat.compose(h, i), cat.compose(h, j))
                        if key in seen:
                            ok = False
                            break
                        seen.add(key)
                    if not ok or len(seen) != counts[a][t] * counts[b][t]:
                        ok = False
                        break
                if ok:
                    return Cocone(apex, i, j)
    return None


def plain_pullback(cat: FinCategory, f: int, g: int):
    """Pullback of the cospan (f : C -> T, g : A -> T): the first
    (Q, to_C, to_A) in id order through which every commuting span factors
    uniquely, or None."""
    c, a = cat.dom(f), cat.dom(g)
    if cat.cod(f) != cat.cod(g):
        raise MissingStructure("pullback needs a cospan")
    spans = []
    for w in range(cat.n_objects):
        for w1 in cat.hom(w, c):
            for w2 in cat.hom(w, a):
                if cat.compose(f, w1) == cat.compose(g, w2):
                    spans.append((w, w1, w2))
    for q, q1, q2 in spans:
        ok = True
        for w, w1, w2 in spans:
            mediators = [
                u
                for u in cat.hom(w, q)
                if cat.compose(q1, u) == w1 and cat.compose(q2, u) == w2
            ]
            if len(mediators) != 1:
                ok = False
                break
        if ok:
            return q, q1, q2
    return None


def extensivity_failure(
    cat: FinCategory, cp: CoproductStructure, f: int, a: int, b: int
) -> str | None:
    """Why f : C -> A+B is not an extensive map of the plain category:
    a missing pullback along an injection, a missing coproduct of the two
    pullback objects, or a non-invertible comparison map.  None when f
    passes."""
    cc = cp.cocone(a, b)
    pb1 = plain_pullback(cat, f, cc.inj1)
    if pb1 is None:
        return "no-pullback-inj1"
    pb2 = plain_pullback(cat, f, cc.inj2)
    if pb2 is None:
        return "no-pullback-inj2"
    qa, ka, _ = pb1
    qb, kb, _ = pb2
    if cp.has(qa, qb):
        cc2 = cp.cocone(qa, qb)
    else:
        cc2 = plain_coproduct_search(cat, qa, qb)
    if cc2 is None:
        return "no-coproduct-of-pullbacks"
    c = cat.dom(f)
    mediators = [
        h
        for h in cat.hom(cc2.apex, c)
        if cat.compose(h, cc2.inj1) == ka and cat.compose(h, cc2.inj2) == kb
    ]
    if len(mediators) != 1:
        return "comparison-not-unique"
    if two_sided_inverse(cat, mediators[0]) is None:
        return "comparison-not-invertible"
    return None


def check_extensive_category(
    cat: FinCategory,
    cp: CoproductStructure,
    *,
    pairs=None,
    all_violations: bool = False,
) -> LawReport:
    """Extensivity of a plain category with chosen binary coproducts:
    every map into a chosen sum must decompose as a coproduct of its
    pullbacks along the injections, invertibly.

    ``pairs="all"`` additionally demands a chosen cocone for every object
    pair, reporting the missing ones.
    """
    report = LawReport(checked=0)
    if pairs == "all":
        for a in range(cat.n_objects):
            for b in range(cat.n_objects):
                report.checked += 1
                if not cp.has(a, b):
                    report.violations.append(
                        Violation(
                            "coproduct-missing",
                            (),
                            f"({cat.objects[a]}, {cat.objects[b]})",
                        )
                    )
                    if not all_violations:
                        return report
    for (a, b), cc in sorted(cp.cocones.items()):
        for c in range(cat.n_objects):
            for f in cat.hom(c, cc.apex):
                report.checked += 1
                reason = extensivity_failure(cat, cp, f, a, b)
                if reason is not None:
                    report.violations.append(
                        Violation(
                            reason,
                            (f,),
                            f"blocks ({cat.objects[a]}, {cat.objects[b]})",
                        )
                    )
                    if not all_violations:
                        return report
    return report
