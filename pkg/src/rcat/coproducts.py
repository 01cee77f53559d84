"""Restriction coproducts, zero maps, decisions, and block matrices.

A coproduct structure carries one chosen cocone per object pair; tables
may be partial, and every operation quantifies over the cocones that are
actually present.  Wherever an n-ary sum appears it is the right-nested
composite of the chosen binary ones, so all formulas are reproducible
bit for bit.

The second half of the module runs the same block calculus directly on
concrete partial functions, where intermediate objects of any size are
available; the table-driven and concrete routes are cross-checked in the
test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import parfin
from .core import (
    LawReport,
    RestrictionCategory,
    Violation,
    dense_subcategory,
    is_restriction_idempotent,
    is_restriction_monic,
    is_total,
    restriction_inverse,
    restriction_retraction_section,
)
from .errors import (
    CapExceeded,
    InvalidWitness,
    MalformedTable,
    MissingBinaryDecision,
    MissingStructure,
    NoDecision,
    NoZero,
    ShapeMismatch,
)
from .parfin import PartialFn

__all__ = [
    "Cocone",
    "CoproductStructure",
    "discover_coproducts",
    "check_restriction_coproducts",
    "ZeroWitness",
    "find_restriction_zero",
    "check_restriction_zero",
    "injection_retraction",
    "Decision",
    "is_decision",
    "find_decision",
    "decision_from_binary",
    "self_decisions",
    "is_extensive_map",
    "extensive_subcategory",
    "PartialMatrix",
    "validate_matrix",
    "matrix_decompose",
    "matrix_recompose",
    "matrix_multiply",
    "fam_completion",
    "block_offsets",
    "par_block_entry",
    "par_decision_fn",
    "par_restriction_inverse",
    "par_nested_copair",
    "par_nested_sum",
    "par_nested_inj",
    "par_partial_proj",
    "par_matrix_decompose",
    "par_matrix_recompose",
    "par_matrix_multiply",
]


@dataclass(frozen=True)
class Cocone:
    apex: int
    inj1: int
    inj2: int


class CoproductStructure:
    """Chosen binary cocones plus the derived copair tables.

    Construction scans hom(apex, T) for every T and records
    (h . inj1, h . inj2) -> h.  The universal property demands that map
    be a bijection; failures are collected in ``up_violations`` rather
    than raised, so law checkers can report them.
    """

    def __init__(self, rc: RestrictionCategory, cocones, initial: int | None = None):
        self.rc = rc
        self.cocones: dict[tuple[int, int], Cocone] = dict(cocones)
        self.initial = initial
        self.up_violations: list[Violation] = []
        self._copair: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        for (a, b), cc in sorted(self.cocones.items()):
            if rc.dom(cc.inj1) != a or rc.cod(cc.inj1) != cc.apex:
                raise MalformedTable(f"cocone ({a},{b}): first injection endpoints wrong")
            if rc.dom(cc.inj2) != b or rc.cod(cc.inj2) != cc.apex:
                raise MalformedTable(f"cocone ({a},{b}): second injection endpoints wrong")
            self._scan(a, b, cc)
        self._z: dict[int, int] = {}
        if initial is not None:
            for t in range(rc.n_objects):
                out = rc.hom(initial, t)
                if len(out) != 1:
                    self.up_violations.append(
                        Violation("initial-not-unique", (), f"|hom(0,{rc.objects[t]})| = {len(out)}")
                    )
                else:
                    self._z[t] = out[0]

    def _scan(self, a: int, b: int, cc: Cocone) -> None:
        rc = self.rc
        table: dict[tuple[int, int], int] = {}
        for h in range(rc.n_morphisms):
            if rc.dom(h) != cc.apex:
                continue
            key = (rc.compose(h, cc.inj1), rc.compose(h, cc.inj2))
            if key in table:
                self.up_violations.append(Violation("copair-ambiguous", (table[key], h)))
            else:
                table[key] = h
        # coverage: every (f, g) into a common target must appear exactly once
        for t in range(rc.n_objects):
            for f in rc.hom(a, t):
                for g in rc.hom(b, t):
                    if (f, g) not in table:
                        self.up_violations.append(Violation("copair-missing", (f, g)))
        self._copair[(a, b)] = table

    # -- lookups -----------------------------------------------------------

    def has(self, a: int, b: int) -> bool:
        return (a, b) in self.cocones

    def cocone(self, a: int, b: int) -> Cocone:
        try:
            return self.cocones[(a, b)]
        except KeyError:
            raise MissingStructure(
                f"no chosen coproduct for ({self.rc.objects[a]}, {self.rc.objects[b]})"
            ) from None

    def apex(self, a: int, b: int) -> int:
        return self.cocone(a, b).apex

    def copair(self, a: int, b: int, f: int, g: int) -> int:
        cc = self.cocone(a, b)
        rc = self.rc
        if rc.dom(f) != a or rc.dom(g) != b or rc.cod(f) != rc.cod(g):
            raise ShapeMismatch("copair needs f:A->T, g:B->T")
        try:
            return self._copair[(a, b)][(f, g)]
        except KeyError:
            raise MalformedTable(
                f"no copair of ({rc.mor_names[f]}, {rc.mor_names[g]}): "
                f"universal property fails here"
            ) from None

    def z(self, t: int) -> int:
        """The unique map out of the chosen initial object."""
        if self.initial is None:
            raise MissingStructure("no chosen initial object")
        try:
            return self._z[t]
        except KeyError:
            raise MissingStructure(
                f"initial object has no unique map to {self.rc.objects[t]}"
            ) from None

    # -- derived binary pieces ----------------------------------------------

    def sum_mor(self, f: int, g: int) -> int:
        """f + g : dom f + dom g -> cod f + cod g (both cocones needed)."""
        rc = self.rc
        cd = self.cocone(rc.cod(f), rc.cod(g))
        return self.copair(
            rc.dom(f), rc.dom(g), rc.compose(cd.inj1, f), rc.compose(cd.inj2, g)
        )

    def codiagonal(self, a: int) -> int:
        i = self.rc.id_of(a)
        return self.copair(a, a, i, i)

    def twist(self, a: int, b: int) -> int:
        """The swap A+B -> B+A."""
        cc = self.cocone(b, a)
        return self.copair(a, b, cc.inj2, cc.inj1)

    # -- right-nested n-ary pieces -------------------------------------------

    def nested_apex(self, blocks) -> int:
        blocks = tuple(blocks)
        if not blocks:
            if self.initial is None:
                raise MissingStructure("empty sum needs a chosen initial object")
            return self.initial
        if len(blocks) == 1:
            return blocks[0]
        return self.apex(blocks[0], self.nested_apex(blocks[1:]))

    def nested_injections(self, blocks) -> tuple[int, ...]:
        blocks = tuple(blocks)
        if not blocks:
            return ()
        if len(blocks) == 1:
            return (self.rc.id_of(blocks[0]),)
        rest = blocks[1:]
        cc = self.cocone(blocks[0], self.nested_apex(rest))
        tail = tuple(self.rc.compose(cc.inj2, i) for i in self.nested_injections(rest))
        return (cc.inj1,) + tail

    def nested_copair(self, blocks, fs) -> int:
        blocks, fs = tuple(blocks), tuple(fs)
        if len(blocks) != len(fs):
            raise ShapeMismatch("one morphism per block")
        if not blocks:
            raise MissingStructure("empty copair needs an explicit target; use z()")
        if len(blocks) == 1:
            return fs[0]
        rest = self.nested_copair(blocks[1:], fs[1:])
        return self.copair(blocks[0], self.nested_apex(blocks[1:]), fs[0], rest)

    def nested_sum(self, dom_blocks, cod_blocks, fs) -> int:
        dom_blocks, cod_blocks, fs = tuple(dom_blocks), tuple(cod_blocks), tuple(fs)
        if not (len(dom_blocks) == len(cod_blocks) == len(fs)):
            raise ShapeMismatch("one morphism per block")
        if not fs:
            if self.initial is None:
                raise MissingStructure("empty sum needs a chosen initial object")
            return self.rc.id_of(self.initial)
        if len(fs) == 1:
            return fs[0]
        rest = self.nested_sum(dom_blocks[1:], cod_blocks[1:], fs[1:])
        rc = self.rc
        cd = self.cocone(cod_blocks[0], self.nested_apex(cod_blocks[1:]))
        return self.copair(
            dom_blocks[0],
            self.nested_apex(dom_blocks[1:]),
            rc.compose(cd.inj1, fs[0]),
            rc.compose(cd.inj2, rest),
        )

    def nested_codiagonal(self, a: int, k: int) -> int:
        if k == 0:
            return self.z(a)
        return self.nested_copair((a,) * k, (self.rc.id_of(a),) * k)

    def nested_partial_proj(self, blocks, k: int, zero: "ZeroWitness") -> int:
        """The retraction Sigma blocks -> blocks[k]: identity on the k-th
        summand, zero elsewhere."""
        blocks = tuple(blocks)
        fs = [
            self.rc.id_of(b) if l == k else zero.zero_mor(b, blocks[k])
            for l, b in enumerate(blocks)
        ]
        return self.nested_copair(blocks, fs)


def discover_coproducts(
    rc: RestrictionCategory, pairs=None, *, find_initial: bool = True
) -> CoproductStructure:
    """Brute-force chosen cocones: for each pair, the first (apex, i, j)
    in id order whose copair map is a bijection on every hom set."""
    n = rc.n_objects
    wanted = list(pairs) if pairs is not None else list(itertools.product(range(n), range(n)))
    hom_counts = [[len(rc.hom(a, t)) for t in range(n)] for a in range(n)]

    def up_holds(a: int, b: int, apex: int, i: int, j: int) -> bool:
        for t in range(n):
            seen = set()
            for h in rc.hom(apex, t):
                key = (rc.compose(h, i), rc.compose(h, j))
                if key in seen:
                    return False
                seen.add(key)
            if len(seen) != hom_counts[a][t] * hom_counts[b][t]:
                return False
        return True

    cocones = {}
    for a, b in wanted:
        found = None
        for apex in range(n):
            # counting filter before the per-span scan
            if any(
                hom_counts[apex][t] != hom_counts[a][t] * hom_counts[b][t]
                for t in range(n)
            ):
                continue
            for i in rc.hom(a, apex):
                for j in rc.hom(b, apex):
                    if up_holds(a, b, apex, i, j):
                        found = Cocone(apex, i, j)
                        break
                if found:
                    break
            if found:
                break
        if found:
            cocones[(a, b)] = found

    initial = None
    if find_initial:
        for z in range(n):
            if all(hom_counts[z][t] == 1 for t in range(n)):
                initial = z
                break
    return CoproductStructure(rc, cocones, initial)


def check_restriction_coproducts(
    rc: RestrictionCategory, cp: CoproductStructure, *, all_violations: bool = False
) -> LawReport:
    """Universal property, total injections, total unique-from-initial maps,
    total codiagonals, and r(f+g) = r(f)+r(g) over the cocones present."""
    report = LawReport(checked=0)
    report.violations.extend(cp.up_violations)
    if report.violations and not all_violations:
        return report

    def record(v: Violation) -> bool:
        report.violations.append(v)
        return not all_violations

    for (a, b), cc in sorted(cp.cocones.items()):
        report.checked += 2
        if not is_total(rc, cc.inj1):
            if record(Violation("injection-not-total", (cc.inj1,))):
                return report
        if not is_total(rc, cc.inj2):
            if record(Violation("injection-not-total", (cc.inj2,))):
                return report

    if cp.initial is not None:
        for t in range(rc.n_objects):
            try:
                zt = cp.z(t)
            except MissingStructure:
                continue
            report.checked += 1
            if not is_total(rc, zt):
                if record(Violation("initial-map-not-total", (zt,))):
                    return report

    for (a, b) in sorted(cp.cocones):
        if a == b:
            report.checked += 1
            if not is_total(rc, cp.codiagonal(a)):
                if record(Violation("codiagonal-not-total", (cp.codiagonal(a),))):
                    return report

    # r(f+g) = r(f) + r(g) wherever both cocones exist
    for (a, b) in sorted(cp.cocones):
        for a2 in range(rc.n_objects):
            for b2 in range(rc.n_objects):
                if not cp.has(a2, b2):
                    continue
                for f in rc.hom(a, a2):
                    for g in rc.hom(b, b2):
                        report.checked += 1
                        s = cp.sum_mor(f, g)
                        rs = cp.sum_mor(rc.restriction(f), rc.restriction(g))
                        if rc.restriction(s) != rs:
                            if record(Violation("sum-restriction", (f, g))):
                                return report
    return report


# -- restriction zero ----------------------------------------------------------


class ZeroWitness:
    """A zero object with the induced zero map for every object pair."""

    def __init__(self, rc: RestrictionCategory, obj: int):
        self.rc = rc
        self.obj = obj
        into = []
        outof = []
        for a in range(rc.n_objects):
            ins = rc.hom(a, obj)
            outs = rc.hom(obj, a)
            if len(ins) != 1 or len(outs) != 1:
                raise MalformedTable(
                    f"{rc.objects[obj]} is not a zero object: hom counts "
                    f"({len(ins)}, {len(outs)}) at {rc.objects[a]}"
                )
            into.append(ins[0])
            outof.append(outs[0])
        self.into = tuple(into)
        self.outof = tuple(outof)

    def zero_mor(self, a: int, b: int) -> int:
        return self.rc.compose(self.outof[b], self.into[a])


def find_restriction_zero(rc: RestrictionCategory) -> ZeroWitness | None:
    """First object that is both initial and terminal, as a ZeroWitness.
    Laws are judged separately by check_restriction_zero."""
    for z in range(rc.n_objects):
        if all(
            len(rc.hom(a, z)) == 1 and len(rc.hom(z, a)) == 1
            for a in range(rc.n_objects)
        ):
            return ZeroWitness(rc, z)
    return None


def check_restriction_zero(
    rc: RestrictionCategory, cp: CoproductStructure, *, all_violations: bool = False
) -> LawReport:
    """Three independent formulations, which must agree:

    (i)   a zero object exists and every zero endomap is a restriction
          idempotent;
    (ii)  the zero object's maps out are restriction monics;
    (iii) some plain terminal object has every map into it a restriction
          retraction.
    """
    report = LawReport(checked=0)
    violations = report.violations

    zero = find_restriction_zero(rc)
    if zero is not None and cp.initial is not None and zero.obj != cp.initial:
        # prefer the structure's initial when it is itself a zero object
        try:
            zero = ZeroWitness(rc, cp.initial)
        except MalformedTable:
            pass

    cond_i = zero is not None
    if zero is None:
        violations.append(Violation("zero-missing", ()))
    else:
        for a in range(rc.n_objects):
            report.checked += 1
            e = zero.zero_mor(a, a)
            if rc.restriction(e) != e:
                cond_i = False
                violations.append(Violation("zero-endo-not-idempotent", (e,)))
                if not all_violations:
                    break

    cond_ii = zero is not None
    if zero is not None:
        for a in range(rc.n_objects):
            report.checked += 1
            if not is_restriction_monic(rc, zero.outof[a]):
                cond_ii = False
                violations.append(Violation("zero-out-not-restriction-monic", (zero.outof[a],)))
                if not all_violations:
                    break

    cond_iii = False
    for t in range(rc.n_objects):
        if not all(len(rc.hom(a, t)) == 1 for a in range(rc.n_objects)):
            continue
        ok = True
        for a in range(rc.n_objects):
            report.checked += 1
            ta = rc.hom(a, t)[0]
            if restriction_retraction_section(rc, ta) is None:
                ok = False
                break
        if ok:
            cond_iii = True
            break
    if not cond_iii:
        violations.append(Violation("no-terminal-with-retraction-maps", ()))

    if not (cond_i == cond_ii == cond_iii):
        violations.append(
            Violation(
                "zero-conditions-disagree",
                (),
                f"i={cond_i} ii={cond_ii} iii={cond_iii}",
            )
        )

    if cond_i and cond_ii and cond_iii:
        # a passing report must not carry the absence markers of failed probes
        report.violations = [v for v in violations if v.law == "zero-conditions-disagree"]
    return report


def injection_retraction(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    a: int,
    b: int,
    component: int = 1,
) -> int:
    """The partial projection A+B -> A (component 1) or -> B (component 2):
    identity on its own summand, zero on the other.  Asserts the retraction
    equations against the chosen injection."""
    if zero is None:
        raise NoZero("injection_retraction needs a restriction zero")
    cc = cp.cocone(a, b)
    if component == 1:
        star = cp.copair(a, b, rc.id_of(a), zero.zero_mor(b, a))
        inj, own, other = cc.inj1, a, b
    elif component == 2:
        star = cp.copair(a, b, zero.zero_mor(a, b), rc.id_of(b))
        inj, own, other = cc.inj2, b, a
    else:
        raise ShapeMismatch("component must be 1 or 2")
    if rc.compose(star, inj) != rc.id_of(own):
        raise MalformedTable("retraction equation star . inj = id fails")
    expected = (
        cp.sum_mor(rc.id_of(a), zero.zero_mor(b, b))
        if component == 1
        else cp.sum_mor(zero.zero_mor(a, a), rc.id_of(b))
    )
    if rc.compose(inj, star) != rc.restriction(star) or rc.restriction(star) != expected:
        raise MalformedTable("retraction equation inj . star = r(star) = 1+0 fails")
    return star


# -- decisions -------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    subject: int
    blocks: tuple[int, ...]
    h: int
    unique: bool


def is_decision(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    f: int,
    h: int,
    blocks,
) -> bool:
    """All statable characterizations must hold:

    D.1  codiagonal . h == r(f);
    D.2  (sum of f) . h == (sum of injections) . f, when the doubled
         coproduct objects exist;
    the restriction-inverse form (h inverse to the copair of the
    blockwise domains, with r(h) = r(f)), when a zero is available.
    """
    blocks = tuple(blocks)
    k = len(blocks)
    c = rc.dom(f)
    if rc.cod(f) != cp.nested_apex(blocks):
        raise ShapeMismatch("f does not target the nested sum of the blocks")
    if rc.dom(h) != c or rc.cod(h) != cp.nested_apex((c,) * k):
        return False

    conds = []
    if k == 0:
        conds.append(rc.compose(cp.z(c), h) == rc.restriction(f))
    else:
        nabla = cp.nested_codiagonal(c, k)
        conds.append(rc.compose(nabla, h) == rc.restriction(f))

        try:
            p = cp.nested_apex(blocks)
            sum_f = cp.nested_sum((c,) * k, (p,) * k, (f,) * k)
            sum_inj = cp.nested_sum(blocks, (p,) * k, cp.nested_injections(blocks))
            conds.append(rc.compose(sum_f, h) == rc.compose(sum_inj, f))
        except MissingStructure:
            pass

        if zero is not None:
            try:
                es = tuple(
                    rc.restriction(
                        rc.compose(cp.nested_partial_proj(blocks, kk, zero), f)
                    )
                    for kk in range(k)
                )
                w = cp.nested_copair((c,) * k, es)
                conds.append(
                    rc.compose(h, w) == rc.restriction(w)
                    and rc.compose(w, h) == rc.restriction(h)
                    and rc.restriction(h) == rc.restriction(f)
                )
            except MissingStructure:
                pass
    return all(conds)


def find_decision(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    f: int,
    blocks,
) -> Decision | None:
    """Exhaustive search of hom(dom f, nested sum of dom-f copies) for
    decision morphisms.  Absence is a result, not an error; a missing
    search object raises MissingStructure."""
    blocks = tuple(blocks)
    c = rc.dom(f)
    if rc.cod(f) != cp.nested_apex(blocks):
        raise ShapeMismatch("f does not target the nested sum of the blocks")
    if not blocks:
        if zero is None:
            raise NoZero("empty-arity decisions need a restriction zero")
        h = zero.into[c]
        if not is_decision(rc, cp, zero, f, h, blocks):
            return None
        return Decision(f, blocks, h, True)
    target = cp.nested_apex((c,) * len(blocks))
    found = [
        h for h in rc.hom(c, target) if is_decision(rc, cp, zero, f, h, blocks)
    ]
    if not found:
        return None
    return Decision(f, blocks, found[0], len(found) == 1)


def decision_from_binary(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    f: int,
    blocks,
) -> Decision:
    """n-ary decision by induction on the blocks: decide the head summand
    against the rest, then recurse on the projected tail."""
    blocks = tuple(blocks)
    c = rc.dom(f)
    if len(blocks) <= 1:
        if not blocks:
            d = find_decision(rc, cp, zero, f, blocks)
            if d is None:
                raise MissingBinaryDecision("empty-arity decision failed")
            return d
        h = rc.restriction(f)
        return Decision(f, blocks, h, True)
    rest = blocks[1:]
    rest_apex = cp.nested_apex(rest)
    d_bin = find_decision(rc, cp, zero, f, (blocks[0], rest_apex))
    if d_bin is None:
        raise MissingBinaryDecision(
            f"binary decision of {rc.mor_names[f]} against "
            f"({rc.objects[blocks[0]]}, rest) is absent"
        )
    if zero is None:
        raise NoZero("the inductive step projects onto the tail summand")
    tail_proj = cp.nested_partial_proj((blocks[0], rest_apex), 1, zero)
    f_rest = rc.compose(tail_proj, f)
    d_rest = decision_from_binary(rc, cp, zero, f_rest, rest)
    h = rc.compose(
        cp.sum_mor(rc.id_of(c), d_rest.h),
        d_bin.h,
    )
    if not is_decision(rc, cp, zero, f, h, blocks):
        raise MalformedTable("inductive decision fails the decision laws")
    return Decision(f, blocks, h, True)


def self_decisions(rc: RestrictionCategory, cp: CoproductStructure, b: int) -> list[int]:
    """Morphisms h : B -> B+B that are decisions of something, found by the
    inverse criterion: h has a restriction inverse g and both g . inj are
    restriction idempotents."""
    cc = cp.cocone(b, b)
    out = []
    for h in rc.hom(b, cc.apex):
        g = restriction_inverse(rc, h)
        if g is None:
            continue
        if is_restriction_idempotent(rc, rc.compose(g, cc.inj1)) and is_restriction_idempotent(
            rc, rc.compose(g, cc.inj2)
        ):
            out.append(h)
    return out


def is_extensive_map(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    f: int,
) -> bool:
    """f : A -> B is extensive when every decision morphism on B pulls back
    along f to a decision on A.  Decisions on B are quantified over the
    (B,B) cocone if present (none present means vacuously extensive); a
    pulled-back decision that cannot exist counts as a failure."""
    a, b = rc.dom(f), rc.cod(f)
    if not cp.has(b, b):
        return True
    for h in self_decisions(rc, cp, b):
        hf = rc.compose(h, f)
        try:
            d = find_decision(rc, cp, zero, hf, (b, b))
        except MissingStructure:
            return False
        if d is None:
            return False
    return True


def extensive_subcategory(
    rc: RestrictionCategory, cp: CoproductStructure, zero: ZeroWitness | None
):
    """Full subcategory on the extensive maps; dense_subcategory raises if
    it failed to be closed under composition or restriction."""
    keep = [f for f in range(rc.n_morphisms) if is_extensive_map(rc, cp, zero, f)]
    return dense_subcategory(rc, keep)


# -- block matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class PartialMatrix:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]  # entries[row][col]
    witnesses: tuple[int, ...]  # one decision-shaped morphism per row


def validate_matrix(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    m: PartialMatrix,
) -> None:
    """Endpoint checks plus the row-witness invariant: each witness is
    restriction inverse to the copair of its row's entry restrictions."""
    nl, nk = len(m.rows), len(m.cols)
    if len(m.entries) != nl or any(len(r) != nk for r in m.entries):
        raise ShapeMismatch("entry grid does not match row/col objects")
    if len(m.witnesses) != nl:
        raise ShapeMismatch("one witness per row required")
    for l, row in enumerate(m.entries):
        for k, f in enumerate(row):
            if rc.dom(f) != m.rows[l] or rc.cod(f) != m.cols[k]:
                raise ShapeMismatch(f"entry ({l},{k}) has wrong endpoints")
    for l, h in enumerate(m.witnesses):
        a = m.rows[l]
        es = tuple(rc.restriction(m.entries[l][k]) for k in range(nk))
        if nk == 0:
            if zero is None:
                raise NoZero("empty-column witness needs a restriction zero")
            if h != zero.into[a]:
                raise InvalidWitness(f"row {l}: empty-arity witness is not the zero-ward map")
            continue
        w = cp.nested_copair((a,) * nk, es)
        if not (
            rc.compose(h, w) == rc.restriction(w)
            and rc.compose(w, h) == rc.restriction(h)
        ):
            raise InvalidWitness(
                f"row {l}: witness is not restriction inverse to the domain copair"
            )


def matrix_decompose(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    f: int,
    rows,
    cols,
) -> PartialMatrix:
    """Split f : Sigma rows -> Sigma cols into blockwise components
    (col-projection . f . row-injection) with per-row decision witnesses."""
    rows, cols = tuple(rows), tuple(cols)
    if rc.dom(f) != cp.nested_apex(rows) or rc.cod(f) != cp.nested_apex(cols):
        raise ShapeMismatch("f endpoints do not match the given blocks")
    if zero is None:
        raise NoZero("matrix decomposition projects through zero maps")
    row_inj = cp.nested_injections(rows)
    col_proj = [cp.nested_partial_proj(cols, k, zero) for k in range(len(cols))]
    entries = tuple(
        tuple(rc.compose(col_proj[k], rc.compose(f, row_inj[l])) for k in range(len(cols)))
        for l in range(len(rows))
    )
    witnesses = []
    for l in range(len(rows)):
        fl = rc.compose(f, row_inj[l])
        try:
            d = decision_from_binary(rc, cp, zero, fl, cols)
        except (MissingBinaryDecision, MissingStructure) as exc:
            raise NoDecision(l, f"row {l}: {exc}") from exc
        witnesses.append(d.h)
    m = PartialMatrix(rows, cols, entries, tuple(witnesses))
    validate_matrix(rc, cp, zero, m)
    return m


def matrix_recompose(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    m: PartialMatrix,
) -> int:
    """Reassemble the block map: codiagonal . (sum of rows of entry sums)
    . (sum of witnesses)."""
    validate_matrix(rc, cp, zero, m)
    rows, cols = m.rows, m.cols
    nl, nk = len(rows), len(cols)
    col_apex = cp.nested_apex(cols)
    if nk == 0:
        # every entry row is empty; the recomposite is the zero-ward map
        if zero is None:
            raise NoZero("empty-column recomposition needs a restriction zero")
        outs = [rc.compose(rc.hom(cp.nested_apex(()), col_apex)[0], w) for w in m.witnesses]
        return cp.nested_copair(rows, outs) if rows else rc.id_of(cp.nested_apex(()))
    sum_witness = cp.nested_sum(
        rows, tuple(cp.nested_apex((rows[l],) * nk) for l in range(nl)), m.witnesses
    )
    row_sums = tuple(
        cp.nested_sum((rows[l],) * nk, cols, m.entries[l]) for l in range(nl)
    )
    middle = cp.nested_sum(
        tuple(cp.nested_apex((rows[l],) * nk) for l in range(nl)),
        (col_apex,) * nl,
        row_sums,
    )
    fold = cp.nested_codiagonal(col_apex, nl)
    return rc.compose(fold, rc.compose(middle, sum_witness))


def matrix_multiply(
    rc: RestrictionCategory,
    cp: CoproductStructure,
    zero: ZeroWitness | None,
    g: PartialMatrix,
    f: PartialMatrix,
) -> PartialMatrix:
    """Blockwise composite: entry (row, out) joins the paths through every
    middle block, realized as a copair composed with the row witness."""
    if f.cols != g.rows:
        raise ShapeMismatch("inner block objects differ")
    validate_matrix(rc, cp, zero, f)
    validate_matrix(rc, cp, zero, g)
    nl, nk, nm = len(f.rows), len(f.cols), len(g.cols)
    entries = []
    for l in range(nl):
        a = f.rows[l]
        row = []
        for mu in range(nm):
            paths = tuple(
                rc.compose(g.entries[k][mu], f.entries[l][k]) for k in range(nk)
            )
            joined = cp.nested_copair((a,) * nk, paths)
            row.append(rc.compose(joined, f.witnesses[l]))
        entries.append(tuple(row))
    witnesses = []
    for l in range(nl):
        a = f.rows[l]
        es = tuple(rc.restriction(entries[l][mu]) for mu in range(nm))
        w = cp.nested_copair((a,) * nm, es) if nm else None
        if nm == 0:
            if zero is None:
                raise NoZero("empty-column witness needs a restriction zero")
            witnesses.append(zero.into[a])
            continue
        h = restriction_inverse(rc, w)
        if h is None:
            raise InvalidWitness(f"row {l}: product row has no witness")
        witnesses.append(h)
    m = PartialMatrix(f.rows, g.cols, tuple(entries), tuple(witnesses))
    validate_matrix(rc, cp, zero, m)
    return m


# -- free finite-family completion -------------------------------------------------


def fam_completion(
    rc: RestrictionCategory, k: int, *, cap: int | None = parfin.DEFAULT_CAP
):
    """Families of objects (length <= k) with reindexing maps and pointwise
    components; coproducts become concatenation.  Returns the category and
    its CoproductStructure."""
    if k < 1:
        raise MalformedTable("family length bound must be >= 1")
    objs = [()]
    for length in range(1, k + 1):
        objs.extend(itertools.product(range(rc.n_objects), repeat=length))
    obj_index = {o: i for i, o in enumerate(objs)}

    def obj_name(o):
        return "[" + ";".join(rc.objects[a] for a in o) + "]"

    mors = []  # (src_obj_idx, tgt_obj_idx, phi, comps)
    for si, src in enumerate(objs):
        for ti, tgt in enumerate(objs):
            if src and not tgt:
                continue  # no reindexing map into the empty family
            for phi in itertools.product(range(max(len(tgt), 1)), repeat=len(src)):
                if tgt == () and src == ():
                    phi = ()
                comp_pools = [rc.hom(src[l], tgt[phi[l]]) for l in range(len(src))]
                for comps in itertools.product(*comp_pools):
                    mors.append((si, ti, phi, comps))
                    if cap is not None and len(mors) > cap:
                        raise CapExceeded(len(mors), cap)

    def mor_name(si, ti, phi, comps):
        p = "".join(str(x) for x in phi) or "-"
        c = ";".join(rc.mor_names[m] for m in comps) or "-"
        return f"({p})({c})@{obj_name(objs[si])}>{obj_name(objs[ti])}"

    mor_index = {m: i for i, m in enumerate(mors)}

    def compose(gi, fi):
        s2, t2, phi_g, comps_g = mors[gi]
        s1, t1, phi_f, comps_f = mors[fi]
        phi = tuple(phi_g[p] for p in phi_f)
        comps = tuple(
            rc.compose(comps_g[phi_f[l]], comps_f[l]) for l in range(len(phi_f))
        )
        return mor_index[(s1, t2, phi, comps)]

    identities = []
    for oi, o in enumerate(objs):
        phi = tuple(range(len(o)))
        comps = tuple(rc.id_of(a) for a in o)
        identities.append(mor_index[(oi, oi, phi, comps)])

    restriction = []
    for si, ti, phi, comps in mors:
        rphi = tuple(range(len(objs[si])))
        rcomps = tuple(rc.restriction(c) for c in comps)
        restriction.append(mor_index[(si, si, rphi, rcomps)])

    fam = RestrictionCategory(
        [obj_name(o) for o in objs],
        [(mor_name(*m), m[0], m[1]) for m in mors],
        identities,
        compose,
        restriction,
        name=f"fam<={k}({rc.name or 'X'})",
    )

    cocones = {}
    for ai, a in enumerate(objs):
        for bi, b in enumerate(objs):
            cat = a + b
            if len(cat) > k:
                continue
            ci = obj_index[cat]
            i_phi = tuple(range(len(a)))
            j_phi = tuple(range(len(a), len(cat)))
            i_m = mor_index[(ai, ci, i_phi, tuple(rc.id_of(x) for x in a))]
            j_m = mor_index[(bi, ci, j_phi, tuple(rc.id_of(x) for x in b))]
            cocones[(ai, bi)] = Cocone(ci, i_m, j_m)
    cp = CoproductStructure(fam, cocones, initial=obj_index[()])
    return fam, cp


# -- the same calculus on concrete partial functions -------------------------------
#
# Sizes are unbounded here, so the formulas can always be evaluated; these
# functions are the reference route for block sizes whose nested sums do
# not fit in a materialized category.


def block_offsets(sizes) -> list[int]:
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return out


def par_block_entry(f: PartialFn, rows, cols, l: int, k: int) -> PartialFn:
    """Pointwise rule: defined where f carries the l-th row block into the
    k-th column block."""
    ro = block_offsets(rows)
    co = block_offsets(cols)
    table = []
    for x in range(rows[l]):
        v = f.table[ro[l] + x]
        table.append(v - co[k] if co[k] <= v < co[k + 1] else -1)
    return PartialFn(rows[l], cols[k], tuple(table))


def par_decision_fn(f: PartialFn, blocks) -> PartialFn:
    """Pointwise decision: route x to its own copy indexed by the block
    f(x) lands in."""
    bo = block_offsets(blocks)
    c = f.src
    table = []
    for x in range(c):
        v = f.table[x]
        if v < 0:
            table.append(-1)
            continue
        k = next(i for i in range(len(blocks)) if bo[i] <= v < bo[i + 1])
        table.append(k * c + x)
    return PartialFn(c, len(blocks) * c, tuple(table))


def par_restriction_inverse(f: PartialFn) -> PartialFn | None:
    """The concrete partial inverse; absent when f identifies two defined
    points."""
    table = [-1] * f.tgt
    for x, v in enumerate(f.table):
        if v < 0:
            continue
        if table[v] != -1:
            return None
        table[v] = x
    return PartialFn(f.tgt, f.src, tuple(table))


def par_nested_copair(fs) -> PartialFn:
    fs = list(fs)
    if not fs:
        raise ShapeMismatch("empty concrete copair needs a target size")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = parfin.copair_fn(f, out)
    return out


def par_nested_sum(fs) -> PartialFn:
    fs = list(fs)
    if not fs:
        return parfin.identity_fn(0)
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = parfin.sum_fn(f, out)
    return out


def par_nested_inj(blocks, k: int) -> PartialFn:
    bo = block_offsets(blocks)
    return parfin.inclusion_fn(blocks[k], bo[-1], bo[k])


def par_partial_proj(blocks, k: int) -> PartialFn:
    fs = [
        parfin.identity_fn(b) if l == k else parfin.zero_fn(b, blocks[k])
        for l, b in enumerate(blocks)
    ]
    return par_nested_copair(fs)


def par_matrix_decompose(f: PartialFn, rows, cols):
    """Formula route on concrete maps: entries via zero-padded projections
    and injections, witnesses via the restriction-inverse form."""
    rows, cols = tuple(rows), tuple(cols)
    entries = [
        [
            parfin.par_compose(
                par_partial_proj(cols, k), parfin.par_compose(f, par_nested_inj(rows, l))
            )
            for k in range(len(cols))
        ]
        for l in range(len(rows))
    ]
    witnesses = []
    for l in range(len(rows)):
        es = [parfin.par_restriction(entries[l][k]) for k in range(len(cols))]
        w = par_nested_copair(es) if es else parfin.zero_fn(0, rows[l])
        h = par_restriction_inverse(w)
        if h is None:
            raise InvalidWitness(f"row {l}: blockwise domains overlap")
        witnesses.append(h)
    return entries, witnesses


def par_matrix_recompose(entries, witnesses, rows, cols) -> PartialFn:
    rows, cols = tuple(rows), tuple(cols)
    nl, nk = len(rows), len(cols)
    if nk == 0:
        return parfin.zero_fn(sum(rows), 0)
    sum_w = par_nested_sum(witnesses)
    row_sums = [par_nested_sum(entries[l]) for l in range(nl)]
    middle = par_nested_sum(row_sums)
    fold = par_nested_copair([parfin.identity_fn(sum(cols))] * nl)
    return parfin.par_compose(fold, parfin.par_compose(middle, sum_w))


def par_matrix_multiply(g_entries, f_entries, f_witnesses, rows, mids, outs):
    """Entry (l, mu) = copair over the middle blocks of the composites,
    then the row witness; witnesses rebuilt by partial inversion."""
    nl, nk, nm = len(rows), len(mids), len(outs)
    entries = []
    for l in range(nl):
        row = []
        for mu in range(nm):
            paths = [
                parfin.par_compose(g_entries[k][mu], f_entries[l][k]) for k in range(nk)
            ]
            joined = par_nested_copair(paths) if paths else parfin.zero_fn(0, outs[mu])
            row.append(parfin.par_compose(joined, f_witnesses[l]))
        entries.append(row)
    witnesses = []
    for l in range(nl):
        es = [parfin.par_restriction(entries[l][mu]) for mu in range(nm)]
        w = par_nested_copair(es) if es else parfin.zero_fn(0, rows[l])
        h = par_restriction_inverse(w)
        if h is None:
            raise InvalidWitness(f"row {l}: product row domains overlap")
        witnesses.append(h)
    return entries, witnesses
