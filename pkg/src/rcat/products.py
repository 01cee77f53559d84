"""Restriction products, the p-category formulation, idempotent lattices
under ordinary products, and restriction limits.

A product structure stores one chosen span (apex, p, q) per object pair;
everything else (pairing, tensor on morphisms, diagonals) is derived from
the universal-property tables, so a structure built from concrete data
and one recovered by search behave identically.  All law checks quantify
over the spans actually present.

Limits follow the splitting construction: restrict each vertex by the
restrictions of its outgoing arrows, split, take the limit of the
resulting total diagram among total maps, and re-expand.  The universal
property is verified against every lax cone (or a seeded sample beyond
the size caps).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import parfin
from .core import (
    LawReport,
    RestrictionCategory,
    Violation,
    find_splitting,
    is_total,
    restriction_idempotent_ids,
    restriction_inverse,
    two_sided_inverse,
)
from .errors import (
    MalformedTable,
    MissingStructure,
    NoProducts,
    NotSeparable,
    NotSplit,
    NoTotalLimit,
    ShapeMismatch,
)

__all__ = [
    "Span",
    "RestrictionProductStructure",
    "par_products",
    "discover_restriction_products",
    "split_products",
    "check_restriction_products",
    "PCategoryStructure",
    "pc_from_products",
    "products_from_pc",
    "check_p_category",
    "derive_restriction",
    "product_p_equivalence",
    "TerminalReport",
    "restriction_terminal_check",
    "ProductSearch",
    "find_ordinary_product",
    "IdempotentLattice",
    "idempotent_lattice",
    "check_substitution",
    "Diagram",
    "RestrictionLimit",
    "restriction_limit_of_arrow",
    "verify_restriction_limit",
    "restriction_limit_of_diagram",
    "total_equalizer",
    "TrivialityReport",
    "triviality_guard",
]

DIAGRAM_NODE_CAP = 4
DIAGRAM_ARROW_CAP = 6


@dataclass(frozen=True)
class Span:
    apex: int
    p: int
    q: int


class RestrictionProductStructure:
    """Chosen spans plus terminal data.  The pairing table is built by
    scanning hom(C, apex): u -> (p.u, q.u) must biject onto the pairs
    with equal restriction; failures land in ``up_violations``."""

    def __init__(self, rc: RestrictionCategory, spans, terminal=None, tensor=None, delta=None):
        self.rc = rc
        self.spans: dict[tuple[int, int], Span] = dict(spans)
        self.terminal = terminal
        self.up_violations: list[Violation] = []
        self._pair: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        self._tensor_explicit = tensor
        self._delta_explicit = dict(delta) if delta is not None else None
        self._times_memo: dict[tuple[int, int], int] = {}
        for (a, b), sp in sorted(self.spans.items()):
            if rc.dom(sp.p) != sp.apex or rc.cod(sp.p) != a:
                raise MalformedTable(f"span ({a},{b}): first projection endpoints wrong")
            if rc.dom(sp.q) != sp.apex or rc.cod(sp.q) != b:
                raise MalformedTable(f"span ({a},{b}): second projection endpoints wrong")
            self._scan(a, b, sp)
        self._t: dict[int, int] = {}
        if terminal is not None:
            for a in range(rc.n_objects):
                total = [f for f in rc.hom(a, terminal) if is_total(rc, f)]
                if len(total) != 1:
                    self.up_violations.append(
                        Violation(
                            "terminal-map-not-forced",
                            (),
                            f"{len(total)} total maps {rc.objects[a]} -> terminal",
                        )
                    )
                else:
                    self._t[a] = total[0]

    def _scan(self, a: int, b: int, sp: Span) -> None:
        rc = self.rc
        table: dict[tuple[int, int], int] = {}
        for u in range(rc.n_morphisms):
            if rc.cod(u) != sp.apex:
                continue
            key = (rc.compose(sp.p, u), rc.compose(sp.q, u))
            if key in table:
                self.up_violations.append(Violation("pairing-ambiguous", (table[key], u)))
            else:
                table[key] = u
        for c in range(rc.n_objects):
            for f in rc.hom(c, a):
                rf = rc.restriction(f)
                for g in rc.hom(c, b):
                    if rf != rc.restriction(g):
                        continue
                    if (f, g) not in table:
                        self.up_violations.append(Violation("pairing-missing", (f, g)))
        self._pair[(a, b)] = table

    # -- lookups ------------------------------------------------------------

    def has(self, a: int, b: int) -> bool:
        return (a, b) in self.spans

    def span(self, a: int, b: int) -> Span:
        try:
            return self.spans[(a, b)]
        except KeyError:
            raise MissingStructure(
                f"no chosen product span for ({self.rc.objects[a]}, {self.rc.objects[b]})"
            ) from None

    def apex(self, a: int, b: int) -> int:
        return self.span(a, b).apex

    def pairing(self, f: int, g: int) -> int:
        """The unique u with p.u = f.r(g) and q.u = g.r(f)."""
        rc = self.rc
        if rc.dom(f) != rc.dom(g):
            raise ShapeMismatch("pairing needs morphisms with a common source")
        table = self._pair.get((rc.cod(f), rc.cod(g)))
        if table is None:
            raise MissingStructure(
                f"no chosen product span for ({self.rc.objects[rc.cod(f)]}, "
                f"{self.rc.objects[rc.cod(g)]})"
            )
        key = (rc.compose(f, rc.restriction(g)), rc.compose(g, rc.restriction(f)))
        try:
            return table[key]
        except KeyError:
            raise MalformedTable(
                f"no pairing of ({rc.mor_names[f]}, {rc.mor_names[g]}): "
                f"universal property fails here"
            ) from None

    def times(self, f: int, g: int) -> int:
        """f x g, from the explicit table when given, else as the pairing
        (f.p, g.q)."""
        key = (f, g)
        out = self._times_memo.get(key)
        if out is not None:
            return out
        if self._tensor_explicit is not None:
            out = self._tensor_explicit(f, g)
        else:
            rc = self.rc
            sp = self.span(rc.dom(f), rc.dom(g))
            out = self.pairing(rc.compose(f, sp.p), rc.compose(g, sp.q))
        self._times_memo[key] = out
        return out

    def delta(self, a: int) -> int:
        if self._delta_explicit is not None:
            try:
                return self._delta_explicit[a]
            except KeyError:
                raise MissingStructure(f"no diagonal stored for {self.rc.objects[a]}") from None
        i = self.rc.id_of(a)
        return self.pairing(i, i)

    def t(self, a: int) -> int:
        if self.terminal is None:
            raise MissingStructure("no chosen restriction terminal")
        try:
            return self._t[a]
        except KeyError:
            raise MissingStructure(
                f"no forced total map {self.rc.objects[a]} -> terminal"
            ) from None

    def tensorable(self):
        """(f, g) pairs whose domain pair and codomain pair both have spans."""
        rc = self.rc
        for (a, b) in sorted(self.spans):
            for (a2, b2) in sorted(self.spans):
                for f in rc.hom(a, a2):
                    for g in rc.hom(b, b2):
                        yield f, g


def par_products(
    model: parfin.ParModel, *, pairs=None, terminal_size: int = 1
) -> RestrictionProductStructure:
    """Concrete spans for a partial-function model: apex = product of the
    sizes, projections by index arithmetic; terminal = the one-point set
    when present.  ``pairs`` limits which size pairs get a span."""
    rc = model.rc
    wanted = None if pairs is None else {tuple(p) for p in pairs}
    spans = {}
    for a in model.sizes:
        for b in model.sizes:
            if wanted is not None and (a, b) not in wanted:
                continue
            if not model.has_size(a * b):
                continue
            spans[(model.oid(a), model.oid(b))] = Span(
                model.oid(a * b),
                model.mid(parfin.tensor_p_fn(a, b)),
                model.mid(parfin.tensor_q_fn(a, b)),
            )
    terminal = model.oid(terminal_size) if model.has_size(terminal_size) else None
    return RestrictionProductStructure(rc, spans, terminal)


def discover_restriction_products(
    rc: RestrictionCategory, pairs=None, *, find_terminal: bool = True
) -> RestrictionProductStructure:
    """Brute-force chosen spans: the first (apex, p, q) in id order whose
    pairing scan is a bijection onto the equal-restriction pairs."""
    n = rc.n_objects
    wanted = list(pairs) if pairs is not None else list(itertools.product(range(n), range(n)))

    match_counts = {}

    def matches(c: int, a: int, b: int) -> int:
        key = (c, a, b)
        out = match_counts.get(key)
        if out is None:
            out = 0
            by_rst: dict[int, int] = {}
            for f in rc.hom(c, a):
                by_rst[rc.restriction(f)] = by_rst.get(rc.restriction(f), 0) + 1
            for g in rc.hom(c, b):
                out += by_rst.get(rc.restriction(g), 0)
            match_counts[key] = out
        return out

    def up_holds(a: int, b: int, apex: int, p: int, q: int) -> bool:
        for c in range(n):
            seen = set()
            for u in rc.hom(c, apex):
                key = (rc.compose(p, u), rc.compose(q, u))
                if key in seen:
                    return False
                seen.add(key)
            if len(seen) != matches(c, a, b):
                return False
        return True

    spans = {}
    for a, b in wanted:
        found = None
        for apex in range(n):
            if any(len(rc.hom(c, apex)) != matches(c, a, b) for c in range(n)):
                continue
            for p in rc.hom(apex, a):
                if not is_total(rc, p):
                    continue
                for q in rc.hom(apex, b):
                    if not is_total(rc, q):
                        continue
                    if up_holds(a, b, apex, p, q):
                        found = Span(apex, p, q)
                        break
                if found:
                    break
            if found:
                break
        if found:
            spans[(a, b)] = found

    terminal = None
    if find_terminal:
        for t in range(rc.n_objects):
            if all(
                sum(1 for f in rc.hom(a, t) if is_total(rc, f)) == 1
                and len(rc.hom(a, t)) == len(restriction_idempotent_ids(rc, a))
                for a in range(rc.n_objects)
            ):
                terminal = t
                break
    return RestrictionProductStructure(rc, spans, terminal)


def split_products(sm, rp: RestrictionProductStructure) -> RestrictionProductStructure:
    """Products carry over to the idempotent splitting: (A,e) x (B,e') =
    (A x B, e x e').  ``sm`` is a SplitModel; the result is re-verified by
    the constructor's scan."""
    rc = sm.ambient
    spans = {}
    for i, (a, e) in enumerate(sm.splits):
        for j, (b, e2) in enumerate(sm.splits):
            if not rp.has(a, b):
                continue
            sp = rp.span(a, b)
            ee = rp.times(e, e2)
            k = sm.split_index[(sp.apex, ee)]
            p = sm.kid(rc.compose(e, rc.compose(sp.p, ee)), k, i)
            q = sm.kid(rc.compose(e2, rc.compose(sp.q, ee)), k, j)
            spans[(i, j)] = Span(k, p, q)
    terminal = None
    if rp.terminal is not None:
        terminal = sm.obj_embed[rp.terminal]
    return RestrictionProductStructure(sm.kr, spans, terminal)


def check_restriction_products(
    rc: RestrictionCategory,
    rp: RestrictionProductStructure,
    *,
    all_violations: bool = False,
    max_instances: int | None = None,
) -> LawReport:
    """Universal-property scan, totality of the structure maps, the
    triangle and lax-naturality diagrams, preservation of restriction by
    x, the terminal laws, and the two derived consequences
    r((f x g).delta) = r(f).r(g) and strict naturality of delta.

    The quadratic composition-functoriality sweep stops after
    ``max_instances`` instances and flags the report truncated."""
    report = LawReport(checked=0)
    report.violations.extend(rp.up_violations)
    if report.violations and not all_violations:
        return report

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    R = rc.restriction

    for (a, b), sp in sorted(rp.spans.items()):
        report.checked += 2
        if not is_total(rc, sp.p):
            if record("projection-not-total", (sp.p,)):
                return report
        if not is_total(rc, sp.q):
            if record("projection-not-total", (sp.q,)):
                return report

    for (a, b), sp in sorted(rp.spans.items()):
        if a == b:
            d = rp.delta(a)
            report.checked += 3
            if not is_total(rc, d):
                if record("diagonal-not-total", (d,)):
                    return report
            if rc.compose(sp.p, d) != rc.id_of(a) or rc.compose(sp.q, d) != rc.id_of(a):
                if record("diagonal-triangle", (d,)):
                    return report

    # (p x q) . delta on A x B is the identity, where statable
    for (a, b), sp in sorted(rp.spans.items()):
        if rp.has(sp.apex, sp.apex) and rp.has(a, b):
            report.checked += 1
            pq = rp.times(sp.p, sp.q)
            if rc.compose(pq, rp.delta(sp.apex)) != rc.id_of(sp.apex):
                if record("pair-of-projections-triangle", (pq,)):
                    return report

    # functoriality of x, restriction preservation, lax naturality
    for f, g in rp.tensorable():
        fg = rp.times(f, g)
        sp_d = rp.span(rc.dom(f), rc.dom(g))
        sp_c = rp.span(rc.cod(f), rc.cod(g))
        report.checked += 3
        if R(fg) != rp.times(R(f), R(g)):
            if record("tensor-restriction", (f, g)):
                return report
        rr = rp.times(R(f), R(g))
        if rc.compose(sp_c.p, fg) != rc.compose(rc.compose(f, sp_d.p), rr):
            if record("lax-naturality-p", (f, g)):
                return report
        if rc.compose(sp_c.q, fg) != rc.compose(rc.compose(g, sp_d.q), rr):
            if record("lax-naturality-q", (f, g)):
                return report

    for a in range(rc.n_objects):
        if rp.has(a, a):
            report.checked += 1
            if rp.times(rc.id_of(a), rc.id_of(a)) != rc.id_of(rp.apex(a, a)):
                if record("tensor-identity", (rc.id_of(a),)):
                    return report

    seen = 0
    for f, g in rp.tensorable():
        if max_instances is not None and seen >= max_instances:
            report.truncated = True
            break
        a2, b2 = rc.cod(f), rc.cod(g)
        for f2 in rc.morphisms_from(a2):
            for g2 in rc.morphisms_from(b2):
                if not rp.has(rc.cod(f2), rc.cod(g2)):
                    continue
                report.checked += 1
                seen += 1
                lhs = rp.times(rc.compose(f2, f), rc.compose(g2, g))
                rhs = rc.compose(rp.times(f2, g2), rp.times(f, g))
                if lhs != rhs:
                    if record("tensor-composition", (f2, g2, f, g)):
                        return report

    # lax and derived strict naturality of delta; derived restriction law
    for f in range(rc.n_morphisms):
        a, b = rc.dom(f), rc.cod(f)
        if not (rp.has(a, a) and rp.has(b, b)):
            continue
        report.checked += 2
        lhs = rc.compose(rp.delta(b), f)
        ff = rp.times(f, f)
        if lhs != rc.compose(rc.compose(ff, rp.delta(a)), R(f)):
            if record("lax-naturality-diagonal", (f,)):
                return report
        if lhs != rc.compose(ff, rp.delta(a)):
            if record("derived-naturality-diagonal", (f,)):
                return report

    for a in sorted({aa for (aa, bb) in rp.spans if aa == bb}):
        for f in rc.morphisms_from(a):
            for g in rc.morphisms_from(a):
                if not rp.has(rc.cod(f), rc.cod(g)):
                    continue
                report.checked += 1
                fg = rp.times(f, g)
                if R(rc.compose(fg, rp.delta(a))) != rc.compose(R(f), R(g)):
                    if record("derived-pairing-restriction", (f, g)):
                        return report

    if rp.terminal is not None:
        t_viol = [v for v in rp.up_violations if v.law == "terminal-map-not-forced"]
        if not t_viol:
            report.checked += 1
            if rp.t(rp.terminal) != rc.id_of(rp.terminal):
                if record("terminal-self-map", (rp.t(rp.terminal),)):
                    return report
            for f in range(rc.n_morphisms):
                report.checked += 1
                if rc.compose(rp.t(rc.cod(f)), f) != rc.compose(rp.t(rc.dom(f)), R(f)):
                    if record("terminal-lax-naturality", (f,)):
                        return report
    return report


# -- p-categories ----------------------------------------------------------------


class PCategoryStructure:
    """Tensor, natural diagonal, and one-sided-natural projections, with
    no reference to the restriction."""

    def __init__(self, rc, spans, delta, tensor):
        self.rc = rc
        self.spans: dict[tuple[int, int], Span] = dict(spans)
        self.delta: dict[int, int] = dict(delta)
        self.tensor = tensor
        self._memo: dict[tuple[int, int], int] = {}

    def has(self, a: int, b: int) -> bool:
        return (a, b) in self.spans

    def span(self, a: int, b: int) -> Span:
        try:
            return self.spans[(a, b)]
        except KeyError:
            raise MissingStructure(
                f"no tensor span for ({self.rc.objects[a]}, {self.rc.objects[b]})"
            ) from None

    def apex(self, a: int, b: int) -> int:
        return self.span(a, b).apex

    def times(self, f: int, g: int) -> int:
        key = (f, g)
        out = self._memo.get(key)
        if out is None:
            out = self.tensor(f, g)
            self._memo[key] = out
        return out

    def tensorable(self):
        rc = self.rc
        for (a, b) in sorted(self.spans):
            for (a2, b2) in sorted(self.spans):
                for f in rc.hom(a, a2):
                    for g in rc.hom(b, b2):
                        yield f, g


def pc_from_products(rp: RestrictionProductStructure) -> PCategoryStructure:
    delta = {a: rp.delta(a) for (a, b) in rp.spans if a == b}
    return PCategoryStructure(rp.rc, rp.spans, delta, rp.times)


def products_from_pc(
    pc: PCategoryStructure, terminal=None
) -> RestrictionProductStructure:
    return RestrictionProductStructure(
        pc.rc, pc.spans, terminal, tensor=pc.times, delta=pc.delta
    )


def derive_restriction(pc: PCategoryStructure, f: int) -> int:
    """p . (1 x f) . delta, the domain idempotent of the tensor data."""
    rc = pc.rc
    a = rc.dom(f)
    d = pc.delta[a]
    one_f = pc.times(rc.id_of(a), f)
    sp = pc.span(a, rc.cod(f))
    return rc.compose(sp.p, rc.compose(one_f, d))


def check_p_category(
    rc: RestrictionCategory,
    pc: PCategoryStructure,
    *,
    all_violations: bool = False,
    max_instances: int | None = None,
) -> LawReport:
    """The tensor-diagonal-projection diagrams, naturality of the derived
    associativity and symmetry, and agreement of the derived domain
    idempotent with the stored restriction.

    The quadratic functoriality and naturality sweeps each stop after
    ``max_instances`` instances and flag the report truncated."""
    report = LawReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    # tensor functoriality
    for a in range(rc.n_objects):
        if pc.has(a, a):
            report.checked += 1
            if pc.times(rc.id_of(a), rc.id_of(a)) != rc.id_of(pc.apex(a, a)):
                if record("tensor-identity", (rc.id_of(a),)):
                    return report
    seen = 0
    for f, g in pc.tensorable():
        if max_instances is not None and seen >= max_instances:
            report.truncated = True
            break
        a2, b2 = rc.cod(f), rc.cod(g)
        for f2 in rc.morphisms_from(a2):
            for g2 in rc.morphisms_from(b2):
                if not pc.has(rc.cod(f2), rc.cod(g2)):
                    continue
                report.checked += 1
                seen += 1
                if pc.times(rc.compose(f2, f), rc.compose(g2, g)) != rc.compose(
                    pc.times(f2, g2), pc.times(f, g)
                ):
                    if record("tensor-composition", (f2, g2, f, g)):
                        return report

    # strict naturality of the diagonal
    for f in range(rc.n_morphisms):
        a, b = rc.dom(f), rc.cod(f)
        if a in pc.delta and b in pc.delta and pc.has(a, a) and pc.has(b, b):
            report.checked += 1
            if rc.compose(pc.delta[b], f) != rc.compose(pc.times(f, f), pc.delta[a]):
                if record("diagonal-not-natural", (f,)):
                    return report

    # one-sided naturality of the projections
    for (a, b), sp in sorted(pc.spans.items()):
        for a2 in range(rc.n_objects):
            if not pc.has(a2, b):
                continue
            sp2 = pc.span(a2, b)
            for f in rc.hom(a, a2):
                report.checked += 1
                if rc.compose(sp2.p, pc.times(f, rc.id_of(b))) != rc.compose(f, sp.p):
                    if record("p-not-natural-in-first", (f,)):
                        return report
        for b2 in range(rc.n_objects):
            if not pc.has(a, b2):
                continue
            sp2 = pc.span(a, b2)
            for g in rc.hom(b, b2):
                report.checked += 1
                if rc.compose(sp2.q, pc.times(rc.id_of(a), g)) != rc.compose(g, sp.q):
                    if record("q-not-natural-in-second", (g,)):
                        return report

    # triangles
    for a, d in sorted(pc.delta.items()):
        sp = pc.span(a, a)
        report.checked += 1
        if rc.compose(sp.p, d) != rc.id_of(a) or rc.compose(sp.q, d) != rc.id_of(a):
            if record("diagonal-triangle", (d,)):
                return report
    for (a, b), sp in sorted(pc.spans.items()):
        if sp.apex in pc.delta and pc.has(a, b):
            report.checked += 1
            pq = pc.times(sp.p, sp.q)
            if rc.compose(pq, pc.delta[sp.apex]) != rc.id_of(sp.apex):
                if record("pair-of-projections-triangle", (pq,)):
                    return report

    # projection coherence on triple tensors
    for (y, z) in sorted(pc.spans):
        yz = pc.apex(y, z)
        for x in range(rc.n_objects):
            if pc.has(x, yz):
                sp = pc.span(x, yz)
                inner = pc.span(y, z)
                report.checked += 2
                if pc.has(x, y):
                    one_p = pc.times(rc.id_of(x), inner.p)
                    if rc.compose(pc.span(x, y).p, one_p) != sp.p:
                        if record("projection-coherence", (sp.p,), "p.(1 x p) = p"):
                            return report
                if pc.has(x, z):
                    one_q = pc.times(rc.id_of(x), inner.q)
                    if rc.compose(pc.span(x, z).p, one_q) != sp.p:
                        if record("projection-coherence", (sp.p,), "p.(1 x q) = p"):
                            return report
        for w in range(rc.n_objects):
            if pc.has(yz, w):
                sp = pc.span(yz, w)
                inner = pc.span(y, z)
                report.checked += 2
                if pc.has(y, w):
                    p_one = pc.times(inner.p, rc.id_of(w))
                    if rc.compose(pc.span(y, w).q, p_one) != sp.q:
                        if record("projection-coherence", (sp.q,), "q.(p x 1) = q"):
                            return report
                if pc.has(z, w):
                    q_one = pc.times(inner.q, rc.id_of(w))
                    if rc.compose(pc.span(z, w).q, q_one) != sp.q:
                        if record("projection-coherence", (sp.q,), "q.(q x 1) = q"):
                            return report

    # derived symmetry is natural
    for (a, b), sp in sorted(pc.spans.items()):
        if not (pc.has(b, a) and sp.apex in pc.delta and pc.has(sp.apex, sp.apex)):
            continue
        tau = rc.compose(pc.times(sp.q, sp.p), pc.delta[sp.apex])
        for (a2, b2) in sorted(pc.spans):
            if not pc.has(b2, a2):
                continue
            sp2 = pc.span(a2, b2)
            if not (sp2.apex in pc.delta and pc.has(sp2.apex, sp2.apex)):
                continue
            tau2 = rc.compose(pc.times(sp2.q, sp2.p), pc.delta[sp2.apex])
            for f in rc.hom(a, a2):
                for g in rc.hom(b, b2):
                    report.checked += 1
                    if rc.compose(pc.times(g, f), tau) != rc.compose(tau2, pc.times(f, g)):
                        if record("symmetry-not-natural", (f, g)):
                            return report

    # derived associativity is natural, where the triple apexes exist
    def alpha(x: int, y: int, z: int):
        if not (pc.has(y, z) and pc.has(x, pc.apex(y, z))):
            return None
        a1 = pc.apex(x, pc.apex(y, z))
        if a1 not in pc.delta or not pc.has(a1, a1):
            return None
        inner = pc.span(y, z)
        outer = pc.span(x, pc.apex(y, z))
        if not pc.has(x, y):
            return None
        one_p = pc.times(rc.id_of(x), inner.p)  # a1 -> x x y
        xy = pc.apex(x, y)
        inner_q = rc.compose(inner.q, outer.q)  # a1 -> z
        if not pc.has(xy, z):
            return None
        step = pc.times(one_p, inner_q)  # a1 x a1 -> (x x y) x z
        return rc.compose(step, pc.delta[a1])

    seen = 0
    for x, y, z in itertools.product(range(rc.n_objects), repeat=3):
        al = alpha(x, y, z)
        if al is None:
            continue
        if max_instances is not None and seen >= max_instances:
            report.truncated = True
            break
        for f in rc.morphisms_from(x):
            for g in rc.morphisms_from(y):
                for h in rc.morphisms_from(z):
                    al2 = alpha(rc.cod(f), rc.cod(g), rc.cod(h))
                    if al2 is None:
                        continue
                    if not (pc.has(rc.cod(g), rc.cod(h)) and pc.has(rc.cod(f), pc.apex(rc.cod(g), rc.cod(h)))):
                        continue
                    if not (pc.has(rc.cod(f), rc.cod(g)) and pc.has(pc.apex(rc.cod(f), rc.cod(g)), rc.cod(h))):
                        continue
                    report.checked += 1
                    seen += 1
                    lhs = rc.compose(pc.times(pc.times(f, g), h), al)
                    rhs = rc.compose(al2, pc.times(f, pc.times(g, h)))
                    if lhs != rhs:
                        if record("associativity-not-natural", (f, g, h)):
                            return report

    # the derived domain idempotent is the stored restriction
    for f in range(rc.n_morphisms):
        a = rc.dom(f)
        if a in pc.delta and pc.has(a, rc.cod(f)) and pc.has(a, a):
            report.checked += 1
            if derive_restriction(pc, f) != rc.restriction(f):
                if record("derived-restriction-mismatch", (f,)):
                    return report
    return report


def product_p_equivalence(
    rc: RestrictionCategory, rp: RestrictionProductStructure
) -> LawReport:
    """Both checkers on the same underlying data; a pass/fail disagreement
    is itself a violation."""
    rep_rp = check_restriction_products(rc, rp)
    rep_pc = check_p_category(rc, pc_from_products(rp))
    out = LawReport(checked=rep_rp.checked + rep_pc.checked)
    out.violations.extend(rep_rp.violations)
    out.violations.extend(rep_pc.violations)
    if rep_rp.passed != rep_pc.passed:
        out.violations.append(
            Violation(
                "equivalence-mismatch",
                (),
                f"products={rep_rp.passed} p-category={rep_pc.passed}",
            )
        )
    return out


# -- restriction terminal ------------------------------------------------------


@dataclass
class TerminalReport(LawReport):
    rid_bijection: dict = field(default_factory=dict)


def restriction_terminal_check(
    rc: RestrictionCategory,
    terminal: int,
    t=None,
    rp: RestrictionProductStructure | None = None,
    *,
    all_violations: bool = False,
) -> TerminalReport:
    """t_T = 1, all t_A total, t_B.f = t_A.r(f); emits the per-object
    bijection hom(A,T) <-> restriction idempotents (f -> r(f), e -> t_A.e)
    and asserts the two maps mutually inverse.  With a product structure
    present, also checks invertibility of p : A x T -> A with the stated
    inverse."""
    report = TerminalReport(checked=0)

    def record(law: str, wit: tuple, detail: str = "") -> bool:
        report.violations.append(Violation(law, wit, detail))
        return not all_violations

    ts: dict[int, int] = {}
    if t is None:
        for a in range(rc.n_objects):
            total = [f for f in rc.hom(a, terminal) if is_total(rc, f)]
            report.checked += 1
            if len(total) != 1:
                if record("terminal-map-not-forced", (), f"{len(total)} total maps from {rc.objects[a]}"):
                    return report
            else:
                ts[a] = total[0]
    else:
        ts = dict(enumerate(t)) if not isinstance(t, dict) else dict(t)
        for a, ta in sorted(ts.items()):
            report.checked += 1
            if rc.dom(ta) != a or rc.cod(ta) != terminal:
                raise MalformedTable(f"t[{rc.objects[a]}] has wrong endpoints")
            if not is_total(rc, ta):
                if record("terminal-map-not-total", (ta,)):
                    return report

    if terminal in ts:
        report.checked += 1
        if ts[terminal] != rc.id_of(terminal):
            if record("terminal-self-map", (ts[terminal],)):
                return report

    for f in range(rc.n_morphisms):
        a, b = rc.dom(f), rc.cod(f)
        if a in ts and b in ts:
            report.checked += 1
            if rc.compose(ts[b], f) != rc.compose(ts[a], rc.restriction(f)):
                if record("terminal-lax-naturality", (f,)):
                    return report

    for a in range(rc.n_objects):
        if a not in ts:
            continue
        to_rid = {f: rc.restriction(f) for f in rc.hom(a, terminal)}
        from_rid = {e: rc.compose(ts[a], e) for e in restriction_idempotent_ids(rc, a)}
        report.rid_bijection[a] = {"to_rid": to_rid, "from_rid": from_rid}
        report.checked += 1
        ok = len(to_rid) == len(from_rid)
        ok = ok and all(to_rid.get(from_rid[e]) == e for e in from_rid)
        ok = ok and all(from_rid.get(to_rid[f]) == f for f in to_rid)
        if not ok:
            if record(
                "rid-bijection",
                (),
                f"{rc.objects[a]}: |hom(A,T)| = {len(to_rid)}, idempotents = {len(from_rid)}",
            ):
                return report

    if rp is not None:
        for a in range(rc.n_objects):
            if a not in ts or not rp.has(a, terminal) or not rp.has(a, a):
                continue
            sp = rp.span(a, terminal)
            inv = rc.compose(rp.times(rc.id_of(a), ts[a]), rp.delta(a))
            report.checked += 1
            if (
                rc.compose(sp.p, inv) != rc.id_of(a)
                or rc.compose(inv, sp.p) != rc.id_of(sp.apex)
            ):
                if record("one-element-object", (sp.p,), f"at {rc.objects[a]}"):
                    return report
    return report


# -- ordinary products and the idempotent lattice -----------------------------------


@dataclass(frozen=True)
class ProductSearch:
    span: Span | None
    witness_objects: tuple[int, ...]


def find_ordinary_product(cat, a: int, b: int) -> ProductSearch:
    """Plain categorical product by brute force: u -> (p.u, q.u) must
    biject hom(C,P) with hom(C,A) x hom(C,B) for every C.  Returns the
    first span in id order and every object carrying one."""
    n = cat.n_objects
    counts = [[len(cat.hom(x, t)) for t in range(n)] for x in range(n)]
    witnesses = []
    first = None
    for apex in range(n):
        if any(counts[c][apex] != counts[c][a] * counts[c][b] for c in range(n)):
            continue
        found_here = None
        for p in cat.hom(apex, a):
            for q in cat.hom(apex, b):
                ok = True
                for c in range(n):
                    seen = set()
                    for u in cat.hom(c, apex):
                        key = (cat.compose(p, u), cat.compose(q, u))
                        if key in seen:
                            ok = False
                            break
                        seen.add(key)
                    if not ok or len(seen) != counts[c][a] * counts[c][b]:
                        ok = False
                        break
                if ok:
                    found_here = Span(apex, p, q)
                    break
            if found_here:
                break
        if found_here:
            witnesses.append(apex)
            if first is None:
                first = found_here
    return ProductSearch(first, tuple(witnesses))


@dataclass
class IdempotentLattice:
    obj: int
    elements: tuple[int, ...]
    meets: dict
    joins: dict
    bottom: int
    top: int
    report: LawReport

    def meet(self, e: int, e2: int) -> int:
        return self.meets[(e, e2)]

    def join(self, e: int, e2: int) -> int:
        return self.joins[(e, e2)]


def idempotent_lattice(rc: RestrictionCategory, a: int) -> IdempotentLattice:
    """Restriction idempotents on A under meet = composition and
    join = r(<e,e'>) through an ordinary product of A with itself; bottom
    is the restriction of the unique map to an ordinary terminal.
    Distributivity is verified on construction."""
    search = find_ordinary_product(rc, a, a)
    if search.span is None:
        raise NoProducts(f"no ordinary product of {rc.objects[a]} with itself")
    sp = search.span

    terminal = None
    for z in range(rc.n_objects):
        if all(len(rc.hom(x, z)) == 1 for x in range(rc.n_objects)):
            terminal = z
            break
    if terminal is None:
        raise NoProducts("no ordinary terminal object")
    bottom = rc.restriction(rc.hom(a, terminal)[0])

    def pair(e: int, e2: int) -> int:
        found = [
            u
            for u in rc.hom(a, sp.apex)
            if rc.compose(sp.p, u) == e and rc.compose(sp.q, u) == e2
        ]
        if len(found) != 1:
            raise MalformedTable("ordinary-product pairing is not unique")
        return found[0]

    elements = tuple(restriction_idempotent_ids(rc, a))
    meets = {}
    joins = {}
    for e in elements:
        for e2 in elements:
            meets[(e, e2)] = rc.compose(e, e2)
            joins[(e, e2)] = rc.restriction(pair(e, e2))

    report = LawReport(checked=0)
    top = rc.id_of(a)
    for e in elements:
        report.checked += 4
        if meets[(e, e)] != e or joins[(e, e)] != e:
            report.violations.append(Violation("lattice-idempotence", (e,)))
        if meets[(e, bottom)] != bottom:
            report.violations.append(Violation("lattice-bottom-meet", (e,)))
        if joins[(e, bottom)] != e:
            report.violations.append(Violation("lattice-bottom-join", (e,)))
        if meets[(e, top)] != e:
            report.violations.append(Violation("lattice-top-meet", (e,)))
    for e in elements:
        for e2 in elements:
            report.checked += 4
            if meets[(e, e2)] != meets[(e2, e)]:
                report.violations.append(Violation("lattice-meet-commutative", (e, e2)))
            if joins[(e, e2)] != joins[(e2, e)]:
                report.violations.append(Violation("lattice-join-commutative", (e, e2)))
            if joins[(e, meets[(e, e2)])] != e or meets[(e, joins[(e, e2)])] != e:
                report.violations.append(Violation("lattice-absorption", (e, e2)))
    for e in elements:
        for e1 in elements:
            for e2 in elements:
                report.checked += 3
                if meets[(e, meets[(e1, e2)])] != meets[(meets[(e, e1)], e2)]:
                    report.violations.append(Violation("lattice-meet-associative", (e, e1, e2)))
                if joins[(e, joins[(e1, e2)])] != joins[(joins[(e, e1)], e2)]:
                    report.violations.append(Violation("lattice-join-associative", (e, e1, e2)))
                if meets[(e, joins[(e1, e2)])] != joins[(meets[(e, e1)], meets[(e, e2)])]:
                    report.violations.append(Violation("lattice-distributivity", (e, e1, e2)))
    return IdempotentLattice(a, elements, meets, joins, bottom, top, report)


def check_substitution(
    rc: RestrictionCategory,
    lat_dom: IdempotentLattice,
    lat_cod: IdempotentLattice,
    f: int,
) -> LawReport:
    """e -> r(e.f) from the codomain lattice to the domain lattice
    preserves meets, joins, and bottom; it preserves top exactly when f
    is total."""
    if rc.dom(f) != lat_dom.obj or rc.cod(f) != lat_cod.obj:
        raise ShapeMismatch("lattices do not match the morphism's endpoints")
    report = LawReport(checked=0)

    def phi(e: int) -> int:
        return rc.restriction(rc.compose(e, f))

    for e in lat_cod.elements:
        for e2 in lat_cod.elements:
            report.checked += 2
            if phi(lat_cod.meet(e, e2)) != lat_dom.meet(phi(e), phi(e2)):
                report.violations.append(Violation("substitution-meet", (e, e2, f)))
            if phi(lat_cod.join(e, e2)) != lat_dom.join(phi(e), phi(e2)):
                report.violations.append(Violation("substitution-join", (e, e2, f)))
    report.checked += 2
    if phi(lat_cod.bottom) != lat_dom.bottom:
        report.violations.append(Violation("substitution-bottom", (f,)))
    preserves_top = phi(lat_cod.top) == lat_dom.top
    if preserves_top != is_total(rc, f):
        report.violations.append(Violation("substitution-top", (f,)))
    return report


# -- restriction limits --------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    nodes: tuple[int, ...]
    arrows: tuple[tuple[int, int, int], ...]

    def validate(self, rc) -> None:
        for s, t, m in self.arrows:
            if not (0 <= s < len(self.nodes) and 0 <= t < len(self.nodes)):
                raise MalformedTable("arrow endpoints outside the node list")
            if rc.dom(m) != self.nodes[s] or rc.cod(m) != self.nodes[t]:
                raise MalformedTable(
                    f"arrow {rc.mor_names[m]} does not run between its nodes"
                )


@dataclass
class RestrictionLimit:
    apex: int
    legs: tuple[int, ...]
    report: LawReport


def restriction_limit_of_arrow(rc: RestrictionCategory, f: int, *, verify: bool = True):
    """(P, p, s) splitting r(f), which is the restriction limit of the
    one-arrow diagram; verified against every lax cone (q, q') with
    q' = f.q.r(q').  None when r(f) does not split."""
    found = find_splitting(rc, rc.restriction(f))
    if found is None:
        return None
    p_obj, i, r = found
    if verify:
        x, y = rc.dom(f), rc.cod(f)
        for w in range(rc.n_objects):
            for q in rc.hom(w, x):
                fq = rc.compose(f, q)
                for q2 in rc.hom(w, y):
                    if q2 != rc.compose(fq, rc.restriction(q2)):
                        continue
                    m = rc.compose(q, rc.restriction(q2))
                    u = rc.compose(r, m)
                    # r.i = 1 makes i split monic, so u is the only candidate
                    if rc.compose(i, u) != m:
                        raise MalformedTable(
                            f"lax cone ({rc.mor_names[q]}, {rc.mor_names[q2]}) "
                            f"does not factor through the splitting"
                        )
    return p_obj, i, r


def verify_restriction_limit(
    rc: RestrictionCategory,
    diag: Diagram,
    apex: int,
    legs,
    *,
    sample: int | None = None,
    seed: int = 0,
) -> LawReport:
    """Check the lax-cone universal property of (apex, legs) for the
    diagram: every lax cone (q_C) with q_D = S(a).q_C.r(q_D) for each
    arrow admits exactly one r with r(r) = e_Q and leg_C.r = q_C.e_Q,
    where e_Q is the meet of the r(q_C)."""
    legs = tuple(legs)
    report = LawReport(checked=0)
    nn = len(diag.nodes)

    def lax_ok(qs) -> bool:
        for s, t, m in diag.arrows:
            if qs[t] != rc.compose(rc.compose(m, qs[s]), rc.restriction(qs[t])):
                return False
        return True

    def check_cone(w: int, qs) -> bool:
        e_q = rc.id_of(w)
        for q in qs:
            e_q = rc.compose(e_q, rc.restriction(q))
        good = [
            u
            for u in rc.hom(w, apex)
            if rc.restriction(u) == e_q
            and all(rc.compose(legs[c], u) == rc.compose(qs[c], e_q) for c in range(nn))
        ]
        return len(good) == 1

    rng = random.Random(seed)
    for w in range(rc.n_objects):
        pools = [rc.hom(w, diag.nodes[c]) for c in range(nn)]
        if sample is None:
            for qs in itertools.product(*pools):
                if not lax_ok(qs):
                    continue
                report.checked += 1
                if not check_cone(w, qs):
                    report.violations.append(Violation("limit-universal-property", qs))
                    return report
        else:
            report.truncated = True
            if any(not pool for pool in pools):
                continue
            for _ in range(sample):
                qs = tuple(rng.choice(pool) for pool in pools)
                if not lax_ok(qs):
                    continue
                report.checked += 1
                if not check_cone(w, qs):
                    report.violations.append(Violation("limit-universal-property", qs))
                    return report
    return report


def restriction_limit_of_diagram(
    rc: RestrictionCategory,
    diag: Diagram,
    *,
    sample: int = 10000,
    seed: int = 0,
) -> RestrictionLimit:
    """Cut each vertex down by the restrictions of its outgoing arrows,
    split, take a brute-force limit of the resulting total diagram among
    total maps, and compose the splitting back in.

    Raises NotSplit when a needed idempotent fails to split and
    NoTotalLimit when the total diagram has no limit among total maps.
    Beyond the size caps the lax-cone verification is sampled and the
    report flagged truncated.
    """
    diag.validate(rc)
    nn = len(diag.nodes)

    e = [rc.id_of(diag.nodes[c]) for c in range(nn)]
    for s, t, m in diag.arrows:
        e[s] = rc.compose(e[s], rc.restriction(m))

    splits = []
    for c in range(nn):
        found = find_splitting(rc, e[c])
        if found is None:
            raise NotSplit(f"idempotent at node {c} does not split")
        splits.append(found)  # (P_c, i_c, r_c)

    arrows2 = []
    for s, t, m in diag.arrows:
        m2 = rc.compose(splits[t][2], rc.compose(m, splits[s][1]))
        if not is_total(rc, m2):
            raise MalformedTable("restricted diagram arrow failed to be total")
        arrows2.append((s, t, m2))

    def total_hom(w: int, x: int):
        return [f for f in rc.hom(w, x) if is_total(rc, f)]

    def total_cones(w: int):
        pools = [total_hom(w, splits[c][0]) for c in range(nn)]
        out = []
        for qs in itertools.product(*pools):
            if all(rc.compose(m2, qs[s]) == qs[t] for s, t, m2 in arrows2):
                out.append(qs)
        return out

    cones_by_obj = {w: total_cones(w) for w in range(rc.n_objects)}

    best = None
    for l_obj in range(rc.n_objects):
        for legs2 in cones_by_obj[l_obj]:
            ok = True
            for w in range(rc.n_objects):
                pool = total_hom(w, l_obj)
                for qs in cones_by_obj[w]:
                    mediators = [
                        u
                        for u in pool
                        if all(rc.compose(legs2[c], u) == qs[c] for c in range(nn))
                    ]
                    if len(mediators) != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                best = (l_obj, legs2)
                break
        if best:
            break
    if best is None:
        raise NoTotalLimit("the restricted total diagram has no limit among total maps")

    l_obj, legs2 = best
    legs = tuple(rc.compose(splits[c][1], legs2[c]) for c in range(nn))

    over_cap = nn > DIAGRAM_NODE_CAP or len(diag.arrows) > DIAGRAM_ARROW_CAP
    report = verify_restriction_limit(
        rc, diag, l_obj, legs, sample=sample if over_cap else None, seed=seed
    )
    if report.violations:
        raise MalformedTable(f"constructed cone fails: {report.violations[0].law}")
    return RestrictionLimit(l_obj, legs, report)


def total_equalizer(
    rc: RestrictionCategory,
    rp: RestrictionProductStructure,
    f: int,
    g: int,
    *,
    verify: bool = True,
):
    """Equalizer of parallel total maps among the total maps: pair them,
    retract along the diagonal of a separable codomain, and split the
    resulting idempotent.  Returns (E, i)."""
    if rc.dom(f) != rc.dom(g) or rc.cod(f) != rc.cod(g):
        raise ShapeMismatch("equalizer needs a parallel pair")
    if not (is_total(rc, f) and is_total(rc, g)):
        raise MalformedTable("equalizer inputs must be total")
    x, y = rc.dom(f), rc.cod(f)
    for obj in range(rc.n_objects):
        if rp.has(obj, obj):
            if restriction_inverse(rc, rp.delta(obj)) is None:
                raise NotSeparable(f"diagonal of {rc.objects[obj]} has no restriction inverse")
    if not rp.has(y, y):
        raise MissingStructure(f"no product span for ({rc.objects[y]}, {rc.objects[y]})")
    r = restriction_inverse(rc, rp.delta(y))
    h = rp.pairing(f, g)
    e = rc.restriction(rc.compose(r, h))
    found = find_splitting(rc, e)
    if found is None:
        raise NotSplit("the equalizing idempotent does not split")
    e_obj, i, s = found
    if verify:
        if rc.compose(f, i) != rc.compose(g, i):
            raise MalformedTable("splitting does not equalize the pair")
        for w in range(rc.n_objects):
            for m in rc.hom(w, x):
                if not is_total(rc, m) or rc.compose(f, m) != rc.compose(g, m):
                    continue
                mediators = [
                    u
                    for u in rc.hom(w, e_obj)
                    if is_total(rc, u) and rc.compose(i, u) == m
                ]
                if len(mediators) != 1:
                    raise MalformedTable(
                        f"equalizer universal property fails at {rc.mor_names[m]}"
                    )
    return e_obj, i


# -- the triviality diagnostic ---------------------------------------------------------


@dataclass
class TrivialityReport(LawReport):
    strict_terminal: int | None = None
    genuine_products: bool = False


def triviality_guard(
    rc: RestrictionCategory, rp: RestrictionProductStructure | None = None
) -> TrivialityReport:
    """Strict one-map-per-object terminals with total maps, or genuinely
    cartesian spans with a strictly natural diagonal, force every map to
    be total.  The report records which hypothesis fired; a fired
    hypothesis plus a partial map is a violation (and cannot happen in a
    lawful instance)."""
    report = TrivialityReport(checked=0)

    strict_t = None
    for t in range(rc.n_objects):
        if all(len(rc.hom(a, t)) == 1 for a in range(rc.n_objects)):
            if all(is_total(rc, rc.hom(a, t)[0]) for a in range(rc.n_objects)):
                strict_t = t
                break
    report.strict_terminal = strict_t

    genuine = False
    if rp is not None and rp.spans:
        genuine = True
        for (a, b), sp in sorted(rp.spans.items()):
            for c in range(rc.n_objects):
                if len(rc.hom(c, sp.apex)) != len(rc.hom(c, a)) * len(rc.hom(c, b)):
                    genuine = False
                    break
            if not genuine:
                break
        if genuine:
            for fmor in range(rc.n_morphisms):
                a, b = rc.dom(fmor), rc.cod(fmor)
                if rp.has(a, a) and rp.has(b, b):
                    if rc.compose(rp.delta(b), fmor) != rc.compose(
                        rp.times(fmor, fmor), rp.delta(a)
                    ):
                        genuine = False
                        break
    report.genuine_products = genuine

    if strict_t is not None or genuine:
        for fmor in range(rc.n_morphisms):
            report.checked += 1
            if not is_total(rc, fmor):
                report.violations.append(Violation("triviality-guard", (fmor,)))
    return report
