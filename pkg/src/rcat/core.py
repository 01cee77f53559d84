"""Finite categories presented by tables, with restriction structure.

Composition is applicative: ``compose(g, f)`` means "g after f" and is
defined exactly when ``dom(g) == cod(f)``.  A restriction structure
assigns to each morphism f : A -> B an endomorphism ``restriction(f)``
of A that records where f is defined; the four equational laws it must
satisfy are checked by :func:`check_restriction_axioms`.

Objects and morphisms are referred to by integer id in all computations;
names are kept for construction and printing.  Violation witnesses are
reported in a fixed deterministic order (ascending ids, rightmost factor
varying slowest) so that repeated runs agree byte for byte.
"""

from __future__ import annotations

import itertools
import random
from array import array
from dataclasses import dataclass, field

from .errors import MalformedTable, NotParallel, UndefinedComposite, UnknownMorphism

__all__ = [
    "FinCategory",
    "RestrictionCategory",
    "Violation",
    "LawReport",
    "check_category_laws",
    "check_restriction_axioms",
    "is_total",
    "total_morphism_ids",
    "restriction_idempotent_ids",
    "is_restriction_idempotent",
    "restriction_inverse",
    "leq",
    "is_monic",
    "restriction_retraction_section",
    "is_restriction_retraction",
    "is_restriction_monic",
    "find_splitting",
    "two_sided_inverse",
    "dense_subcategory",
]


@dataclass(frozen=True)
class Violation:
    """One failed law instance.  ``witnesses`` holds morphism ids in the
    order the law quantifies over them."""

    law: str
    witnesses: tuple[int, ...]
    detail: str = ""


@dataclass
class LawReport:
    checked: int
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = " (truncated)" if self.truncated else ""
        return f"{status}: {self.checked} instances checked, {len(self.violations)} violations{extra}"


def _resolve(name_or_id, names: dict, what: str):
    if isinstance(name_or_id, int):
        return name_or_id
    try:
        return names[name_or_id]
    except KeyError:
        cls = UnknownMorphism if what == "morphism" else MalformedTable
        raise cls(f"unknown {what}: {name_or_id!r}") from None


class FinCategory:
    """A finite category given by explicit data.

    ``morphisms`` is a sequence of ``(name, dom, cod)`` triples; ``dom``
    and ``cod`` may be object names or indices.  ``identity`` maps each
    object to its identity morphism.  ``compose`` may be:

    - a dict ``{(g, f): h}`` over morphism ids,
    - a flat sequence of length ``n*n`` indexed ``g * n + f`` with -1
      for undefined entries, or
    - a callable ``(g, f) -> h`` (memoised; used when a full table would
      not fit).

    Construction validates shapes and index bounds only; the equational
    laws are checked separately by :func:`check_category_laws`.
    """

    def __init__(self, objects, morphisms, identity, compose, *, name: str = ""):
        self.name = name
        self.objects = tuple(str(o) for o in objects)
        if len(set(self.objects)) != len(self.objects):
            raise MalformedTable("duplicate object names")
        self._obj_index = {o: i for i, o in enumerate(self.objects)}

        mor_names = []
        dom = array("i")
        cod = array("i")
        for m in morphisms:
            mname, mdom, mcod = m
            mor_names.append(str(mname))
            dom.append(self._check_obj(_resolve(mdom, self._obj_index, "object")))
            cod.append(self._check_obj(_resolve(mcod, self._obj_index, "object")))
        self.mor_names = tuple(mor_names)
        if len(set(self.mor_names)) != len(self.mor_names):
            raise MalformedTable("duplicate morphism names")
        self._mor_index = {m: i for i, m in enumerate(self.mor_names)}
        self.mor_dom = dom
        self.mor_cod = cod

        n = len(self.mor_names)
        ident = array("i")
        for a, m in enumerate(identity):
            f = _resolve(m, self._mor_index, "morphism")
            if not 0 <= f < n:
                raise MalformedTable(f"identity id out of range: {f}")
            if dom[f] != a or cod[f] != a:
                raise MalformedTable(
                    f"identity of {self.objects[a]} has wrong endpoints"
                )
            ident.append(f)
        if len(ident) != len(self.objects):
            raise MalformedTable("identity list length != object count")
        self.identity = ident

        self._compose_dict = None
        self._compose_flat = None
        self._compose_fn = None
        self._memo: dict[tuple[int, int], int] = {}
        if callable(compose):
            self._compose_fn = compose
        elif isinstance(compose, dict):
            self._compose_dict = compose
        else:
            flat = compose if isinstance(compose, array) else array("i", compose)
            if len(flat) != n * n:
                raise MalformedTable("flat compose table has wrong length")
            self._compose_flat = flat

        self._hom: dict[tuple[int, int], tuple[int, ...]] | None = None
        self._from: list[tuple[int, ...]] | None = None

    def _check_obj(self, a: int) -> int:
        if not 0 <= a < len(self.objects):
            raise MalformedTable(f"object id out of range: {a}")
        return a

    # -- sizes and lookups -------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.mor_names)

    def obj_id(self, name) -> int:
        return _resolve(name, self._obj_index, "object")

    def mor_id(self, name) -> int:
        return _resolve(name, self._mor_index, "morphism")

    def dom(self, f: int) -> int:
        return self.mor_dom[f]

    def cod(self, f: int) -> int:
        return self.mor_cod[f]

    def id_of(self, a: int) -> int:
        return self.identity[a]

    def is_identity(self, f: int) -> bool:
        return self.identity[self.mor_dom[f]] == f and self.mor_dom[f] == self.mor_cod[f]

    # -- hom sets ----------------------------------------------------------

    def _build_hom(self) -> None:
        hom: dict[tuple[int, int], list[int]] = {}
        out: list[list[int]] = [[] for _ in self.objects]
        for f in range(self.n_morphisms):
            hom.setdefault((self.mor_dom[f], self.mor_cod[f]), []).append(f)
            out[self.mor_dom[f]].append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._from = [tuple(v) for v in out]

    def hom(self, a, b) -> tuple[int, ...]:
        if self._hom is None:
            self._build_hom()
        a = self.obj_id(a) if not isinstance(a, int) else a
        b = self.obj_id(b) if not isinstance(b, int) else b
        return self._hom.get((a, b), ())

    def morphisms_from(self, a: int) -> tuple[int, ...]:
        if self._from is None:
            self._build_hom()
        return self._from[a]

    def endos(self, a: int) -> tuple[int, ...]:
        return self.hom(a, a)

    # -- composition ---------------------------------------------------------

    def compose(self, g: int, f: int) -> int:
        """g after f.  Raises UndefinedComposite on a non-composable pair and
        MalformedTable when the table lacks a required entry."""
        if self.mor_dom[g] != self.mor_cod[f]:
            raise UndefinedComposite(
                f"compose({self.mor_names[g]}, {self.mor_names[f]}): "
                f"dom(g) != cod(f)"
            )
        if self._compose_flat is not None:
            h = self._compose_flat[g * len(self.mor_names) + f]
            if h < 0:
                raise MalformedTable(
                    f"missing composite ({self.mor_names[g]}, {self.mor_names[f]})"
                )
            return h
        if self._compose_dict is not None:
            try:
                return self._compose_dict[(g, f)]
            except KeyError:
                raise MalformedTable(
                    f"missing composite ({self.mor_names[g]}, {self.mor_names[f]})"
                ) from None
        key = (g, f)
        h = self._memo.get(key)
        if h is None:
            h = self._compose_fn(g, f)
            if not isinstance(h, int) or not 0 <= h < self.n_morphisms:
                raise MalformedTable(
                    f"compose callable returned bad id for "
                    f"({self.mor_names[g]}, {self.mor_names[f]})"
                )
            self._memo[key] = h
        return h

    def compose_many(self, *fs: int) -> int:
        """compose_many(h, g, f) = h . g . f (rightmost applied first)."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def composable_pairs(self):
        """All (g, f) with dom(g) == cod(f), ascending in (f, g)."""
        for f in range(self.n_morphisms):
            for g in self.morphisms_from(self.mor_cod[f]):
                yield g, f

    def __repr__(self) -> str:
        label = self.name or "FinCategory"
        return f"<{label}: {self.n_objects} objects, {self.n_morphisms} morphisms>"


class RestrictionCategory(FinCategory):
    """A finite category plus a restriction operator given as a table
    ``restriction[f] -> e`` with e an endomorphism of dom(f)."""

    def __init__(self, objects, morphisms, identity, compose, restriction, *, name=""):
        super().__init__(objects, morphisms, identity, compose, name=name)
        rbar = array("i")
        for f, m in enumerate(restriction):
            e = _resolve(m, self._mor_index, "morphism")
            if not 0 <= e < self.n_morphisms:
                raise MalformedTable(f"restriction id out of range: {e}")
            if self.mor_dom[e] != self.mor_dom[f] or self.mor_cod[e] != self.mor_dom[f]:
                raise MalformedTable(
                    f"restriction of {self.mor_names[f]} is not an endomorphism "
                    f"of its source"
                )
            rbar.append(e)
        if len(rbar) != self.n_morphisms:
            raise MalformedTable("restriction list length != morphism count")
        self._restriction = rbar

    def restriction(self, f: int) -> int:
        return self._restriction[f]


# -- plain category laws ----------------------------------------------------


def check_category_laws(
    cat: FinCategory,
    *,
    all_violations: bool = False,
    max_triples: int | None = None,
    seed: int = 0,
) -> LawReport:
    """Check identity and associativity, and that every composable pair has
    a composite with matching endpoints.

    Endpoint inconsistencies and missing composites raise MalformedTable:
    they make the data not a category presentation at all, as opposed to a
    lawful-looking table that fails an equation.  When the number of
    composable triples exceeds ``max_triples`` a seeded random sample of
    that size is checked instead and the report is marked truncated.
    """
    report = LawReport(checked=0)

    def record(v: Violation) -> bool:
        report.violations.append(v)
        return not all_violations

    for f in range(cat.n_morphisms):
        i_dom = cat.id_of(cat.dom(f))
        i_cod = cat.id_of(cat.cod(f))
        report.checked += 2
        if cat.compose(f, i_dom) != f:
            if record(Violation("identity-right", (f,))):
                return report
        if cat.compose(i_cod, f) != f:
            if record(Violation("identity-left", (f,))):
                return report

    pair_count = 0
    for g, f in cat.composable_pairs():
        h = cat.compose(g, f)
        pair_count += 1
        if cat.dom(h) != cat.dom(f) or cat.cod(h) != cat.cod(g):
            raise MalformedTable(
                f"composite of ({cat.mor_names[g]}, {cat.mor_names[f]}) "
                f"has wrong endpoints"
            )
    report.checked += pair_count

    total_triples = 0
    for g, f in cat.composable_pairs():
        total_triples += len(cat.morphisms_from(cat.cod(g)))

    if max_triples is not None and total_triples > max_triples:
        report.truncated = True
        rng = random.Random(seed)
        mors = cat.n_morphisms
        done = 0
        while done < max_triples:
            f = rng.randrange(mors)
            outs_g = cat.morphisms_from(cat.cod(f))
            if not outs_g:
                continue
            g = outs_g[rng.randrange(len(outs_g))]
            outs_h = cat.morphisms_from(cat.cod(g))
            if not outs_h:
                continue
            h = outs_h[rng.randrange(len(outs_h))]
            done += 1
            if cat.compose(h, cat.compose(g, f)) != cat.compose(cat.compose(h, g), f):
                if record(Violation("assoc", (h, g, f))):
                    report.checked += done
                    return report
        report.checked += done
    else:
        done = 0
        for f in range(cat.n_morphisms):
            for g in cat.morphisms_from(cat.cod(f)):
                gf = cat.compose(g, f)
                for h in cat.morphisms_from(cat.cod(g)):
                    done += 1
                    if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                        if record(Violation("assoc", (h, g, f))):
                            report.checked += done
                            return report
        report.checked += done

    return report


# -- restriction laws ---------------------------------------------------------

# The four laws, with rbar(f) short for restriction(f):
#   absorption     f . rbar(f) == f
#   commutation    rbar(f) . rbar(g) == rbar(g) . rbar(f)      (same source)
#   skew-absorption  rbar(g . rbar(f)) == rbar(g) . rbar(f)    (same source)
#   slide          rbar(h) . f == f . rbar(h . f)              (dom h == cod f)


def check_restriction_axioms(
    rc: RestrictionCategory,
    *,
    all_violations: bool = False,
    max_pairs: int | None = None,
    seed: int = 0,
) -> LawReport:
    """Check the four restriction laws.

    Per-pair laws quantify over pairs with a common source (commutation,
    skew-absorption) or a composable pair (slide).  When an object's pair
    count would exceed ``max_pairs`` a seeded sample is used instead and
    the report is marked truncated.
    """
    report = LawReport(checked=0)

    def record(v: Violation) -> bool:
        report.violations.append(v)
        return not all_violations

    for f in range(rc.n_morphisms):
        report.checked += 1
        if rc.compose(f, rc.restriction(f)) != f:
            if record(Violation("absorption", (f,))):
                return report

    def pairs_same_source():
        for a in range(rc.n_objects):
            outs = rc.morphisms_from(a)
            for f in outs:
                for g in outs:
                    yield f, g

    def pairs_composable():
        # (h, f) with dom(h) == cod(f)
        for f in range(rc.n_morphisms):
            for h in rc.morphisms_from(rc.cod(f)):
                yield h, f

    n_same = sum(len(rc.morphisms_from(a)) ** 2 for a in range(rc.n_objects))
    n_comp = sum(len(rc.morphisms_from(rc.cod(f))) for f in range(rc.n_morphisms))

    rng = random.Random(seed)

    def iterate(pairs, count):
        if max_pairs is not None and count > max_pairs:
            report.truncated = True
            all_pairs = list(pairs)
            yield from rng.sample(all_pairs, max_pairs)
        else:
            yield from pairs

    for f, g in iterate(pairs_same_source(), n_same):
        rf, rg = rc.restriction(f), rc.restriction(g)
        report.checked += 1
        if rc.compose(rf, rg) != rc.compose(rg, rf):
            if record(Violation("commutation", (f, g))):
                return report
        report.checked += 1
        if rc.restriction(rc.compose(g, rf)) != rc.compose(rg, rf):
            if record(Violation("skew-absorption", (f, g))):
                return report

    for h, f in iterate(pairs_composable(), n_comp):
        report.checked += 1
        if rc.compose(rc.restriction(h), f) != rc.compose(f, rc.restriction(rc.compose(h, f))):
            if record(Violation("slide", (h, f))):
                return report

    return report


# -- derived notions ----------------------------------------------------------


def is_total(rc: RestrictionCategory, f: int) -> bool:
    """Total means the restriction is the identity on the source."""
    return rc.restriction(f) == rc.id_of(rc.dom(f))


def total_morphism_ids(rc: RestrictionCategory) -> list[int]:
    return [f for f in range(rc.n_morphisms) if is_total(rc, f)]


def is_restriction_idempotent(rc: RestrictionCategory, e: int) -> bool:
    """Fixed points of the restriction operator on endomorphisms."""
    return rc.dom(e) == rc.cod(e) and rc.restriction(e) == e


def restriction_idempotent_ids(rc: RestrictionCategory, a: int) -> list[int]:
    return [e for e in rc.endos(a) if rc.restriction(e) == e]


def restriction_inverse(rc: RestrictionCategory, f: int) -> int | None:
    """The unique g with g.f == restriction(f) and f.g == restriction(g),
    or None.  Finding two distinct candidates means the instance is not a
    lawful restriction category, so that raises MalformedTable."""
    found = None
    for g in rc.hom(rc.cod(f), rc.dom(f)):
        if rc.compose(g, f) == rc.restriction(f) and rc.compose(f, g) == rc.restriction(g):
            if found is not None and found != g:
                raise MalformedTable(
                    f"two restriction inverses for {rc.mor_names[f]}; "
                    f"restriction laws cannot hold"
                )
            found = g
    return found


def leq(rc: RestrictionCategory, f: int, g: int) -> bool:
    """Partial-order on a hom set: f below g when g restricted to f's
    domain of definition equals f."""
    if rc.dom(f) != rc.dom(g) or rc.cod(f) != rc.cod(g):
        raise NotParallel("leq needs parallel morphisms")
    return f == rc.compose(g, rc.restriction(f))


def is_monic(cat: FinCategory, m: int) -> bool:
    a = cat.dom(m)
    for x in range(cat.n_objects):
        arrows = cat.hom(x, a)
        seen: dict[int, int] = {}
        for f in arrows:
            mf = cat.compose(m, f)
            if mf in seen and seen[mf] != f:
                return False
            seen[mf] = f
    return True


def restriction_retraction_section(rc: RestrictionCategory, r: int) -> int | None:
    """A section i with r.i == id and i.r == restriction(r), if one exists."""
    target = rc.id_of(rc.cod(r))
    for i in rc.hom(rc.cod(r), rc.dom(r)):
        if rc.compose(r, i) == target and rc.compose(i, r) == rc.restriction(r):
            return i
    return None


def is_restriction_retraction(rc: RestrictionCategory, r: int) -> bool:
    return restriction_retraction_section(rc, r) is not None


def is_restriction_monic(rc: RestrictionCategory, m: int) -> bool:
    """m is a section of some map r that also satisfies m.r == restriction(r)."""
    ida = rc.id_of(rc.dom(m))
    for r in rc.hom(rc.cod(m), rc.dom(m)):
        if rc.compose(r, m) == ida and rc.compose(m, r) == rc.restriction(r):
            return True
    return False


def find_splitting(cat: FinCategory, e: int) -> tuple[int, int, int] | None:
    """For an idempotent e on A, search for (P, i, r) with i : P -> A,
    r : A -> P, r.i == id_P and i.r == e.  Exhaustive over all objects."""
    a = cat.dom(e)
    if cat.cod(e) != a or cat.compose(e, e) != e:
        raise UndefinedComposite("find_splitting needs an idempotent endomorphism")
    for p in range(cat.n_objects):
        idp = cat.id_of(p)
        sections = cat.hom(p, a)
        retractions = cat.hom(a, p)
        for i in sections:
            for r in retractions:
                if cat.compose(r, i) == idp and cat.compose(i, r) == e:
                    return p, i, r
    return None


# -- subcategories ------------------------------------------------------------


def two_sided_inverse(cat: FinCategory, f: int) -> int | None:
    """g with g.f == id(dom f) and f.g == id(cod f), or None."""
    a, b = cat.dom(f), cat.cod(f)
    for g in cat.hom(b, a):
        if cat.compose(g, f) == cat.id_of(a) and cat.compose(f, g) == cat.id_of(b):
            return g
    return None


def dense_subcategory(
    rc: RestrictionCategory, mor_ids
) -> tuple[RestrictionCategory, dict[int, int], dict[int, int]]:
    """Re-index a subset of morphisms as a standalone category.

    The subset must contain the identities of every object it touches and
    be closed under composition and restriction; anything else raises
    MalformedTable.  Returns the new category plus old->new object and
    morphism maps.
    """
    mor_ids = sorted(set(mor_ids))
    obj_ids = sorted({rc.dom(f) for f in mor_ids} | {rc.cod(f) for f in mor_ids})
    obj_map = {a: i for i, a in enumerate(obj_ids)}
    mor_map = {f: i for i, f in enumerate(mor_ids)}

    for a in obj_ids:
        if rc.id_of(a) not in mor_map:
            raise MalformedTable(f"subcategory misses identity of {rc.objects[a]}")
    for f in mor_ids:
        if rc.restriction(f) not in mor_map:
            raise MalformedTable(
                f"subcategory not closed under restriction at {rc.mor_names[f]}"
            )

    by_dom: dict[int, list[int]] = {}
    for g in mor_ids:
        by_dom.setdefault(rc.dom(g), []).append(g)
    compose: dict[tuple[int, int], int] = {}
    for f in mor_ids:
        for g in by_dom.get(rc.cod(f), ()):
            h = rc.compose(g, f)
            if h not in mor_map:
                raise MalformedTable(
                    f"subcategory not closed under composition at "
                    f"({rc.mor_names[g]}, {rc.mor_names[f]})"
                )
            compose[(mor_map[g], mor_map[f])] = mor_map[h]

    sub = RestrictionCategory(
        [rc.objects[a] for a in obj_ids],
        [(rc.mor_names[f], obj_map[rc.dom(f)], obj_map[rc.cod(f)]) for f in mor_ids],
        [mor_map[rc.id_of(a)] for a in obj_ids],
        compose,
        [mor_map[rc.restriction(f)] for f in mor_ids],
        name=f"{rc.name}-sub" if rc.name else "sub",
    )
    return sub, obj_map, mor_map
