"""Concrete partial functions between finite sets, and category builders.

A partial function f from an n-element set to an m-element set is a
table of length n over {-1, 0, .., m-1}, with -1 marking points where f
is undefined.  Elements are 0-based.  These values drive three builders:

- :func:`par_category`: every partial function between the given sizes,
- :func:`finset_category`: the total functions only, with the trivial
  restriction,
- :func:`closure_par_model`: the least subcategory containing chosen
  generators, closed under composition and restriction.

Builders enumerate morphisms in a fixed order (size pairs ascending,
tables lexicographic with undefined below 0) so ids are reproducible.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass

from .core import RestrictionCategory
from .errors import CapExceeded, MalformedTable, ShapeMismatch

__all__ = [
    "PartialFn",
    "identity_fn",
    "par_compose",
    "par_to_rcat",
    "par_restriction",
    "zero_fn",
    "is_total_fn",
    "inclusion_fn",
    "inj1_fn",
    "inj2_fn",
    "copair_fn",
    "sum_fn",
    "tensor_fn",
    "tensor_p_fn",
    "tensor_q_fn",
    "delta_fn",
    "pair_fn",
    "prod_size",
    "prod_p_fn",
    "prod_q_fn",
    "terminal_fn",
    "pf_name",
    "pf_text",
    "parse_pf_text",
    "all_partial_fns",
    "all_total_fns",
    "ParModel",
    "par_category",
    "finset_category",
    "closure_par_model",
]

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class PartialFn:
    src: int
    tgt: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.src < 0 or self.tgt < 0 or len(self.table) != self.src:
            raise MalformedTable("partial function table has wrong length")
        for v in self.table:
            if v != -1 and not 0 <= v < self.tgt:
                raise MalformedTable(f"partial function value out of range: {v}")

    def __call__(self, x: int) -> int | None:
        v = self.table[x]
        return None if v < 0 else v

    @property
    def defined(self) -> tuple[int, ...]:
        return tuple(x for x, v in enumerate(self.table) if v >= 0)

    def __repr__(self) -> str:
        return f"PartialFn({pf_name(self)})"


def identity_fn(n: int) -> PartialFn:
    return PartialFn(n, n, tuple(range(n)))


def par_compose(g: PartialFn, f: PartialFn) -> PartialFn:
    """g after f; undefined wherever f is undefined or g is undefined at f's value."""
    if g.src != f.tgt:
        raise ShapeMismatch("par_compose: middle sizes differ")
    gt = g.table
    return PartialFn(f.src, g.tgt, tuple(gt[v] if v >= 0 else -1 for v in f.table))


def par_restriction(f: PartialFn) -> PartialFn:
    """Partial identity on the points where f is defined."""
    return PartialFn(f.src, f.src, tuple(x if v >= 0 else -1 for x, v in enumerate(f.table)))


def zero_fn(a: int, b: int) -> PartialFn:
    return PartialFn(a, b, (-1,) * a)


def is_total_fn(f: PartialFn) -> bool:
    return all(v >= 0 for v in f.table)


def inclusion_fn(a: int, b: int, offset: int = 0) -> PartialFn:
    """Total injection of an a-element set into a b-element set at an offset."""
    if offset + a > b:
        raise ShapeMismatch("inclusion does not fit")
    return PartialFn(a, b, tuple(range(offset, offset + a)))


# -- binary coproduct: a + b lays the first summand first --------------------


def inj1_fn(a: int, b: int) -> PartialFn:
    return inclusion_fn(a, a + b, 0)


def inj2_fn(a: int, b: int) -> PartialFn:
    return inclusion_fn(b, a + b, a)


def copair_fn(f: PartialFn, g: PartialFn) -> PartialFn:
    """Case analysis on a + b: first summand through f, second through g."""
    if f.tgt != g.tgt:
        raise ShapeMismatch("copair_fn: targets differ")
    return PartialFn(f.src + g.src, f.tgt, f.table + g.table)


def sum_fn(f: PartialFn, g: PartialFn) -> PartialFn:
    """f + g acting blockwise on a coproduct."""
    return copair_fn(
        par_compose(inj1_fn(f.tgt, g.tgt), f),
        par_compose(inj2_fn(f.tgt, g.tgt), g),
    )


# -- lax pairing product: a (x) b has size a*b, row-major, total projections --


def tensor_fn(f: PartialFn, g: PartialFn) -> PartialFn:
    """f (x) g on row-major pairs; defined only where both are."""
    table = []
    for x in range(f.src):
        fx = f.table[x]
        for y in range(g.src):
            gy = g.table[y]
            table.append(fx * g.tgt + gy if fx >= 0 and gy >= 0 else -1)
    return PartialFn(f.src * g.src, f.tgt * g.tgt, tuple(table))


def tensor_p_fn(a: int, b: int) -> PartialFn:
    """First projection a*b -> a, total."""
    return PartialFn(a * b, a, tuple(k // b for k in range(a * b)))


def tensor_q_fn(a: int, b: int) -> PartialFn:
    """Second projection a*b -> b, total."""
    return PartialFn(a * b, b, tuple(k % b for k in range(a * b)))


def delta_fn(a: int) -> PartialFn:
    """Total diagonal a -> a*a."""
    return PartialFn(a, a * a, tuple(x * a + x for x in range(a)))


# -- true binary product: a + a*b + b, pairing is a bijection on hom sets ----
#
# Layout: block 0 holds points whose first coordinate alone is known,
# block 1 (row-major pairs) points where both are, block 2 second alone.


def prod_size(a: int, b: int) -> int:
    return a + a * b + b


def pair_fn(f: PartialFn, g: PartialFn) -> PartialFn:
    if f.src != g.src:
        raise ShapeMismatch("pair_fn: sources differ")
    a, b = f.tgt, g.tgt
    table = []
    for x in range(f.src):
        fx, gx = f.table[x], g.table[x]
        if fx >= 0 and gx >= 0:
            table.append(a + fx * b + gx)
        elif fx >= 0:
            table.append(fx)
        elif gx >= 0:
            table.append(a + a * b + gx)
        else:
            table.append(-1)
    return PartialFn(f.src, prod_size(a, b), tuple(table))


def prod_p_fn(a: int, b: int) -> PartialFn:
    table = list(range(a))
    table += [k // b for k in range(a * b)]
    table += [-1] * b
    return PartialFn(prod_size(a, b), a, tuple(table))


def prod_q_fn(a: int, b: int) -> PartialFn:
    table = [-1] * a
    table += [k % b for k in range(a * b)]
    table += list(range(b))
    return PartialFn(prod_size(a, b), b, tuple(table))


def terminal_fn(a: int) -> PartialFn:
    """The unique total map to a one-element set."""
    return PartialFn(a, 1, (0,) * a)


# -- names and text form ------------------------------------------------------


def pf_name(f: PartialFn) -> str:
    """Compact unique name, e.g. 3>6:005 with - for undefined points."""
    if f.src <= 16 and f.tgt <= 16:
        cells = "".join("-" if v < 0 else "0123456789abcdef"[v] for v in f.table)
    else:
        cells = ".".join("-" if v < 0 else str(v) for v in f.table)
    return f"{f.src}>{f.tgt}:{cells}"


def pf_text(f: PartialFn) -> str:
    """Space-separated exchange form: src tgt v0 v1 ..., - for undefined."""
    cells = " ".join("-" if v < 0 else str(v) for v in f.table)
    return f"{f.src} {f.tgt} {cells}".rstrip()


def parse_pf_text(text: str) -> PartialFn:
    parts = text.split()
    if len(parts) < 2:
        raise MalformedTable(f"partial function text too short: {text!r}")
    try:
        src, tgt = int(parts[0]), int(parts[1])
        table = tuple(-1 if p == "-" else int(p) for p in parts[2:])
    except ValueError:
        raise MalformedTable(f"bad partial function text: {text!r}") from None
    if len(table) != src:
        raise MalformedTable(f"partial function text lists {len(table)} values for source {src}")
    return PartialFn(src, tgt, table)


# -- enumeration ----------------------------------------------------------------


def all_partial_fns(a: int, b: int):
    """All partial functions a -> b, tables lexicographic, undefined first."""
    for t in itertools.product(tuple(range(-1, b)), repeat=a):
        yield PartialFn(a, b, t)


def all_total_fns(a: int, b: int):
    for t in itertools.product(tuple(range(b)), repeat=a):
        yield PartialFn(a, b, t)


# -- materialised categories ----------------------------------------------------


class ParModel:
    """A materialised category of concrete partial functions.

    Bridges morphism ids and PartialFn values both ways; object ids map
    to set sizes, which the builders require to be distinct.
    """

    def __init__(self, rc: RestrictionCategory, sizes, fns):
        self.rc = rc
        self.sizes = tuple(sizes)
        self.fns = tuple(fns)
        self.ids = {f: i for i, f in enumerate(self.fns)}
        self._obj_of_size = {s: i for i, s in enumerate(self.sizes)}

    def oid(self, size: int) -> int:
        try:
            return self._obj_of_size[size]
        except KeyError:
            raise MalformedTable(f"no object of size {size}") from None

    def has_size(self, size: int) -> bool:
        return size in self._obj_of_size

    def mid(self, f: PartialFn) -> int:
        try:
            return self.ids[f]
        except KeyError:
            raise MalformedTable(f"{pf_name(f)} is not in this model") from None

    def fn(self, m: int) -> PartialFn:
        return self.fns[m]

    def has_fn(self, f: PartialFn) -> bool:
        return f in self.ids


def _materialise(sizes, fns, name: str) -> ParModel:
    sizes = tuple(sizes)
    size_to_obj = {s: i for i, s in enumerate(sizes)}
    n = len(fns)
    ids = {f: i for i, f in enumerate(fns)}

    by_src_size: dict[int, list[int]] = {s: [] for s in sizes}
    for i, f in enumerate(fns):
        by_src_size[f.src].append(i)

    flat = array("i", [-1]) * (n * n)
    for f_id, f in enumerate(fns):
        col = f_id
        for g_id in by_src_size[f.tgt]:
            flat[g_id * n + col] = ids[par_compose(fns[g_id], f)]

    rc = RestrictionCategory(
        [str(s) for s in sizes],
        [(pf_name(f), size_to_obj[f.src], size_to_obj[f.tgt]) for f in fns],
        [ids[identity_fn(s)] for s in sizes],
        flat,
        [ids[par_restriction(f)] for f in fns],
        name=name,
    )
    return ParModel(rc, sizes, fns)


def _check_sizes(sizes) -> tuple[int, ...]:
    sizes = tuple(int(s) for s in sizes)
    if len(set(sizes)) != len(sizes):
        raise MalformedTable("object sizes must be distinct")
    if any(s < 0 for s in sizes):
        raise MalformedTable("object sizes must be non-negative")
    return sizes


def par_category(sizes, *, cap: int | None = DEFAULT_CAP, name: str = "par") -> ParModel:
    """All partial functions between sets of the given sizes."""
    sizes = _check_sizes(sizes)
    count = sum((b + 1) ** a for a in sizes for b in sizes)
    if cap is not None and count > cap:
        raise CapExceeded(count, cap)
    fns = [f for a in sizes for b in sizes for f in all_partial_fns(a, b)]
    return _materialise(sizes, fns, name)


def finset_category(sizes, *, cap: int | None = DEFAULT_CAP, name: str = "finset") -> ParModel:
    """Total functions only; the restriction of everything is the identity."""
    sizes = _check_sizes(sizes)
    count = sum(b**a for a in sizes for b in sizes)
    if cap is not None and count > cap:
        raise CapExceeded(count, cap)
    fns = [f for a in sizes for b in sizes for f in all_total_fns(a, b)]
    return _materialise(sizes, fns, name)


def closure_par_model(
    sizes, generators, *, glue_pairs=(), cap: int | None = DEFAULT_CAP, name: str = "closure"
) -> ParModel:
    """Least set of partial functions between the given sizes containing the
    identities and the generators, closed under composition and restriction.

    ``glue_pairs`` lists size pairs (a, b) with a + b among the sizes; the
    closure then also glues any u : a -> t and v : b -> t into the combined
    map a+b -> t, which makes the concatenation a genuine coproduct of the
    result."""
    sizes = _check_sizes(sizes)
    size_set = set(sizes)
    glue_pairs = tuple(glue_pairs)
    for a, b in glue_pairs:
        if a not in size_set or b not in size_set or a + b not in size_set:
            raise MalformedTable(f"glue pair ({a}, {b}) leaves the given objects")
    fns = {identity_fn(s) for s in sizes}
    for g in generators:
        if g.src not in size_set or g.tgt not in size_set:
            raise MalformedTable(f"generator {pf_name(g)} leaves the given objects")
        fns.add(g)

    frontier = set(fns)
    while frontier:
        new: set[PartialFn] = set()
        for f in frontier:
            r = par_restriction(f)
            if r not in fns:
                new.add(r)
        # compose new frontier against everything, both ways
        current = list(fns)
        for f in frontier:
            for g in current:
                if g.src == f.tgt:
                    h = par_compose(g, f)
                    if h not in fns:
                        new.add(h)
                if f.src == g.tgt:
                    h = par_compose(f, g)
                    if h not in fns:
                        new.add(h)
        for a, b in glue_pairs:
            for f in frontier:
                for g in current:
                    if f.src == a and g.src == b and f.tgt == g.tgt:
                        h = copair_fn(f, g)
                        if h not in fns:
                            new.add(h)
                    if g.src == a and f.src == b and g.tgt == f.tgt:
                        h = copair_fn(g, f)
                        if h not in fns:
                            new.add(h)
        new -= fns
        fns |= new
        if cap is not None and len(fns) > cap:
            raise CapExceeded(len(fns), cap)
        frontier = new

    obj_order = {s: i for i, s in enumerate(sizes)}
    ordered = sorted(fns, key=lambda f: (obj_order[f.src], obj_order[f.tgt], f.table))
    return _materialise(sizes, ordered, name)


def par_to_rcat(max_size: int, *, cap: int | None = DEFAULT_CAP) -> ParModel:
    """All partial functions between sets of sizes 0..max_size."""
    if max_size < 0:
        raise MalformedTable("max_size must be >= 0")
    return par_category(range(max_size + 1), cap=cap, name=f"par<={max_size}")
