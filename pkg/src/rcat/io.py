"""File formats: category JSON, matrix text, diagram JSON, distributive data.

The category document is the interchange point between the CLI verbs:
everything a construction emits can be fed back to `rcat check`.  Names
carry all cross-references; the loader resolves them up front and
reports the position of the offending entry, so a bad file fails with
"compose[17]: ..." rather than a stack trace from deep inside a check.

All dumps are deterministic: entries are written in id order and the
JSON serializer is configured identically everywhere, so identical
input produces byte-identical output.
"""

from __future__ import annotations

import json

from .coproducts import Cocone, PartialMatrix
from .copycat import DistributiveCategoryData
from .core import FinCategory, RestrictionCategory
from .errors import MalformedTable
from .products import Diagram, Span

__all__ = [
    "dump_category",
    "load_category",
    "save_category",
    "read_category",
    "dump_matrix_text",
    "parse_matrix_text",
    "dump_diagram",
    "parse_diagram",
    "dump_distributive",
    "load_distributive",
]


JSON_KW = {"indent": 2, "sort_keys": False, "ensure_ascii": False}


def _check_name(name: str, where: str) -> str:
    if not isinstance(name, str) or name == "":
        raise MalformedTable(f"{where}: name must be a non-empty string")
    if "\n" in name or "\r" in name:
        raise MalformedTable(f"{where}: name must not contain newlines")
    return name


# -- category documents ------------------------------------------------------


def dump_category(cat: FinCategory) -> dict:
    """The JSON-ready document for a category: objects, morphisms with
    endpoints, identities, the full composition table as name triples,
    and the restriction map when the category carries one."""
    for o in cat.objects:
        _check_name(o, "objects")
    for m in cat.mor_names:
        _check_name(m, "morphisms")
    doc = {
        "objects": list(cat.objects),
        "morphisms": [
            {
                "name": cat.mor_names[f],
                "dom": cat.objects[cat.dom(f)],
                "cod": cat.objects[cat.cod(f)],
            }
            for f in range(cat.n_morphisms)
        ],
        "identity": {
            cat.objects[a]: cat.mor_names[cat.id_of(a)] for a in range(cat.n_objects)
        },
        "compose": [
            [cat.mor_names[g], cat.mor_names[f], cat.mor_names[cat.compose(g, f)]]
            for g, f in cat.composable_pairs()
        ],
    }
    if isinstance(cat, RestrictionCategory):
        doc["restriction"] = {
            cat.mor_names[f]: cat.mor_names[cat.restriction(f)]
            for f in range(cat.n_morphisms)
        }
    return doc


def load_category(doc: dict):
    """Builds the category from a document, resolving every name and
    pointing at the offending entry on failure.  Returns a restriction
    category when the document has a restriction map, otherwise a plain
    one."""
    if not isinstance(doc, dict):
        raise MalformedTable("document: expected a JSON object at top level")
    for field in ("objects", "morphisms", "identity", "compose"):
        if field not in doc:
            raise MalformedTable(f"document: missing field {field!r}")

    objects = doc["objects"]
    if not isinstance(objects, list):
        raise MalformedTable("objects: expected an array of strings")
    seen = set()
    for i, o in enumerate(objects):
        _check_name(o, f"objects[{i}]")
        if o in seen:
            raise MalformedTable(f"objects[{i}]: duplicate object name {o!r}")
        seen.add(o)
    obj_index = {o: i for i, o in enumerate(objects)}

    raw_mor = doc["morphisms"]
    if not isinstance(raw_mor, list):
        raise MalformedTable("morphisms: expected an array of objects")
    morphisms = []
    seen = set()
    for i, entry in enumerate(raw_mor):
        if not isinstance(entry, dict) or not {"name", "dom", "cod"} <= set(entry):
            raise MalformedTable(f"morphisms[{i}]: expected {{name, dom, cod}}")
        name = _check_name(entry["name"], f"morphisms[{i}]")
        if name in seen:
            raise MalformedTable(f"morphisms[{i}]: duplicate morphism name {name!r}")
        seen.add(name)
        for end in ("dom", "cod"):
            if entry[end] not in obj_index:
                raise MalformedTable(
                    f"morphisms[{i}]: unknown {end} object {entry[end]!r}"
                )
        morphisms.append((name, entry["dom"], entry["cod"]))
    mor_index = {m[0]: i for i, m in enumerate(morphisms)}
    mor_dom = {m[0]: obj_index[m[1]] for m in morphisms}
    mor_cod = {m[0]: obj_index[m[2]] for m in morphisms}

    raw_id = doc["identity"]
    if not isinstance(raw_id, dict):
        raise MalformedTable("identity: expected an object-to-morphism map")
    identity = []
    for i, o in enumerate(objects):
        if o not in raw_id:
            raise MalformedTable(f"identity: missing entry for object {o!r}")
        m = raw_id[o]
        if m not in mor_index:
            raise MalformedTable(f"identity[{o!r}]: unknown morphism {m!r}")
        identity.append(m)
    for o in raw_id:
        if o not in obj_index:
            raise MalformedTable(f"identity: unknown object {o!r}")

    raw_comp = doc["compose"]
    if not isinstance(raw_comp, list):
        raise MalformedTable("compose: expected an array of [g, f, gf] triples")
    compose: dict[tuple[int, int], int] = {}
    for i, triple in enumerate(raw_comp):
        if not isinstance(triple, list) or len(triple) != 3:
            raise MalformedTable(f"compose[{i}]: expected a [g, f, gf] triple")
        g, f, gf = triple
        for nm in (g, f, gf):
            if nm not in mor_index:
                raise MalformedTable(f"compose[{i}]: unknown morphism {nm!r}")
        if mor_dom[g] != mor_cod[f]:
            raise MalformedTable(
                f"compose[{i}]: ({g!r}, {f!r}) is not a composable pair"
            )
        key = (mor_index[g], mor_index[f])
        if key in compose:
            raise MalformedTable(f"compose[{i}]: duplicate entry for ({g!r}, {f!r})")
        if mor_dom[gf] != mor_dom[f] or mor_cod[gf] != mor_cod[g]:
            raise MalformedTable(
                f"compose[{i}]: composite {gf!r} has the wrong endpoints"
            )
        compose[key] = mor_index[gf]
    n_pairs = sum(
        1
        for f in morphisms
        for g in morphisms
        if mor_dom[g[0]] == mor_cod[f[0]]
    )
    if len(compose) != n_pairs:
        raise MalformedTable(
            f"compose: {len(compose)} entries for {n_pairs} composable pairs"
        )

    if "restriction" in doc:
        raw_r = doc["restriction"]
        if not isinstance(raw_r, dict):
            raise MalformedTable("restriction: expected a morphism-to-morphism map")
        restriction = []
        for name, _d, _c in morphisms:
            if name not in raw_r:
                raise MalformedTable(f"restriction: missing entry for {name!r}")
            r = raw_r[name]
            if r not in mor_index:
                raise MalformedTable(f"restriction[{name!r}]: unknown morphism {r!r}")
            restriction.append(r)
        for name in raw_r:
            if name not in mor_index:
                raise MalformedTable(f"restriction: unknown morphism {name!r}")
        return RestrictionCategory(
            objects, morphisms, identity, compose, restriction,
            name=str(doc.get("name", "")),
        )
    return FinCategory(objects, morphisms, identity, compose, name=str(doc.get("name", "")))


def save_category(cat: FinCategory, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_category(cat), fh, **JSON_KW)
        fh.write("\n")


def read_category(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedTable(f"{path}: invalid JSON at line {exc.lineno}") from None
    return load_category(doc)


# -- matrix text form --------------------------------------------------------


def dump_matrix_text(m: PartialMatrix, cat) -> str:
    """Header `rows=N cols=K`, one entry name per line in row-major
    order, then one `witness <name>` line per row."""
    lines = [f"rows={len(m.rows)} cols={len(m.cols)}"]
    for row in m.entries:
        for f in row:
            lines.append(_check_name(cat.mor_names[f], "matrix entry"))
    for h in m.witnesses:
        lines.append("witness " + _check_name(cat.mor_names[h], "matrix witness"))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str, cat) -> PartialMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise MalformedTable("matrix: empty input")
    head = lines[0].split()
    try:
        if len(head) != 2:
            raise ValueError
        n_rows = int(head[0].removeprefix("rows="))
        n_cols = int(head[1].removeprefix("cols="))
        if head[0][:5] != "rows=" or head[1][:5] != "cols=":
            raise ValueError
    except ValueError:
        raise MalformedTable("matrix line 1: expected header `rows=N cols=K`") from None
    if n_rows < 0 or n_cols < 0:
        raise MalformedTable("matrix line 1: negative dimension")
    want = 1 + n_rows * n_cols + n_rows
    if len(lines) != want:
        raise MalformedTable(
            f"matrix: expected {want} lines for {n_rows}x{n_cols}, got {len(lines)}"
        )

    def resolve(name: str, where: str) -> int:
        try:
            return cat.mor_id(name)
        except Exception:
            raise MalformedTable(f"{where}: unknown morphism {name!r}") from None

    entries = []
    pos = 1
    for r in range(n_rows):
        row = []
        for c in range(n_cols):
            row.append(resolve(lines[pos], f"matrix line {pos + 1}"))
            pos += 1
        entries.append(tuple(row))
    witnesses = []
    for r in range(n_rows):
        ln = lines[pos]
        if not ln.startswith("witness "):
            raise MalformedTable(f"matrix line {pos + 1}: expected `witness <name>`")
        witnesses.append(resolve(ln[len("witness "):], f"matrix line {pos + 1}"))
        pos += 1

    rows = tuple(cat.dom(row[0]) for row in entries) if n_cols else tuple()
    cols = tuple(cat.cod(entries[0][c]) for c in range(n_cols)) if n_rows else tuple()
    for r, row in enumerate(entries):
        for c, f in enumerate(row):
            if cat.dom(f) != rows[r] or cat.cod(f) != cols[c]:
                raise MalformedTable(
                    f"matrix entry ({r}, {c}): {cat.mor_names[f]!r} does not fit "
                    f"the row/column objects"
                )
    return PartialMatrix(rows, cols, tuple(entries), tuple(witnesses))


# -- diagram documents -------------------------------------------------------


def dump_diagram(d: Diagram, cat) -> dict:
    return {
        "nodes": {str(i): cat.objects[a] for i, a in enumerate(d.nodes)},
        "arrows": [[str(s), str(t), cat.mor_names[m]] for s, t, m in d.arrows],
    }


def parse_diagram(doc: dict, cat) -> Diagram:
    """Nodes are labeled and assigned objects; arrows name a morphism
    between two node labels.  The result is validated against the
    category."""
    if not isinstance(doc, dict) or "nodes" not in doc or "arrows" not in doc:
        raise MalformedTable("diagram: expected {nodes, arrows}")
    raw_nodes = doc["nodes"]
    if not isinstance(raw_nodes, dict) or not raw_nodes:
        raise MalformedTable("diagram nodes: expected a non-empty label-to-object map")
    labels = sorted(raw_nodes)
    node_index = {lbl: i for i, lbl in enumerate(labels)}
    nodes = []
    for lbl in labels:
        try:
            nodes.append(cat.obj_id(raw_nodes[lbl]))
        except Exception:
            raise MalformedTable(
                f"diagram nodes[{lbl!r}]: unknown object {raw_nodes[lbl]!r}"
            ) from None
    arrows = []
    for i, arr in enumerate(doc["arrows"]):
        if not isinstance(arr, list) or len(arr) != 3:
            raise MalformedTable(f"diagram arrows[{i}]: expected [src, tgt, morphism]")
        s, t, mname = arr
        if s not in node_index:
            raise MalformedTable(f"diagram arrows[{i}]: unknown node {s!r}")
        if t not in node_index:
            raise MalformedTable(f"diagram arrows[{i}]: unknown node {t!r}")
        try:
            m = cat.mor_id(mname)
        except Exception:
            raise MalformedTable(
                f"diagram arrows[{i}]: unknown morphism {mname!r}"
            ) from None
        arrows.append((node_index[s], node_index[t], m))
    d = Diagram(tuple(nodes), tuple(arrows))
    try:
        d.validate(cat)
    except MalformedTable as exc:
        raise MalformedTable(f"diagram: {exc}") from None
    return d


# -- distributive data documents ---------------------------------------------


def dump_distributive(D: DistributiveCategoryData) -> dict:
    cat = D.cat
    return {
        "category": dump_category(cat),
        "terminal": cat.objects[D.terminal],
        "initial": cat.objects[D.initial],
        "products": [
            {
                "left": cat.objects[a],
                "right": cat.objects[b],
                "apex": cat.objects[sp.apex],
                "p": cat.mor_names[sp.p],
                "q": cat.mor_names[sp.q],
            }
            for (a, b), sp in sorted(D.spans.items())
        ],
        "coproducts": [
            {
                "left": cat.objects[a],
                "right": cat.objects[b],
                "apex": cat.objects[cc.apex],
                "inj1": cat.mor_names[cc.inj1],
                "inj2": cat.mor_names[cc.inj2],
            }
            for (a, b), cc in sorted(D.cocones.items())
        ],
        "distributors": [
            {
                "a": cat.objects[a],
                "b": cat.objects[b],
                "c": cat.objects[c],
                "inverse": cat.mor_names[m],
            }
            for (a, b, c), m in sorted(D.delta_inv.items())
        ],
    }


def load_distributive(doc: dict) -> DistributiveCategoryData:
    """Builds distributive data from a document.  Every stated inverse
    is verified by the constructor; a wrong or missing one raises with
    the triple it belongs to."""
    if not isinstance(doc, dict):
        raise MalformedTable("document: expected a JSON object at top level")
    for field in ("category", "terminal", "initial", "products", "coproducts", "distributors"):
        if field not in doc:
            raise MalformedTable(f"document: missing field {field!r}")
    cat = load_category(doc["category"])

    def obj(name, where):
        try:
            return cat.obj_id(name)
        except Exception:
            raise MalformedTable(f"{where}: unknown object {name!r}") from None

    def mor(name, where):
        try:
            return cat.mor_id(name)
        except Exception:
            raise MalformedTable(f"{where}: unknown morphism {name!r}") from None

    spans = {}
    for i, entry in enumerate(doc["products"]):
        where = f"products[{i}]"
        if not isinstance(entry, dict) or not {"left", "right", "apex", "p", "q"} <= set(entry):
            raise MalformedTable(f"{where}: expected {{left, right, apex, p, q}}")
        key = (obj(entry["left"], where), obj(entry["right"], where))
        if key in spans:
            raise MalformedTable(f"{where}: duplicate product for {key}")
        spans[key] = Span(
            obj(entry["apex"], where), mor(entry["p"], where), mor(entry["q"], where)
        )
    cocones = {}
    for i, entry in enumerate(doc["coproducts"]):
        where = f"coproducts[{i}]"
        if not isinstance(entry, dict) or not {"left", "right", "apex", "inj1", "inj2"} <= set(entry):
            raise MalformedTable(f"{where}: expected {{left, right, apex, inj1, inj2}}")
        key = (obj(entry["left"], where), obj(entry["right"], where))
        if key in cocones:
            raise MalformedTable(f"{where}: duplicate coproduct for {key}")
        cocones[key] = Cocone(
            obj(entry["apex"], where), mor(entry["inj1"], where), mor(entry["inj2"], where)
        )
    delta_inv = {}
    for i, entry in enumerate(doc["distributors"]):
        where = f"distributors[{i}]"
        if not isinstance(entry, dict) or not {"a", "b", "c", "inverse"} <= set(entry):
            raise MalformedTable(f"{where}: expected {{a, b, c, inverse}}")
        key = (obj(entry["a"], where), obj(entry["b"], where), obj(entry["c"], where))
        if key in delta_inv:
            raise MalformedTable(f"{where}: duplicate distributor for {key}")
        delta_inv[key] = mor(entry["inverse"], where)

    return DistributiveCategoryData(
        cat,
        spans,
        cocones,
        terminal=obj(doc["terminal"], "terminal"),
        initial=obj(doc["initial"], "initial"),
        delta_inv=delta_inv,
    )
