"""Strict XML codec for every configuration category.

One self-consistent uppercase grammar per category. The parser rejects
unknown tags, attributes, duplicate fields and bad literals with positioned
errors; field order within an entry is accepted in any order, while
``serialize`` always emits the canonical order with 2-space indentation,
UTF-8 and a single trailing newline, so value-equal documents produce
byte-equal files.

Leaf text is trimmed and one surrounding double-quote pair is stripped
(the wire format cannot represent values with leading/trailing whitespace
or a full surrounding quote pair). The Properties wire form carries no
language tag; the language travels in the file name and is supplied to
:func:`parse` by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._xmlio import Node, XmlStructureError, XmlWriter, load_tree
from .errors import CoordinateError, TenantConfError
from .model import (
    BackendBinding,
    Block,
    BolAccessRule,
    BolGrant,
    BoToggle,
    BusinessRole,
    Category,
    ConfigDocument,
    ConnState,
    Connection,
    CssElement,
    Database,
    DataObjectBinding,
    DbUse,
    FieldPlacement,
    GridCell,
    ImageElement,
    KeyValueSetting,
    LoadOption,
    PropertyBundle,
    ScriptElement,
    TextEntry,
    WorkflowDef,
    WorkflowTask,
    document,
)

MALFORMED_XML = "MALFORMED_XML"
UNKNOWN_TAG = "UNKNOWN_TAG"
MISSING_TAG = "MISSING_TAG"
BAD_ENUM = "BAD_ENUM"
BAD_NUMBER = "BAD_NUMBER"


class ParseError(TenantConfError):
    """Structural rejection of an input file, with source position."""

    code = "parse-error"

    def __init__(self, category: Category, line: int, column: int, kind: str, detail: str):
        super().__init__(f"{category.slug} {line}:{column} {kind}: {detail}")
        self.category = category
        self.line = max(1, line)
        self.column = max(1, column)
        self.kind = kind
        self.detail = detail


def _cook(raw: str) -> str:
    """Trim whitespace and strip one optional surrounding double-quote pair."""
    text = raw.strip()
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        text = text[1:-1]
    return text


class _Entry:
    """Strict field access over one entry element; every child consumed once."""

    def __init__(self, category: Category, node: Node):
        self.category = category
        self.node = node
        self._by_tag: dict[str, Node] = {}
        for child in node.children:
            if child.tag in self._by_tag:
                raise ParseError(
                    category,
                    child.line,
                    child.column,
                    MALFORMED_XML,
                    f"duplicate <{child.tag}> under <{node.tag}>",
                )
            self._by_tag[child.tag] = child
        self._consumed: set[str] = set()

    def _take(self, tag: str, required: bool) -> Node | None:
        node = self._by_tag.get(tag)
        if node is None:
            if required:
                raise ParseError(
                    self.category,
                    self.node.line,
                    self.node.column,
                    MISSING_TAG,
                    f"<{self.node.tag}> is missing <{tag}>",
                )
            return None
        self._consumed.add(tag)
        return node

    def _leaf(self, tag: str, required: bool = True) -> Node | None:
        node = self._take(tag, required)
        if node is None:
            return None
        if node.children:
            bad = node.children[0]
            raise ParseError(
                self.category, bad.line, bad.column, UNKNOWN_TAG, f"unexpected <{bad.tag}>"
            )
        return node

    def text(self, tag: str) -> str:
        return _cook(self._leaf(tag).text)

    def opt_text(self, tag: str) -> str | None:
        node = self._leaf(tag, required=False)
        return None if node is None else _cook(node.text)

    def boolean(self, tag: str) -> bool:
        node = self._leaf(tag)
        value = _cook(node.text)
        if value in ("True", "true"):
            return True
        if value in ("False", "false"):
            return False
        raise ParseError(
            self.category, node.line, node.column, BAD_ENUM, f"bad boolean {value!r}"
        )

    def enum(self, tag: str, enum_cls):
        node = self._leaf(tag)
        value = _cook(node.text)
        try:
            return enum_cls(value)
        except ValueError:
            raise ParseError(
                self.category,
                node.line,
                node.column,
                BAD_ENUM,
                f"bad {enum_cls.__name__} value {value!r}",
            ) from None

    def digits(self, tag: str) -> str:
        node = self._leaf(tag)
        value = _cook(node.text)
        if not value.isdigit():
            raise ParseError(
                self.category, node.line, node.column, BAD_NUMBER, f"not a number: {value!r}"
            )
        return value

    def positive_int(self, tag: str) -> int:
        node = self._leaf(tag)
        value = _cook(node.text)
        if not value.isdigit() or int(value) < 1:
            raise ParseError(
                self.category,
                node.line,
                node.column,
                BAD_NUMBER,
                f"not a positive integer: {value!r}",
            )
        return int(value)

    def cell(self, tag: str) -> GridCell:
        node = self._leaf(tag)
        value = _cook(node.text)
        try:
            return GridCell.from_text(value)
        except CoordinateError:
            raise ParseError(
                self.category, node.line, node.column, BAD_NUMBER, f"bad cell {value!r}"
            ) from None

    def container(self, tag: str, required: bool = True) -> Node | None:
        node = self._take(tag, required)
        if node is not None and not node.children and node.text.strip():
            raise ParseError(
                self.category,
                node.line,
                node.column,
                MALFORMED_XML,
                f"<{tag}> must contain elements",
            )
        return node

    def has(self, tag: str) -> bool:
        return tag in self._by_tag

    def done(self) -> None:
        for tag, node in self._by_tag.items():
            if tag not in self._consumed:
                raise ParseError(
                    self.category, node.line, node.column, UNKNOWN_TAG, f"unexpected <{tag}>"
                )


def _expect_root(category: Category, root: Node, tag: str) -> None:
    if root.tag != tag:
        raise ParseError(
            category,
            root.line,
            root.column,
            UNKNOWN_TAG,
            f"expected root <{tag}>, got <{root.tag}>",
        )


def _expect_entries(category: Category, parent: Node, tag: str) -> list[Node]:
    if not parent.children and parent.text.strip():
        raise ParseError(
            category,
            parent.line,
            parent.column,
            MALFORMED_XML,
            f"<{parent.tag}> must contain elements",
        )
    for child in parent.children:
        if child.tag != tag:
            raise ParseError(
                category, child.line, child.column, UNKNOWN_TAG, f"unexpected <{child.tag}>"
            )
    return parent.children


# --- per-category parsers -----------------------------------------------------


def _parse_named_pair(category, root, root_tag, entry_tag, second_tag, make):
    _expect_root(category, root, root_tag)
    entries = []
    for node in _expect_entries(category, root, entry_tag):
        e = _Entry(category, node)
        entries.append(make(e.text("NAME"), e.text(second_tag)))
        e.done()
    return tuple(entries)


def _parse_text_entries(category: Category, section: Node, entry_tag: str) -> tuple:
    entries = []
    for node in _expect_entries(category, section, entry_tag):
        e = _Entry(category, node)
        entries.append(TextEntry(e.text("NAME"), e.text("VALUE")))
        e.done()
    return tuple(entries)


def _parse_properties(root: Node, language: str) -> PropertyBundle:
    cat = Category.PROPERTIES
    _expect_root(cat, root, "PROPERTIES")
    e = _Entry(cat, root)
    labels_node = e.container("LABELS")
    texts_node = e.container("TEXTS")
    e.done()
    return PropertyBundle(
        language=language,
        labels=_parse_text_entries(cat, labels_node, "LABELELEMENT"),
        texts=_parse_text_entries(cat, texts_node, "TEXTELEMENT"),
    )


def _parse_blocks(root: Node) -> tuple:
    cat = Category.BLOCKS
    _expect_root(cat, root, "BLOCKS")
    entries = []
    for node in _expect_entries(cat, root, "BLOCK"):
        e = _Entry(cat, node)
        entries.append(
            Block(
                component=e.text("COMPONENT"),
                view_name=e.text("VIEWNAME"),
                title=e.text("TITLE"),
                display=e.boolean("DISPLAY"),
                load_option=e.enum("LOADOPTION", LoadOption),
            )
        )
        e.done()
    return tuple(entries)


def _parse_fields(root: Node) -> tuple:
    cat = Category.FIELDS
    _expect_root(cat, root, "FIELDS")
    entries = []
    for node in _expect_entries(cat, root, "FIELD"):
        e = _Entry(cat, node)
        entries.append(
            FieldPlacement(
                field_name=e.text("FIELDNAME"),
                display=e.boolean("DISPLAY"),
                position_from=e.cell("POSITIONFROM"),
                position_to=e.cell("POSITIONTO"),
            )
        )
        e.done()
    return tuple(entries)


def _parse_bos(root: Node) -> tuple:
    cat = Category.FRONTEND_BOS
    _expect_root(cat, root, "BOS")
    entries = []
    for node in _expect_entries(cat, root, "BO"):
        e = _Entry(cat, node)
        entries.append(BoToggle(bo_name=e.text("BONAME"), enabled=e.boolean("ENABLE")))
        e.done()
    return tuple(entries)


def _parse_bes(root: Node) -> tuple:
    cat = Category.BACKEND_BINDINGS
    _expect_root(cat, root, "BES")
    entries = []
    for node in _expect_entries(cat, root, "BE"):
        e = _Entry(cat, node)
        entries.append(
            BackendBinding(
                be_name=e.text("BENAME"),
                api=e.text("API"),
                state=e.enum("STATE", ConnState),
                erp_backend=e.text("ERPBACKEND"),
            )
        )
        e.done()
    return tuple(entries)


def _parse_connections(root: Node) -> tuple:
    cat = Category.CONNECTIONS
    _expect_root(cat, root, "CONNECTIONS")
    entries = []
    for node in _expect_entries(cat, root, "CONNECTION"):
        e = _Entry(cat, node)
        entries.append(
            Connection(name=e.text("NAME"), host=e.text("HOST"), client=e.digits("CLIENT"))
        )
        e.done()
    return tuple(entries)


def _parse_business_roles(root: Node) -> tuple:
    cat = Category.BUSINESS_ROLES
    _expect_root(cat, root, "BUSINESSROLES")
    entries = []
    for node in _expect_entries(cat, root, "BUSINESSROLE"):
        e = _Entry(cat, node)
        entries.append(
            BusinessRole(
                name=e.text("NAME"),
                description=e.text("DESCRIPTION"),
                nav_bar_profile=e.text("NAVBAR"),
                technical_profile=e.text("TECPROFILE"),
                layout_profile=e.text("LAYPROFILE"),
                pfcg_role=e.text("PFCG"),
            )
        )
        e.done()
    return tuple(entries)


def _parse_bol_access(root: Node) -> tuple:
    cat = Category.BOL_ACCESS
    _expect_root(cat, root, "BUSINESSROLES")
    entries = []
    for node in _expect_entries(cat, root, "BUSINESSROLE"):
        e = _Entry(cat, node)
        name = e.text("NAME")
        bols = e.container("BOLS")
        grants = []
        for bol in _expect_entries(cat, bols, "BOL"):
            g = _Entry(cat, bol)
            grants.append(BolGrant(bol_name=g.text("NAME"), use=g.boolean("USE")))
            g.done()
        entries.append(BolAccessRule(role_name=name, grants=tuple(grants)))
        e.done()
    return tuple(entries)


def _parse_dos(root: Node) -> tuple:
    cat = Category.DATA_OBJECTS
    _expect_root(cat, root, "DOS")
    entries = []
    for node in _expect_entries(cat, root, "DO"):
        e = _Entry(cat, node)
        entries.append(
            DataObjectBinding(do_name=e.text("NAME"), database_name=e.text("DATABASENAME"))
        )
        e.done()
    return tuple(entries)


def _parse_databases(root: Node) -> tuple:
    cat = Category.DATABASES
    _expect_root(cat, root, "DATABASES")
    entries = []
    for node in _expect_entries(cat, root, "DATABASE"):
        e = _Entry(cat, node)
        entries.append(
            Database(name=e.text("NAME"), host=e.text("HOST"), use=e.enum("USE", DbUse))
        )
        e.done()
    return tuple(entries)


def _parse_keyvalues(root: Node) -> tuple:
    cat = Category.KEY_VALUES
    _expect_root(cat, root, "KEYVALUES")
    entries = []
    for node in _expect_entries(cat, root, "KV"):
        e = _Entry(cat, node)
        key = e.text("KEY")
        if e.has("VALUE") and e.has("SET"):
            raise ParseError(
                cat, node.line, node.column, MALFORMED_XML, "<KV> carries both VALUE and SET"
            )
        if e.has("VALUE"):
            value: str | tuple[str, ...] = e.text("VALUE")
        elif e.has("SET"):
            set_node = e.container("SET")
            items = []
            for item in _expect_entries(cat, set_node, "ITEM"):
                if item.children:
                    bad = item.children[0]
                    raise ParseError(cat, bad.line, bad.column, UNKNOWN_TAG, f"unexpected <{bad.tag}>")
                items.append(_cook(item.text))
            value = tuple(items)
        else:
            raise ParseError(
                cat, node.line, node.column, MISSING_TAG, "<KV> needs VALUE or SET"
            )
        entries.append(KeyValueSetting(key=key, value=value))
        e.done()
    return tuple(entries)


def _parse_workflows(root: Node) -> tuple:
    cat = Category.WORKFLOWS
    _expect_root(cat, root, "WORKFLOWS")
    entries = []
    for node in _expect_entries(cat, root, "WORKFLOW"):
        e = _Entry(cat, node)
        wf_id = e.text("ID")
        name = e.text("NAME")
        role = e.text("ROLE")
        tasks_node = e.container("TASKS")
        tasks = []
        for task in _expect_entries(cat, tasks_node, "TASK"):
            t = _Entry(cat, task)
            tasks.append(
                WorkflowTask(
                    step_no=t.positive_int("STEP"),
                    activity_type=t.text("ACTIVITY"),
                    bo_name=t.text("BO"),
                    method=t.text("METHOD"),
                    rule=t.opt_text("RULE"),
                )
            )
            t.done()
        entries.append(
            WorkflowDef(id=wf_id, name=name, role_binding=role, tasks=tuple(tasks))
        )
        e.done()
    return tuple(entries)


def parse(category: Category, data: bytes, *, language: str = "en") -> ConfigDocument:
    """Parse canonical XML bytes into a structurally well-formed document.

    Business invariants are NOT checked here (that is validate_document's
    job). ``language`` applies to Properties only: the wire form carries no
    language tag, so the caller passes the tag recovered from the file name.
    """
    try:
        root = load_tree(data)
    except XmlStructureError as exc:
        raise ParseError(category, exc.line, exc.column, MALFORMED_XML, exc.detail) from None

    if category is Category.CSS_ELEMENTS:
        body = _parse_named_pair(category, root, "CSSELEMENTS", "CSSELEMENT", "LOCATION", CssElement)
    elif category is Category.IMAGES:
        body = _parse_named_pair(category, root, "IMAGEELEMENTS", "IMAGEELEMENT", "SRC", ImageElement)
    elif category is Category.SCRIPTS:
        body = _parse_named_pair(category, root, "SCRIPTELEMENTS", "SCRIPTELEMENT", "SRC", ScriptElement)
    elif category is Category.PROPERTIES:
        return document(category, _parse_properties(root, language))
    elif category is Category.BLOCKS:
        body = _parse_blocks(root)
    elif category is Category.FIELDS:
        body = _parse_fields(root)
    elif category is Category.FRONTEND_BOS:
        body = _parse_bos(root)
    elif category is Category.BACKEND_BINDINGS:
        body = _parse_bes(root)
    elif category is Category.CONNECTIONS:
        body = _parse_connections(root)
    elif category is Category.BUSINESS_ROLES:
        body = _parse_business_roles(root)
    elif category is Category.BOL_ACCESS:
        body = _parse_bol_access(root)
    elif category is Category.DATA_OBJECTS:
        body = _parse_dos(root)
    elif category is Category.DATABASES:
        body = _parse_databases(root)
    elif category is Category.KEY_VALUES:
        body = _parse_keyvalues(root)
    elif category is Category.WORKFLOWS:
        body = _parse_workflows(root)
    else:  # pragma: no cover - Category is a closed set
        raise AssertionError(category)
    return document(category, body)


# --- serialization -------------------------------------------------------------


def _bool_text(value: bool) -> str:
    return "True" if value else "False"


def _emit_named_pair(w: XmlWriter, root_tag, entry_tag, second_tag, entries, second):
    w.open(root_tag)
    for entry in entries:
        w.open(entry_tag)
        w.leaf("NAME", entry.name)
        w.leaf(second_tag, second(entry))
        w.close(entry_tag)
    w.close(root_tag)


def serialize(doc: ConfigDocument) -> bytes:
    """Canonical bytes for a document; value-equal documents serialize identically."""
    w = XmlWriter()
    cat = doc.category
    if cat is Category.CSS_ELEMENTS:
        _emit_named_pair(w, "CSSELEMENTS", "CSSELEMENT", "LOCATION", doc.body, lambda e: e.location)
    elif cat is Category.IMAGES:
        _emit_named_pair(w, "IMAGEELEMENTS", "IMAGEELEMENT", "SRC", doc.body, lambda e: e.src)
    elif cat is Category.SCRIPTS:
        _emit_named_pair(w, "SCRIPTELEMENTS", "SCRIPTELEMENT", "SRC", doc.body, lambda e: e.src)
    elif cat is Category.PROPERTIES:
        bundle = doc.body
        w.open("PROPERTIES")
        for section_tag, entry_tag, entries in (
            ("LABELS", "LABELELEMENT", bundle.labels),
            ("TEXTS", "TEXTELEMENT", bundle.texts),
        ):
            w.open(section_tag)
            for entry in entries:
                w.open(entry_tag)
                w.leaf("NAME", entry.name)
                w.leaf("VALUE", entry.value)
                w.close(entry_tag)
            w.close(section_tag)
        w.close("PROPERTIES")
    elif cat is Category.BLOCKS:
        w.open("BLOCKS")
        for b in doc.body:
            w.open("BLOCK")
            w.leaf("COMPONENT", b.component)
            w.leaf("VIEWNAME", b.view_name)
            w.leaf("TITLE", b.title)
            w.leaf("DISPLAY", _bool_text(b.display))
            w.leaf("LOADOPTION", b.load_option.value)
            w.close("BLOCK")
        w.close("BLOCKS")
    elif cat is Category.FIELDS:
        w.open("FIELDS")
        for f in doc.body:
            w.open("FIELD")
            w.leaf("FIELDNAME", f.field_name)
            w.leaf("DISPLAY", _bool_text(f.display))
            w.leaf("POSITIONFROM", f.position_from.as_text())
            w.leaf("POSITIONTO", f.position_to.as_text())
            w.close("FIELD")
        w.close("FIELDS")
    elif cat is Category.FRONTEND_BOS:
        w.open("BOS")
        for t in doc.body:
            w.open("BO")
            w.leaf("BONAME", t.bo_name)
            w.leaf("ENABLE", _bool_text(t.enabled))
            w.close("BO")
        w.close("BOS")
    elif cat is Category.BACKEND_BINDINGS:
        w.open("BES")
        for b in doc.body:
            w.open("BE")
            w.leaf("BENAME", b.be_name)
            w.leaf("API", b.api)
            w.leaf("STATE", b.state.value)
            w.leaf("ERPBACKEND", b.erp_backend)
            w.close("BE")
        w.close("BES")
    elif cat is Category.CONNECTIONS:
        w.open("CONNECTIONS")
        for c in doc.body:
            w.open("CONNECTION")
            w.leaf("NAME", c.name)
            w.leaf("HOST", c.host)
            w.leaf("CLIENT", c.client)
            w.close("CONNECTION")
        w.close("CONNECTIONS")
    elif cat is Category.BUSINESS_ROLES:
        w.open("BUSINESSROLES")
        for r in doc.body:
            w.open("BUSINESSROLE")
            w.leaf("NAME", r.name)
            w.leaf("DESCRIPTION", r.description)
            w.leaf("NAVBAR", r.nav_bar_profile)
            w.leaf("TECPROFILE", r.technical_profile)
            w.leaf("LAYPROFILE", r.layout_profile)
            w.leaf("PFCG", r.pfcg_role)
            w.close("BUSINESSROLE")
        w.close("BUSINESSROLES")
    elif cat is Category.BOL_ACCESS:
        w.open("BUSINESSROLES")
        for rule in doc.body:
            w.open("BUSINESSROLE")
            w.leaf("NAME", rule.role_name)
            w.open("BOLS")
            for g in rule.grants:
                w.open("BOL")
                w.leaf("NAME", g.bol_name)
                w.leaf("USE", _bool_text(g.use))
                w.close("BOL")
            w.close("BOLS")
            w.close("BUSINESSROLE")
        w.close("BUSINESSROLES")
    elif cat is Category.DATA_OBJECTS:
        w.open("DOS")
        for d in doc.body:
            w.open("DO")
            w.leaf("NAME", d.do_name)
            w.leaf("DATABASENAME", d.database_name)
            w.close("DO")
        w.close("DOS")
    elif cat is Category.DATABASES:
        w.open("DATABASES")
        for d in doc.body:
            w.open("DATABASE")
            w.leaf("NAME", d.name)
            w.leaf("HOST", d.host)
            w.leaf("USE", d.use.value)
            w.close("DATABASE")
        w.close("DATABASES")
    elif cat is Category.KEY_VALUES:
        w.open("KEYVALUES")
        for kv in doc.body:
            w.open("KV")
            w.leaf("KEY", kv.key)
            if kv.is_set:
                w.open("SET")
                for item in kv.value:
                    w.leaf("ITEM", item)
                w.close("SET")
            else:
                w.leaf("VALUE", kv.value)
            w.close("KV")
        w.close("KEYVALUES")
    elif cat is Category.WORKFLOWS:
        w.open("WORKFLOWS")
        for wf in doc.body:
            w.open("WORKFLOW")
            w.leaf("ID", wf.id)
            w.leaf("NAME", wf.name)
            w.leaf("ROLE", wf.role_binding)
            w.open("TASKS")
            for task in wf.tasks:
                w.open("TASK")
                w.leaf("STEP", str(task.step_no))
                w.leaf("ACTIVITY", task.activity_type)
                w.leaf("BO", task.bo_name)
                w.leaf("METHOD", task.method)
                if task.rule is not None:
                    w.leaf("RULE", task.rule)
                w.close("TASK")
            w.close("TASKS")
            w.close("WORKFLOW")
        w.close("WORKFLOWS")
    else:  # pragma: no cover
        raise AssertionError(cat)
    return w.bytes()


# --- category descriptors (drive the admin UI's schema-generated forms) --------

def _fields(*specs) -> list[dict]:
    out = []
    for spec in specs:
        name, tag, ftype = spec[0], spec[1], spec[2]
        entry = {"name": name, "tag": tag, "type": ftype}
        if ftype == "enum":
            entry["values"] = list(spec[3])
        out.append(entry)
    return out


CATEGORY_DESCRIPTORS: list[dict] = [
    {
        "slug": "csselements",
        "shape": "list",
        "root": "CSSELEMENTS",
        "entry": "CSSELEMENT",
        "fields": _fields(("name", "NAME", "text"), ("location", "LOCATION", "text")),
    },
    {
        "slug": "images",
        "shape": "list",
        "root": "IMAGEELEMENTS",
        "entry": "IMAGEELEMENT",
        "fields": _fields(("name", "NAME", "text"), ("src", "SRC", "text")),
    },
    {
        "slug": "scripts",
        "shape": "list",
        "root": "SCRIPTELEMENTS",
        "entry": "SCRIPTELEMENT",
        "fields": _fields(("name", "NAME", "text"), ("src", "SRC", "text")),
    },
    {
        "slug": "properties",
        "shape": "properties",
        "root": "PROPERTIES",
        "entry": "LABELELEMENT",
        "fields": _fields(("name", "NAME", "text"), ("value", "VALUE", "text")),
    },
    {
        "slug": "blocks",
        "shape": "list",
        "root": "BLOCKS",
        "entry": "BLOCK",
        "fields": _fields(
            ("component", "COMPONENT", "text"),
            ("view_name", "VIEWNAME", "text"),
            ("title", "TITLE", "text"),
            ("display", "DISPLAY", "bool"),
            ("load_option", "LOADOPTION", "enum", ["Direct", "Lazy"]),
        ),
    },
    {
        "slug": "fields",
        "shape": "list",
        "root": "FIELDS",
        "entry": "FIELD",
        "fields": _fields(
            ("field_name", "FIELDNAME", "text"),
            ("display", "DISPLAY", "bool"),
            ("position_from", "POSITIONFROM", "cell"),
            ("position_to", "POSITIONTO", "cell"),
        ),
    },
    {
        "slug": "frontendbos",
        "shape": "list",
        "root": "BOS",
        "entry": "BO",
        "fields": _fields(("bo_name", "BONAME", "text"), ("enabled", "ENABLE", "bool")),
    },
    {
        "slug": "backendbindings",
        "shape": "list",
        "root": "BES",
        "entry": "BE",
        "fields": _fields(
            ("be_name", "BENAME", "text"),
            ("api", "API", "text"),
            ("state", "STATE", "enum", ["Full", "Less"]),
            ("erp_backend", "ERPBACKEND", "text"),
        ),
    },
    {
        "slug": "connections",
        "shape": "list",
        "root": "CONNECTIONS",
        "entry": "CONNECTION",
        "fields": _fields(
            ("name", "NAME", "text"), ("host", "HOST", "text"), ("client", "CLIENT", "text")
        ),
    },
    {
        "slug": "businessroles",
        "shape": "list",
        "root": "BUSINESSROLES",
        "entry": "BUSINESSROLE",
        "fields": _fields(
            ("name", "NAME", "text"),
            ("description", "DESCRIPTION", "text"),
            ("nav_bar_profile", "NAVBAR", "text"),
            ("technical_profile", "TECPROFILE", "text"),
            ("layout_profile", "LAYPROFILE", "text"),
            ("pfcg_role", "PFCG", "text"),
        ),
    },
    {
        "slug": "bolaccess",
        "shape": "grants",
        "root": "BUSINESSROLES",
        "entry": "BUSINESSROLE",
        "fields": _fields(("role_name", "NAME", "text")),
    },
    {
        "slug": "dataobjects",
        "shape": "list",
        "root": "DOS",
        "entry": "DO",
        "fields": _fields(
            ("do_name", "NAME", "text"), ("database_name", "DATABASENAME", "text")
        ),
    },
    {
        "slug": "databases",
        "shape": "list",
        "root": "DATABASES",
        "entry": "DATABASE",
        "fields": _fields(
            ("name", "NAME", "text"),
            ("host", "HOST", "text"),
            ("use", "USE", "enum", ["Default", "Request"]),
        ),
    },
    {
        "slug": "keyvalues",
        "shape": "keyvalues",
        "root": "KEYVALUES",
        "entry": "KV",
        "fields": _fields(("key", "KEY", "text")),
    },
    {
        "slug": "workflows",
        "shape": "workflows",
        "root": "WORKFLOWS",
        "entry": "WORKFLOW",
        "fields": _fields(
            ("id", "ID", "text"), ("name", "NAME", "text"), ("role_binding", "ROLE", "text")
        ),
    },
]
