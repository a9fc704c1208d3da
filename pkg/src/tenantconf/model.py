"""Typed domain model for the configuration categories.

One frozen dataclass per entry kind, one document type per category.
Constructors stay permissive about business rules (duplicate names, bad
client numbers, overlapping fields): those are reported as violation data
by :mod:`tenantconf.validation`, not raised here. The only construction
errors are structural ones a value simply cannot represent (malformed grid
coordinates, illegal tenant ids).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import BadTenantId, CoordinateError, UnknownCategory

_TENANT_ID_RE = re.compile(r"[A-Za-z0-9_-]{1,64}")
_CELL_RE = re.compile(r"([A-Z]{1,2})([1-9][0-9]*)")


@dataclass(frozen=True)
class TenantId:
    """Tenant identifier: letters, digits, ``-``, ``_``; 1..64 chars; case-sensitive."""

    value: str

    def __post_init__(self):
        if not _TENANT_ID_RE.fullmatch(self.value):
            raise BadTenantId(f"illegal tenant id: {self.value!r}")


def check_tenant_id(tenant: str) -> str:
    """Validate a raw tenant id string and return it unchanged."""
    TenantId(tenant)
    return tenant


class Category(Enum):
    """The closed set of configuration categories; values are the wire slugs."""

    CSS_ELEMENTS = "csselements"
    IMAGES = "images"
    SCRIPTS = "scripts"
    PROPERTIES = "properties"
    BLOCKS = "blocks"
    FIELDS = "fields"
    FRONTEND_BOS = "frontendbos"
    BACKEND_BINDINGS = "backendbindings"
    CONNECTIONS = "connections"
    BUSINESS_ROLES = "businessroles"
    BOL_ACCESS = "bolaccess"
    DATA_OBJECTS = "dataobjects"
    DATABASES = "databases"
    KEY_VALUES = "keyvalues"
    WORKFLOWS = "workflows"

    @property
    def slug(self) -> str:
        return self.value

    @classmethod
    def from_slug(cls, slug: str) -> "Category":
        try:
            return cls(slug)
        except ValueError:
            raise UnknownCategory(f"unknown category: {slug!r}") from None


ALL_CATEGORIES: tuple[Category, ...] = tuple(Category)


class LoadOption(Enum):
    DIRECT = "Direct"
    LAZY = "Lazy"


class ConnState(Enum):
    FULL = "Full"
    LESS = "Less"


class DbUse(Enum):
    DEFAULT = "Default"
    REQUEST = "Request"


# --- grid coordinates -------------------------------------------------------


def column_index(column: str) -> int:
    """Spreadsheet column letters to 1-based index (A=1 .. Z=26, AA=27 .. ZZ=702)."""
    if not re.fullmatch(r"[A-Z]{1,2}", column):
        raise CoordinateError(f"illegal column: {column!r}")
    idx = 0
    for ch in column:
        idx = idx * 26 + (ord(ch) - ord("A") + 1)
    return idx


def index_to_column(idx: int) -> str:
    """Inverse of :func:`column_index` for 1 <= idx <= 702."""
    if not 1 <= idx <= 702:
        raise CoordinateError(f"column index out of range: {idx}")
    if idx <= 26:
        return chr(ord("A") + idx - 1)
    first, second = divmod(idx - 27, 26)
    return chr(ord("A") + first) + chr(ord("A") + second)


@dataclass(frozen=True)
class GridCell:
    """One page grid cell, e.g. column ``A``, row ``3``."""

    column: str
    row: int

    def __post_init__(self):
        column_index(self.column)
        if not isinstance(self.row, int) or self.row < 1:
            raise CoordinateError(f"illegal row: {self.row!r}")

    @classmethod
    def from_text(cls, text: str) -> "GridCell":
        m = _CELL_RE.fullmatch(text)
        if not m:
            raise CoordinateError(f"malformed cell: {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def as_text(self) -> str:
        return f"{self.column}{self.row}"


# --- per-category entry types ------------------------------------------------


@dataclass(frozen=True)
class CssElement:
    name: str
    location: str


@dataclass(frozen=True)
class ImageElement:
    name: str
    src: str


@dataclass(frozen=True)
class ScriptElement:
    name: str
    src: str


@dataclass(frozen=True)
class TextEntry:
    """One label or text: dotted ``Page.Item`` name plus its display value."""

    name: str
    value: str


@dataclass(frozen=True)
class PropertyBundle:
    """All language-dependent labels and texts for one language tag."""

    language: str
    labels: tuple[TextEntry, ...] = ()
    texts: tuple[TextEntry, ...] = ()

    def label_map(self) -> dict[str, str]:
        return {e.name: e.value for e in self.labels}

    def text_map(self) -> dict[str, str]:
        return {e.name: e.value for e in self.texts}


@dataclass(frozen=True)
class Block:
    component: str
    view_name: str
    title: str
    display: bool
    load_option: LoadOption


@dataclass(frozen=True)
class FieldPlacement:
    field_name: str
    display: bool
    position_from: GridCell
    position_to: GridCell


@dataclass(frozen=True)
class BoToggle:
    bo_name: str
    enabled: bool


@dataclass(frozen=True)
class BackendBinding:
    be_name: str
    api: str
    state: ConnState
    erp_backend: str


@dataclass(frozen=True)
class Connection:
    name: str
    host: str
    client: str


@dataclass(frozen=True)
class BusinessRole:
    name: str
    description: str
    nav_bar_profile: str
    technical_profile: str
    layout_profile: str
    pfcg_role: str


@dataclass(frozen=True)
class BolGrant:
    bol_name: str
    use: bool


@dataclass(frozen=True)
class BolAccessRule:
    role_name: str
    grants: tuple[BolGrant, ...] = ()


@dataclass(frozen=True)
class DataObjectBinding:
    do_name: str
    database_name: str


@dataclass(frozen=True)
class Database:
    name: str
    host: str
    use: DbUse


@dataclass(frozen=True)
class KeyValueSetting:
    """``key=value`` setting; value is a scalar string or a tuple of set items.

    Set items keep document order so duplicates stay visible to validation;
    set comparisons happen in the resolver, which hands out frozensets.
    """

    key: str
    value: str | tuple[str, ...]

    @property
    def is_set(self) -> bool:
        return isinstance(self.value, tuple)


@dataclass(frozen=True)
class WorkflowTask:
    step_no: int
    activity_type: str
    bo_name: str
    method: str
    rule: str | None = None


@dataclass(frozen=True)
class WorkflowDef:
    id: str
    name: str
    role_binding: str
    tasks: tuple[WorkflowTask, ...] = ()


# Body shape per category: a tuple of the entry type, except Properties which
# holds a single PropertyBundle per document (one document per language).
ENTRY_TYPES: dict[Category, type] = {
    Category.CSS_ELEMENTS: CssElement,
    Category.IMAGES: ImageElement,
    Category.SCRIPTS: ScriptElement,
    Category.PROPERTIES: PropertyBundle,
    Category.BLOCKS: Block,
    Category.FIELDS: FieldPlacement,
    Category.FRONTEND_BOS: BoToggle,
    Category.BACKEND_BINDINGS: BackendBinding,
    Category.CONNECTIONS: Connection,
    Category.BUSINESS_ROLES: BusinessRole,
    Category.BOL_ACCESS: BolAccessRule,
    Category.DATA_OBJECTS: DataObjectBinding,
    Category.DATABASES: Database,
    Category.KEY_VALUES: KeyValueSetting,
    Category.WORKFLOWS: WorkflowDef,
}


@dataclass(frozen=True)
class ConfigDocument:
    """One category's configuration: the unit of storage, copy and caching.

    ``version`` is storage bookkeeping (0 for vendor defaults, +1 per commit);
    it is not part of the wire form and excluded from value equality.
    """

    category: Category
    body: tuple | PropertyBundle
    version: int = field(default=0, compare=False)

    def __post_init__(self):
        expected = ENTRY_TYPES[self.category]
        if self.category is Category.PROPERTIES:
            if not isinstance(self.body, PropertyBundle):
                raise TypeError("properties document body must be a PropertyBundle")
        else:
            if not isinstance(self.body, tuple):
                raise TypeError(f"{self.category.slug} document body must be a tuple")
            for entry in self.body:
                if not isinstance(entry, expected):
                    raise TypeError(
                        f"{self.category.slug} entries must be {expected.__name__},"
                        f" got {type(entry).__name__}"
                    )

    def entries(self) -> tuple:
        """Body as a tuple of entries (a single-item tuple for Properties)."""
        if self.category is Category.PROPERTIES:
            return (self.body,)
        return self.body

    def with_version(self, version: int) -> "ConfigDocument":
        return ConfigDocument(self.category, self.body, version)


def document(category: Category, entries=(), version: int = 0) -> ConfigDocument:
    """Convenience constructor; wraps list bodies into tuples."""
    if category is Category.PROPERTIES:
        return ConfigDocument(category, entries, version)
    return ConfigDocument(category, tuple(entries), version)


# --- grid span enumeration ----------------------------------------------------


def grid_cells(placement: FieldPlacement) -> frozenset[GridCell]:
    """Every cell covered by a placement's single-row span.

    Assumes the placement satisfies the single-row and column-order
    invariants; a reversed span yields the empty set.
    """
    row = placement.position_from.row
    lo = column_index(placement.position_from.column)
    hi = column_index(placement.position_to.column)
    return frozenset(GridCell(index_to_column(i), row) for i in range(lo, hi + 1))
