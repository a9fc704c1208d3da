"""Document validation: business invariants reported as violation data.

Codes are stable and machine-readable. Cross-reference checks (connection,
role and database names) only run when the caller supplies a
:class:`CrossRefs` context; a standalone file validation has no world to
resolve against and checks intra-document invariants only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import (
    Category,
    ConfigDocument,
    DbUse,
    FieldPlacement,
    PropertyBundle,
    grid_cells,
)

DUP_NAME = "DUP_NAME"
EMPTY_NAME = "EMPTY_NAME"
BAD_NAME_FORMAT = "BAD_NAME_FORMAT"
BAD_LANG = "BAD_LANG"
OVERLAP_FIELD = "OVERLAP_FIELD"
MULTI_ROW_FIELD = "MULTI_ROW_FIELD"
BAD_SPAN = "BAD_SPAN"
BAD_CLIENT = "BAD_CLIENT"
DANGLING_CONNECTION = "DANGLING_CONNECTION"
UNKNOWN_ROLE = "UNKNOWN_ROLE"
DANGLING_DATABASE = "DANGLING_DATABASE"
MULTI_DEFAULT_DB = "MULTI_DEFAULT_DB"
NO_DEFAULT_DB = "NO_DEFAULT_DB"
EMPTY_SET = "EMPTY_SET"
DUP_SET_ITEM = "DUP_SET_ITEM"
EMPTY_WF = "EMPTY_WF"
BAD_ORDER = "BAD_ORDER"
BAD_TASK = "BAD_TASK"

_LANG_RE = re.compile(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*")
_CLIENT_RE = re.compile(r"[0-9]{3}")


@dataclass(frozen=True)
class Violation:
    code: str
    entry: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code} [{self.entry}]: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __str__(self) -> str:
        return "; ".join(str(v) for v in self.violations) or "ok"


@dataclass(frozen=True)
class CrossRefs:
    """Resolved names the document under validation may reference.

    ``None`` for a set means "context unavailable, skip that check".
    """

    connection_names: frozenset[str] | None = None
    role_names: frozenset[str] | None = None
    database_names: frozenset[str] | None = None


class _Collector:
    def __init__(self):
        self.violations: list[Violation] = []

    def add(self, code: str, entry: str, detail: str) -> None:
        self.violations.append(Violation(code, entry, detail))

    def require_unique(self, code_entry_pairs) -> None:
        seen: set = set()
        for key, entry in code_entry_pairs:
            if key in seen:
                self.add(DUP_NAME, entry, f"duplicate name {key!r}")
            seen.add(key)

    def require_nonempty(self, value: str, entry: str, what: str) -> None:
        if not value:
            self.add(EMPTY_NAME, entry, f"empty {what}")


def _dotted_name_ok(name: str) -> bool:
    parts = name.split(".")
    return len(parts) >= 2 and all(p and not re.search(r"\s", p) for p in parts)


def _check_bundle(bundle: PropertyBundle, out: _Collector) -> None:
    if not _LANG_RE.fullmatch(bundle.language):
        out.add(BAD_LANG, bundle.language, f"illegal language tag {bundle.language!r}")
    for section, entries in (("label", bundle.labels), ("text", bundle.texts)):
        out.require_unique((e.name, f"{section}:{e.name}") for e in entries)
        for e in entries:
            out.require_nonempty(e.name, f"{section}:{e.name}", f"{section} name")
            if e.name and not _dotted_name_ok(e.name):
                out.add(
                    BAD_NAME_FORMAT,
                    f"{section}:{e.name}",
                    f"{section} name must use dotted Page.Item form",
                )


def _placement_shape_ok(p: FieldPlacement, out: _Collector) -> bool:
    ok = True
    if p.position_from.row != p.position_to.row:
        out.add(MULTI_ROW_FIELD, p.field_name, "field spans more than one row")
        ok = False
    from .model import column_index

    if column_index(p.position_from.column) > column_index(p.position_to.column):
        out.add(BAD_SPAN, p.field_name, "position_from is right of position_to")
        ok = False
    return ok


def _check_fields(entries, out: _Collector) -> None:
    out.require_unique((p.field_name, p.field_name) for p in entries)
    spans: list[tuple[str, frozenset]] = []
    for p in entries:
        out.require_nonempty(p.field_name, p.field_name, "field name")
        if _placement_shape_ok(p, out) and p.display:
            spans.append((p.field_name, grid_cells(p)))
    for i, (name_a, cells_a) in enumerate(spans):
        for name_b, cells_b in spans[i + 1 :]:
            shared = cells_a & cells_b
            if shared:
                cell = min(shared, key=lambda c: (c.row, c.column))
                out.add(
                    OVERLAP_FIELD,
                    name_b,
                    f"overlaps {name_a!r} at {cell.as_text()}",
                )


def _check_workflows(entries, context: CrossRefs, out: _Collector) -> None:
    out.require_unique((wf.id, wf.id) for wf in entries)
    for wf in entries:
        if not wf.tasks:
            out.add(EMPTY_WF, wf.id, "workflow has no tasks")
        prev = 0
        for task in wf.tasks:
            if task.step_no <= prev:
                out.add(
                    BAD_ORDER,
                    wf.id,
                    f"step {task.step_no} not greater than previous {prev}",
                )
            prev = task.step_no
            if not task.bo_name or not task.method:
                out.add(BAD_TASK, wf.id, f"step {task.step_no}: empty bo/method")
        if context.role_names is not None and wf.role_binding not in context.role_names:
            out.add(UNKNOWN_ROLE, wf.id, f"unknown role {wf.role_binding!r}")


def validate_document(doc: ConfigDocument, context: CrossRefs = CrossRefs()) -> ValidationReport:
    """Check every business invariant of ``doc``; violations are data, not errors."""
    out = _Collector()
    cat = doc.category

    if cat is Category.CSS_ELEMENTS:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "css name")
    elif cat is Category.IMAGES:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "image name")
    elif cat is Category.SCRIPTS:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "script name")
    elif cat is Category.PROPERTIES:
        _check_bundle(doc.body, out)
    elif cat is Category.BLOCKS:
        out.require_unique(
            ((b.component, b.view_name), f"{b.component}/{b.view_name}") for b in doc.body
        )
        for b in doc.body:
            out.require_nonempty(b.component, f"{b.component}/{b.view_name}", "component")
            out.require_nonempty(b.view_name, f"{b.component}/{b.view_name}", "view name")
    elif cat is Category.FIELDS:
        _check_fields(doc.body, out)
    elif cat is Category.FRONTEND_BOS:
        out.require_unique((e.bo_name, e.bo_name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.bo_name, e.bo_name, "bo name")
    elif cat is Category.BACKEND_BINDINGS:
        out.require_unique((e.be_name, e.be_name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.be_name, e.be_name, "be name")
            out.require_nonempty(e.erp_backend, e.be_name, "erp backend reference")
            if (
                context.connection_names is not None
                and e.erp_backend
                and e.erp_backend not in context.connection_names
            ):
                out.add(
                    DANGLING_CONNECTION,
                    e.be_name,
                    f"no connection named {e.erp_backend!r}",
                )
    elif cat is Category.CONNECTIONS:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "connection name")
            if not _CLIENT_RE.fullmatch(e.client):
                out.add(BAD_CLIENT, e.name, f"client must be 3 digits, got {e.client!r}")
    elif cat is Category.BUSINESS_ROLES:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "role name")
            for what, value in (
                ("nav bar profile", e.nav_bar_profile),
                ("technical profile", e.technical_profile),
                ("layout profile", e.layout_profile),
                ("pfcg role", e.pfcg_role),
            ):
                out.require_nonempty(value, e.name, what)
    elif cat is Category.BOL_ACCESS:
        out.require_unique((e.role_name, e.role_name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.role_name, e.role_name, "role name")
            out.require_unique(
                (g.bol_name, f"{e.role_name}/{g.bol_name}") for g in e.grants
            )
            for g in e.grants:
                out.require_nonempty(g.bol_name, e.role_name, "bol name")
            if context.role_names is not None and e.role_name not in context.role_names:
                out.add(UNKNOWN_ROLE, e.role_name, f"unknown role {e.role_name!r}")
    elif cat is Category.DATA_OBJECTS:
        out.require_unique((e.do_name, e.do_name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.do_name, e.do_name, "data object name")
            out.require_nonempty(e.database_name, e.do_name, "database reference")
            if (
                context.database_names is not None
                and e.database_name
                and e.database_name not in context.database_names
            ):
                out.add(
                    DANGLING_DATABASE,
                    e.do_name,
                    f"no database named {e.database_name!r}",
                )
    elif cat is Category.DATABASES:
        out.require_unique((e.name, e.name) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.name, e.name, "database name")
        defaults = [e.name for e in doc.body if e.use is DbUse.DEFAULT]
        if len(defaults) > 1:
            out.add(
                MULTI_DEFAULT_DB,
                defaults[1],
                f"{len(defaults)} databases marked Default",
            )
        elif not defaults:
            out.add(NO_DEFAULT_DB, "-", "no database marked Default")
    elif cat is Category.KEY_VALUES:
        out.require_unique((e.key, e.key) for e in doc.body)
        for e in doc.body:
            out.require_nonempty(e.key, e.key, "key")
            if e.is_set:
                if not e.value:
                    out.add(EMPTY_SET, e.key, "set value has no items")
                seen: set[str] = set()
                for item in e.value:
                    if item in seen:
                        out.add(DUP_SET_ITEM, e.key, f"duplicate item {item!r}")
                    seen.add(item)
    elif cat is Category.WORKFLOWS:
        _check_workflows(doc.body, context, out)

    return ValidationReport(tuple(out.violations))
