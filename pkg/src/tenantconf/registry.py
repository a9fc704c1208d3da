"""Central multi-tenant registry and copy-on-write tenant store.

``central.xml`` is the single source of truth: it maps every category to
its vendor default location and each tenant's override location/version,
records registered tenants, and tracks per-tenant database assignments.
Tenant files live under ``tenants/<id>/``, defaults under ``defaults/``;
a file on disk that the registry does not reference is invisible.

All file replacement goes through write-temp + rename so readers never see
a torn document. Writes serialize per (tenant, category); central.xml
mutations serialize globally. The store re-reads central.xml when its stat
changes, so CLI edits are picked up by a running service.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import codec
from ._xmlio import Node, XmlStructureError, XmlWriter, load_tree
from .cache import DocumentCache
from .errors import (
    DanglingLocation,
    DatabaseAlreadyAssigned,
    MissingDefault,
    RegistryCorrupt,
    StorageError,
    TenantExists,
    UnknownLanguage,
    UnknownTenant,
    VersionConflict,
    ValidationFailed,
)
from .guard import Action, AuditLog, IsolationGuard, Principal
from .model import Category, ConfigDocument, check_tenant_id
from .validation import CrossRefs, validate_document

CENTRAL_FILE = "central.xml"

# Syscall seams kept as module attributes so crash-injection tests can
# intercept the temp-write and the rename independently.
_replace = os.replace


def _write_temp(path: Path, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    _write_temp(tmp, data)
    _replace(tmp, path)


@dataclass(frozen=True)
class DbDescriptor:
    name: str
    host: str


@dataclass(frozen=True)
class Override:
    location: str
    version: int


@dataclass(frozen=True)
class RegistrySection:
    """One category's locations: the vendor default plus per-tenant overrides."""

    category: Category
    default_location: str
    overrides: dict[str, Override] = field(default_factory=dict)
    languages: tuple[str, ...] = ()

    @property
    def tenant_locations(self) -> dict[str, str]:
        return {t: o.location for t, o in self.overrides.items()}


@dataclass(frozen=True)
class CentralRegistry:
    tenants: tuple[str, ...]
    tenant_databases: dict[str, DbDescriptor]
    sections: dict[Category, RegistrySection]

    def section(self, category: Category) -> RegistrySection:
        return self.sections[category]


def lang_path(stem: str, language: str) -> str:
    """Insert the language tag before the .xml suffix of a properties stem."""
    if not stem.endswith(".xml"):
        raise RegistryCorrupt(f"properties location must end in .xml: {stem!r}")
    return f"{stem[:-4]}.{language}.xml"


# --- central.xml codec ----------------------------------------------------------


def _parse_central(data: bytes) -> CentralRegistry:
    try:
        root = load_tree(data)
    except XmlStructureError as exc:
        raise RegistryCorrupt(f"central.xml: {exc}") from None
    if root.tag != "CENTRAL":
        raise RegistryCorrupt(f"central.xml: expected <CENTRAL>, got <{root.tag}>")

    tenants: list[str] = []
    databases: dict[str, DbDescriptor] = {}
    sections: dict[Category, RegistrySection] = {}

    def leaf_text(node: Node, tag: str) -> str:
        for child in node.children:
            if child.tag == tag and not child.children:
                return child.text.strip()
        raise RegistryCorrupt(f"central.xml: <{node.tag}> missing <{tag}>")

    for part in root.children:
        if part.tag == "TENANTS":
            for node in part.children:
                if node.tag != "TENANT" or node.children:
                    raise RegistryCorrupt("central.xml: TENANTS holds <TENANT> ids")
                tid = node.text.strip()
                check_tenant_id(tid)
                if tid in tenants:
                    raise RegistryCorrupt(f"central.xml: duplicate tenant {tid!r}")
                tenants.append(tid)
        elif part.tag == "TENANTDATABASES":
            for node in part.children:
                if node.tag != "ASSIGNMENT":
                    raise RegistryCorrupt(f"central.xml: unexpected <{node.tag}>")
                tid = leaf_text(node, "TENANT")
                desc = DbDescriptor(leaf_text(node, "NAME"), leaf_text(node, "HOST"))
                if tid in databases:
                    raise RegistryCorrupt(f"central.xml: duplicate db assignment {tid!r}")
                databases[tid] = desc
        elif part.tag == "SECTIONS":
            for node in part.children:
                if node.tag != "SECTION":
                    raise RegistryCorrupt(f"central.xml: unexpected <{node.tag}>")
                category = Category.from_slug(leaf_text(node, "CATEGORY"))
                if category in sections:
                    raise RegistryCorrupt(f"central.xml: duplicate section {category.slug}")
                default_location = leaf_text(node, "DEFAULT")
                langs: list[str] = []
                overrides: dict[str, Override] = {}
                for sub in node.children:
                    if sub.tag in ("CATEGORY", "DEFAULT"):
                        continue
                    if sub.tag == "LANGS":
                        for lang_node in sub.children:
                            if lang_node.tag != "LANG":
                                raise RegistryCorrupt("central.xml: LANGS holds <LANG>")
                            langs.append(lang_node.text.strip())
                    elif sub.tag == "OVERRIDES":
                        for o in sub.children:
                            if o.tag != "OVERRIDE":
                                raise RegistryCorrupt("central.xml: OVERRIDES holds <OVERRIDE>")
                            tid = leaf_text(o, "TENANT")
                            version_text = leaf_text(o, "VERSION")
                            if not version_text.isdigit():
                                raise RegistryCorrupt(
                                    f"central.xml: bad version {version_text!r}"
                                )
                            overrides[tid] = Override(
                                leaf_text(o, "LOCATION"), int(version_text)
                            )
                    else:
                        raise RegistryCorrupt(f"central.xml: unexpected <{sub.tag}>")
                sections[category] = RegistrySection(
                    category, default_location, overrides, tuple(langs)
                )
        else:
            raise RegistryCorrupt(f"central.xml: unexpected <{part.tag}>")

    return CentralRegistry(tuple(tenants), databases, sections)


def _serialize_central(reg: CentralRegistry) -> bytes:
    w = XmlWriter()
    w.open("CENTRAL")
    w.open("TENANTS")
    for tid in reg.tenants:
        w.leaf("TENANT", tid)
    w.close("TENANTS")
    w.open("TENANTDATABASES")
    for tid, desc in reg.tenant_databases.items():
        w.open("ASSIGNMENT")
        w.leaf("TENANT", tid)
        w.leaf("NAME", desc.name)
        w.leaf("HOST", desc.host)
        w.close("ASSIGNMENT")
    w.close("TENANTDATABASES")
    w.open("SECTIONS")
    for category in Category:
        section = reg.sections[category]
        w.open("SECTION")
        w.leaf("CATEGORY", category.slug)
        w.leaf("DEFAULT", section.default_location)
        if section.languages:
            w.open("LANGS")
            for lang in section.languages:
                w.leaf("LANG", lang)
            w.close("LANGS")
        w.open("OVERRIDES")
        for tid, override in section.overrides.items():
            w.open("OVERRIDE")
            w.leaf("TENANT", tid)
            w.leaf("LOCATION", override.location)
            w.leaf("VERSION", str(override.version))
            w.close("OVERRIDE")
        w.close("OVERRIDES")
        w.close("SECTION")
    w.close("SECTIONS")
    w.close("CENTRAL")
    return w.bytes()


def write_initial_central(root: Path, languages: tuple[str, ...]) -> None:
    """Fresh central.xml: every section points at its vendor default, no tenants."""
    sections = {}
    for category in Category:
        if category is Category.PROPERTIES:
            sections[category] = RegistrySection(
                category, "defaults/properties.xml", {}, tuple(languages)
            )
        else:
            sections[category] = RegistrySection(
                category, f"defaults/{category.slug}.xml", {}
            )
    reg = CentralRegistry((), {}, sections)
    _atomic_write(Path(root) / CENTRAL_FILE, _serialize_central(reg))


# --- the store -------------------------------------------------------------------


class TenantStore:
    """Guarded storage surface over a data root.

    Every public operation takes the caller's :class:`Principal` and runs it
    through the isolation guard (one audit record per operation).
    ``_load_effective`` is the deliberate exception: resolver code that has
    already passed an authorize gate uses it for its additional category
    reads.
    """

    def __init__(
        self,
        root: Path,
        guard: IsolationGuard | None = None,
        cache: DocumentCache | None = None,
    ):
        self.root = Path(root)
        self.guard = guard or IsolationGuard(AuditLog(self.root / "audit.log"))
        self.cache = cache or DocumentCache()
        self._central_path = self.root / CENTRAL_FILE
        self._reg_lock = threading.Lock()
        self._write_locks: dict[tuple[str, str], threading.Lock] = {}
        self._write_locks_guard = threading.Lock()
        self._stamp: tuple[int, int] | None = None
        self._registry: CentralRegistry | None = None
        self._load_central(validate=True)

    # -- central.xml state ---------------------------------------------------

    def _stat_stamp(self) -> tuple[int, int]:
        try:
            st = self._central_path.stat()
        except FileNotFoundError:
            raise RegistryCorrupt(f"missing {CENTRAL_FILE} under {self.root}") from None
        return (st.st_mtime_ns, st.st_size)

    def _load_central(self, validate: bool = False) -> None:
        stamp = self._stat_stamp()
        reg = _parse_central(self._central_path.read_bytes())
        self._validate_registry(reg, deep=validate)
        self._registry = reg
        self._stamp = stamp

    def _maybe_reload(self) -> None:
        with self._reg_lock:
            if self._stamp != self._stat_stamp():
                self._load_central()

    def _validate_registry(self, reg: CentralRegistry, deep: bool) -> None:
        for category in Category:
            if category not in reg.sections:
                raise MissingDefault(f"no section for category {category.slug}")
            section = reg.sections[category]
            if not section.default_location:
                raise MissingDefault(f"section {category.slug} lacks a default")
            if category is Category.PROPERTIES:
                if not section.languages:
                    raise RegistryCorrupt("properties section declares no languages")
            elif section.languages:
                raise RegistryCorrupt(f"section {category.slug} must not declare languages")
            for tid, override in section.overrides.items():
                check_tenant_id(tid)
                if tid not in reg.tenants:
                    raise RegistryCorrupt(
                        f"override for unregistered tenant {tid!r} in {category.slug}"
                    )
                prefix = f"tenants/{tid}/"
                if not override.location.startswith(prefix):
                    raise RegistryCorrupt(
                        f"override location {override.location!r} escapes {prefix!r}"
                    )
                for path in self._locations(section, override.location):
                    if not (self.root / path).is_file():
                        raise DanglingLocation(f"missing file {path}")
            for path in self._locations(section, section.default_location):
                full = self.root / path
                if not full.is_file():
                    raise DanglingLocation(f"missing default file {path}")
                if deep:
                    try:
                        codec.parse(category, full.read_bytes())
                    except codec.ParseError as exc:
                        raise RegistryCorrupt(f"default {path} unparsable: {exc}") from None
        seen_dbs: dict[str, str] = {}
        for tid, desc in reg.tenant_databases.items():
            if tid not in reg.tenants:
                raise RegistryCorrupt(f"db assignment for unregistered tenant {tid!r}")
            if desc.name in seen_dbs:
                raise RegistryCorrupt(
                    f"database {desc.name!r} assigned to both {seen_dbs[desc.name]!r} and {tid!r}"
                )
            seen_dbs[desc.name] = tid

    def _locations(self, section: RegistrySection, stem: str) -> list[str]:
        if section.category is Category.PROPERTIES:
            return [lang_path(stem, lang) for lang in section.languages]
        return [stem]

    def _persist_central(self, reg: CentralRegistry) -> None:
        # Caller holds _reg_lock.
        _atomic_write(self._central_path, _serialize_central(reg))
        self._registry = reg
        self._stamp = self._stat_stamp()

    def _write_lock(self, tenant: str, category: Category) -> threading.Lock:
        key = (tenant, category.slug)
        with self._write_locks_guard:
            return self._write_locks.setdefault(key, threading.Lock())

    # -- snapshot helpers ------------------------------------------------------

    @property
    def registry(self) -> CentralRegistry:
        assert self._registry is not None
        return self._registry

    def registered_tenants(self) -> tuple[str, ...]:
        self._maybe_reload()
        return self.registry.tenants

    def languages(self) -> tuple[str, ...]:
        return self.registry.sections[Category.PROPERTIES].languages

    def default_language(self) -> str:
        return self.languages()[0]

    def _require_registered(self, tenant: str) -> None:
        if tenant not in self.registry.tenants:
            raise UnknownTenant(f"tenant {tenant!r} not registered")

    def _resolve_location(
        self, tenant: str, category: Category, language: str | None
    ) -> tuple[str, int, str | None]:
        """Effective (path, version, language) for a read; override else default."""
        section = self.registry.section(category)
        if category is Category.PROPERTIES:
            lang = language or self.default_language()
            if lang not in section.languages:
                raise UnknownLanguage(f"no property bundle for {lang!r}")
        else:
            if language is not None:
                raise StorageError(f"{category.slug} documents carry no language")
            lang = None
        override = section.overrides.get(tenant)
        stem, version = (
            (override.location, override.version) if override else (section.default_location, 0)
        )
        path = lang_path(stem, lang) if lang else stem
        return path, version, lang

    def version_token(
        self, tenant: str, category: Category, language: str | None = None
    ) -> tuple:
        """Cache token for the tenant's effective document of a category."""
        section = self.registry.section(category)
        override = section.overrides.get(tenant)
        if override is None:
            return ("default", 0)
        return ("override", override.version)

    def _load_effective(
        self, tenant: str, category: Category, language: str | None = None
    ) -> ConfigDocument:
        """Unguarded cached read of the effective document (see class docstring)."""
        self._maybe_reload()
        self._require_registered(tenant)
        path, version, lang = self._resolve_location(tenant, category, language)
        token = self.version_token(tenant, category, lang)
        key = (tenant, category.slug, lang) if lang else (tenant, category.slug)

        def loader() -> ConfigDocument:
            full = self.root / path
            try:
                data = full.read_bytes()
            except FileNotFoundError:
                raise DanglingLocation(f"missing file {path}") from None
            doc = codec.parse(category, data, language=lang or "en")
            return doc.with_version(version)

        return self.cache.get_or_load(key, token, loader)

    def load_default(
        self, category: Category, language: str | None = None
    ) -> ConfigDocument:
        """The vendor default document, ignoring any tenant override."""
        self._maybe_reload()
        section = self.registry.section(category)
        if category is Category.PROPERTIES:
            lang = language or self.default_language()
            if lang not in section.languages:
                raise UnknownLanguage(f"no property bundle for {lang!r}")
            path = lang_path(section.default_location, lang)
        else:
            path = section.default_location
            lang = None
        try:
            data = (self.root / path).read_bytes()
        except FileNotFoundError:
            raise DanglingLocation(f"missing default file {path}") from None
        return codec.parse(category, data, language=lang or "en")

    # -- guarded operations ----------------------------------------------------

    def load_registry(self, principal: Principal) -> CentralRegistry:
        """Provider-only view of the central registry."""
        self.guard.require(principal, Action.REGISTRY_READ, "-")
        self._maybe_reload()
        return self.registry

    def read_resolved(
        self,
        principal: Principal,
        tenant: str,
        category: Category,
        language: str | None = None,
    ) -> ConfigDocument:
        """Effective configuration for one category: override else default."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.READ, tenant, category)
        return self._load_effective(tenant, category, language)

    def register_tenant(self, principal: Principal, tenant: str) -> None:
        """Add a tenant to central.xml (provider lifecycle operation)."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.DB_ASSIGN, tenant)
        with self._reg_lock:
            if self._stamp != self._stat_stamp():
                self._load_central()
            reg = self.registry
            if tenant in reg.tenants:
                raise TenantExists(f"tenant {tenant!r} already registered")
            self._persist_central(
                CentralRegistry(reg.tenants + (tenant,), reg.tenant_databases, reg.sections)
            )

    def assign_tenant_database(
        self, principal: Principal, tenant: str, name: str, host: str
    ) -> None:
        """Bind a tenant to its private database descriptor (provider-only)."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.DB_ASSIGN, tenant)
        if not name or not host:
            raise StorageError("database descriptor needs name and host")
        with self._reg_lock:
            if self._stamp != self._stat_stamp():
                self._load_central()
            reg = self.registry
            if tenant not in reg.tenants:
                raise UnknownTenant(f"tenant {tenant!r} not registered")
            for tid, desc in reg.tenant_databases.items():
                if desc.name == name and tid != tenant:
                    raise DatabaseAlreadyAssigned(
                        f"database {name!r} already assigned to {tid!r}"
                    )
            databases = dict(reg.tenant_databases)
            databases[tenant] = DbDescriptor(name, host)
            self._persist_central(CentralRegistry(reg.tenants, databases, reg.sections))

    def tenant_database(self, principal: Principal, tenant: str) -> DbDescriptor | None:
        check_tenant_id(tenant)
        self.guard.require(principal, Action.READ, tenant)
        self._maybe_reload()
        self._require_registered(tenant)
        return self.registry.tenant_databases.get(tenant)

    def begin_configure(
        self,
        principal: Principal,
        tenant: str,
        category: Category,
        language: str | None = None,
    ) -> ConfigDocument:
        """First-configure copy-on-write: copy the vendor default into the
        tenant's directory and register it; later calls return the tenant's
        current document. The default file is never touched."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.BEGIN_CONFIGURE, tenant, category)
        with self._write_lock(tenant, category):
            self._maybe_reload()
            self._require_registered(tenant)
            section = self.registry.section(category)
            if tenant in section.overrides:
                return self._load_effective(tenant, category, language)

            tenant_dir = self.root / "tenants" / tenant
            tenant_dir.mkdir(parents=True, exist_ok=True)
            if category is Category.PROPERTIES:
                stem = f"tenants/{tenant}/properties.xml"
            else:
                stem = f"tenants/{tenant}/{category.slug}.xml"
            for default_path, tenant_path in zip(
                self._locations(section, section.default_location),
                self._locations(section, stem),
            ):
                data = (self.root / default_path).read_bytes()
                _atomic_write(self.root / tenant_path, data)

            with self._reg_lock:
                if self._stamp != self._stat_stamp():
                    self._load_central()
                reg = self.registry
                sections = dict(reg.sections)
                current = sections[category]
                overrides = dict(current.overrides)
                overrides[tenant] = Override(stem, 0)
                sections[category] = RegistrySection(
                    category, current.default_location, overrides, current.languages
                )
                self._persist_central(
                    CentralRegistry(reg.tenants, reg.tenant_databases, sections)
                )
            return self._load_effective(tenant, category, language)

    def _cross_refs(self, tenant: str, category: Category) -> CrossRefs:
        """Referential context for committing ``category``: the tenant's other
        resolved documents, loaded without extra authorize calls."""
        if category is Category.BACKEND_BINDINGS:
            doc = self._load_effective(tenant, Category.CONNECTIONS)
            return CrossRefs(connection_names=frozenset(c.name for c in doc.body))
        if category in (Category.BOL_ACCESS, Category.WORKFLOWS):
            doc = self._load_effective(tenant, Category.BUSINESS_ROLES)
            return CrossRefs(role_names=frozenset(r.name for r in doc.body))
        if category is Category.DATA_OBJECTS:
            doc = self._load_effective(tenant, Category.DATABASES)
            return CrossRefs(database_names=frozenset(d.name for d in doc.body))
        return CrossRefs()

    def commit(
        self,
        principal: Principal,
        tenant: str,
        category: Category,
        doc: ConfigDocument,
    ) -> int:
        """Validate and atomically persist a tenant document; returns the new
        version. Optimistic concurrency: doc.version must equal the stored
        version."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.WRITE, tenant, category)
        if doc.category is not category:
            raise StorageError(
                f"document category {doc.category.slug} does not match {category.slug}"
            )
        with self._write_lock(tenant, category):
            self._maybe_reload()
            self._require_registered(tenant)
            section = self.registry.section(category)
            override = section.overrides.get(tenant)
            if override is None:
                raise StorageError("no tenant copy; call begin_configure first")
            if doc.version != override.version:
                raise VersionConflict(override.version, doc.version)

            report = validate_document(doc, self._cross_refs(tenant, category))
            if not report.ok:
                raise ValidationFailed(report)

            lang: str | None = None
            if category is Category.PROPERTIES:
                lang = doc.body.language
                if lang not in section.languages:
                    raise UnknownLanguage(f"no property bundle for {lang!r}")
                path = lang_path(override.location, lang)
            else:
                path = override.location
            _atomic_write(self.root / path, codec.serialize(doc))

            new_version = override.version + 1
            with self._reg_lock:
                if self._stamp != self._stat_stamp():
                    self._load_central()
                reg = self.registry
                sections = dict(reg.sections)
                current = sections[category]
                overrides = dict(current.overrides)
                overrides[tenant] = Override(override.location, new_version)
                sections[category] = RegistrySection(
                    category, current.default_location, overrides, current.languages
                )
                self._persist_central(
                    CentralRegistry(reg.tenants, reg.tenant_databases, sections)
                )
            self.cache.invalidate(tenant, category.slug)
            return new_version

    def reset_override(
        self, principal: Principal, tenant: str, category: Category
    ) -> None:
        """Drop the tenant's override so the category resolves to the default."""
        check_tenant_id(tenant)
        self.guard.require(principal, Action.WRITE, tenant, category)
        with self._write_lock(tenant, category):
            self._maybe_reload()
            self._require_registered(tenant)
            section = self.registry.section(category)
            override = section.overrides.get(tenant)
            if override is None:
                return
            with self._reg_lock:
                if self._stamp != self._stat_stamp():
                    self._load_central()
                reg = self.registry
                sections = dict(reg.sections)
                current = sections[category]
                overrides = dict(current.overrides)
                overrides.pop(tenant, None)
                sections[category] = RegistrySection(
                    category, current.default_location, overrides, current.languages
                )
                self._persist_central(
                    CentralRegistry(reg.tenants, reg.tenant_databases, sections)
                )
            for path in self._locations(section, override.location):
                try:
                    (self.root / path).unlink()
                except FileNotFoundError:
                    pass
            self.cache.invalidate(tenant, category.slug)
