"""Effective-configuration resolution and view materialization.

Every operation resolves against the tenant's override when registered and
the vendor default otherwise, authorizes exactly once through the guard,
and reads storage through the versioned cache. Materialized page views are
cached under a composite key whose token is the vector of input category
version tokens, so a commit to any input recomputes the view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DanglingConnection,
    DanglingDatabase,
    NoDefaultDatabase,
    UnknownBackendObject,
    UnknownRole,
)
from .guard import Action, Principal
from .model import (
    Block,
    Category,
    ConfigDocument,
    Connection,
    ConnState,
    CssElement,
    Database,
    DbUse,
    FieldPlacement,
    ImageElement,
    ScriptElement,
    check_tenant_id,
)
from .registry import TenantStore

PLACEHOLDER_LOGO = "/assets/placeholder-logo.svg"


@dataclass(frozen=True)
class ResolvedPageView:
    """Effective render inputs for one page, language and role.

    Hidden blocks and fields are filtered out; label keys referenced by the
    visible fields but absent from the language bundle are listed under
    ``missing_labels`` rather than silently dropped.
    """

    tenant: str
    page: str
    language: str
    role: str
    css: tuple[CssElement, ...]
    images: tuple[ImageElement, ...]
    scripts: tuple[ScriptElement, ...]
    labels: tuple[tuple[str, str], ...]
    texts: tuple[tuple[str, str], ...]
    missing_labels: tuple[str, ...]
    blocks: tuple[Block, ...]
    fields: tuple[FieldPlacement, ...]


@dataclass(frozen=True)
class BackendCallPlan:
    """Joined backend binding + connection for one backend-object call."""

    be_name: str
    api: str
    state: ConnState
    connection: Connection

    @property
    def reuse_connection(self) -> bool:
        return self.state is ConnState.FULL


class RoleProfiles(NamedTuple):
    nav_bar: str
    technical: str
    layout: str
    pfcg: str


class Resolver:
    def __init__(self, store: TenantStore):
        self.store = store

    def _doc(self, tenant: str, category: Category, language: str | None = None) -> ConfigDocument:
        return self.store._load_effective(tenant, category, language)

    def _authorize(self, principal: Principal, tenant: str, category: Category | None = None) -> None:
        check_tenant_id(tenant)
        self.store.guard.require(principal, Action.READ, tenant, category)

    # -- per-category resolution ------------------------------------------------

    def resolve_category(
        self,
        principal: Principal,
        tenant: str,
        category: Category,
        language: str | None = None,
    ) -> ConfigDocument:
        """Tenant's document if an override is registered, else the default."""
        return self.store.read_resolved(principal, tenant, category, language)

    # -- materialized views ------------------------------------------------------

    def resolve_page_view(
        self, principal: Principal, tenant: str, page: str, language: str, role: str
    ) -> ResolvedPageView:
        self._authorize(principal, tenant)
        inputs = (
            Category.CSS_ELEMENTS,
            Category.IMAGES,
            Category.SCRIPTS,
            Category.PROPERTIES,
            Category.BLOCKS,
            Category.FIELDS,
            Category.BUSINESS_ROLES,
        )

        def build() -> ResolvedPageView:
            roles = self._doc(tenant, Category.BUSINESS_ROLES)
            if not any(r.name == role for r in roles.body):
                raise UnknownRole(f"unknown role {role!r}")
            bundle = self._doc(tenant, Category.PROPERTIES, language).body
            labels = tuple(
                (e.name, e.value) for e in bundle.labels if e.name.split(".")[0] == page
            )
            texts = tuple(
                (e.name, e.value) for e in bundle.texts if e.name.split(".")[0] == page
            )
            visible_fields = tuple(
                f for f in self._doc(tenant, Category.FIELDS).body if f.display
            )
            label_names = {name for name, _ in labels}
            missing = tuple(
                f"{page}.{f.field_name}"
                for f in visible_fields
                if f"{page}.{f.field_name}" not in label_names
            )
            return ResolvedPageView(
                tenant=tenant,
                page=page,
                language=bundle.language,
                role=role,
                css=self._doc(tenant, Category.CSS_ELEMENTS).body,
                images=self._doc(tenant, Category.IMAGES).body,
                scripts=self._doc(tenant, Category.SCRIPTS).body,
                labels=labels,
                texts=texts,
                missing_labels=missing,
                blocks=tuple(b for b in self._doc(tenant, Category.BLOCKS).body if b.display),
                fields=visible_fields,
            )

        self.store._maybe_reload()
        self.store._require_registered(tenant)
        lang = language or self.store.default_language()
        token = tuple(
            self.store.version_token(tenant, c) for c in inputs
        )
        key = (tenant, "pageview", page, lang, role)
        return self.store.cache.get_or_load(key, token, build)

    def check_bo_enabled(self, principal: Principal, tenant: str, bo_name: str) -> bool:
        """True unless an explicit toggle disables the BO (default-enabled)."""
        self._authorize(principal, tenant, Category.FRONTEND_BOS)
        return self._bo_enabled(tenant, bo_name)

    def _bo_enabled(self, tenant: str, bo_name: str) -> bool:
        for toggle in self._doc(tenant, Category.FRONTEND_BOS).body:
            if toggle.bo_name == bo_name:
                return toggle.enabled
        return True

    def resolve_backend_call(
        self, principal: Principal, tenant: str, be_name: str
    ) -> BackendCallPlan:
        self._authorize(principal, tenant, Category.BACKEND_BINDINGS)
        binding = next(
            (
                b
                for b in self._doc(tenant, Category.BACKEND_BINDINGS).body
                if b.be_name == be_name
            ),
            None,
        )
        if binding is None:
            raise UnknownBackendObject(f"unknown backend object {be_name!r}")
        connection = next(
            (
                c
                for c in self._doc(tenant, Category.CONNECTIONS).body
                if c.name == binding.erp_backend
            ),
            None,
        )
        if connection is None:
            raise DanglingConnection(
                f"binding {be_name!r} references unknown connection {binding.erp_backend!r}"
            )
        return BackendCallPlan(
            be_name=binding.be_name,
            api=binding.api,
            state=binding.state,
            connection=connection,
        )

    def resolve_role_profiles(
        self, principal: Principal, tenant: str, role: str
    ) -> RoleProfiles:
        self._authorize(principal, tenant, Category.BUSINESS_ROLES)
        for r in self._doc(tenant, Category.BUSINESS_ROLES).body:
            if r.name == role:
                return RoleProfiles(
                    r.nav_bar_profile, r.technical_profile, r.layout_profile, r.pfcg_role
                )
        raise UnknownRole(f"unknown role {role!r}")

    def check_bol_access(
        self, principal: Principal, tenant: str, role: str, bol_name: str
    ) -> bool:
        """Deny-by-default: only an explicit use=True grant allows a BOL."""
        self._authorize(principal, tenant, Category.BOL_ACCESS)
        return self._bol_allowed(tenant, role, bol_name)

    def _bol_allowed(self, tenant: str, role: str, bol_name: str) -> bool:
        roles = self._doc(tenant, Category.BUSINESS_ROLES).body
        if not any(r.name == role for r in roles):
            raise UnknownRole(f"unknown role {role!r}")
        for rule in self._doc(tenant, Category.BOL_ACCESS).body:
            if rule.role_name == role:
                for grant in rule.grants:
                    if grant.bol_name == bol_name:
                        return grant.use
                return False
        return False

    def resolve_database(self, principal: Principal, tenant: str, do_name: str) -> Database:
        """Mapped database for a data object, else the single Default database."""
        self._authorize(principal, tenant, Category.DATA_OBJECTS)
        databases = self._doc(tenant, Category.DATABASES).body
        by_name = {d.name: d for d in databases}
        for binding in self._doc(tenant, Category.DATA_OBJECTS).body:
            if binding.do_name == do_name:
                db = by_name.get(binding.database_name)
                if db is None:
                    raise DanglingDatabase(
                        f"{do_name!r} routed to undeclared database {binding.database_name!r}"
                    )
                return db
        defaults = [d for d in databases if d.use is DbUse.DEFAULT]
        if len(defaults) != 1:
            raise NoDefaultDatabase(
                f"expected exactly one Default database, found {len(defaults)}"
            )
        return defaults[0]

    def get_setting(
        self, principal: Principal, tenant: str, key: str
    ) -> str | frozenset[str] | None:
        """Scalar string, frozenset for set values, None when the key is absent."""
        self._authorize(principal, tenant, Category.KEY_VALUES)
        return self._setting(tenant, key)

    def _setting(self, tenant: str, key: str) -> str | frozenset[str] | None:
        for kv in self._doc(tenant, Category.KEY_VALUES).body:
            if kv.key == key:
                return frozenset(kv.value) if kv.is_set else kv.value
        return None

    def branding(self, principal: Principal, tenant: str) -> tuple[str, str]:
        """Display name and logo reference from branding.* key-values."""
        self._authorize(principal, tenant, Category.KEY_VALUES)
        name = self._setting(tenant, "branding.name")
        logo = self._setting(tenant, "branding.logo")
        return (
            name if isinstance(name, str) else "",
            logo if isinstance(logo, str) else PLACEHOLDER_LOGO,
        )
