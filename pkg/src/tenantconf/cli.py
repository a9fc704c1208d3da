"""Operator CLI: validate files, initialize tenants, diff against defaults,
resolve views offline, and launch the service.

Exit codes: 0 success, 1 domain failure (violations, duplicate tenant,
unknown lookup), 2 environment failure (I/O, malformed XML, registry
errors). ``resolve`` output is byte-identical to the corresponding service
endpoint body.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import codec, seed, wire
from .errors import (
    RegistryCorrupt,
    DanglingLocation,
    MissingDefault,
    StorageError,
    TenantConfError,
    TenantExists,
    UnknownCategory,
    UnknownLanguage,
    UnknownTenant,
)
from .guard import Principal, write_tokens
from .model import Category
from .registry import TenantStore
from .resolver import Resolver
from .validation import validate_document

_ENV_FAILURES = (RegistryCorrupt, DanglingLocation, MissingDefault, StorageError)

_data_root_option = click.option(
    "--data-root",
    envvar="TENANTCONF_DATA_ROOT",
    required=True,
    type=click.Path(path_type=Path),
    help="Data root holding central.xml, defaults/ and tenants/.",
)


def _fail(code: int, message: str) -> "click.exceptions.Exit":
    click.echo(message, err=True)
    sys.exit(code)


def _open_store(root: Path) -> TenantStore:
    try:
        return TenantStore(root)
    except TenantConfError as exc:
        _fail(2, f"registry error: {exc}")


@click.group()
def main() -> None:
    """Multi-tenant configuration tooling."""


@main.command("init-root")
@_data_root_option
@click.option("--language", "languages", multiple=True, default=("en",), show_default=True)
@click.option("--provider-token", default=None, help="Also write tokens.xml with this provider token.")
@click.option(
    "--tenant-token",
    "tenant_tokens",
    multiple=True,
    metavar="TENANT=TOKEN",
    help="Add a tenant bearer token to tokens.xml (repeatable).",
)
def cmd_init_root(data_root: Path, languages, provider_token, tenant_tokens) -> None:
    """Create a fresh data root with vendor defaults and an empty registry."""
    if (data_root / "central.xml").exists():
        _fail(1, f"{data_root} already holds a central.xml")
    seed.install_data_root(data_root, tuple(languages))
    principals = []
    if provider_token:
        principals.append(Principal.provider(provider_token))
    for spec in tenant_tokens:
        tenant, _, token = spec.partition("=")
        if not tenant or not token:
            _fail(2, f"bad --tenant-token {spec!r}, expected TENANT=TOKEN")
        principals.append(Principal.for_tenant(tenant, token))
    if principals:
        write_tokens(data_root / "tokens.xml", principals)
    click.echo(f"initialized {data_root}")


@main.command("validate")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--category", "category_slug", required=True, help="Category slug, e.g. fields.")
@click.option("--lang", default="en", show_default=True, help="Language tag for properties files.")
def cmd_validate(path: Path, category_slug: str, lang: str) -> None:
    """Parse and validate one configuration file."""
    try:
        category = Category.from_slug(category_slug)
    except UnknownCategory as exc:
        _fail(2, str(exc))
    try:
        data = path.read_bytes()
    except OSError as exc:
        _fail(2, f"cannot read {path}: {exc}")
    try:
        doc = codec.parse(category, data, language=lang)
    except codec.ParseError as exc:
        _fail(2, f"parse error: {exc}")
    report = validate_document(doc)
    if not report.ok:
        for violation in report.violations:
            click.echo(str(violation))
        sys.exit(1)
    click.echo("ok")


def _entry_key(category: Category, entry) -> str:
    if category is Category.BLOCKS:
        return f"{entry.component}/{entry.view_name}"
    for attr in ("name", "field_name", "bo_name", "be_name", "role_name", "do_name", "key", "id"):
        if hasattr(entry, attr):
            return getattr(entry, attr)
    raise AssertionError(category)  # pragma: no cover


_ENTRY_TAGS = {
    Category.CSS_ELEMENTS: "CSSELEMENT",
    Category.IMAGES: "IMAGEELEMENT",
    Category.SCRIPTS: "SCRIPTELEMENT",
    Category.BLOCKS: "BLOCK",
    Category.FIELDS: "FIELD",
    Category.FRONTEND_BOS: "BO",
    Category.BACKEND_BINDINGS: "BE",
    Category.CONNECTIONS: "CONNECTION",
    Category.BUSINESS_ROLES: "BUSINESSROLE",
    Category.BOL_ACCESS: "BUSINESSROLE",
    Category.DATA_OBJECTS: "DO",
    Category.DATABASES: "DATABASE",
    Category.KEY_VALUES: "KV",
    Category.WORKFLOWS: "WORKFLOW",
}


def _diff_entries(tag: str, default_entries, tenant_entries, key_of) -> list[str]:
    default_by_key = {key_of(e): e for e in default_entries}
    tenant_by_key = {key_of(e): e for e in tenant_entries}
    lines = []
    for key, entry in default_by_key.items():
        if key not in tenant_by_key:
            lines.append(f"- {tag} {key}")
        elif tenant_by_key[key] != entry:
            lines.append(f"~ {tag} {key}")
    for key in tenant_by_key:
        if key not in default_by_key:
            lines.append(f"+ {tag} {key}")
    return lines


def _diff_category(store: TenantStore, tenant: str, category: Category) -> list[str]:
    if category is Category.PROPERTIES:
        lines = []
        for lang in store.languages():
            default = store.load_default(category, lang).body
            current = store._load_effective(tenant, category, lang).body
            for tag, d_entries, t_entries in (
                ("LABELELEMENT", default.labels, current.labels),
                ("TEXTELEMENT", default.texts, current.texts),
            ):
                lines.extend(
                    _diff_entries(
                        tag,
                        d_entries,
                        t_entries,
                        lambda e, lang=lang: f"{lang}:{e.name}",
                    )
                )
        return lines
    default = store.load_default(category).body
    current = store._load_effective(tenant, category).body
    return _diff_entries(
        _ENTRY_TAGS[category], default, current, lambda e: _entry_key(category, e)
    )


@main.command("diff")
@click.argument("tenant")
@click.argument("category_slug", metavar="CATEGORY")
@_data_root_option
def cmd_diff(tenant: str, category_slug: str, data_root: Path) -> None:
    """Entry-level diff between the tenant's document and the vendor default."""
    store = _open_store(data_root)
    try:
        category = Category.from_slug(category_slug)
        lines = _diff_category(store, tenant, category)
    except (UnknownCategory, UnknownTenant) as exc:
        _fail(2, str(exc))
    except _ENV_FAILURES as exc:
        _fail(2, f"registry error: {exc}")
    for line in lines:
        click.echo(line)


@main.command("init-tenant")
@click.argument("tenant")
@_data_root_option
def cmd_init_tenant(tenant: str, data_root: Path) -> None:
    """Register a tenant in central.xml with empty overrides."""
    store = _open_store(data_root)
    try:
        store.register_tenant(Principal.provider(), tenant)
    except TenantExists as exc:
        _fail(1, str(exc))
    except TenantConfError as exc:
        _fail(2, f"registry error: {exc}")
    click.echo(f"registered {tenant}")


@main.group("resolve")
def cmd_resolve() -> None:
    """Print resolver results exactly as the service would return them."""


def _resolver(data_root: Path) -> Resolver:
    return Resolver(_open_store(data_root))


def _emit(body: bytes) -> None:
    sys.stdout.buffer.write(body)
    sys.stdout.buffer.flush()


def _run_resolve(fn) -> None:
    try:
        _emit(fn())
    except _ENV_FAILURES as exc:
        _fail(2, f"registry error: {exc}")
    except TenantConfError as exc:
        _fail(1, str(exc))


@cmd_resolve.command("category")
@click.argument("tenant")
@click.argument("category_slug", metavar="CATEGORY")
@click.option("--lang", default=None)
@_data_root_option
def resolve_category_cmd(tenant: str, category_slug: str, lang: str | None, data_root: Path) -> None:
    resolver = _resolver(data_root)
    _run_resolve(
        lambda: codec.serialize(
            resolver.resolve_category(
                Principal.provider(), tenant, Category.from_slug(category_slug), lang
            )
        )
    )


@cmd_resolve.command("page-view")
@click.argument("tenant")
@click.option("--page", required=True)
@click.option("--lang", required=True)
@click.option("--role", required=True)
@_data_root_option
def resolve_page_view_cmd(tenant: str, page: str, lang: str, role: str, data_root: Path) -> None:
    resolver = _resolver(data_root)
    _run_resolve(
        lambda: wire.json_bytes(
            wire.page_view_dict(
                resolver.resolve_page_view(Principal.provider(), tenant, page, lang, role)
            )
        )
    )


@cmd_resolve.command("backend-call")
@click.argument("tenant")
@click.argument("be_name")
@_data_root_option
def resolve_backend_call_cmd(tenant: str, be_name: str, data_root: Path) -> None:
    resolver = _resolver(data_root)
    _run_resolve(
        lambda: wire.json_bytes(
            wire.backend_call_dict(
                resolver.resolve_backend_call(Principal.provider(), tenant, be_name)
            )
        )
    )


@cmd_resolve.command("database")
@click.argument("tenant")
@click.argument("do_name")
@_data_root_option
def resolve_database_cmd(tenant: str, do_name: str, data_root: Path) -> None:
    resolver = _resolver(data_root)
    _run_resolve(
        lambda: wire.json_bytes(
            wire.database_dict(
                resolver.resolve_database(Principal.provider(), tenant, do_name)
            )
        )
    )


@cmd_resolve.command("setting")
@click.argument("tenant")
@click.argument("key")
@_data_root_option
def resolve_setting_cmd(tenant: str, key: str, data_root: Path) -> None:
    resolver = _resolver(data_root)
    _run_resolve(
        lambda: wire.json_bytes(
            wire.setting_dict(
                key, resolver.get_setting(Principal.provider(), tenant, key)
            )
        )
    )


@main.command("serve")
@click.option("--bind", envvar="TENANTCONF_BIND", default="127.0.0.1:8000", show_default=True)
@_data_root_option
@click.option(
    "--tokens",
    envvar="TENANTCONF_TOKENS",
    required=True,
    type=click.Path(path_type=Path),
    help="tokens.xml mapping bearer tokens to principals.",
)
def cmd_serve(bind: str, data_root: Path, tokens: Path) -> None:
    """Run the REST service."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(data_root, tokens)
    except TenantConfError as exc:
        _fail(2, f"startup failure: {exc}")
    host, _, port = bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()
