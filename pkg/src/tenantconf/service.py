"""REST surface over the store, resolver and workflow engine.

Two callers: the tenant-designer admin UI and the simulated ERP frontend
read path. Configuration documents travel as canonical XML with the
version in the ETag/If-Match headers; resolved views and errors are JSON.
Every request is authenticated (bearer token to principal) and authorized
through the isolation guard, so HTTP outcomes mirror guard decisions.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import codec, wire
from .codec import CATEGORY_DESCRIPTORS, ParseError
from .errors import (
    AuthzDenied,
    BadTenantId,
    CoordinateError,
    DanglingConnection,
    DanglingDatabase,
    DatabaseAlreadyAssigned,
    NoDefaultDatabase,
    TenantConfError,
    TenantExists,
    UnknownBackendObject,
    UnknownCategory,
    UnknownLanguage,
    UnknownRole,
    UnknownTenant,
    UnknownWorkflow,
    ValidationFailed,
    VersionConflict,
)
from .guard import Action, Principal, load_tokens
from .model import Category
from .registry import TenantStore
from .resolver import Resolver
from .workflow import WorkflowEngine

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (AuthzDenied, 403),
    (ParseError, 400),
    (BadTenantId, 400),
    (CoordinateError, 400),
    (UnknownCategory, 404),
    (UnknownTenant, 404),
    (UnknownRole, 404),
    (UnknownLanguage, 404),
    (UnknownBackendObject, 404),
    (UnknownWorkflow, 404),
    (VersionConflict, 409),
    (DatabaseAlreadyAssigned, 409),
    (TenantExists, 409),
    (ValidationFailed, 422),
    (DanglingConnection, 422),
    (DanglingDatabase, 422),
    (NoDefaultDatabase, 422),
]


class _HttpError(Exception):
    def __init__(self, status: int, code: str, detail: str, violations=None):
        self.status = status
        self.code = code
        self.detail = detail
        self.violations = violations


def _error_response(status: int, code: str, detail: str, violations=None) -> JSONResponse:
    body = {"status": status, "code": code, "detail": detail}
    if violations is not None:
        body["violations"] = violations
    return JSONResponse(status_code=status, content=body)


def create_app(data_root: Path, tokens_path: Path) -> FastAPI:
    store = TenantStore(Path(data_root))
    resolver = Resolver(store)
    engine = WorkflowEngine(resolver)
    tokens = load_tokens(Path(tokens_path))

    app = FastAPI(title="tenantconf", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["Authorization", "Content-Type", "If-Match"],
        expose_headers=["ETag"],
    )
    app.state.store = store

    def principal_of(request: Request) -> Principal:
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise _HttpError(401, "unauthenticated", "missing bearer token")
        principal = tokens.get(header[len("Bearer ") :])
        if principal is None:
            raise _HttpError(401, "unauthenticated", "unknown token")
        return principal

    @app.exception_handler(_HttpError)
    async def http_error_handler(_request, exc: _HttpError):
        return _error_response(exc.status, exc.code, exc.detail, exc.violations)

    @app.exception_handler(TenantConfError)
    async def domain_error_handler(_request, exc: TenantConfError):
        for err_type, status in _STATUS_BY_ERROR:
            if isinstance(exc, err_type):
                violations = None
                if isinstance(exc, ValidationFailed):
                    violations = wire.validation_report_dict(exc.report)
                if isinstance(exc, AuthzDenied):
                    return _error_response(status, exc.reason, str(exc))
                return _error_response(status, exc.code, str(exc), violations)
        return _error_response(500, exc.code, str(exc))

    @app.get("/api/v1/categories")
    def categories(request: Request):
        principal = principal_of(request)
        own = principal.tenant or "-"
        store.guard.require(principal, Action.READ, own)
        descriptors = []
        for desc in CATEGORY_DESCRIPTORS:
            if desc["slug"] == Category.PROPERTIES.slug:
                desc = {**desc, "languages": list(store.languages())}
            descriptors.append(desc)
        return Response(wire.json_bytes(descriptors), media_type="application/json")

    def _check_lang(cat: Category, lang: str | None) -> None:
        if lang is not None and cat is not Category.PROPERTIES:
            raise _HttpError(400, "bad-request", "lang applies to properties only")

    @app.get("/api/v1/tenants/{tenant}/config/{category}")
    def get_config(
        tenant: str,
        category: str,
        request: Request,
        lang: str | None = None,
        source: str | None = None,
    ):
        principal = principal_of(request)
        cat = Category.from_slug(category)
        _check_lang(cat, lang)
        if source not in (None, "default"):
            raise _HttpError(400, "bad-request", "source must be 'default' when given")
        if source == "default":
            # Vendor default regardless of overrides (feeds the UI's diff view);
            # still authorized as a tenant read.
            store.guard.require(principal, Action.READ, tenant, cat)
            store._maybe_reload()
            store._require_registered(tenant)
            doc = store.load_default(cat, lang)
        else:
            doc = store.read_resolved(principal, tenant, cat, lang)
        return Response(
            codec.serialize(doc),
            media_type="application/xml",
            headers={"ETag": str(doc.version)},
        )

    @app.put("/api/v1/tenants/{tenant}/config/{category}")
    async def put_config(tenant: str, category: str, request: Request, lang: str | None = None):
        principal = principal_of(request)
        cat = Category.from_slug(category)
        _check_lang(cat, lang)
        if_match = request.headers.get("if-match")
        if if_match is None or not if_match.strip('"').isdigit():
            raise _HttpError(400, "missing-if-match", "If-Match header must carry the document version")
        body = await request.body()
        language = lang or (store.default_language() if cat is Category.PROPERTIES else "en")
        doc = codec.parse(cat, body, language=language)
        store._maybe_reload()
        if tenant not in store.registry.section(cat).overrides:
            store.begin_configure(principal, tenant, cat, lang)
        version = store.commit(
            principal, tenant, cat, doc.with_version(int(if_match.strip('"')))
        )
        return Response(
            wire.json_bytes({"version": version}),
            media_type="application/json",
            headers={"ETag": str(version)},
        )

    @app.post("/api/v1/tenants/{tenant}/config/{category}:reset")
    def reset_config(tenant: str, category: str, request: Request):
        principal = principal_of(request)
        cat = Category.from_slug(category)
        store.reset_override(principal, tenant, cat)
        return Response(wire.json_bytes({"reset": cat.slug}), media_type="application/json")

    @app.get("/api/v1/tenants/{tenant}/resolved/page-view")
    def page_view(tenant: str, request: Request, page: str, lang: str, role: str):
        principal = principal_of(request)
        view = resolver.resolve_page_view(principal, tenant, page, lang, role)
        return Response(
            wire.json_bytes(wire.page_view_dict(view)), media_type="application/json"
        )

    @app.get("/api/v1/tenants/{tenant}/resolved/backend-call/{be_name}")
    def backend_call(tenant: str, be_name: str, request: Request):
        principal = principal_of(request)
        plan = resolver.resolve_backend_call(principal, tenant, be_name)
        return Response(
            wire.json_bytes(wire.backend_call_dict(plan)), media_type="application/json"
        )

    @app.get("/api/v1/tenants/{tenant}/resolved/database/{do_name}")
    def database_route(tenant: str, do_name: str, request: Request):
        principal = principal_of(request)
        db = resolver.resolve_database(principal, tenant, do_name)
        return Response(
            wire.json_bytes(wire.database_dict(db)), media_type="application/json"
        )

    @app.get("/api/v1/tenants/{tenant}/resolved/setting/{key:path}")
    def setting(tenant: str, key: str, request: Request):
        principal = principal_of(request)
        value = resolver.get_setting(principal, tenant, key)
        return Response(
            wire.json_bytes(wire.setting_dict(key, value)), media_type="application/json"
        )

    @app.get("/api/v1/tenants/{tenant}/branding")
    def branding(tenant: str, request: Request):
        principal = principal_of(request)
        name, logo = resolver.branding(principal, tenant)
        return Response(
            wire.json_bytes(wire.branding_dict(name, logo)), media_type="application/json"
        )

    @app.post("/api/v1/tenants/{tenant}/workflows/{workflow_id}:dry-run")
    def dry_run(tenant: str, workflow_id: str, request: Request):
        principal = principal_of(request)
        trace = engine.dry_run_stored(principal, tenant, workflow_id)
        return Response(
            wire.json_bytes(wire.trace_dict(trace)), media_type="application/json"
        )

    @app.get("/api/v1/registry")
    def registry_view(request: Request):
        principal = principal_of(request)
        reg = store.load_registry(principal)
        return Response(
            wire.json_bytes(wire.registry_dict(reg)), media_type="application/json"
        )

    @app.put("/api/v1/tenants/{tenant}/database")
    async def put_database(tenant: str, request: Request):
        principal = principal_of(request)
        body = await request.json()
        name = body.get("name", "")
        host = body.get("host", "")
        store.assign_tenant_database(principal, tenant, name, host)
        return Response(
            wire.json_bytes({"tenant": tenant, "name": name, "host": host}),
            media_type="application/json",
        )

    @app.get("/api/v1/metrics")
    def metrics(request: Request):
        principal = principal_of(request)
        store.guard.require(principal, Action.REGISTRY_READ, "-")
        return Response(wire.metrics_text(store.cache.stats()), media_type="text/plain")

    return app
