from __future__ import annotations

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from tenantconf import codec
from tenantconf.guard import Principal, write_tokens
from tenantconf.model import Category, WorkflowDef, WorkflowTask, document
from tenantconf.registry import TenantStore
from tenantconf.seed import install_data_root
from tenantconf.service import create_app

from conftest import PROVIDER

H1 = {"Authorization": "Bearer t1tok"}
H2 = {"Authorization": "Bearer t2tok"}
HP = {"Authorization": "Bearer ptok"}


@pytest.fixture
def service_root(tmp_path: Path) -> Path:
    root = tmp_path / "svc"
    install_data_root(root)
    store = TenantStore(root)
    store.register_tenant(PROVIDER, "T1")
    store.register_tenant(PROVIDER, "T2")
    write_tokens(
        root / "tokens.xml",
        [
            Principal.provider("ptok"),
            Principal.for_tenant("T1", "t1tok"),
            Principal.for_tenant("T2", "t2tok"),
        ],
    )
    return root


@pytest.fixture
def client(service_root: Path) -> TestClient:
    return TestClient(create_app(service_root, service_root / "tokens.xml"))


class TestAuth:
    def test_missing_token_is_401(self, client):
        assert client.get("/api/v1/tenants/T1/config/fields").status_code == 401

    def test_unknown_token_is_401(self, client):
        r = client.get(
            "/api/v1/tenants/T1/config/fields", headers={"Authorization": "Bearer nope"}
        )
        assert r.status_code == 401

    def test_cross_tenant_get_is_403_with_guard_reason(self, client):
        r = client.get("/api/v1/tenants/T2/config/fields", headers=H1)
        assert r.status_code == 403
        assert r.json()["code"] == "cross-tenant"

    def test_registry_denied_to_tenants(self, client):
        r = client.get("/api/v1/registry", headers=H1)
        assert r.status_code == 403
        assert r.json()["code"] == "provider-only"

    def test_metrics_denied_to_tenants_allowed_to_provider(self, client):
        assert client.get("/api/v1/metrics", headers=H1).status_code == 403
        r = client.get("/api/v1/metrics", headers=HP)
        assert r.status_code == 200
        assert r.text.startswith("cache_hits ")


class TestConfigRoundTrip:
    def test_get_returns_canonical_xml_with_etag(self, client):
        r = client.get("/api/v1/tenants/T1/config/fields", headers=H1)
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("application/xml")
        assert r.headers["etag"] == "0"
        doc = codec.parse(Category.FIELDS, r.content)
        assert codec.serialize(doc) == r.content

    def test_every_category_get_body_reparses(self, client):
        for category in Category:
            r = client.get(f"/api/v1/tenants/T1/config/{category.slug}", headers=H1)
            assert r.status_code == 200, category
            codec.parse(category, r.content)

    def test_put_then_get_reflects_edit(self, client):
        r = client.get("/api/v1/tenants/T1/config/csselements", headers=H1)
        edited = r.content.replace(b"/path1/cssb2c", b"/edited/cssb2c")
        r = client.put(
            "/api/v1/tenants/T1/config/csselements",
            headers={**H1, "If-Match": "0"},
            content=edited,
        )
        assert r.status_code == 200
        assert r.json() == {"version": 1}
        r = client.get("/api/v1/tenants/T1/config/csselements", headers=H1)
        assert b"/edited/cssb2c" in r.content
        assert r.headers["etag"] == "1"

    def test_stale_put_conflicts(self, client):
        r = client.get("/api/v1/tenants/T1/config/csselements", headers=H1)
        body = r.content
        assert (
            client.put(
                "/api/v1/tenants/T1/config/csselements",
                headers={**H1, "If-Match": "0"},
                content=body,
            ).status_code
            == 200
        )
        r = client.put(
            "/api/v1/tenants/T1/config/csselements",
            headers={**H1, "If-Match": "0"},
            content=body,
        )
        assert r.status_code == 409
        assert r.json()["code"] == "version-conflict"

    def test_put_without_if_match_is_400(self, client):
        r = client.put(
            "/api/v1/tenants/T1/config/csselements", headers=H1, content=b"<CSSELEMENTS>\n</CSSELEMENTS>\n"
        )
        assert r.status_code == 400

    def test_put_malformed_xml_is_400(self, client):
        r = client.put(
            "/api/v1/tenants/T1/config/csselements",
            headers={**H1, "If-Match": "0"},
            content=b"<CSSELEMENTS><oops>",
        )
        assert r.status_code == 400
        assert r.json()["code"] == "parse-error"

    def test_put_invalid_document_is_422_with_codes(self, client):
        fields = (
            b"<FIELDS>\n  <FIELD>\n    <FIELDNAME>F1</FIELDNAME>\n    <DISPLAY>True</DISPLAY>\n"
            b"    <POSITIONFROM>A3</POSITIONFROM>\n    <POSITIONTO>H3</POSITIONTO>\n  </FIELD>\n"
            b"  <FIELD>\n    <FIELDNAME>F2</FIELDNAME>\n    <DISPLAY>True</DISPLAY>\n"
            b"    <POSITIONFROM>C3</POSITIONFROM>\n    <POSITIONTO>D3</POSITIONTO>\n  </FIELD>\n</FIELDS>\n"
        )
        r = client.put(
            "/api/v1/tenants/T1/config/fields",
            headers={**H1, "If-Match": "0"},
            content=fields,
        )
        assert r.status_code == 422
        assert any(v["code"] == "OVERLAP_FIELD" for v in r.json()["violations"])

    def test_unknown_category_is_404(self, client):
        assert client.get("/api/v1/tenants/T1/config/nope", headers=H1).status_code == 404

    def test_reset_reverts_to_default(self, client):
        r = client.get("/api/v1/tenants/T1/config/csselements", headers=H1)
        default_body = r.content
        client.put(
            "/api/v1/tenants/T1/config/csselements",
            headers={**H1, "If-Match": "0"},
            content=default_body.replace(b"/path1/cssb2c", b"/else"),
        )
        r = client.post("/api/v1/tenants/T1/config/csselements:reset", headers=H1)
        assert r.status_code == 200
        r = client.get("/api/v1/tenants/T1/config/csselements", headers=H1)
        assert r.content == default_body
        assert r.headers["etag"] == "0"


class TestResolvedEndpoints:
    def test_categories_lists_all_fifteen(self, client):
        r = client.get("/api/v1/categories", headers=H1)
        assert r.status_code == 200
        assert [d["slug"] for d in r.json()] == [c.slug for c in Category]

    def test_page_view(self, client):
        r = client.get(
            "/api/v1/tenants/T1/resolved/page-view",
            params={"page": "Page1", "lang": "en", "role": "SP_ROLE"},
            headers=H1,
        )
        assert r.status_code == 200
        body = r.json()
        assert body["labels"]["Page1.Label1"] == "My Label 1"
        assert body["fields"][0]["position_from"] == "A3"

    def test_page_view_unknown_role_404(self, client):
        r = client.get(
            "/api/v1/tenants/T1/resolved/page-view",
            params={"page": "Page1", "lang": "en", "role": "GHOST"},
            headers=H1,
        )
        assert r.status_code == 404

    def test_backend_call(self, client):
        r = client.get("/api/v1/tenants/T1/resolved/backend-call/BE1", headers=H1)
        assert r.json()["connection"] == {"name": "CRM7", "host": "CRM7Host", "client": "100"}

    def test_database_and_setting(self, client):
        assert client.get(
            "/api/v1/tenants/T1/resolved/database/DOMINING", headers=H1
        ).json()["name"] == "CRMBI"
        r = client.get(
            "/api/v1/tenants/T1/resolved/setting/default Service transaction", headers=H1
        )
        assert r.json() == {
            "key": "default Service transaction",
            "kind": "scalar",
            "value": "SO",
        }
        assert (
            client.get("/api/v1/tenants/T1/resolved/setting/ghost", headers=H1).json()["kind"]
            == "absent"
        )

    def test_branding_defaults(self, client):
        r = client.get("/api/v1/tenants/T1/branding", headers=H1)
        assert r.json() == {"name": "", "logo": "/assets/placeholder-logo.svg"}

    def test_branding_follows_keyvalue_commit(self, client):
        r = client.get("/api/v1/tenants/T1/config/keyvalues", headers=H1)
        body = r.content.replace(
            b"</KEYVALUES>",
            b"  <KV>\n    <KEY>branding.name</KEY>\n    <VALUE>Acme</VALUE>\n  </KV>\n</KEYVALUES>",
        )
        assert (
            client.put(
                "/api/v1/tenants/T1/config/keyvalues",
                headers={**H1, "If-Match": "0"},
                content=body,
            ).status_code
            == 200
        )
        assert client.get("/api/v1/tenants/T1/branding", headers=H1).json()["name"] == "Acme"

    def test_dry_run_endpoint(self, service_root, client):
        store = TenantStore(service_root)
        flow = WorkflowDef(
            "WF1", "flow", "SP_ROLE", (WorkflowTask(1, "create", "BO1", "run"),)
        )
        current = store.begin_configure(
            Principal.for_tenant("T1"), "T1", Category.WORKFLOWS
        )
        store.commit(
            Principal.for_tenant("T1"),
            "T1",
            Category.WORKFLOWS,
            document(Category.WORKFLOWS, (flow,)).with_version(current.version),
        )
        r = client.post("/api/v1/tenants/T1/workflows/WF1:dry-run", headers=H1)
        assert r.status_code == 200
        assert r.json()["steps"][0]["verdict"] == "BolForbidden"  # no bol.of.BO1 mapping
        assert (
            client.post("/api/v1/tenants/T1/workflows/GHOST:dry-run", headers=H1).status_code
            == 404
        )

    def test_provider_database_assignment(self, client):
        r = client.put(
            "/api/v1/tenants/T1/database", headers=HP, json={"name": "DB_T1", "host": "h1"}
        )
        assert r.status_code == 200
        r = client.put(
            "/api/v1/tenants/T2/database", headers=HP, json={"name": "DB_T1", "host": "h1"}
        )
        assert r.status_code == 409
        r = client.put(
            "/api/v1/tenants/T1/database", headers=H1, json={"name": "X", "host": "h"}
        )
        assert r.status_code == 403

    def test_registry_view(self, client):
        r = client.get("/api/v1/registry", headers=HP)
        body = r.json()
        assert set(body["sections"]) == {c.slug for c in Category}
        assert body["tenants"] == ["T1", "T2"]


class TestStatelessness:
    def test_restart_yields_byte_identical_bodies(self, service_root):
        app1 = create_app(service_root, service_root / "tokens.xml")
        c1 = TestClient(app1)
        c1.put(
            "/api/v1/tenants/T1/config/csselements",
            headers={**H1, "If-Match": "0"},
            content=c1.get("/api/v1/tenants/T1/config/csselements", headers=H1).content.replace(
                b"/path1/cssb2c", b"/restarted"
            ),
        )
        body1 = c1.get("/api/v1/tenants/T1/config/csselements", headers=H1).content
        view1 = c1.get(
            "/api/v1/tenants/T1/resolved/page-view",
            params={"page": "Page1", "lang": "en", "role": "SP_ROLE"},
            headers=H1,
        ).content
        c2 = TestClient(create_app(service_root, service_root / "tokens.xml"))
        assert c2.get("/api/v1/tenants/T1/config/csselements", headers=H1).content == body1
        assert (
            c2.get(
                "/api/v1/tenants/T1/resolved/page-view",
                params={"page": "Page1", "lang": "en", "role": "SP_ROLE"},
                headers=H1,
            ).content
            == view1
        )
