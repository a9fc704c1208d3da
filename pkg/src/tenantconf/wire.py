"""Wire-level JSON shapes shared by the REST service and the CLI.

The CLI's ``resolve`` output must byte-equal the corresponding service
response body, so both render through these functions.
"""

from __future__ import annotations

import json

from .cache import CacheStats
from .registry import CentralRegistry
from .resolver import BackendCallPlan, ResolvedPageView
from .workflow import DryRunTrace


def json_bytes(obj) -> bytes:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def page_view_dict(view: ResolvedPageView) -> dict:
    return {
        "tenant": view.tenant,
        "page": view.page,
        "language": view.language,
        "role": view.role,
        "css": [{"name": e.name, "location": e.location} for e in view.css],
        "images": [{"name": e.name, "src": e.src} for e in view.images],
        "scripts": [{"name": e.name, "src": e.src} for e in view.scripts],
        "labels": {name: value for name, value in view.labels},
        "texts": {name: value for name, value in view.texts},
        "missing_labels": list(view.missing_labels),
        "blocks": [
            {
                "component": b.component,
                "view_name": b.view_name,
                "title": b.title,
                "load_option": b.load_option.value,
            }
            for b in view.blocks
        ],
        "fields": [
            {
                "field_name": f.field_name,
                "position_from": f.position_from.as_text(),
                "position_to": f.position_to.as_text(),
            }
            for f in view.fields
        ],
    }


def backend_call_dict(plan: BackendCallPlan) -> dict:
    return {
        "be_name": plan.be_name,
        "api": plan.api,
        "state": plan.state.value,
        "reuse_connection": plan.reuse_connection,
        "connection": {
            "name": plan.connection.name,
            "host": plan.connection.host,
            "client": plan.connection.client,
        },
    }


def database_dict(db) -> dict:
    return {"name": db.name, "host": db.host, "use": db.use.value}


def setting_dict(key: str, value) -> dict:
    if value is None:
        return {"key": key, "kind": "absent", "value": None}
    if isinstance(value, frozenset):
        return {"key": key, "kind": "set", "value": sorted(value)}
    return {"key": key, "kind": "scalar", "value": value}


def branding_dict(name: str, logo: str) -> dict:
    return {"name": name, "logo": logo}


def trace_dict(trace: DryRunTrace) -> dict:
    return {
        "workflow": trace.workflow_id,
        "steps": [
            {
                "step": s.step_no,
                "bo": s.bo_name,
                "method": s.method,
                "verdict": s.verdict.value,
            }
            for s in trace.steps
        ],
    }


def registry_dict(reg: CentralRegistry) -> dict:
    return {
        "tenants": list(reg.tenants),
        "databases": {
            tid: {"name": d.name, "host": d.host} for tid, d in reg.tenant_databases.items()
        },
        "sections": {
            section.category.slug: {
                "default": section.default_location,
                "languages": list(section.languages),
                "overrides": {
                    tid: {"location": o.location, "version": o.version}
                    for tid, o in section.overrides.items()
                },
            }
            for section in reg.sections.values()
        },
    }


def metrics_text(stats: CacheStats) -> bytes:
    lines = [
        f"cache_hits {stats.hits}",
        f"cache_misses {stats.misses}",
        f"cache_invalidations {stats.invalidations}",
        f"cache_entries {stats.entries}",
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


def validation_report_dict(report) -> list[dict]:
    return [
        {"code": v.code, "entry": v.entry, "detail": v.detail} for v in report.violations
    ]
