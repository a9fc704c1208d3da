"""Independent from-scratch resolver used as the equivalence oracle.

Re-reads central.xml (through xml.etree.ElementTree, not the package's
loader) and the referenced files on every call: no cache, no memoized
registry, and its own merge/join logic.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path

from tenantconf import codec
from tenantconf.model import Category, DbUse


def _central(root: Path) -> ET.Element:
    return ET.fromstring((root / "central.xml").read_bytes())


def naive_location(root: Path, tenant: str, category: Category) -> tuple[str, int]:
    """(path stem, version) for the tenant's effective document."""
    for section in _central(root).iter("SECTION"):
        if section.findtext("CATEGORY") != category.slug:
            continue
        for override in section.iter("OVERRIDE"):
            if override.findtext("TENANT") == tenant:
                return override.findtext("LOCATION"), int(override.findtext("VERSION"))
        return section.findtext("DEFAULT"), 0
    raise KeyError(category.slug)


def naive_languages(root: Path) -> list[str]:
    for section in _central(root).iter("SECTION"):
        if section.findtext("CATEGORY") == "properties":
            return [lang.text for lang in section.iter("LANG")]
    raise KeyError("properties")


def naive_doc(root: Path, tenant: str, category: Category, language: str | None = None):
    stem, version = naive_location(root, tenant, category)
    if category is Category.PROPERTIES:
        lang = language or naive_languages(root)[0]
        path = f"{stem[:-4]}.{lang}.xml"
    else:
        lang = "en"
        path = stem
    doc = codec.parse(category, (root / path).read_bytes(), language=lang)
    return doc.with_version(version)


def naive_bo_enabled(root: Path, tenant: str, bo_name: str) -> bool:
    for toggle in naive_doc(root, tenant, Category.FRONTEND_BOS).body:
        if toggle.bo_name == bo_name:
            return toggle.enabled
    return True


def naive_backend_call(root: Path, tenant: str, be_name: str) -> dict | None:
    for binding in naive_doc(root, tenant, Category.BACKEND_BINDINGS).body:
        if binding.be_name == be_name:
            for conn in naive_doc(root, tenant, Category.CONNECTIONS).body:
                if conn.name == binding.erp_backend:
                    return {
                        "be_name": binding.be_name,
                        "api": binding.api,
                        "state": binding.state.value,
                        "reuse_connection": binding.state.value == "Full",
                        "connection": {
                            "name": conn.name,
                            "host": conn.host,
                            "client": conn.client,
                        },
                    }
            return {"error": "dangling"}
    return None


def naive_role_profiles(root: Path, tenant: str, role: str) -> tuple | None:
    for r in naive_doc(root, tenant, Category.BUSINESS_ROLES).body:
        if r.name == role:
            return (r.nav_bar_profile, r.technical_profile, r.layout_profile, r.pfcg_role)
    return None


def naive_bol_access(root: Path, tenant: str, role: str, bol: str) -> bool:
    for rule in naive_doc(root, tenant, Category.BOL_ACCESS).body:
        if rule.role_name == role:
            for grant in rule.grants:
                if grant.bol_name == bol:
                    return grant.use
            return False
    return False


def naive_database(root: Path, tenant: str, do_name: str) -> dict | None:
    databases = {d.name: d for d in naive_doc(root, tenant, Category.DATABASES).body}
    db = None
    for binding in naive_doc(root, tenant, Category.DATA_OBJECTS).body:
        if binding.do_name == do_name:
            db = databases.get(binding.database_name)
            if db is None:
                return {"error": "dangling"}
            break
    if db is None:
        defaults = [d for d in databases.values() if d.use is DbUse.DEFAULT]
        if len(defaults) != 1:
            return {"error": "no-default"}
        db = defaults[0]
    return {"name": db.name, "host": db.host, "use": db.use.value}


def naive_setting(root: Path, tenant: str, key: str):
    for kv in naive_doc(root, tenant, Category.KEY_VALUES).body:
        if kv.key == key:
            return frozenset(kv.value) if kv.is_set else kv.value
    return None


def naive_page_view(root: Path, tenant: str, page: str, language: str, role: str) -> dict:
    roles = naive_doc(root, tenant, Category.BUSINESS_ROLES).body
    assert any(r.name == role for r in roles), f"unknown role {role}"
    bundle = naive_doc(root, tenant, Category.PROPERTIES, language).body
    labels = {e.name: e.value for e in bundle.labels if e.name.split(".")[0] == page}
    texts = {e.name: e.value for e in bundle.texts if e.name.split(".")[0] == page}
    fields = [f for f in naive_doc(root, tenant, Category.FIELDS).body if f.display]
    missing = [
        f"{page}.{f.field_name}"
        for f in fields
        if f"{page}.{f.field_name}" not in labels
    ]
    return {
        "tenant": tenant,
        "page": page,
        "language": bundle.language,
        "role": role,
        "css": [
            {"name": e.name, "location": e.location}
            for e in naive_doc(root, tenant, Category.CSS_ELEMENTS).body
        ],
        "images": [
            {"name": e.name, "src": e.src}
            for e in naive_doc(root, tenant, Category.IMAGES).body
        ],
        "scripts": [
            {"name": e.name, "src": e.src}
            for e in naive_doc(root, tenant, Category.SCRIPTS).body
        ],
        "labels": labels,
        "texts": texts,
        "missing_labels": missing,
        "blocks": [
            {
                "component": b.component,
                "view_name": b.view_name,
                "title": b.title,
                "load_option": b.load_option.value,
            }
            for b in naive_doc(root, tenant, Category.BLOCKS).body
            if b.display
        ],
        "fields": [
            {
                "field_name": f.field_name,
                "position_from": f.position_from.as_text(),
                "position_to": f.position_to.as_text(),
            }
            for f in fields
        ],
    }
