"""Vendor default documents and data-root bootstrapping.

The shipped defaults are the SAP-style example configurations: two CSS
sheets, one image, one script, an English label/text bundle, two page
blocks, two field placements, two frontend BO toggles, two backend
bindings over one CRM7 connection, the SP_ROLE business role with its four
profiles, its BOL grants, the DOMINING data-object routing, the
CRMDB/CRMBI database pair, and the two key-value settings. Workflows start
empty.
"""

from __future__ import annotations

from pathlib import Path

from . import codec
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
    document,
)

DEFAULT_LANGUAGE = "en"


def default_document(category: Category, language: str = DEFAULT_LANGUAGE) -> ConfigDocument:
    """The vendor default document for one category (version 0)."""
    if category is Category.CSS_ELEMENTS:
        return document(
            category,
            (
                CssElement("B2C", "/path1/cssb2c"),
                CssElement("B2B", "/path1/cssb2b"),
            ),
        )
    if category is Category.IMAGES:
        return document(category, (ImageElement("MyImage", "/path1/image.jpg"),))
    if category is Category.SCRIPTS:
        return document(category, (ScriptElement("MyScript", "/path1/MyScript.js"),))
    if category is Category.PROPERTIES:
        return document(
            category,
            PropertyBundle(
                language=language,
                labels=(
                    TextEntry("Page1.Label1", "My Label 1"),
                    TextEntry("Page1.Label2", "My Label 2"),
                ),
                texts=(
                    TextEntry("Page1.Text1", "My Text 1"),
                    TextEntry("Page1.Text2", "My Text 2"),
                ),
            ),
        )
    if category is Category.BLOCKS:
        return document(
            category,
            (
                Block("Component 1", "ViewI", "Block Title 1", True, LoadOption.DIRECT),
                Block("Component n", "ViewJ", "Block Title n", False, LoadOption.LAZY),
            ),
        )
    if category is Category.FIELDS:
        return document(
            category,
            (
                FieldPlacement("Field1", True, GridCell("A", 3), GridCell("H", 3)),
                FieldPlacement("Fieldn", False, GridCell("A", 11), GridCell("P", 11)),
            ),
        )
    if category is Category.FRONTEND_BOS:
        return document(
            category,
            (BoToggle("BO1", True), BoToggle("BOn", False)),
        )
    if category is Category.BACKEND_BINDINGS:
        return document(
            category,
            (
                BackendBinding("BE1", "API1", ConnState.FULL, "CRM7"),
                BackendBinding("BEJ", "APIIn", ConnState.LESS, "CRM7"),
            ),
        )
    if category is Category.CONNECTIONS:
        return document(category, (Connection("CRM7", "CRM7Host", "100"),))
    if category is Category.BUSINESS_ROLES:
        return document(
            category,
            (
                BusinessRole(
                    name="SP_ROLE",
                    description="Service Professional Role",
                    nav_bar_profile="SRV_NAV_BAR",
                    technical_profile="SRV_TEC_PROFILE",
                    layout_profile="SRV_LAY_PROFILE",
                    pfcg_role="SRV_PFCG",
                ),
            ),
        )
    if category is Category.BOL_ACCESS:
        return document(
            category,
            (
                BolAccessRule(
                    role_name="SP_ROLE",
                    grants=(
                        BolGrant("SALES_BOL", True),
                        BolGrant("FINANCE_BOL", False),
                    ),
                ),
            ),
        )
    if category is Category.DATA_OBJECTS:
        return document(category, (DataObjectBinding("DOMINING", "CRMBI"),))
    if category is Category.DATABASES:
        return document(
            category,
            (
                Database("CRMDB", "CRMDBHost", DbUse.DEFAULT),
                Database("CRMBI", "CRMBIDBHost", DbUse.REQUEST),
            ),
        )
    if category is Category.KEY_VALUES:
        return document(
            category,
            (
                KeyValueSetting("default Service transaction", "SO"),
                KeyValueSetting(
                    "default Sales business partners",
                    ("sold-to", "ship-to", "bill-to", "payer"),
                ),
            ),
        )
    if category is Category.WORKFLOWS:
        return document(category, ())
    raise AssertionError(category)  # pragma: no cover


def default_file_name(category: Category, language: str = DEFAULT_LANGUAGE) -> str:
    if category is Category.PROPERTIES:
        return f"properties.{language}.xml"
    return f"{category.slug}.xml"


def install_data_root(root: Path, languages: tuple[str, ...] = (DEFAULT_LANGUAGE,)) -> None:
    """Create a fresh data root: vendor defaults plus an empty central.xml."""
    from .registry import write_initial_central

    defaults = root / "defaults"
    defaults.mkdir(parents=True, exist_ok=True)
    (root / "tenants").mkdir(exist_ok=True)
    for category in Category:
        if category is Category.PROPERTIES:
            for lang in languages:
                data = codec.serialize(default_document(category, lang))
                (defaults / default_file_name(category, lang)).write_bytes(data)
        else:
            data = codec.serialize(default_document(category))
            (defaults / default_file_name(category)).write_bytes(data)
    write_initial_central(root, languages)
