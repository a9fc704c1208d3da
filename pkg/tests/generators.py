"""Seeded random document and world generators for property-style tests.

Generated documents are wire-representable (values have no leading or
trailing whitespace and no full surrounding quote pair) and business-valid
so they can be committed into stores as well as round-tripped through the
codec. ``random_world`` produces a cross-referentially consistent set of
documents for every category.
"""

from __future__ import annotations

import random

from tenantconf.model import (
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
    WorkflowDef,
    WorkflowTask,
    document,
    index_to_column,
)

_WORDS = [
    "alpha", "beta", "Sales Order", "Service", "café", "Straße", "値",
    "a & b", "x < y", "y > z", 'say "hi"', "it's", "trailing.dot.name",
    "under_score", "dash-ed", "Component 7", "/path/to/file.js",
]


def _value(rng: random.Random) -> str:
    if rng.random() < 0.6:
        return rng.choice(_WORDS)
    length = rng.randint(1, 12)
    chars = "abcdefghijklmnopqrstuvwxyzABC0123456789 _-.&<>'é"
    text = "".join(rng.choice(chars) for _ in range(length)).strip()
    return text or "v"


def _names(rng: random.Random, prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}_{rng.randint(0, 999)}" for i in range(count)]


def _count(rng: random.Random, lo: int = 0, hi: int = 6) -> int:
    return rng.randint(lo, hi)


def random_fields(rng: random.Random) -> tuple[FieldPlacement, ...]:
    entries = []
    names = _names(rng, "Field", _count(rng))
    for i, name in enumerate(names):
        display = rng.random() < 0.7
        if display:
            # One row per visible field keeps generated documents overlap-free.
            row = i + 1
        else:
            row = rng.randint(1, 20)
        start = rng.randint(1, 40)
        end = min(702, start + rng.randint(0, 15))
        entries.append(
            FieldPlacement(
                name,
                display,
                GridCell(index_to_column(start), row),
                GridCell(index_to_column(end), row),
            )
        )
    return tuple(entries)


def random_bundle(rng: random.Random, language: str = "en") -> PropertyBundle:
    def entries(kind: str) -> tuple[TextEntry, ...]:
        count = _count(rng)
        return tuple(
            TextEntry(f"Page{rng.randint(1, 3)}.{kind}{i}", _value(rng))
            for i in range(count)
        )

    return PropertyBundle(language=language, labels=entries("L"), texts=entries("T"))


def random_workflow(rng: random.Random, wf_id: str, roles: list[str], bos: list[str]) -> WorkflowDef:
    tasks = []
    step = 0
    for _ in range(rng.randint(1, 5)):
        step += rng.randint(1, 3)
        tasks.append(
            WorkflowTask(
                step_no=step,
                activity_type=rng.choice(["create", "update", "approve"]),
                bo_name=rng.choice(bos) if bos else f"BO{rng.randint(1, 5)}",
                method=rng.choice(["run", "save", "check"]),
                rule=None if rng.random() < 0.5 else _value(rng),
            )
        )
    return WorkflowDef(
        id=wf_id,
        name=_value(rng),
        role_binding=rng.choice(roles),
        tasks=tuple(tasks),
    )


def random_document(
    rng: random.Random,
    category: Category,
    *,
    language: str = "en",
    connections: list[str] | None = None,
    roles: list[str] | None = None,
    databases: list[str] | None = None,
) -> ConfigDocument:
    """One business-valid random document; reference pools are generated
    locally when not supplied."""
    if category is Category.CSS_ELEMENTS:
        return document(
            category,
            tuple(CssElement(n, _value(rng)) for n in _names(rng, "css", _count(rng))),
        )
    if category is Category.IMAGES:
        return document(
            category,
            tuple(ImageElement(n, _value(rng)) for n in _names(rng, "img", _count(rng))),
        )
    if category is Category.SCRIPTS:
        return document(
            category,
            tuple(ScriptElement(n, _value(rng)) for n in _names(rng, "js", _count(rng))),
        )
    if category is Category.PROPERTIES:
        return document(category, random_bundle(rng, language))
    if category is Category.BLOCKS:
        return document(
            category,
            tuple(
                Block(
                    component=n,
                    view_name=f"View{i}",
                    title=_value(rng),
                    display=rng.random() < 0.7,
                    load_option=rng.choice(list(LoadOption)),
                )
                for i, n in enumerate(_names(rng, "Comp", _count(rng)))
            ),
        )
    if category is Category.FIELDS:
        return document(category, random_fields(rng))
    if category is Category.FRONTEND_BOS:
        return document(
            category,
            tuple(
                BoToggle(n, rng.random() < 0.7)
                for n in _names(rng, "BO", _count(rng))
            ),
        )
    if category is Category.BACKEND_BINDINGS:
        pool = connections if connections else _names(rng, "CONN", 3)
        return document(
            category,
            tuple(
                BackendBinding(n, f"API_{n}", rng.choice(list(ConnState)), rng.choice(pool))
                for n in _names(rng, "BE", _count(rng, 0, 5) if pool else 0)
            ),
        )
    if category is Category.CONNECTIONS:
        return document(
            category,
            tuple(
                Connection(n, _value(rng), f"{rng.randint(0, 999):03d}")
                for n in (connections or _names(rng, "CONN", _count(rng, 1, 4)))
            ),
        )
    if category is Category.BUSINESS_ROLES:
        return document(
            category,
            tuple(
                BusinessRole(n, _value(rng), f"NAV_{n}", f"TEC_{n}", f"LAY_{n}", f"PFCG_{n}")
                for n in (roles or _names(rng, "ROLE", _count(rng, 1, 4)))
            ),
        )
    if category is Category.BOL_ACCESS:
        pool = roles or _names(rng, "ROLE", 2)
        rules = []
        for role in rng.sample(pool, rng.randint(0, len(pool))):
            grants = tuple(
                BolGrant(f"{b}_BOL", rng.random() < 0.5)
                for b in _names(rng, "G", _count(rng, 0, 4))
            )
            rules.append(BolAccessRule(role, grants))
        return document(category, tuple(rules))
    if category is Category.DATA_OBJECTS:
        pool = databases if databases else _names(rng, "DB", 2)
        return document(
            category,
            tuple(
                DataObjectBinding(n, rng.choice(pool))
                for n in _names(rng, "DO", _count(rng, 0, 4) if pool else 0)
            ),
        )
    if category is Category.DATABASES:
        names = databases or _names(rng, "DB", _count(rng, 1, 4))
        entries = [
            Database(names[0], _value(rng), DbUse.DEFAULT)
        ] + [Database(n, _value(rng), DbUse.REQUEST) for n in names[1:]]
        return document(category, tuple(entries))
    if category is Category.KEY_VALUES:
        settings = []
        for key in _names(rng, "key ", _count(rng)):
            if rng.random() < 0.5:
                settings.append(KeyValueSetting(key, _value(rng)))
            else:
                items = tuple(
                    f"item{i}_{rng.randint(0, 99)}" for i in range(rng.randint(1, 4))
                )
                settings.append(KeyValueSetting(key, items))
        return document(category, tuple(settings))
    if category is Category.WORKFLOWS:
        pool = roles or _names(rng, "ROLE", 2)
        bos = _names(rng, "BO", 3)
        return document(
            category,
            tuple(
                random_workflow(rng, wf_id, pool, bos)
                for wf_id in _names(rng, "WF", _count(rng, 0, 3))
            ),
        )
    raise AssertionError(category)


def random_world(rng: random.Random, language: str = "en") -> dict[Category, ConfigDocument]:
    """A cross-referentially consistent document per category."""
    connections = _names(rng, "CONN", rng.randint(1, 3))
    roles = _names(rng, "ROLE", rng.randint(1, 3))
    databases = _names(rng, "DB", rng.randint(1, 3))
    world: dict[Category, ConfigDocument] = {}
    for category in Category:
        world[category] = random_document(
            rng,
            category,
            language=language,
            connections=connections,
            roles=roles,
            databases=databases,
        )
    return world


# Referenced categories must land before their referrers so commit-time
# cross-reference validation sees the world's own names.
COMMIT_ORDER: tuple[Category, ...] = (
    Category.CONNECTIONS,
    Category.BUSINESS_ROLES,
    Category.DATABASES,
) + tuple(
    c
    for c in Category
    if c not in (Category.CONNECTIONS, Category.BUSINESS_ROLES, Category.DATABASES)
)


def commit_world(store, principal, tenant: str, world: dict[Category, ConfigDocument]) -> None:
    """begin_configure + commit every world document for one tenant."""
    for category in COMMIT_ORDER:
        doc = world[category]
        current = store.begin_configure(principal, tenant, category)
        store.commit(principal, tenant, category, doc.with_version(current.version))
