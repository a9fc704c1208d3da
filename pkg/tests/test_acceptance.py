"""Acceptance suite: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance and count is pinned here, not configurable.
"""

from __future__ import annotations

import hashlib
import random
import time
from pathlib import Path

import pytest

import tenantconf.registry as registry_mod
from tenantconf import codec, wire
from tenantconf.guard import Action, AuditLog, IsolationGuard, Principal, decide
from tenantconf.model import Category, CssElement, document
from tenantconf.registry import TenantStore
from tenantconf.seed import install_data_root

from generators import commit_world, random_document, random_world
from naive import (
    naive_backend_call,
    naive_bo_enabled,
    naive_bol_access,
    naive_database,
    naive_doc,
    naive_page_view,
    naive_role_profiles,
    naive_setting,
)

PROVIDER = Principal.provider()

# Categories with no cross-document references; random interleavings may
# commit them in any order without tripping referential validation.
SELF_CONTAINED = (
    Category.CSS_ELEMENTS,
    Category.IMAGES,
    Category.SCRIPTS,
    Category.PROPERTIES,
    Category.BLOCKS,
    Category.FIELDS,
    Category.FRONTEND_BOS,
    Category.CONNECTIONS,
    Category.BUSINESS_ROLES,
    Category.DATABASES,
    Category.KEY_VALUES,
)

# Referential closure used when committing random category subsets.
DEPENDENCIES = {
    Category.BACKEND_BINDINGS: Category.CONNECTIONS,
    Category.BOL_ACCESS: Category.BUSINESS_ROLES,
    Category.WORKFLOWS: Category.BUSINESS_ROLES,
    Category.DATA_OBJECTS: Category.DATABASES,
}


def fresh_store(root: Path, tenants: list[str]) -> TenantStore:
    install_data_root(root)
    store = TenantStore(root)
    for tenant in tenants:
        store.register_tenant(PROVIDER, tenant)
    return store


def resolved_fingerprint(store: TenantStore, tenant: str) -> bytes:
    """Hash of every resolved category document for one tenant."""
    digest = hashlib.sha256()
    for category in Category:
        if category is Category.PROPERTIES:
            for lang in store.languages():
                digest.update(codec.serialize(store._load_effective(tenant, category, lang)))
        else:
            digest.update(codec.serialize(store._load_effective(tenant, category)))
    return digest.digest()


def defaults_fingerprint(root: Path) -> bytes:
    digest = hashlib.sha256()
    for path in sorted((root / "defaults").iterdir()):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    return digest.digest()


def commit_random(store: TenantStore, rng: random.Random, tenant: str, category: Category) -> None:
    principal = Principal.for_tenant(tenant)
    current = store.begin_configure(principal, tenant, category)
    doc = random_document(rng, category)
    store.commit(principal, tenant, category, doc.with_version(current.version))


def test_codec_round_trip_thousand_documents_per_category():
    """1,000 generated documents per category; parse(serialize(d)) == d; < 60 s."""
    rng = random.Random(20260810)
    started = time.perf_counter()
    failures = 0
    for category in Category:
        for _ in range(1000):
            doc = random_document(rng, category)
            data = codec.serialize(doc)
            parsed = codec.parse(category, data, language="en")
            if parsed != doc or codec.serialize(parsed) != data:
                failures += 1
    elapsed = time.perf_counter() - started
    assert failures == 0
    assert elapsed < 60.0, f"round-trip took {elapsed:.1f}s"
    print(f"\nACCEPTANCE codec-round-trip: PASS (15000 documents, {elapsed:.1f}s)")


def test_paper_fixture_fidelity():
    """Every normalized paper snippet parses, validates, re-serializes byte-exact."""
    from tenantconf.seed import default_file_name
    from tenantconf.validation import CrossRefs, validate_document

    golden_dir = Path(__file__).parent / "golden"
    context = CrossRefs(
        connection_names=frozenset({"CRM7"}),
        role_names=frozenset({"SP_ROLE"}),
        database_names=frozenset({"CRMDB", "CRMBI"}),
    )
    for category in Category:
        data = (golden_dir / default_file_name(category)).read_bytes()
        doc = codec.parse(category, data)
        report = validate_document(doc, context)
        assert report.ok, f"{category.slug}: {report}"
        assert codec.serialize(doc) == data, f"{category.slug} not byte-stable"
    print("ACCEPTANCE paper-fixture-fidelity: PASS (15 golden files byte-exact)")


def test_tenant_isolation_metamorphic(tmp_path):
    """200 random op sequences over 5 tenants; deleting one tenant's writes
    leaves every other tenant's resolved outputs byte-identical."""
    tenants = ["T1", "T2", "T3", "T4", "T5"]
    master = random.Random(555)
    violations = 0
    for seq_no in range(200):
        seed = master.randrange(2**32)
        rng = random.Random(seed)
        ops = []
        for _ in range(rng.randint(1, 6)):
            tenant = rng.choice(tenants)
            category = rng.choice(SELF_CONTAINED)
            kind = rng.choices(["commit", "begin", "reset"], weights=[6, 2, 1])[0]
            ops.append((kind, tenant, category, rng.randrange(2**32)))
        victim = rng.choice(sorted({op[1] for op in ops}))

        def run(ops_subset, root):
            store = fresh_store(root, tenants)
            for kind, tenant, category, op_seed in ops_subset:
                principal = Principal.for_tenant(tenant)
                if kind == "commit":
                    commit_random(store, random.Random(op_seed), tenant, category)
                elif kind == "begin":
                    store.begin_configure(principal, tenant, category)
                else:
                    store.reset_override(principal, tenant, category)
            return store

        full = run(ops, tmp_path / f"iso{seq_no}a")
        trimmed = run(
            [op for op in ops if op[1] != victim], tmp_path / f"iso{seq_no}b"
        )
        for tenant in tenants:
            if tenant == victim:
                continue
            if resolved_fingerprint(full, tenant) != resolved_fingerprint(trimmed, tenant):
                violations += 1
    assert violations == 0
    print("ACCEPTANCE tenant-isolation: PASS (200 sequences, 0 violations)")


def test_cross_tenant_access_matrix(tmp_path):
    """Exhaustive deny for every cross-tenant (principal, action) pair and for
    provider-only actions under tenant tokens; one audit record per decision."""
    tenants = [f"TEN{i}" for i in range(6)]
    checks = 0
    guard = IsolationGuard(AuditLog(tmp_path / "audit.log"))
    for a in tenants:
        principal = Principal.for_tenant(a)
        for b in tenants:
            for action in Action:
                decision = guard.authorize(principal, action, b, None)
                checks += 1
                if a != b:
                    assert not decision.allowed, (a, b, action)
                elif action in (Action.READ, Action.WRITE, Action.BEGIN_CONFIGURE):
                    assert decision.allowed
                else:
                    assert not decision.allowed and decision.reason == "provider-only"
        assert not guard.authorize(principal, Action.REGISTRY_READ, "-").allowed
        checks += 1
    for action in Action:
        for b in tenants:
            assert guard.authorize(Principal.provider(), action, b).allowed
            checks += 1
    audit_lines = (tmp_path / "audit.log").read_text().splitlines()
    assert len(audit_lines) == checks
    print(f"ACCEPTANCE cross-tenant-matrix: PASS ({checks} decisions, all correct)")


def test_copy_on_write_fidelity(tmp_path):
    """First configure copies the default value-equal; default files stay
    byte-identical through begin/commit/reset traffic."""
    root = tmp_path / "cow"
    store = fresh_store(root, ["T1", "T2"])
    baseline = defaults_fingerprint(root)
    rng = random.Random(77)
    for category in Category:
        copy = store.begin_configure(Principal.for_tenant("T1"), "T1", category)
        default = store.load_default(
            category, store.default_language() if category is Category.PROPERTIES else None
        )
        assert copy == default, category
        assert codec.serialize(copy) == codec.serialize(default)
    for _ in range(40):
        commit_random(store, rng, rng.choice(["T1", "T2"]), rng.choice(SELF_CONTAINED))
    for category in (Category.FIELDS, Category.BLOCKS):
        store.reset_override(Principal.for_tenant("T1"), "T1", category)
    assert defaults_fingerprint(root) == baseline
    print("ACCEPTANCE copy-on-write: PASS (15 copies value-equal, defaults untouched)")


def test_resolver_oracle_equivalence(tmp_path):
    """500 random worlds: every resolver operation agrees with the naive
    re-reading implementation; zero mismatches."""
    master = random.Random(31337)
    mismatches = 0
    for world_no in range(500):
        rng = random.Random(master.randrange(2**32))
        root = tmp_path / f"w{world_no}"
        store = fresh_store(root, ["T1", "T2"])
        resolver = __import__("tenantconf.resolver", fromlist=["Resolver"]).Resolver(store)
        world = random_world(rng)
        chosen = {c for c in Category if rng.random() < 0.5}
        for dependent, dependency in DEPENDENCIES.items():
            if dependent in chosen:
                chosen.add(dependency)
        principal = Principal.for_tenant("T1")
        from generators import COMMIT_ORDER

        for category in COMMIT_ORDER:
            if category in chosen:
                current = store.begin_configure(principal, "T1", category)
                store.commit(
                    principal, "T1", category, world[category].with_version(current.version)
                )

        for tenant, p in (("T1", principal), ("T2", Principal.for_tenant("T2"))):
            for category in Category:
                if resolver.resolve_category(p, tenant, category) != naive_doc(
                    root, tenant, category
                ):
                    mismatches += 1
        roles_doc = (
            world[Category.BUSINESS_ROLES]
            if Category.BUSINESS_ROLES in chosen
            else store.load_default(Category.BUSINESS_ROLES)
        )
        role = rng.choice([r.name for r in roles_doc.body])
        view = resolver.resolve_page_view(principal, "T1", f"Page{rng.randint(1,3)}", "en", role)
        if wire.page_view_dict(view) != naive_page_view(root, "T1", view.page, "en", role):
            mismatches += 1
        bo_names = [t.bo_name for t in world[Category.FRONTEND_BOS].body] + ["UNSEEN"]
        bo = rng.choice(bo_names)
        if resolver.check_bo_enabled(principal, "T1", bo) != naive_bo_enabled(root, "T1", bo):
            mismatches += 1
        if tuple(resolver.resolve_role_profiles(principal, "T1", role)) != naive_role_profiles(
            root, "T1", role
        ):
            mismatches += 1
        bol = rng.choice(["SALES_BOL", "FINANCE_BOL", "G0_BOL", "NOPE"])
        if resolver.check_bol_access(principal, "T1", role, bol) != naive_bol_access(
            root, "T1", role, bol
        ):
            mismatches += 1
        for binding in world[Category.BACKEND_BINDINGS].body[:2]:
            if Category.BACKEND_BINDINGS not in chosen:
                break
            got = wire.backend_call_dict(
                resolver.resolve_backend_call(principal, "T1", binding.be_name)
            )
            if got != naive_backend_call(root, "T1", binding.be_name):
                mismatches += 1
        do_names = [b.do_name for b in world[Category.DATA_OBJECTS].body][:2] + ["UNMAPPED"]
        for do_name in do_names:
            try:
                got = wire.database_dict(resolver.resolve_database(principal, "T1", do_name))
            except Exception:
                got = {"error": "raised"}
            expected = naive_database(root, "T1", do_name)
            if "error" in (expected or {}):
                if got.get("error") != "raised" and got != expected:
                    mismatches += 1
            elif got != expected:
                mismatches += 1
        keys = [kv.key for kv in world[Category.KEY_VALUES].body][:3] + ["missing key"]
        for key in keys:
            if resolver.get_setting(principal, "T1", key) != naive_setting(root, "T1", key):
                mismatches += 1
    assert mismatches == 0
    print("ACCEPTANCE resolver-oracle: PASS (500 worlds, 0 mismatches)")


def test_cache_freshness_isolation_and_speed(tmp_path):
    """10,000 randomized commit/read ops with zero stale reads; warm reads
    invoke the storage loader exactly zero times; warm read >= 5x faster
    than a cold parse of a 100-entry document."""
    root = tmp_path / "cache"
    tenants = ["T1", "T2", "T3"]
    store = fresh_store(root, tenants)
    rng = random.Random(4242)
    categories = [Category.CSS_ELEMENTS, Category.BLOCKS, Category.KEY_VALUES]
    expected: dict[tuple[str, str], tuple[int, bytes]] = {}
    stale_reads = 0
    commits = 0
    for _ in range(10_000):
        tenant = rng.choice(tenants)
        category = rng.choice(categories)
        principal = Principal.for_tenant(tenant)
        if rng.random() < 0.1:
            current = store.begin_configure(principal, tenant, category)
            doc = random_document(rng, category)
            version = store.commit(principal, tenant, category, doc.with_version(current.version))
            expected[(tenant, category.slug)] = (version, codec.serialize(doc))
            commits += 1
        else:
            doc = store.read_resolved(principal, tenant, category)
            want = expected.get((tenant, category.slug))
            if want is not None and (
                doc.version != want[0] or codec.serialize(doc) != want[1]
            ):
                stale_reads += 1
    assert stale_reads == 0

    # Warm reads bypass storage: the parser is unreachable on the hit path.
    store.read_resolved(Principal.for_tenant("T1"), "T1", Category.FIELDS)
    real_parse = codec.parse
    invocations = {"n": 0}

    def counting_parse(*args, **kwargs):
        invocations["n"] += 1
        return real_parse(*args, **kwargs)

    codec.parse = counting_parse
    try:
        for _ in range(500):
            store.read_resolved(Principal.for_tenant("T1"), "T1", Category.FIELDS)
    finally:
        codec.parse = real_parse
    assert invocations["n"] == 0

    # Measured speedup on a 100-entry document.
    big = document(
        Category.CSS_ELEMENTS,
        tuple(CssElement(f"css{i}", f"/assets/sheet{i}.css") for i in range(100)),
    )
    principal = Principal.for_tenant("T1")
    current = store.begin_configure(principal, "T1", Category.CSS_ELEMENTS)
    store.commit(principal, "T1", Category.CSS_ELEMENTS, big.with_version(current.version))
    cold_samples = []
    for _ in range(20):
        store.cache.clear()
        start = time.perf_counter()
        store.read_resolved(principal, "T1", Category.CSS_ELEMENTS)
        cold_samples.append(time.perf_counter() - start)
    warm_samples = []
    for _ in range(200):
        start = time.perf_counter()
        store.read_resolved(principal, "T1", Category.CSS_ELEMENTS)
        warm_samples.append(time.perf_counter() - start)
    cold = sorted(cold_samples)[len(cold_samples) // 2]
    warm = sorted(warm_samples)[len(warm_samples) // 2]
    assert cold >= 5 * warm, f"cold={cold*1e6:.0f}us warm={warm*1e6:.0f}us"
    print(
        f"ACCEPTANCE cache: PASS (10000 ops, {commits} commits, 0 stale reads, "
        f"0 warm loader calls, {cold/warm:.0f}x speedup)"
    )


def test_workflow_dry_run_truth_table(tmp_path):
    """{enabled, disabled} x {allowed, forbidden, unlisted}: 6/6 verdicts exact."""
    from tenantconf.model import (
        BolAccessRule,
        BolGrant,
        BoToggle,
        KeyValueSetting,
        WorkflowDef,
        WorkflowTask,
    )
    from tenantconf.resolver import Resolver
    from tenantconf.workflow import Verdict, WorkflowEngine

    root = tmp_path / "wf"
    store = fresh_store(root, ["T1"])
    principal = Principal.for_tenant("T1")
    engine = WorkflowEngine(Resolver(store))

    cases = {
        ("enabled", "allowed"): Verdict.OK,
        ("enabled", "forbidden"): Verdict.BOL_FORBIDDEN,
        ("enabled", "unlisted"): Verdict.BOL_FORBIDDEN,
        ("disabled", "allowed"): Verdict.BO_DISABLED,
        ("disabled", "forbidden"): Verdict.BO_DISABLED,
        ("disabled", "unlisted"): Verdict.BO_DISABLED,
    }
    toggles, settings, tasks = [], [], []
    for i, (bo_state, bol_state) in enumerate(cases):
        bo = f"BO_{bo_state}_{bol_state}"
        toggles.append(BoToggle(bo, bo_state == "enabled"))
        if bol_state != "unlisted":
            settings.append(KeyValueSetting(f"bol.of.{bo}", f"{bol_state.upper()}_BOL"))
        tasks.append(WorkflowTask(i + 1, "step", bo, "run"))

    def commit(category, doc):
        current = store.begin_configure(principal, "T1", category)
        store.commit(principal, "T1", category, doc.with_version(current.version))

    commit(Category.FRONTEND_BOS, document(Category.FRONTEND_BOS, tuple(toggles)))
    commit(
        Category.BOL_ACCESS,
        document(
            Category.BOL_ACCESS,
            (
                BolAccessRule(
                    "SP_ROLE",
                    (BolGrant("ALLOWED_BOL", True), BolGrant("FORBIDDEN_BOL", False)),
                ),
            ),
        ),
    )
    commit(Category.KEY_VALUES, document(Category.KEY_VALUES, tuple(settings)))
    flow = WorkflowDef("WF_TT", "truth table", "SP_ROLE", tuple(tasks))
    trace = engine.dry_run(principal, "T1", flow)
    got = [s.verdict for s in trace.steps]
    assert got == list(cases.values()), got
    print("ACCEPTANCE workflow-truth-table: PASS (6/6 combinations exact)")


def test_crash_atomicity_fifty_interruptions(tmp_path):
    """50 injected interruptions during commit; every post-crash load parses
    and equals either the old or the new document."""
    rng = random.Random(9001)
    survived = 0
    for trial in range(50):
        root = tmp_path / f"crash{trial}"
        store = fresh_store(root, ["T1"])
        principal = Principal.for_tenant("T1")
        category = Category.CSS_ELEMENTS
        old_doc = store.begin_configure(principal, "T1", category)
        new_doc = document(
            category,
            (CssElement("B2C", f"/crash/{trial}.css"),) + tuple(old_doc.body[1:]),
            version=old_doc.version,
        )

        mode = trial % 3
        real_replace = registry_mod._replace
        real_write = registry_mod._write_temp
        calls = {"n": 0}

        def flaky_replace(src, dst, _mode=mode, _calls=calls, _real=real_replace):
            _calls["n"] += 1
            # mode 1: die between temp-write and doc rename;
            # mode 2: die between doc rename and registry rename.
            if _mode == 1 and _calls["n"] == 1:
                raise OSError("crash before doc rename")
            if _mode == 2 and _calls["n"] == 2:
                raise OSError("crash before registry rename")
            _real(src, dst)

        def torn_write(path, data, _mode=mode, _real=real_write):
            if _mode == 0 and path.name.startswith(category.slug):
                with open(path, "wb") as fh:  # torn temp file, never swapped in
                    fh.write(data[: rng.randint(1, max(1, len(data) // 2))])
                raise OSError("crash mid temp write")
            _real(path, data)

        registry_mod._replace = flaky_replace
        registry_mod._write_temp = torn_write
        try:
            with pytest.raises(OSError):
                store.commit(principal, "T1", category, new_doc)
        finally:
            registry_mod._replace = real_replace
            registry_mod._write_temp = real_write

        reopened = TenantStore(root)
        recovered = reopened.read_resolved(principal, "T1", category)
        assert recovered in (old_doc, new_doc), f"trial {trial} yielded a hybrid"
        survived += 1
    assert survived == 50
    print("ACCEPTANCE crash-atomicity: PASS (50 interruptions, old-or-new every time)")
