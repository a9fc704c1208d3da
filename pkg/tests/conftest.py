from __future__ import annotations

from pathlib import Path

import pytest

from tenantconf.guard import Principal
from tenantconf.registry import TenantStore
from tenantconf.resolver import Resolver
from tenantconf.seed import install_data_root

PROVIDER = Principal.provider("ptok")
T1 = Principal.for_tenant("T1", "t1tok")
T2 = Principal.for_tenant("T2", "t2tok")


@pytest.fixture
def data_root(tmp_path: Path) -> Path:
    root = tmp_path / "data"
    install_data_root(root)
    return root


@pytest.fixture
def store(data_root: Path) -> TenantStore:
    s = TenantStore(data_root)
    s.register_tenant(PROVIDER, "T1")
    s.register_tenant(PROVIDER, "T2")
    return s


@pytest.fixture
def resolver(store: TenantStore) -> Resolver:
    return Resolver(store)
