"""Secure multi-tenant access guard: policy decisions plus an audit trail.

The policy is a pure function (:func:`decide`); :class:`IsolationGuard`
wraps it with audit logging so every Allow/Deny produces exactly one
record. Tenants may only Read/Write/BeginConfigure their own tenant;
everything else (registry reads, database assignment and other tenant
lifecycle mutations, which share the DbAssign action class) is
provider-only.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ._xmlio import XmlStructureError, XmlWriter, load_tree
from .errors import AuthzDenied, RegistryCorrupt
from .model import Category


class PrincipalKind(Enum):
    TENANT = "tenant"
    PROVIDER = "provider"


@dataclass(frozen=True)
class Principal:
    """Caller identity: a tenant (exactly one id) or the provider."""

    kind: PrincipalKind
    tenant: str | None = None
    token: str = ""

    def __post_init__(self):
        if self.kind is PrincipalKind.TENANT and not self.tenant:
            raise ValueError("tenant principal needs a tenant id")

    @classmethod
    def for_tenant(cls, tenant: str, token: str = "") -> "Principal":
        return cls(PrincipalKind.TENANT, tenant, token)

    @classmethod
    def provider(cls, token: str = "") -> "Principal":
        return cls(PrincipalKind.PROVIDER, None, token)

    def wire_name(self) -> str:
        if self.kind is PrincipalKind.PROVIDER:
            return "provider"
        return f"tenant:{self.tenant}"


class Action(Enum):
    READ = "Read"
    WRITE = "Write"
    BEGIN_CONFIGURE = "BeginConfigure"
    REGISTRY_READ = "RegistryRead"
    DB_ASSIGN = "DbAssign"


_TENANT_ACTIONS = frozenset({Action.READ, Action.WRITE, Action.BEGIN_CONFIGURE})


@dataclass(frozen=True)
class Decision:
    allowed: bool
    reason: str | None = None


def decide(principal: Principal, action: Action, tenant: str) -> Decision:
    """Pure authorization policy; no side effects."""
    if principal.kind is PrincipalKind.PROVIDER:
        return Decision(True)
    if action not in _TENANT_ACTIONS:
        return Decision(False, "provider-only")
    if principal.tenant != tenant:
        return Decision(False, "cross-tenant")
    return Decision(True)


class AuditLog:
    """Append-only newline-delimited JSON log with monotone timestamps."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._last_ms = 0

    def append(
        self,
        principal: Principal,
        action: Action,
        tenant: str,
        category: Category | None,
        allowed: bool,
    ) -> None:
        with self._lock:
            now_ms = max(int(time.time() * 1000), self._last_ms)
            self._last_ms = now_ms
            secs, ms = divmod(now_ms, 1000)
            stamp = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(secs)) + f".{ms:03d}Z"
            record = {
                "ts": stamp,
                "principal": principal.wire_name(),
                "action": action.value,
                "tenant": tenant,
                "category": category.slug if category else None,
                "outcome": "Allowed" if allowed else "Denied",
            }
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, separators=(",", ":")) + "\n")


class IsolationGuard:
    """Authorizes every store/resolver access and records the audit trail."""

    def __init__(self, audit: AuditLog):
        self.audit = audit

    def authorize(
        self,
        principal: Principal,
        action: Action,
        tenant: str,
        category: Category | None = None,
    ) -> Decision:
        decision = decide(principal, action, tenant)
        self.audit.append(principal, action, tenant, category, decision.allowed)
        return decision

    def require(
        self,
        principal: Principal,
        action: Action,
        tenant: str,
        category: Category | None = None,
    ) -> None:
        decision = self.authorize(principal, action, tenant, category)
        if not decision.allowed:
            raise AuthzDenied(decision.reason or "denied")


# --- bearer-token credential file ----------------------------------------------


def load_tokens(path: Path) -> dict[str, Principal]:
    """Read tokens.xml: TOKENS/TOKEN{VALUE,KIND,TENANT?} -> token->Principal map."""
    try:
        root = load_tree(Path(path).read_bytes())
    except XmlStructureError as exc:
        raise RegistryCorrupt(f"tokens file: {exc}") from None
    if root.tag != "TOKENS":
        raise RegistryCorrupt(f"tokens file: expected <TOKENS>, got <{root.tag}>")
    out: dict[str, Principal] = {}
    for node in root.children:
        if node.tag != "TOKEN":
            raise RegistryCorrupt(f"tokens file: unexpected <{node.tag}>")
        fields = {c.tag: c.text.strip() for c in node.children}
        value = fields.get("VALUE", "")
        kind = fields.get("KIND", "")
        if not value or kind not in ("tenant", "provider"):
            raise RegistryCorrupt("tokens file: TOKEN needs VALUE and KIND tenant|provider")
        if value in out:
            raise RegistryCorrupt(f"tokens file: duplicate token {value!r}")
        if kind == "provider":
            out[value] = Principal.provider(value)
        else:
            tenant = fields.get("TENANT", "")
            if not tenant:
                raise RegistryCorrupt("tokens file: tenant TOKEN needs TENANT")
            out[value] = Principal.for_tenant(tenant, value)
    return out


def write_tokens(path: Path, principals: list[Principal]) -> None:
    """Serialize a token->principal map in canonical form (operator helper)."""
    w = XmlWriter()
    w.open("TOKENS")
    for p in principals:
        w.open("TOKEN")
        w.leaf("VALUE", p.token)
        w.leaf("KIND", p.kind.value)
        if p.kind is PrincipalKind.TENANT:
            w.leaf("TENANT", p.tenant or "")
        w.close("TOKEN")
    w.close("TOKENS")
    Path(path).write_bytes(w.bytes())
