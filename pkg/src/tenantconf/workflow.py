"""Workflow validation and permission dry-runs.

A workflow is an ordered task list bound to a business role. The dry run
walks every task without executing anything: a task passes only when its
business object is enabled and the role may use the BOL that object
belongs to. BO-to-BOL membership comes from the tenant's key-value
setting ``bol.of.<bo>``; objects without one fall into the UNASSIGNED
BOL, which deny-by-default forbids.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import UnknownWorkflow, ValidationFailed
from .guard import Action, Principal
from .model import Category, WorkflowDef, check_tenant_id, document
from .resolver import Resolver
from .validation import DUP_NAME, CrossRefs, ValidationReport, validate_document

UNASSIGNED_BOL = "UNASSIGNED"


class Verdict(Enum):
    OK = "Ok"
    BO_DISABLED = "BoDisabled"
    BOL_FORBIDDEN = "BolForbidden"


@dataclass(frozen=True)
class TraceStep:
    step_no: int
    bo_name: str
    method: str
    verdict: Verdict


@dataclass(frozen=True)
class DryRunTrace:
    workflow_id: str
    steps: tuple[TraceStep, ...]


class WorkflowEngine:
    def __init__(self, resolver: Resolver):
        self.resolver = resolver

    def _authorize(self, principal: Principal, tenant: str) -> None:
        check_tenant_id(tenant)
        self.resolver.store.guard.require(
            principal, Action.READ, tenant, Category.WORKFLOWS
        )

    def validate_workflow(
        self, principal: Principal, tenant: str, wf: WorkflowDef
    ) -> ValidationReport:
        """Role binding, step ordering, task completeness; violations are data."""
        self._authorize(principal, tenant)
        return self._validate(tenant, wf)

    def _validate(self, tenant: str, wf: WorkflowDef) -> ValidationReport:
        roles = self.resolver._doc(tenant, Category.BUSINESS_ROLES).body
        report = validate_document(
            document(Category.WORKFLOWS, (wf,)),
            CrossRefs(role_names=frozenset(r.name for r in roles)),
        )
        # A single definition cannot collide with itself on id.
        return ValidationReport(
            tuple(v for v in report.violations if v.code != DUP_NAME)
        )

    def dry_run(self, principal: Principal, tenant: str, wf: WorkflowDef) -> DryRunTrace:
        """Permission-only walk of the task sequence; covers every task even
        after a failing verdict."""
        self._authorize(principal, tenant)
        return self._dry_run(tenant, wf)

    def _dry_run(self, tenant: str, wf: WorkflowDef) -> DryRunTrace:
        report = self._validate(tenant, wf)
        if not report.ok:
            raise ValidationFailed(report)
        steps = []
        for task in wf.tasks:
            if not self.resolver._bo_enabled(tenant, task.bo_name):
                verdict = Verdict.BO_DISABLED
            else:
                bol = self.resolver._setting(tenant, f"bol.of.{task.bo_name}")
                if not isinstance(bol, str):
                    bol = UNASSIGNED_BOL
                allowed = self.resolver._bol_allowed(tenant, wf.role_binding, bol)
                verdict = Verdict.OK if allowed else Verdict.BOL_FORBIDDEN
            steps.append(TraceStep(task.step_no, task.bo_name, task.method, verdict))
        return DryRunTrace(workflow_id=wf.id, steps=tuple(steps))

    def dry_run_stored(
        self, principal: Principal, tenant: str, workflow_id: str
    ) -> DryRunTrace:
        """Dry-run a workflow from the tenant's resolved Workflows document."""
        self._authorize(principal, tenant)
        for wf in self.resolver._doc(tenant, Category.WORKFLOWS).body:
            if wf.id == workflow_id:
                return self._dry_run(tenant, wf)
        raise UnknownWorkflow(f"no workflow {workflow_id!r}")
