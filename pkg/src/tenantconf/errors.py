"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the service layer
can map failures onto wire-level error bodies without string matching.
"""

from __future__ import annotations


class TenantConfError(Exception):
    """Base class for all domain errors."""

    code = "internal"


class BadTenantId(TenantConfError):
    code = "bad-tenant-id"


class CoordinateError(TenantConfError):
    """Malformed grid cell coordinate (expected e.g. ``A3`` .. ``ZZ42``)."""

    code = "bad-coordinate"


class UnknownCategory(TenantConfError):
    code = "unknown-category"


class UnknownTenant(TenantConfError):
    code = "unknown-tenant"


class TenantExists(TenantConfError):
    code = "tenant-exists"


class UnknownRole(TenantConfError):
    code = "unknown-role"


class UnknownLanguage(TenantConfError):
    code = "unknown-language"


class UnknownBackendObject(TenantConfError):
    code = "unknown-backend-object"


class UnknownWorkflow(TenantConfError):
    code = "unknown-workflow"


class DanglingConnection(TenantConfError):
    code = "dangling-connection"


class DanglingDatabase(TenantConfError):
    code = "dangling-database"


class NoDefaultDatabase(TenantConfError):
    code = "no-default-database"


class AuthzDenied(TenantConfError):
    """Access refused by the isolation guard."""

    code = "forbidden"

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class StorageError(TenantConfError):
    code = "storage-error"


class RegistryCorrupt(TenantConfError):
    code = "registry-corrupt"


class MissingDefault(TenantConfError):
    code = "missing-default"


class DanglingLocation(TenantConfError):
    code = "dangling-location"


class VersionConflict(TenantConfError):
    code = "version-conflict"

    def __init__(self, expected: int, actual: int):
        super().__init__(f"version conflict: stored={expected} submitted={actual}")
        self.expected = expected
        self.actual = actual


class DatabaseAlreadyAssigned(TenantConfError):
    code = "database-already-assigned"


class ValidationFailed(TenantConfError):
    """Commit refused because validate_document reported violations."""

    code = "validation-failed"

    def __init__(self, report):
        super().__init__(f"validation failed: {report}")
        self.report = report
