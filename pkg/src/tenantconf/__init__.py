"""Multi-tenant SaaS ERP configuration subsystem.

Typed per-category configuration documents, a provider-controlled central
registry with copy-on-first-configure from vendor defaults, strict tenant
isolation, per-tenant effective-configuration resolution, and a versioned
read-through cache; exposed as a library, a REST service and a CLI.
"""

__version__ = "0.1.0"
