"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so raise the most specific
class available: CatalogError for anything wrong with zero tables, and
PreconditionError (with a message naming the violated inequality) for
parameter-domain violations.
"""


class ZetaRaceError(Exception):
    """Base class for all package errors."""


class CatalogError(ZetaRaceError):
    """A zero table failed validation or could not be read."""


class CatalogTooShortError(CatalogError):
    """An operation needs zeros beyond the catalog's maximum ordinate."""


class PreconditionError(ZetaRaceError):
    """A documented parameter precondition was violated."""
