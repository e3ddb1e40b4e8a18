"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: verification/consistency
failures exit 2, resource guards exit 3, bad input exits 4.
"""


class SqfreeError(Exception):
    pass


class InputError(SqfreeError):
    """Malformed flags, files, or out-of-range parameters."""


class VerificationError(SqfreeError):
    """An exact check that must hold did not (or could not be compared)."""


class ResourceGuardError(SqfreeError):
    """A computation was refused because its projected cost is too large."""
