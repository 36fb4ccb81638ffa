"""Exception hierarchy shared across the toolkit.

Exit-code contract for the CLI: math failures (axioms, assertions about
structure) exit 1, malformed input exits 2, refused guards exit 3.
"""
from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class ScalarParseError(ToolkitError, ValueError):
    """Scalar text does not match the sign/digits[/digits] syntax."""


class InstanceFormatError(ToolkitError, ValueError):
    """Instance file is malformed (exit code 2)."""


class GuardError(ToolkitError, RuntimeError):
    """An oracle or field guard refused to run (exit code 3)."""


class CharacteristicError(GuardError):
    """Catalog instance does not exist over the requested characteristic."""


class DecompositionError(ToolkitError, RuntimeError):
    """A decomposition-level precondition or certified assertion failed."""
