"""Exact local epsilon-factor engine (python bindings)."""

try:
    from ._eps0 import (  # noqa: F401
        InputError,
        InvariantError,
        compute,
        compute_virtual,
        oracle_value,
        reduce,
        swan,
        table,
        verify,
    )
except ImportError:  # in-tree builds place the extension next to the package
    from _eps0 import (  # noqa: F401
        InputError,
        InvariantError,
        compute,
        compute_virtual,
        oracle_value,
        reduce,
        swan,
        table,
        verify,
    )

__all__ = [
    "InputError",
    "InvariantError",
    "compute",
    "compute_virtual",
    "oracle_value",
    "reduce",
    "swan",
    "table",
    "verify",
]
