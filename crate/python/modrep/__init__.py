"""Exact modular representation theory over small finite fields.

The heavy lifting happens in the Rust extension; this package re-exports
its types and helper functions.
"""

from ._native import (
    Group,
    GroupAlgebra,
    Yoshida,
    group_algebra_json,
    rickard_verify,
)

__all__ = [
    "Group",
    "GroupAlgebra",
    "Yoshida",
    "group_algebra_json",
    "rickard_verify",
]
