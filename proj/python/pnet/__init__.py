"""Proof nets: cut elimination, path-length bounds, Taylor expansion and antireduct search."""

from ._core import (
    MellNet,
    Net,
    PnetError,
    Reduct,
    antireducts,
    phi,
    psi,
    reduces_to,
    theta,
    verify,
)

__all__ = [
    "MellNet",
    "Net",
    "PnetError",
    "Reduct",
    "antireducts",
    "phi",
    "psi",
    "reduces_to",
    "theta",
    "verify",
]
