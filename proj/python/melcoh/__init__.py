"""Chevalley-Eilenberg cohomology of the Melikian algebra over GF(5)."""

import json

from ._melcoh import (
    UsageError,
    VerificationError,
    basis,
    bracket,
    certify_squares,
    claim_ids,
    cohomology,
    degree,
    dim,
    jacobi_failures,
    sq_value,
    weight,
)
from ._melcoh import verify_json as _verify_json


def verify(claim=None, tag=None, threads=1):
    """Run one claim, a tagged group, or the whole catalog; returns report dicts."""
    return json.loads(_verify_json(claim, tag, threads))


def total(blocks):
    return sum(b["h"] for b in blocks)


__all__ = [
    "UsageError",
    "VerificationError",
    "basis",
    "bracket",
    "certify_squares",
    "claim_ids",
    "cohomology",
    "degree",
    "dim",
    "jacobi_failures",
    "sq_value",
    "total",
    "verify",
    "weight",
]
