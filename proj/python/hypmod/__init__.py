"""Finite-field hypergeometric sums and the eigenforms they count."""

import json

from ._core import (
    HypmodError,
    ar_congruence,
    check_identity,
    eigen_coefficient,
    eta_quotient,
    family_ids,
    gamma_p,
    hecke_table,
    identity_names,
    jacobi_mod_p,
    k_series,
    report_schema_version,
    verify,
)
from ._core import sweep_json as _sweep_json


def sweep(theorem, pmax, backend="exact", jobs=1, rs=None, cprimes=None):
    """Run a prime sweep and return the report as a dict."""
    return json.loads(_sweep_json(theorem, pmax, backend, jobs, rs, cprimes))


__all__ = [
    "HypmodError",
    "ar_congruence",
    "check_identity",
    "eigen_coefficient",
    "eta_quotient",
    "family_ids",
    "gamma_p",
    "hecke_table",
    "identity_names",
    "jacobi_mod_p",
    "k_series",
    "report_schema_version",
    "sweep",
    "verify",
]
