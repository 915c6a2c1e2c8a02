"""Finite-type pseudo-ball geometry, rescaling, and Zalcman-type renormalization."""
from .domain import (
    DomainModel,
    bundled_domain,
    chain_engulf,
    epsilon_of,
    frame,
    j_func,
    load_domain,
    loads_domain,
    measure_catlin_constants,
    normalizing_map,
    rho,
    tau,
)
from .kernels import BACKEND
from .kobayashi import catlin_lower_bound, kobayashi_upper, m_metric
from .poly import MixedPoly
from .renorm import renormalize, schwarz_check, sigma_estimate
from .rescaling import limit_domain, normality_experiment, pba_probe, rescale_map

__all__ = [
    "BACKEND",
    "DomainModel",
    "MixedPoly",
    "bundled_domain",
    "catlin_lower_bound",
    "chain_engulf",
    "epsilon_of",
    "frame",
    "j_func",
    "kobayashi_upper",
    "limit_domain",
    "load_domain",
    "loads_domain",
    "m_metric",
    "measure_catlin_constants",
    "normality_experiment",
    "normalizing_map",
    "pba_probe",
    "renormalize",
    "rescale_map",
    "rho",
    "schwarz_check",
    "sigma_estimate",
    "tau",
]
