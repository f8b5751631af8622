"""Weighted Bergman kernels on the unit disc."""

from ._core import (
    ConvergenceError,
    KernelSeries,
    RadialWeight,
    acceptance,
    count_zeros,
    dirac_zero,
    inflation_check,
    kernel_eval,
    lp_probe,
    moments,
    mollify,
    rouche,
    schur_constant,
    schur_integral,
)

__all__ = [
    "ConvergenceError",
    "KernelSeries",
    "RadialWeight",
    "acceptance",
    "count_zeros",
    "dirac_zero",
    "inflation_check",
    "kernel_eval",
    "lp_probe",
    "moments",
    "mollify",
    "rouche",
    "schur_constant",
    "schur_integral",
]
