"""Fractional Helmholtz scattering: kernel, Lippmann-Schwinger forward solver and factorization-method imaging."""

from ._core import (
    KernelParams,
    RunConfig,
    __version__,
    bessel_j,
    bessel_k0,
    bessel_k1,
    bessel_y,
    cell_mass,
    forward,
    gamma,
    hankel1_0,
    helm_fundamental,
    hyp1f1,
    hyp2f1,
    indicator_map,
    lu_solve,
    parse_config,
    phi,
    phi_delta,
    spectral_F,
    struve_h0,
    struve_k0,
    svd,
    validate_direct,
)

__all__ = [
    "KernelParams",
    "RunConfig",
    "__version__",
    "bessel_j",
    "bessel_k0",
    "bessel_k1",
    "bessel_y",
    "cell_mass",
    "forward",
    "gamma",
    "hankel1_0",
    "helm_fundamental",
    "hyp1f1",
    "hyp2f1",
    "indicator_map",
    "lu_solve",
    "parse_config",
    "phi",
    "phi_delta",
    "spectral_F",
    "struve_h0",
    "struve_k0",
    "svd",
    "validate_direct",
]
