"""Brute-force Taylor coefficients of -log L(E, T) from point counts.

    c_n = sum over t, x in F_{r^n} of lambda(x^3 + t^q - t)

with lambda the quadratic character (lambda(0) = 0). This path shares no
code with the Gauss-sum machinery beyond basic field arithmetic.

Writing N(u) = #{t : t^q - t = u} and C(y) = #{x : x^3 = y} gives
c_n = sum_w lambda(w) (N * C)(w), a convolution over the additive group
(Z/p)^d that the transform path evaluates with an FFT.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded, IdentityFailure, ValidationError
from .ff_core import FiniteField
from .orbit_space import TwistParams

DEFAULT_ORACLE_CAP = 10**7
DEFAULT_NAIVE_CAP = 10**7  # (c, x) pairs visited by the direct loop
_CHUNK = 1 << 18


def _field(params: TwistParams, n: int, cap: int) -> FiniteField:
    d = params.nu * n
    size = params.p**d
    if size > cap:
        raise CapExceeded(f"oracle field F_{params.p}^{d}", size, cap)
    return FiniteField(params.p, d, cap=cap, table_cap=cap)


def _quadratic(F: FiniteField) -> np.ndarray:
    """lambda on encodings 0 .. |F|-1."""
    log = F.log_table
    lam = np.where(log % 2 == 0, 1, -1).astype(np.int64)
    lam[0] = 0
    return lam


def _cube_counts(F: FiniteField) -> np.ndarray:
    n = F.size - 1
    j = np.arange(n, dtype=np.int64)
    cubes = F.exp_table[(3 * j) % n]
    C = np.bincount(cubes, minlength=F.size)
    C[0] += 1
    return C


def _as_map(F: FiniteField, f: int) -> np.ndarray:
    """F_p-matrix of t -> t^q - t with q = p^f."""
    P = F.frobenius_matrix
    Pf = np.eye(F.degree, dtype=np.int64)
    for _ in range(f):
        Pf = (P @ Pf) % F.p
    return (Pf - np.eye(F.degree, dtype=np.int64)) % F.p


def _image_counts(F: FiniteField, f: int) -> np.ndarray:
    """N(u) for every encoding u."""
    A = _as_map(F, f)
    N = np.zeros(F.size, dtype=np.int64)
    for start in range(0, F.size, _CHUNK):
        t = np.arange(start, min(start + _CHUNK, F.size), dtype=np.int64)
        u = F.encode_array(F.digits_array(t) @ A.T)
        N += np.bincount(u, minlength=F.size)
    return N


def _to_grid(F: FiniteField, a: np.ndarray) -> np.ndarray:
    # flat encoding -> digit grid; C-order reshape puts c_{d-1} on axis 0,
    # and coordinatewise addition mod p is all the transform needs
    return a.reshape((F.p,) * F.degree)


def coefficient_transform(params: TwistParams, n: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    F = _field(params, n, cap)
    lam = _quadratic(F)
    N = _image_counts(F, params.f)
    C = _cube_counts(F)
    conv = np.fft.ifftn(np.fft.fftn(_to_grid(F, N.astype(float))) * np.fft.fftn(_to_grid(F, C.astype(float))))
    real = conv.real.reshape(-1)
    counts = np.rint(real)
    err = max(float(np.max(np.abs(real - counts))), float(np.max(np.abs(conv.imag))))
    if err >= 0.25:
        raise IdentityFailure(f"transform rounding residual {err:.3g} too large")
    counts = counts.astype(np.int64)
    if counts.sum() != F.size**2:
        raise IdentityFailure("convolution does not account for every (t, x) pair")
    return int(np.dot(counts, lam))


def coefficient_naive(params: TwistParams, n: int, cap: int = DEFAULT_NAIVE_CAP) -> int:
    """Same number by looping over u = t^q - t and summing lambda(x^3 + u) over x."""
    F = _field(params, n, DEFAULT_ORACLE_CAP)
    N = _image_counts(F, params.f)
    image = np.flatnonzero(N)
    if image.size * F.size > cap:
        raise CapExceeded("naive oracle (c, x) pairs", image.size * F.size, cap)
    lam = _quadratic(F)
    xs = np.arange(F.size, dtype=np.int64)
    cube_digits = F.digits_array(_cube_values(F, xs))
    u_digits = F.digits_array(image)
    total = 0
    for u, ud in zip(image, u_digits):
        s = int(lam[F.encode_array(cube_digits + ud)].sum())
        total += int(N[u]) * s
    return total


def _cube_values(F: FiniteField, xs: np.ndarray) -> np.ndarray:
    log = F.log_table[xs]
    out = F.exp_table[(3 * np.maximum(log, 0)) % (F.size - 1)]
    return np.where(xs == 0, 0, out)


def l_taylor_oracle(params: TwistParams, n_max: int, cap: int = DEFAULT_ORACLE_CAP,
                    method: str = "transform") -> list[int]:
    """[c_1, ..., c_n_max]."""
    if n_max < 0:
        raise ValidationError("n_max must be nonnegative")
    if params.p ** (params.nu * n_max) > cap:
        raise CapExceeded(f"oracle field F_{params.p}^{params.nu * n_max}", params.p ** (params.nu * n_max), cap)
    if method == "transform":
        return [coefficient_transform(params, n, cap) for n in range(1, n_max + 1)]
    if method == "naive":
        return [coefficient_naive(params, n, cap) for n in range(1, n_max + 1)]
    raise ValidationError(f"unknown oracle method {method!r}")


def max_prefix(params: TwistParams, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Largest n with r^n within the cap."""
    n = 0
    while params.r ** (n + 1) <= cap:
        n += 1
    return n
