"""Shared builders for small algebras and bimodules used across the suite."""

import numpy as np
import pytest

from coring_lab.algebra import Algebra, matrix_algebra
from coring_lab.bimodule import Bimodule


def field_algebra(field, name="k"):
    return Algebra(field, [[[1]]], [1], name=name)


def dual_numbers(field, name="k[x]/(x^2)"):
    # basis {1, x} with x * x = 0
    c = field.zeros((2, 2, 2))
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    c[1, 0, 1] = 1
    return Algebra(field, c, [1, 0], name=name)


def trivial_bimodule(field, n, name=None):
    """k^n with scalars acting on both sides."""
    k = field_algebra(field)
    lam = field.eye(n)[None, :, :]
    rho = field.eye(n)[:, None, :]
    return Bimodule(k, k, lam, rho, name=name or f"k^{n}")


def row_module(field):
    """Rows k^(1x2) as a (k, M_2)-bimodule."""
    k = field_algebra(field)
    m2 = matrix_algebra(2, field)
    n = 2
    rho = field.zeros((n, 4, n))
    for i in range(n):
        for kk in range(n):
            for l in range(n):
                if i == kk:
                    rho[i, kk * n + l, l] = 1  # e_i . E_kl = delta_ik e_l
    lam = field.eye(n)[None, :, :]
    return Bimodule(k, m2, lam, rho, name="rows")


def column_module(field):
    """Columns k^(2x1) as an (M_2, k)-bimodule."""
    k = field_algebra(field)
    m2 = matrix_algebra(2, field)
    n = 2
    lam = field.zeros((4, n, n))
    for kk in range(n):
        for l in range(n):
            for j in range(n):
                if l == j:
                    lam[kk * n + l, j, kk] = 1  # E_kl . e_j = delta_lj e_k
    rho = field.eye(n)[:, None, :]
    return Bimodule(m2, k, lam, rho, name="cols")


def point_module_over_dual_numbers(field):
    """k as a (dual numbers, k)-bimodule, x acting as zero."""
    b = dual_numbers(field)
    a = field_algebra(field)
    lam = field.zeros((2, 1, 1))
    lam[0, 0, 0] = 1
    rho = field.zeros((1, 1, 1))
    rho[0, 0, 0] = 1
    return Bimodule(b, a, lam, rho, name="k over dual numbers")


def upper_triangular_2(field, name="T2"):
    # basis {E11, E12, E22}
    c = field.zeros((3, 3, 3))
    c[0, 0, 0] = 1  # E11 E11
    c[0, 1, 1] = 1  # E11 E12
    c[1, 2, 1] = 1  # E12 E22
    c[2, 2, 2] = 1  # E22 E22
    return Algebra(field, c, [1, 0, 1], name=name)


def matrix_coring(n, field):
    """Hand-built n x n matrix coring over the field: an oracle independent
    of the comatrix constructor.  Basis c_ij at flat index i*n + j with
    Delta(c_ij) = sum_l c_il (x) c_lj and eps(c_ij) = delta_ij."""
    from coring_lab.coring import Coring

    d = n * n
    carrier = trivial_bimodule(field, d, name=f"c[{n}x{n}]")
    delta_amb = field.zeros((d * d, d))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                delta_amb[(i * n + l) * d + (l * n + j), i * n + j] = 1
    counit = field.zeros((1, d))
    for i in range(n):
        counit[0, i * n + i] = 1
    return Coring(field_algebra(field), carrier, delta_amb, counit)


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)
