"""Univariate helpers on coefficient lists (ascending powers).

Exact routines work over Fractions: trimmed lists, division, monic gcd,
Yun's square-free decomposition, Newton-form interpolation.  The numeric
routine builds companion matrices for root extraction.  The zero polynomial
is the empty list and has degree -1 here (internal convention only).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactla import eig_complex
from .multipoly import Polynomial


def trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def degree(coeffs: Sequence) -> int:
    return len(coeffs) - 1


def from_polynomial(p: Polynomial) -> list[Fraction]:
    if p.nvars != 1:
        raise ValueError(f"expected a univariate polynomial, got {p.nvars} variables")
    if p.is_zero():
        return []
    n = p.total_degree()
    out = [Fraction(0)] * (n + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    return out


def to_polynomial(coeffs: Sequence) -> Polynomial:
    return Polynomial(1, {(e,): c for e, c in enumerate(coeffs) if c != 0})


def evaluate(coeffs: Sequence, x):
    """Horner evaluation; exact for Fraction x, complex otherwise."""
    acc = 0 if coeffs and isinstance(x, (int, Fraction)) else 0j
    for c in reversed(coeffs):
        acc = acc * x + (c if isinstance(x, (int, Fraction)) else complex(c))
    return acc


def derivative(coeffs: Sequence) -> list:
    return [k * c for k, c in enumerate(coeffs)][1:]


def divmod_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    """Quotient and remainder over the rationals."""
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(list(a))
    q = [Fraction(0)] * max(0, len(r) - len(b) + 1)
    lead = b[-1]
    while r and len(r) >= len(b):
        shift = len(r) - len(b)
        factor = r[-1] / lead
        q[shift] = factor
        for i, bc in enumerate(b):
            r[shift + i] -= factor * bc
        trim(r)
    return q, r


def monic(coeffs: Sequence[Fraction]) -> list[Fraction]:
    c = trim(list(coeffs))
    if not c:
        return c
    lead = c[-1]
    return [x / lead for x in c]


def gcd_monic(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic greatest common divisor by the Euclidean algorithm."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = divmod_exact(a, b)
        a, b = b, r
    return monic(a)


def yun_decomposition(coeffs: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Square-free decomposition p = lc * prod f_i^i with monic square-free f_i.

    Returns [(f_i, i)] for the factors of positive degree, in increasing i.
    """
    p = monic(coeffs)
    if degree(p) < 1:
        return []
    dp = derivative(p)
    g = gcd_monic(p, dp)
    if degree(g) == 0:
        return [(p, 1)]
    out = []
    c, _ = divmod_exact(p, g)
    dq, _ = divmod_exact(dp, g)
    d = [x - y for x, y in zip_pad(dq, derivative(c))]
    trim(d)
    i = 1
    while degree(c) > 0:
        f = gcd_monic(c, d)
        if degree(f) > 0:
            out.append((f, i))
        c, _ = divmod_exact(c, f)
        dq, _ = divmod_exact(d, f)
        d = [x - y for x, y in zip_pad(dq, derivative(c))]
        trim(d)
        i += 1
    return out


def zip_pad(a: Sequence, b: Sequence):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Fraction(0), b[i] if i < len(b) else Fraction(0))


def newton_interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Exact interpolation through (xs[i], ys[i]); returns monomial coefficients."""
    n = len(xs)
    if n != len(ys):
        raise ValueError("point and value counts differ")
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    acc = [Fraction(1)]  # running product (x - x_0)...(x - x_{j-1})
    for j in range(n):
        for k, c in enumerate(acc):
            poly[k] += coef[j] * c
        if j < n - 1:
            nxt = [Fraction(0)] * (len(acc) + 1)
            for k, c in enumerate(acc):
                nxt[k + 1] += c
                nxt[k] -= xs[j] * c
            acc = nxt
    return trim(poly)


def companion(coeffs: Sequence) -> np.ndarray:
    """Companion matrix of a monic polynomial (float or complex entries)."""
    c = list(coeffs)
    n = degree(c)
    if n < 1:
        raise ValueError("companion matrix requires degree >= 1")
    lead = c[-1]
    body = [x / lead for x in c[:-1]]
    any_complex = any(isinstance(x, complex) for x in body)
    dtype = complex if any_complex else float
    M = np.zeros((n, n), dtype=dtype)
    for i in range(1, n):
        M[i, i - 1] = 1.0
    for i in range(n):
        M[i, n - 1] = -(complex(body[i]) if any_complex else float(body[i]))
    return M


def roots_numeric(coeffs: Sequence, newton_steps: int = 1) -> list[complex]:
    """Roots of a univariate polynomial via companion eigenvalues.

    Each eigenvalue is polished by `newton_steps` Newton iterations on the
    same polynomial (skipped where the derivative vanishes).
    """
    c = trim(list(coeffs))
    n = degree(c)
    if n < 1:
        return []
    eigs = list(eig_complex(companion(c)))
    dc = derivative(c)
    roots = []
    for z in eigs:
        for _ in range(newton_steps):
            dv = evaluate(dc, z)
            if dv == 0:
                break
            step = evaluate(c, z) / dv
            if not (abs(step.real) < 1e9 and abs(step.imag) < 1e9):
                break
            z = z - step
        roots.append(complex(z))
    return roots
