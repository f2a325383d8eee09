"""Monomial bases, Vandermonde assembly, poisedness tests, interpolation.

A knot set is poised (correct) for a monomial basis when the evaluation
matrix of the basis at the knots is nonsingular, which makes every
interpolation problem in that span uniquely solvable.  All verdicts here are
decided exactly over the rationals; a floating Vandermonde builder is
provided only for solver-produced numeric points, and its verdicts are
labeled approximate by the callers that use it.

Multiplicity semantics: a knot of multiplicity m imposes the derivative
conditions D^beta for all beta in a lower set determined by m.  The default
lower set is total-order ({beta : |beta| < m}); a box-order variant
({beta : beta_i < m for every i}) is available via HermiteScheme's
`condition_order` flag.  Both degenerate to the usual confluent conditions
in one variable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactla import RationalMatrix, det_exact, invert_exact, solve_exact
from .multipoly import Polynomial, grlex_key, SchemaError, _as_fraction

Exponents = tuple[int, ...]


class SizeMismatchError(ValueError):
    """Condition count and basis dimension disagree."""


class MonomialBasis:
    """Ordered (graded-lex) list of exponent vectors spanning a space."""

    __slots__ = ("nvars", "monomials")

    def __init__(self, nvars: int, monomials: Sequence[Sequence[int]]):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        monos = [tuple(m) for m in monomials]
        for m in monos:
            if len(m) != nvars or any((not isinstance(e, int)) or e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {nvars} variables")
        if len(set(monos)) != len(monos):
            raise ValueError("duplicate monomials in basis")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "monomials", tuple(sorted(monos, key=grlex_key)))

    def __setattr__(self, name, value):
        raise AttributeError("MonomialBasis is immutable")

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __eq__(self, other):
        if not isinstance(other, MonomialBasis):
            return NotImplemented
        return self.nvars == other.nvars and self.monomials == other.monomials

    __hash__ = None

    def __repr__(self) -> str:
        return f"MonomialBasis({self.nvars}, dim={self.dimension})"


def box_basis(degrees: Sequence[int]) -> MonomialBasis:
    """All monomials with exponent i below degrees[i]; dimension = product."""
    degrees = tuple(degrees)
    if not degrees:
        raise ValueError("degree sequence must be non-empty")
    if any((not isinstance(n, int)) or n < 1 for n in degrees):
        raise ValueError(f"degrees must be positive integers, got {degrees}")
    monos = itertools.product(*(range(n) for n in degrees))
    return MonomialBasis(len(degrees), list(monos))


def total_degree_basis(n: int, d: int) -> MonomialBasis:
    """All monomials of total degree at most n in d variables."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if d < 1:
        raise ValueError("number of variables must be positive")
    monos = [
        m for m in itertools.product(range(n + 1), repeat=d) if sum(m) <= n
    ]
    return MonomialBasis(d, monos)


class KnotSet:
    """Pairwise-distinct rational points with positive multiplicities."""

    __slots__ = ("nvars", "knots")

    def __init__(self, nvars: int, knots: Sequence):
        """`knots` items are points, or (point, multiplicity) pairs."""
        if nvars < 1:
            raise ValueError("nvars must be positive")
        norm: list[tuple[tuple[Fraction, ...], int]] = []
        for item in knots:
            if (
                isinstance(item, tuple)
                and len(item) == 2
                and isinstance(item[1], int)
                and not isinstance(item[0], (int, Fraction))
            ):
                point, mult = item
            else:
                point, mult = item, 1
            pt = tuple(_as_fraction(c) for c in point)
            if len(pt) != nvars:
                raise ValueError(f"point {point} has {len(pt)} coordinates, expected {nvars}")
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            norm.append((pt, mult))
        seen = set()
        for pt, _ in norm:
            if pt in seen:
                raise ValueError(f"repeated knot {tuple(str(c) for c in pt)}")
            seen.add(pt)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "knots", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("KnotSet is immutable")

    @classmethod
    def from_points(cls, nvars: int, points: Sequence[Sequence]) -> "KnotSet":
        return cls(nvars, [(tuple(p), 1) for p in points])

    def points(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(pt for pt, _ in self.knots)

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.knots)

    def all_simple(self) -> bool:
        return all(m == 1 for _, m in self.knots)

    def __len__(self) -> int:
        return len(self.knots)

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "points": [
                {"coords": [str(c) for c in pt], "multiplicity": m}
                for pt, m in self.knots
            ],
        }

    @classmethod
    def from_json_dict(cls, doc) -> "KnotSet":
        if not isinstance(doc, dict):
            raise SchemaError("knot document must be an object")
        nvars = doc.get("nvars")
        if not isinstance(nvars, int) or nvars < 1:
            raise SchemaError("nvars: must be a positive integer")
        raw = doc.get("points")
        if not isinstance(raw, list):
            raise SchemaError("points: must be a list")
        knots = []
        for i, entry in enumerate(raw):
            where = f"points[{i}]"
            if not isinstance(entry, dict):
                raise SchemaError(f"{where}: must be an object")
            coords = entry.get("coords")
            if not isinstance(coords, list) or len(coords) != nvars:
                raise SchemaError(f"{where}.coords: must be {nvars} rationals")
            try:
                pt = tuple(Fraction(c) for c in coords)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise SchemaError(f"{where}.coords: invalid rational in {coords!r}") from exc
            mult = entry.get("multiplicity", 1)
            if not isinstance(mult, int) or mult < 1:
                raise SchemaError(f"{where}.multiplicity: must be a positive integer")
            knots.append((pt, mult))
        try:
            return cls(nvars, knots)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc


def lower_set(multiplicity: int, d: int, order: str = "total") -> tuple[Exponents, ...]:
    """Derivative orders imposed by a knot of the given multiplicity."""
    if multiplicity < 1:
        raise ValueError("multiplicity must be >= 1")
    if order == "total":
        betas = [
            b
            for b in itertools.product(range(multiplicity), repeat=d)
            if sum(b) < multiplicity
        ]
    elif order == "box":
        betas = list(itertools.product(range(multiplicity), repeat=d))
    else:
        raise ValueError(f"unknown condition order {order!r}")
    return tuple(sorted(betas, key=grlex_key))


class HermiteScheme:
    """Knot set with per-knot derivative conditions derived from multiplicities."""

    __slots__ = ("knotset", "condition_order", "conditions")

    def __init__(self, knotset: KnotSet, condition_order: str = "total"):
        if condition_order not in ("total", "box"):
            raise ValueError(f"unknown condition order {condition_order!r}")
        conds = tuple(
            lower_set(m, knotset.nvars, condition_order) for _, m in knotset.knots
        )
        object.__setattr__(self, "knotset", knotset)
        object.__setattr__(self, "condition_order", condition_order)
        object.__setattr__(self, "conditions", conds)

    def __setattr__(self, name, value):
        raise AttributeError("HermiteScheme is immutable")

    @property
    def nvars(self) -> int:
        return self.knotset.nvars

    @property
    def total_conditions(self) -> int:
        return sum(len(c) for c in self.conditions)

    def condition_list(self) -> list[tuple[tuple[Fraction, ...], Exponents]]:
        """Flattened (knot, beta) pairs in row order."""
        out = []
        for (pt, _), betas in zip(self.knotset.knots, self.conditions):
            for beta in betas:
                out.append((pt, beta))
        return out


@dataclass(frozen=True)
class PoisednessCertificate:
    """Verdict plus the exact determinant that witnesses it."""

    poised: bool
    determinant: Fraction
    dimension: int

    def __bool__(self) -> bool:
        return self.poised


def _monomial_value(exps: Exponents, point: tuple[Fraction, ...]) -> Fraction:
    v = Fraction(1)
    for c, e in zip(point, exps):
        if e:
            v *= c**e
    return v


def _derivative_value(exps: Exponents, beta: Exponents, point: tuple[Fraction, ...]) -> Fraction:
    """(D^beta x^exps) evaluated at `point`, exactly."""
    v = Fraction(1)
    for a, b, c in zip(exps, beta, point):
        if b > a:
            return Fraction(0)
        for k in range(b):
            v *= a - k
        if a - b:
            v *= c ** (a - b)
    return v


def vandermonde(knots: KnotSet, basis: MonomialBasis) -> RationalMatrix:
    """Evaluation matrix: row per knot, column per basis monomial."""
    if knots.nvars != basis.nvars:
        raise ValueError(
            f"knots have {knots.nvars} variables, basis has {basis.nvars}"
        )
    if not knots.all_simple():
        raise ValueError("knot multiplicities > 1 present; use hermite_matrix")
    entries = [
        _monomial_value(m, pt) for pt in knots.points() for m in basis.monomials
    ]
    return RationalMatrix(len(knots), basis.dimension, entries)


def is_poised(knots: KnotSet, basis: MonomialBasis) -> PoisednessCertificate:
    """Exact unisolvence test: nonzero Vandermonde determinant."""
    if len(knots) != basis.dimension:
        raise SizeMismatchError(
            f"{len(knots)} knots against basis dimension {basis.dimension}"
        )
    det = det_exact(vandermonde(knots, basis))
    return PoisednessCertificate(det != 0, det, basis.dimension)


def interpolate(knots: KnotSet, values: Sequence, basis: MonomialBasis) -> Polynomial:
    """The unique element of span(basis) taking the given values at the knots."""
    if len(values) != basis.dimension:
        raise SizeMismatchError(
            f"{len(values)} values against basis dimension {basis.dimension}"
        )
    V = vandermonde(knots, basis)
    if V.rows != V.cols:
        raise SizeMismatchError(f"{V.rows} knots against basis dimension {V.cols}")
    coeffs = solve_exact(V, [_as_fraction(v) for v in values])
    return Polynomial(basis.nvars, dict(zip(basis.monomials, coeffs)))


def fundamental_polynomials(knots: KnotSet, basis: MonomialBasis) -> list[Polynomial]:
    """Cardinal interpolants: l_k is 1 at knot k and 0 at the others."""
    if len(knots) != basis.dimension:
        raise SizeMismatchError(
            f"{len(knots)} knots against basis dimension {basis.dimension}"
        )
    inv = invert_exact(vandermonde(knots, basis))
    return [
        Polynomial(
            basis.nvars,
            {m: inv.at(j, k) for j, m in enumerate(basis.monomials)},
        )
        for k in range(basis.dimension)
    ]


def hermite_matrix(scheme: HermiteScheme, basis: MonomialBasis) -> RationalMatrix:
    """Confluent evaluation matrix: one row per (knot, derivative) condition."""
    if scheme.nvars != basis.nvars:
        raise ValueError(
            f"scheme has {scheme.nvars} variables, basis has {basis.nvars}"
        )
    rows = scheme.condition_list()
    entries = [
        _derivative_value(m, beta, pt)
        for pt, beta in rows
        for m in basis.monomials
    ]
    return RationalMatrix(len(rows), basis.dimension, entries)


def is_hermite_poised(scheme: HermiteScheme, basis: MonomialBasis) -> PoisednessCertificate:
    if scheme.total_conditions != basis.dimension:
        raise SizeMismatchError(
            f"{scheme.total_conditions} conditions against basis dimension {basis.dimension}"
        )
    det = det_exact(hermite_matrix(scheme, basis))
    return PoisednessCertificate(det != 0, det, basis.dimension)


def hermite_interpolate(
    scheme: HermiteScheme, values: Sequence, basis: MonomialBasis
) -> Polynomial:
    """The unique element of span(basis) matching every derivative condition."""
    if len(values) != basis.dimension:
        raise SizeMismatchError(
            f"{len(values)} condition values against basis dimension {basis.dimension}"
        )
    H = hermite_matrix(scheme, basis)
    if H.rows != H.cols:
        raise SizeMismatchError(
            f"{H.rows} conditions against basis dimension {H.cols}"
        )
    coeffs = solve_exact(H, [_as_fraction(v) for v in values])
    return Polynomial(basis.nvars, dict(zip(basis.monomials, coeffs)))


def vandermonde_numeric(points: Sequence[Sequence], basis: MonomialBasis) -> np.ndarray:
    """Floating Vandermonde for numeric (solver-produced) points.

    Rank verdicts derived from this matrix are approximate, unlike the exact
    rational path above.
    """
    pts = [tuple(complex(c) for c in p) for p in points]
    for p in pts:
        if len(p) != basis.nvars:
            raise ValueError(f"point has {len(p)} coordinates, expected {basis.nvars}")
    out = np.empty((len(pts), basis.dimension), dtype=complex)
    for i, p in enumerate(pts):
        for j, m in enumerate(basis.monomials):
            v = 1.0 + 0.0j
            for c, e in zip(p, m):
                if e:
                    v *= c**e
            out[i, j] = v
    return out
