"""Exact sparse multivariate polynomials over the rationals.

A polynomial in d variables is a mapping from exponent tuples (length d,
non-negative ints) to nonzero Fraction coefficients; the zero polynomial is
the empty mapping.  All coefficient arithmetic is exact.  Instances are
immutable: every operation returns a new Polynomial, so values can be shared
freely between threads.

Wherever a deterministic term order is needed (printing, JSON emission,
basis enumeration) terms are ordered graded-lexicographically: lower total
degree first, ties broken so that earlier variables rank higher, e.g. for
two variables 1 < x < y < x^2 < xy < y^2.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Operands disagree on the number of variables."""


class ZeroPolynomialError(ValueError):
    """The zero polynomial has no degree."""


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""


def grlex_key(exps: Sequence[int]) -> tuple:
    """Sort key for graded-lex order (total degree, then x0 before x1 ...)."""
    return (sum(exps), tuple(-e for e in exps))


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def _is_exact_point(point) -> bool:
    return all(isinstance(c, (int, Rational)) for c in point)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | None = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError(f"nvars must be a positive integer, got {nvars!r}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DimensionMismatchError(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                )
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative integers: {exps}")
            c = _as_fraction(coeff)
            if c != 0:
                clean[exps] = c
        object.__setattr__(self, "_nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The polynomial x_index."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    # -- basic queries ------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        """Copy of the term map (exponent tuple -> nonzero coefficient)."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def coordinate_degrees(self) -> tuple[int, ...]:
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        degs = [0] * self._nvars
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e > degs[i]:
                    degs[i] = e
        return tuple(degs)

    def degree_profile(self) -> tuple[int, tuple[int, ...]]:
        """(total degree, per-variable degrees); raises on the zero polynomial."""
        return self.total_degree(), self.coordinate_degrees()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    __hash__ = None  # mutable-looking value type by convention; not hashable

    # -- arithmetic ---------------------------------------------------

    def _check_same_nvars(self, other: "Polynomial") -> None:
        if self._nvars != other._nvars:
            raise DimensionMismatchError(
                f"operands have {self._nvars} and {other._nvars} variables"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(self._nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._check_same_nvars(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Polynomial(self._nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._check_same_nvars(other)
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                out[exps] = out.get(exps, Fraction(0)) + ca * cb
        return Polynomial(self._nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self._nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation and calculus ---------------------------------------

    def evaluate(self, point: Sequence):
        """Value at a point; exact Fraction for rational coordinates,
        complex for float/complex coordinates."""
        point = tuple(point)
        if len(point) != self._nvars:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, expected {self._nvars}"
            )
        if _is_exact_point(point):
            coords = tuple(Fraction(c) for c in point)
            total = Fraction(0)
            for exps, coeff in self._terms.items():
                term = coeff
                for c, e in zip(coords, exps):
                    if e:
                        term *= c**e
                total += term
            return total
        coords = tuple(complex(c) for c in point)
        acc = 0j
        for exps, coeff in self._terms.items():
            term = complex(coeff)
            for c, e in zip(coords, exps):
                if e:
                    term *= c**e
            acc += term
        return acc

    def derivative(self, var: int, order: int = 1) -> "Polynomial":
        """Iterated formal partial derivative with respect to variable `var`."""
        if not 0 <= var < self._nvars:
            raise ValueError(f"variable index {var} out of range for {self._nvars} variables")
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[var]
            if e < order:
                continue
            # falling factorial e (e-1) ... (e-order+1)
            factor = 1
            for k in range(order):
                factor *= e - k
            new = list(exps)
            new[var] = e - order
            out[tuple(new)] = out.get(tuple(new), Fraction(0)) + coeff * factor
        return Polynomial(self._nvars, out)

    # -- presentation ---------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self._nvars}, {self._terms!r})"

    # -- JSON ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nvars": self._nvars,
            "terms": [
                {"exps": list(exps), "coeff": str(coeff)}
                for exps, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, doc) -> "Polynomial":
        if not isinstance(doc, dict):
            raise SchemaError("polynomial document must be an object")
        nvars = doc.get("nvars")
        if not isinstance(nvars, int) or nvars < 1:
            raise SchemaError("nvars: must be a positive integer")
        raw = doc.get("terms")
        if not isinstance(raw, list):
            raise SchemaError("terms: must be a list")
        terms: dict[Exponents, Fraction] = {}
        for i, entry in enumerate(raw):
            where = f"terms[{i}]"
            if not isinstance(entry, dict):
                raise SchemaError(f"{where}: must be an object")
            exps = entry.get("exps")
            if (
                not isinstance(exps, list)
                or len(exps) != nvars
                or any((not isinstance(e, int)) or e < 0 for e in exps)
            ):
                raise SchemaError(
                    f"{where}.exps: must be {nvars} non-negative integers"
                )
            key = tuple(exps)
            if key in terms:
                raise SchemaError(f"{where}.exps: duplicate exponent vector {exps}")
            coeff = entry.get("coeff")
            if not isinstance(coeff, (str, int)):
                raise SchemaError(f"{where}.coeff: must be a rational string")
            try:
                terms[key] = Fraction(coeff)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"{where}.coeff: invalid rational {coeff!r}") from exc
        return cls(nvars, terms)


class AffineMap:
    """Exact affine change of coordinates x -> A x + b."""

    __slots__ = ("_matrix", "_offset")

    def __init__(self, matrix: Sequence[Sequence], offset: Sequence | None = None):
        rows = tuple(tuple(_as_fraction(v) for v in row) for row in matrix)
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise ValueError("matrix must be square and non-empty")
        if offset is None:
            off = (Fraction(0),) * d
        else:
            off = tuple(_as_fraction(v) for v in offset)
            if len(off) != d:
                raise DimensionMismatchError(
                    f"offset has length {len(off)}, expected {d}"
                )
        object.__setattr__(self, "_matrix", rows)
        object.__setattr__(self, "_offset", off)

    def __setattr__(self, name, value):
        raise AttributeError("AffineMap is immutable")

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(
            [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
        )

    @property
    def dim(self) -> int:
        return len(self._matrix)

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._matrix

    @property
    def offset(self) -> tuple[Fraction, ...]:
        return self._offset

    def apply(self, point: Sequence) -> tuple[Fraction, ...]:
        """A x + b for an exact rational point x."""
        pt = tuple(_as_fraction(c) for c in point)
        if len(pt) != self.dim:
            raise DimensionMismatchError(
                f"point has {len(pt)} coordinates, expected {self.dim}"
            )
        return tuple(
            sum((row[j] * pt[j] for j in range(self.dim)), start=Fraction(0)) + b
            for row, b in zip(self._matrix, self._offset)
        )


def product_of_linear(
    factors: Iterable[Polynomial], *, nvars: int | None = None
) -> Polynomial:
    """Product of polynomials of total degree <= 1 (the empty product is 1).

    `nvars` is required only for an empty factor list.
    """
    factors = list(factors)
    if not factors:
        if nvars is None:
            raise ValueError("nvars is required for an empty factor list")
        return Polynomial.constant(nvars, 1)
    d = factors[0].nvars
    result = Polynomial.constant(d, 1)
    for f in factors:
        if f.nvars != d:
            raise DimensionMismatchError("factors disagree on the number of variables")
        if not f.is_zero() and f.total_degree() > 1:
            raise ValueError(f"factor of degree {f.total_degree()} > 1: {f}")
        result = result * f
    return result


def compose_affine(p: Polynomial, amap: AffineMap) -> Polynomial:
    """Expand p(A x + b) exactly."""
    d = p.nvars
    if amap.dim != d:
        raise DimensionMismatchError(
            f"map dimension {amap.dim} does not match {d} variables"
        )
    # substitution polynomial for each input variable
    subs = []
    for i in range(d):
        s = Polynomial.constant(d, amap.offset[i])
        for j in range(d):
            if amap.matrix[i][j]:
                s = s + amap.matrix[i][j] * Polynomial.variable(d, j)
        subs.append(s)
    # cache powers of each substitution up to the degree actually used
    max_exp = [0] * d
    for exps in p.terms:
        for i, e in enumerate(exps):
            max_exp[i] = max(max_exp[i], e)
    powers: list[list[Polynomial]] = []
    for i in range(d):
        row = [Polynomial.constant(d, 1)]
        for _ in range(max_exp[i]):
            row.append(row[-1] * subs[i])
        powers.append(row)
    result = Polynomial.zero(d)
    for exps, coeff in p.terms.items():
        term = Polynomial.constant(d, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * powers[i][e]
        result = result + term
    return result
