"""Exact Laurent/polynomial elements and the Witt-type Lie brackets.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`LaurentElement`
is a sparse exponent -> coefficient map tagged with the ring it lives in
(``F[x]`` or ``F[x, x^-1]``); a :class:`LieElement` adds the central
coordinate used by the Virasoro algebra.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

#: basis label of the central element ``c``
CENTRAL = "c"


class LieDualError(ValueError):
    """Base class for every error raised by this package."""


class DomainMismatch(LieDualError):
    pass


class KindMismatch(LieDualError):
    pass


def to_scalar(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    return Fraction(value)


def format_scalar(value: Fraction) -> str:
    """Lowest-terms string, ``"3"`` or ``"-1/2"``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise LieDualError(f"not a rational number: {text!r}") from exc


class Domain(enum.Enum):
    POLY = "poly"
    LAURENT = "laurent"

    def admits(self, exponent: int) -> bool:
        return self is Domain.LAURENT or exponent >= 0


class AlgebraKind(enum.Enum):
    ONE_SIDED_WITT = "one-sided-witt"
    WITT = "witt"
    VIRASORO = "virasoro"

    @property
    def domain(self) -> Domain:
        return Domain.POLY if self is AlgebraKind.ONE_SIDED_WITT else Domain.LAURENT

    def admits(self, label) -> bool:
        if label == CENTRAL:
            return self is AlgebraKind.VIRASORO
        return self.domain.admits(label)


def _pruned(items) -> dict:
    out: dict = {}
    for key, value in items:
        value = to_scalar(value)
        if value:
            out[key] = out.get(key, 0) + value
            if not out[key]:
                del out[key]
    return out


class LaurentElement:
    """A finite sum ``sum_j g_j x^j`` in F[x] or F[x, x^-1]."""

    __slots__ = ("_domain", "_coeffs")

    def __init__(self, coeffs: Mapping[int, ScalarLike] | None = None,
                 domain: Domain = Domain.LAURENT):
        clean = _pruned((int(k), v) for k, v in (coeffs or {}).items())
        for exp in clean:
            if not domain.admits(exp):
                raise DomainMismatch(f"exponent {exp} not allowed in {domain.value} domain")
        self._domain = domain
        self._coeffs = clean

    @classmethod
    def monomial(cls, exp: int, coeff: ScalarLike = 1,
                 domain: Domain = Domain.LAURENT) -> LaurentElement:
        return cls({exp: coeff}, domain)

    @property
    def domain(self) -> Domain:
        return self._domain

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._coeffs)

    def __getitem__(self, exp: int) -> Fraction:
        return self._coeffs.get(exp, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self._domain is other._domain and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._domain, frozenset(self._coeffs.items())))

    def _check(self, other: LaurentElement) -> None:
        if self._domain is not other._domain:
            raise DomainMismatch(
                f"cannot combine {self._domain.value} and {other._domain.value} elements")

    def __add__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        return LaurentElement(_pruned([*self._coeffs.items(), *other._coeffs.items()]),
                              self._domain)

    def __neg__(self) -> LaurentElement:
        return LaurentElement({k: -v for k, v in self._coeffs.items()}, self._domain)

    def __sub__(self, other: LaurentElement) -> LaurentElement:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> LaurentElement:
        factor = to_scalar(factor)
        return LaurentElement({k: factor * v for k, v in self._coeffs.items()}, self._domain)

    def __rmul__(self, factor: ScalarLike) -> LaurentElement:
        return self.scale(factor)

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            return multiply(self, other)
        return self.scale(other)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = [f"{format_scalar(c)}*x^{e}" for e, c in sorted(self._coeffs.items())]
        return " + ".join(parts)


def multiply(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    """Cauchy product of two elements of the same ring."""
    a._check(b)
    out: dict[int, Fraction] = {}
    for i, ai in a.coeffs.items():
        for j, bj in b.coeffs.items():
            out[i + j] = out.get(i + j, 0) + ai * bj
    return LaurentElement(out, a.domain)


def derive(a: LaurentElement) -> LaurentElement:
    """d/dx, term by term."""
    return LaurentElement({e - 1: e * c for e, c in a.coeffs.items() if e != 0}, a.domain)


class LieElement:
    """An element ``body + central * c`` of one of the three Lie algebras."""

    __slots__ = ("body", "central")

    def __init__(self, body: LaurentElement | None = None, central: ScalarLike = 0):
        self.body = body if body is not None else LaurentElement()
        self.central = to_scalar(central)

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, ScalarLike], kind: AlgebraKind,
                    central: ScalarLike = 0) -> LieElement:
        return cls(LaurentElement(coeffs, kind.domain), central)

    @classmethod
    def monomial(cls, exp: int, kind: AlgebraKind = AlgebraKind.WITT,
                 coeff: ScalarLike = 1) -> LieElement:
        return cls(LaurentElement.monomial(exp, coeff, kind.domain))

    @classmethod
    def basis(cls, label, kind: AlgebraKind, coeff: ScalarLike = 1) -> LieElement:
        if label == CENTRAL:
            return cls(LaurentElement(domain=kind.domain), coeff)
        return cls.monomial(label, kind, coeff)

    @classmethod
    def zero(cls, kind: AlgebraKind) -> LieElement:
        return cls(LaurentElement(domain=kind.domain))

    @property
    def domain(self) -> Domain:
        return self.body.domain

    def terms(self) -> Iterator[tuple[object, Fraction]]:
        """(label, coefficient) pairs; the central label is ``CENTRAL``."""
        yield from self.body.coeffs.items()
        if self.central:
            yield CENTRAL, self.central

    def conforms(self, kind: AlgebraKind) -> bool:
        return self.body.domain is kind.domain and (
            not self.central or kind is AlgebraKind.VIRASORO)

    def __bool__(self) -> bool:
        return bool(self.body) or bool(self.central)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.body == other.body and self.central == other.central

    def __hash__(self) -> int:
        return hash((self.body, self.central))

    def __add__(self, other: LieElement) -> LieElement:
        return LieElement(self.body + other.body, self.central + other.central)

    def __neg__(self) -> LieElement:
        return LieElement(-self.body, -self.central)

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> LieElement:
        factor = to_scalar(factor)
        return LieElement(self.body.scale(factor), factor * self.central)

    __rmul__ = scale

    def __repr__(self) -> str:
        if not self.central:
            return repr(self.body)
        return f"{self.body!r} + {format_scalar(self.central)}*c"


def _check_kind(kind: AlgebraKind, *elements: LieElement) -> None:
    for el in elements:
        if not el.conforms(kind):
            raise KindMismatch(f"element {el!r} does not belong to the {kind.value} algebra")


def monomial_bracket(kind: AlgebraKind, a: int, b: int) -> tuple[int, Fraction, Fraction]:
    """``[x^a, x^b] = coeff * x^(a+b-1) + central * c`` as ``(a+b-1, coeff, central)``."""
    coeff = Fraction(b - a)
    central = Fraction(0)
    if kind is AlgebraKind.VIRASORO and a + b == 2:
        m = a - 1
        central = Fraction(m ** 3 - m, 12)
    return a + b - 1, coeff, central


def bracket(kind: AlgebraKind, a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket of ``kind``.

    For the Witt algebras this is ``a d(b) - d(a) b``; the Virasoro bracket adds
    the cocycle ``(m^3 - m)/12 * delta_{m+n,0} c`` on ``[x^(m+1), x^(n+1)]``.
    The central coordinates of the inputs never contribute.
    """
    _check_kind(kind, a, b)
    if kind is not AlgebraKind.VIRASORO:
        body = multiply(a.body, derive(b.body)) - multiply(derive(a.body), b.body)
        return LieElement(body)
    out: dict[int, Fraction] = {}
    central = Fraction(0)
    for i, ai in a.body.coeffs.items():
        for j, bj in b.body.coeffs.items():
            exp, coeff, cc = monomial_bracket(kind, i, j)
            if coeff:
                out[exp] = out.get(exp, 0) + ai * bj * coeff
            if cc:
                central += ai * bj * cc
    return LieElement(LaurentElement(out, kind.domain), central)


# -- JSON ---------------------------------------------------------------------

def element_to_json(el: LieElement | LaurentElement) -> dict:
    if isinstance(el, LaurentElement):
        el = LieElement(el)
    return {
        "domain": el.domain.value,
        "coeffs": {str(e): format_scalar(c) for e, c in sorted(el.body.coeffs.items())},
        "central": format_scalar(el.central),
    }


def element_from_json(data: Mapping) -> LieElement:
    try:
        domain = Domain(data["domain"])
        coeffs = {int(e): parse_scalar(c) for e, c in data.get("coeffs", {}).items()}
        central = parse_scalar(data.get("central", "0"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieDualError):
            raise
        raise LieDualError(f"malformed element JSON: {exc}") from exc
    return LieElement(LaurentElement(coeffs, domain), central)
