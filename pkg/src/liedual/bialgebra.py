"""Coboundary Lie bialgebra structures ``δ(x) = x·r`` and their axioms.

Two families of triangular r-matrices are provided: ``x⊗x^n − x^n⊗x``
(:func:`witt_r`) and ``X⊗Y − Y⊗X`` built from the two-dimensional
subalgebras of :func:`build_subalgebra_pair`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import (
    AlgebraKind,
    KindMismatch,
    LieDualError,
    LieElement,
    ScalarLike,
    _check_kind,
    bracket,
    format_scalar,
    parse_scalar,
    to_scalar,
)
from .tensors import Tensor2, Tensor3, act2, swap


class InvalidParams(LieDualError):
    pass


@dataclass(frozen=True)
class BialgebraParams:
    """``(n, ℓ, k)`` with ``n != 1`` and ``ℓ, k`` nonzero."""

    n: int
    ell: Fraction
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ell", to_scalar(self.ell))
        object.__setattr__(self, "k", to_scalar(self.k))
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise InvalidParams(f"n must be an integer, got {self.n!r}")
        if self.n == 1:
            raise InvalidParams("n = 1 is excluded")
        if not self.ell or not self.k:
            raise InvalidParams("ell and k must be nonzero")
        # n == 2 - n would need n == 1, so the special exponents never collide
        assert len({1, 2 - self.n, self.n}) == 3

    # coefficients of X = l0*x + ell*x^n and Y = k0*x^(2-n) + k*x + k1*x^n
    @property
    def l0(self) -> Fraction:
        return Fraction(-1, self.n - 1)

    @property
    def k0(self) -> Fraction:
        return -self.k / (2 * (self.n - 1) * self.ell)

    @property
    def k1(self) -> Fraction:
        return -(self.n - 1) * self.ell * self.k / 2

    def to_json(self) -> dict:
        return {"n": self.n, "ell": format_scalar(self.ell), "k": format_scalar(self.k)}

    @classmethod
    def from_json(cls, data) -> BialgebraParams:
        try:
            return cls(int(data["n"]), parse_scalar(str(data["ell"])),
                       parse_scalar(str(data["k"])))
        except (KeyError, TypeError) as exc:
            raise InvalidParams(f"malformed params JSON: {exc}") from exc


class RMatrix:
    """An antisymmetric element of ``L⊗L``."""

    __slots__ = ("underlying",)

    def __init__(self, underlying: Tensor2, check: bool = True):
        if check and swap(underlying) != -underlying:
            raise LieDualError("r-matrix must be antisymmetric")
        self.underlying = underlying

    @property
    def kind(self) -> AlgebraKind:
        return self.underlying.kind

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.underlying == other.underlying

    def __hash__(self) -> int:
        return hash(self.underlying)

    def __repr__(self) -> str:
        return f"RMatrix({self.underlying!r})"


def _infer_kind(a: LieElement, b: LieElement, kind: AlgebraKind | None) -> AlgebraKind:
    if kind is not None:
        return kind
    if a.central or b.central:
        return AlgebraKind.VIRASORO
    return AlgebraKind.WITT if a.domain.value == "laurent" else AlgebraKind.ONE_SIDED_WITT


def r_from_pair(a: LieElement, b: LieElement, kind: AlgebraKind | None = None) -> RMatrix:
    """``a⊗b − b⊗a``."""
    if not a or not b:
        raise LieDualError("r_from_pair needs nonzero elements")
    kind = _infer_kind(a, b, kind)
    return RMatrix(Tensor2.pure(kind, a, b) - Tensor2.pure(kind, b, a), check=False)


def witt_r(kind: AlgebraKind, n: int) -> RMatrix:
    """``x⊗x^n − x^n⊗x``, a CYBE solution for every ``n != 1``."""
    if n == 1:
        raise InvalidParams("n = 1 gives r = 0")
    if not kind.domain.admits(n):
        raise InvalidParams(f"x^{n} is not in the {kind.value} algebra")
    return r_from_pair(LieElement.monomial(1, kind), LieElement.monomial(n, kind), kind)


def build_subalgebra_pair(kind: AlgebraKind, p: BialgebraParams) -> tuple[LieElement, LieElement]:
    """The pair ``(X, Y)`` spanning a two-dimensional subalgebra with ``[X, Y] = Y``.

    ``X = -x/(n-1) + ℓ x^n`` and
    ``Y = -k/(2(n-1)ℓ) x^(2-n) + k x - (n-1)ℓk/2 x^n``.  Only the Witt and
    Virasoro algebras are accepted since ``x^(2-n)`` leaves ``F[x]`` for n > 2.
    """
    if kind is AlgebraKind.ONE_SIDED_WITT:
        raise InvalidParams("the (X, Y) family is defined on the Witt and Virasoro algebras only")
    if not isinstance(p, BialgebraParams):
        raise InvalidParams(f"expected BialgebraParams, got {p!r}")
    n = p.n
    X = LieElement.from_coeffs({1: p.l0, n: p.ell}, kind)
    Y = LieElement.from_coeffs({2 - n: p.k0, 1: p.k, n: p.k1}, kind,
                               central_lift(kind, p))
    return X, Y


def central_lift(kind: AlgebraKind, p: BialgebraParams) -> Fraction:
    """Central coordinate of ``Y`` needed for ``[X, Y] = Y`` in the Virasoro algebra.

    ``[ℓ x^n, k0 x^(2-n)]`` carries the cocycle ``ℓ k0 (m^3 - m)/12 c`` with
    ``m = n - 1``; it vanishes for ``n`` in {0, 2} and on the Witt algebra.
    Since ``c`` is central, adding that multiple of ``c`` to ``Y`` restores the
    relation without touching any pairing with the ε-basis.
    """
    if kind is not AlgebraKind.VIRASORO:
        return Fraction(0)
    m = p.n - 1
    return p.ell * p.k0 * Fraction(m ** 3 - m, 12)


def xy_r(kind: AlgebraKind, p: BialgebraParams) -> RMatrix:
    X, Y = build_subalgebra_pair(kind, p)
    return r_from_pair(X, Y, kind)


def _tensor_of(r) -> Tensor2:
    return r.underlying if isinstance(r, RMatrix) else r


def coboundary_cobracket(kind: AlgebraKind, r: RMatrix | Tensor2, x: LieElement) -> Tensor2:
    """``δ(x) = x·r``.

    A bare :class:`Tensor2` is accepted in place of ``r`` so that
    non-antisymmetric tensors can be probed as well.
    """
    t = _tensor_of(r)
    if t.kind is not kind:
        raise KindMismatch(f"r of kind {t.kind.value} used in {kind.value}")
    return act2(kind, x, t)


def check_compatibility(kind: AlgebraKind, r, a: LieElement, b: LieElement) -> bool:
    """Cocycle condition ``δ[a, b] = a·δ(b) − b·δ(a)``."""
    _check_kind(kind, a, b)
    lhs = coboundary_cobracket(kind, r, bracket(kind, a, b))
    rhs = (act2(kind, a, coboundary_cobracket(kind, r, b))
           - act2(kind, b, coboundary_cobracket(kind, r, a)))
    return lhs == rhs


def _rotate(t: Tensor3) -> Tensor3:
    return Tensor3._raw(t.kind, {(c, a, b): v for (a, b, c), v in t.terms.items()})


def cojacobi_residual(kind: AlgebraKind, r, a: LieElement) -> Tensor3:
    """Cyclic sum of ``(δ⊗id)δ(a)`` over the three rotations of the factors."""
    _check_kind(kind, a)
    t = _tensor_of(r)
    outer = coboundary_cobracket(kind, t, a)
    acc: dict[tuple, Fraction] = {}
    cache: dict = {}
    for (l1, l2), coeff in outer.terms.items():
        if l1 not in cache:
            cache[l1] = coboundary_cobracket(kind, t, LieElement.basis(l1, kind))
        for (b1, b2), c in cache[l1].terms.items():
            key = (b1, b2, l2)
            acc[key] = acc.get(key, 0) + coeff * c
    once = Tensor3._raw(kind, acc)
    twice = _rotate(once)
    return once + twice + _rotate(twice)


def check_cojacobi(kind: AlgebraKind, r, a: LieElement) -> bool:
    return not cojacobi_residual(kind, r, a)


def monomials(kind: AlgebraKind, window: Iterable[int]) -> list[LieElement]:
    return [LieElement.monomial(e, kind) for e in window if kind.domain.admits(e)]


def random_combination(kind: AlgebraKind, rng, window: tuple[int, int], terms: int = 3,
                       central: bool = False) -> LieElement:
    """Random sparse element with small integer coefficients; ``rng`` is a ``random.Random``."""
    lo, hi = window
    if kind.domain.value == "poly":
        lo = max(lo, 0)
    coeffs: dict[int, ScalarLike] = {}
    for _ in range(terms):
        coeffs[rng.randint(lo, hi)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    c = Fraction(rng.randint(-3, 3)) if central and kind is AlgebraKind.VIRASORO else 0
    return LieElement.from_coeffs(coeffs, kind, c)
