"""Restricted duals of F[x] and F[x, x^-1] as linearly recursive power series.

An element of the dual is a formal series ``Σ f_n ε^n`` paired with the
algebra by ``<ε^i, x^j> = δ_ij``.  Members of the restricted dual are the
recursive series; they are stored by recursion coefficients plus a seed
window and expanded on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

import sympy

from .algebra import (
    AlgebraKind,
    Domain,
    DomainMismatch,
    LaurentElement,
    LieDualError,
    ScalarLike,
    format_scalar,
    parse_scalar,
    to_scalar,
)
from .recurrence import berlekamp_massey, rank, solve


class InvalidDualElement(LieDualError):
    pass


@dataclass(frozen=True)
class FiniteSupport:
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {int(k): to_scalar(v) for k, v in dict(self.coeffs).items()}
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))


@dataclass(frozen=True)
class Recursive:
    """``f_n = h1 f_{n-1} + ... + hr f_{n-r}`` with seeds ``f_anchor, f_anchor+1, ...``."""

    h: tuple
    seeds: tuple
    anchor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(to_scalar(v) for v in self.h))
        object.__setattr__(self, "seeds", tuple(to_scalar(v) for v in self.seeds))

    @property
    def order(self) -> int:
        return len(self.h)


Rep = Union[FiniteSupport, Recursive]


@dataclass(frozen=True)
class DualElement:
    domain: Domain
    rep: Rep

    def __post_init__(self):
        rep = self.rep
        if isinstance(rep, FiniteSupport):
            bad = [k for k in rep.coeffs if not self.domain.admits(k)]
            if bad:
                raise InvalidDualElement(f"ε^{bad[0]} not in the dual of the {self.domain.value} ring")
            return
        if not isinstance(rep, Recursive):
            raise InvalidDualElement(f"unknown representation {rep!r}")
        r = rep.order
        if r < 1:
            raise InvalidDualElement("recursion order must be at least 1")
        if self.domain is Domain.LAURENT:
            if not rep.h[-1]:
                raise InvalidDualElement("Laurent-domain recursion needs h_r != 0")
            if len(rep.seeds) != r:
                raise InvalidDualElement(f"expected {r} seeds, got {len(rep.seeds)}")
        else:
            if rep.anchor != 0:
                raise InvalidDualElement("polynomial-domain series are anchored at 0")
            if not r <= len(rep.seeds) <= r + 1:
                raise InvalidDualElement(f"expected {r} or {r + 1} seeds, got {len(rep.seeds)}")

    # constructors
    @classmethod
    def finite(cls, coeffs: Mapping[int, ScalarLike], domain: Domain = Domain.POLY) -> DualElement:
        return cls(domain, FiniteSupport(coeffs))

    @classmethod
    def recursive(cls, h: Sequence[ScalarLike], seeds: Sequence[ScalarLike], anchor: int = 0,
                  domain: Domain = Domain.LAURENT) -> DualElement:
        return cls(domain, Recursive(tuple(h), tuple(seeds), anchor))

    @classmethod
    def zero(cls, domain: Domain) -> DualElement:
        return cls(domain, FiniteSupport({}))

    @property
    def is_recursive(self) -> bool:
        return isinstance(self.rep, Recursive)

    def values(self, lo: int, hi: int) -> list[Fraction]:
        """``[f_lo, ..., f_hi]``."""
        if hi < lo:
            return []
        if self.domain is Domain.POLY and lo < 0:
            raise DomainMismatch(f"coefficient index {lo} < 0 on the polynomial dual")
        rep = self.rep
        if isinstance(rep, FiniteSupport):
            return [rep.coeffs.get(n, Fraction(0)) for n in range(lo, hi + 1)]
        h, r, s = rep.h, rep.order, rep.anchor
        start = min(lo, s)
        seq = list(rep.seeds)  # seq[k] = f_{s + k - back}
        back = 0
        while s - back > start:
            # f_{n-r} = (f_n - h1 f_{n-1} - ... - h_{r-1} f_{n-r+1}) / h_r
            acc = seq[r - 1]
            for i in range(1, r):
                acc -= h[i - 1] * seq[r - 1 - i]
            seq.insert(0, acc / h[r - 1])
            back += 1
        while s - back + len(seq) - 1 < hi:
            seq.append(sum((h[i] * seq[-1 - i] for i in range(r)), Fraction(0)))
        off = lo - (s - back)
        return seq[off:off + hi - lo + 1]

    def __repr__(self) -> str:
        rep = self.rep
        if isinstance(rep, FiniteSupport):
            if not rep.coeffs:
                return f"DualElement({self.domain.value}, 0)"
            body = " + ".join(f"{format_scalar(v)}*ε^{k}" for k, v in sorted(rep.coeffs.items()))
            return f"DualElement({self.domain.value}, {body})"
        return (f"DualElement({self.domain.value}, h={[format_scalar(v) for v in rep.h]}, "
                f"seeds@{rep.anchor}={[format_scalar(v) for v in rep.seeds]})")


def coefficient(f: DualElement, n: int) -> Fraction:
    return f.values(n, n)[0]


def pair(f: DualElement, g: LaurentElement) -> Fraction:
    """``<f, g> = Σ f_j g_j`` over the support of ``g``."""
    if f.domain is not g.domain:
        raise DomainMismatch(f"pairing a {f.domain.value} functional with a {g.domain.value} element")
    if not g:
        return Fraction(0)
    if isinstance(f.rep, FiniteSupport):
        return sum((f.rep.coeffs.get(j, 0) * c for j, c in g.coeffs.items()), Fraction(0))
    lo, hi = min(g.coeffs), max(g.coeffs)
    vals = f.values(lo, hi)
    return sum((vals[j - lo] * c for j, c in g.coeffs.items()), Fraction(0))


def is_in_restricted_dual(f: DualElement) -> bool:
    if f.domain is Domain.POLY:
        return True
    if isinstance(f.rep, FiniteSupport):
        return not f.rep.coeffs
    return bool(f.rep.h[-1])


def characteristic_polynomial(h: Sequence[ScalarLike]) -> LaurentElement:
    """``x^r - h1 x^(r-1) - ... - hr`` as a polynomial."""
    r = len(h)
    coeffs = {r: Fraction(1)}
    for i, hi in enumerate(h, start=1):
        coeffs[r - i] = -to_scalar(hi)
    return LaurentElement(coeffs, Domain.POLY)


# -- tensors in the dual -------------------------------------------------------

@dataclass(frozen=True)
class DualTensor2:
    """Exact slice of a (possibly infinite) element of ``A^*⊗A^*`` on ``window × window``."""

    window: tuple[int, int]
    terms: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = self.window
        clean = {}
        for (a, b), v in dict(self.terms).items():
            v = to_scalar(v)
            if not v:
                continue
            if not (lo <= a <= hi and lo <= b <= hi):
                raise LieDualError(f"index pair {(a, b)} outside window {self.window}")
            clean[(a, b)] = v
        object.__setattr__(self, "window", (lo, hi))
        object.__setattr__(self, "terms", clean)

    def __getitem__(self, key) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))

    def __hash__(self):
        return hash((self.window, frozenset(self.terms.items())))

    def pair(self, a: int, b: int) -> Fraction:
        """``<t, x^a ⊗ x^b>`` for ``a, b`` inside the window."""
        lo, hi = self.window
        if not (lo <= a <= hi and lo <= b <= hi):
            raise LieDualError(f"{(a, b)} outside window {self.window}")
        return self[(a, b)]


def _check_index(n: int, domain: Domain) -> None:
    if not domain.admits(n):
        raise DomainMismatch(f"ε^{n} is not in the dual of the {domain.value} ring")


def _mu_dual_terms(n: int, lo: int, hi: int) -> dict:
    return {(i, n - i): Fraction(1) for i in range(lo, hi + 1) if lo <= n - i <= hi}


def mu_dual(n: int, domain: Domain, window: tuple[int, int] | None = None) -> DualTensor2:
    """Dual multiplication ``μ°(ε^n) = Σ_{i+j=n} ε^i⊗ε^j``.

    Finite on the polynomial dual (the window is ignored there); on the
    Laurent dual the infinite sum is truncated to ``window``.
    """
    _check_index(n, domain)
    if domain is Domain.POLY:
        return DualTensor2((0, n), _mu_dual_terms(n, 0, n))
    if window is None:
        raise LieDualError("a window is required on the Laurent dual")
    lo, hi = window
    return DualTensor2((lo, hi), _mu_dual_terms(n, lo, hi))


def partial_dual_derivation(n: int, domain: Domain = Domain.LAURENT) -> DualElement:
    """``∂°(ε^n) = (n+1) ε^(n+1)``, the transpose of d/dx."""
    _check_index(n, domain)
    return DualElement.finite({n + 1: n + 1}, domain)


def _apply_cobracket_operator(terms: Mapping[tuple[int, int], Fraction]) -> dict:
    # (id⊗∂° − ∂°⊗id)(ε^i⊗ε^j) = (j+1) ε^i⊗ε^(j+1) − (i+1) ε^(i+1)⊗ε^j
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), v in terms.items():
        out[(i, j + 1)] = out.get((i, j + 1), 0) + (j + 1) * v
        out[(i + 1, j)] = out.get((i + 1, j), 0) - (i + 1) * v
    return out


class ClosedFormMismatch(LieDualError):
    pass


def cobracket_closed_form(n: int, lo: int, hi: int) -> dict:
    """``Σ_{i+j=n+1} (j−i) ε^i⊗ε^j`` restricted to ``[lo, hi]^2``."""
    return {(i, n + 1 - i): Fraction(n + 1 - 2 * i) for i in range(lo, hi + 1)
            if lo <= n + 1 - i <= hi and n + 1 - 2 * i}


def cobracket_dual(n: int, domain: Domain, window: tuple[int, int] | None = None) -> DualTensor2:
    """Dual cobracket ``Δ(ε^n) = (id⊗∂° − ∂°⊗id) μ°(ε^n)``.

    The composite is evaluated term by term and compared with the closed form
    ``Σ_{i+j=n+1} (j−i) ε^i⊗ε^j``; a disagreement raises
    :class:`ClosedFormMismatch`.
    """
    _check_index(n, domain)
    if domain is Domain.POLY:
        lo, hi = 0, n + 1
        source = _mu_dual_terms(n, 0, n)
    else:
        if window is None:
            raise LieDualError("a window is required on the Laurent dual")
        lo, hi = window
        # one step of slack: ∂° shifts an index up by one
        source = _mu_dual_terms(n, lo - 1, hi + 1)
    raw = _apply_cobracket_operator(source)
    composite = {k: v for k, v in raw.items()
                 if v and lo <= k[0] <= hi and lo <= k[1] <= hi}
    closed = cobracket_closed_form(n, lo, hi)
    if composite != closed:
        raise ClosedFormMismatch(f"Δ(ε^{n}): composite {composite} != closed form {closed}")
    return DualTensor2((lo, hi), composite)


def cobracket_value(f: DualElement, a: int, b: int) -> Fraction:
    """``<Δ(f), x^a⊗x^b> = <f, [x^a, x^b]> = (b−a) f_(a+b−1)`` for any dual element."""
    if a == b:
        return Fraction(0)
    return (b - a) * coefficient(f, a + b - 1)


# -- rational generating functions ---------------------------------------------

def _to_sympy_poly(coeffs: Sequence[Fraction], var) -> sympy.Poly:
    # coeffs ascending
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0],
                      var, domain="QQ")


def _from_sympy_poly(p: sympy.Poly) -> tuple[Fraction, ...]:
    out = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def _trim(coeffs) -> tuple[Fraction, ...]:
    out = [to_scalar(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RationalFunctionRep:
    """``num(ε) / den(ε)`` with ascending coefficient tuples, ``den(0) = 1`` and coprime parts."""

    num: tuple
    den: tuple

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if not den or not den[0]:
            raise LieDualError("denominator must not vanish at 0")
        if num:
            eps = sympy.Symbol("eps")
            pn, pd = _to_sympy_poly(num, eps), _to_sympy_poly(den, eps)
            g = sympy.gcd(pn, pd)
            if g.degree() > 0:
                num, den = _from_sympy_poly(pn.quo(g)), _from_sympy_poly(pd.quo(g))
        else:
            den = (Fraction(1),)
        d0 = den[0]
        object.__setattr__(self, "num", tuple(c / d0 for c in num))
        object.__setattr__(self, "den", tuple(c / d0 for c in den))

    def series(self, count: int) -> list[Fraction]:
        """First ``count`` Taylor coefficients at ``ε = 0``."""
        out: list[Fraction] = []
        for n in range(count):
            v = self.num[n] if n < len(self.num) else Fraction(0)
            for i in range(1, min(n, len(self.den) - 1) + 1):
                v -= self.den[i] * out[n - i]
            out.append(v)
        return out


def to_rational_function(f: DualElement) -> RationalFunctionRep:
    """Generating function ``Σ_{n>=0} f_n ε^n`` of a polynomial-dual element."""
    if f.domain is not Domain.POLY:
        raise DomainMismatch("no rational normal form is available on the Laurent dual")
    rep = f.rep
    if isinstance(rep, FiniteSupport):
        top = max(rep.coeffs, default=-1)
        return RationalFunctionRep(tuple(rep.coeffs.get(i, 0) for i in range(top + 1)), (1,))
    den = (Fraction(1),) + tuple(-v for v in rep.h)
    S = len(rep.seeds)
    vals = f.values(0, S - 1)
    num = []
    for n in range(S):
        num.append(sum((den[i] * vals[n - i] for i in range(0, min(n, len(den) - 1) + 1)),
                       Fraction(0)))
    return RationalFunctionRep(tuple(num), den)


def from_rational_function(q: RationalFunctionRep) -> DualElement:
    """Inverse of :func:`to_rational_function` (returns a recursive representation)."""
    deg_den = len(q.den) - 1
    deg_num = len(q.num) - 1
    order = max(deg_den, 1)
    if deg_num + 1 > order + 1:
        order = deg_num
    h = [-q.den[i] if i < len(q.den) else Fraction(0) for i in range(1, order + 1)]
    seeds = q.series(max(order, deg_num + 1))
    return DualElement(Domain.POLY, Recursive(tuple(h), tuple(seeds), 0))


# -- component decomposition -------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """The sequence ``n -> poly(n) * root^n``.

    For ``root == 0`` (polynomial dual only) the component is the finitely
    supported sequence stored in ``finite``.
    """

    root: Fraction
    poly: tuple = ()
    finite: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "root", to_scalar(self.root))
        object.__setattr__(self, "poly", _trim(self.poly))
        object.__setattr__(self, "finite",
                           {int(k): to_scalar(v) for k, v in dict(self.finite).items() if v})

    def __hash__(self):
        return hash((self.root, self.poly, frozenset(self.finite.items())))

    def __call__(self, n: int) -> Fraction:
        if not self.root:
            return self.finite.get(n, Fraction(0))
        p = sum((c * Fraction(n) ** t for t, c in enumerate(self.poly)), Fraction(0))
        return p * self.root ** n


@dataclass(frozen=True)
class IrreducibleFactorReport:
    """Factorization over Q of a characteristic polynomial with an irrational root.

    ``factors`` holds ``(coefficients, multiplicity)`` pairs with coefficients
    listed from the leading term down (``x^2 - x - 1`` is ``(1, -1, -1)``).
    """

    polynomial: tuple
    factors: tuple

    def __str__(self) -> str:
        x = sympy.Symbol("x")
        parts = []
        for coeffs, mult in self.factors:
            p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x)
            parts.append(f"({p.as_expr()})" + (f"^{mult}" if mult > 1 else ""))
        return " * ".join(parts) + "  (irreducible over Q, roots not rational)"


def _factor(coeffs_desc: Sequence[Fraction]):
    x = sympy.Symbol("x")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs_desc], x, domain="QQ")
    _, factors = p.factor_list()
    out = []
    for fac, mult in factors:
        fac = fac.monic()
        out.append((tuple(Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def decompose_components(f: DualElement) -> list[Component] | IrreducibleFactorReport:
    """Split a restricted-dual element into its components ``p(n) a^n``.

    Roots are found from the minimal recurrence; if its characteristic
    polynomial has a non-rational root an :class:`IrreducibleFactorReport` is
    returned instead.
    """
    if not is_in_restricted_dual(f):
        raise InvalidDualElement("element is not in the restricted dual")
    rep = f.rep
    if isinstance(rep, FiniteSupport):
        return [Component(0, finite=rep.coeffs)] if rep.coeffs else []

    start = rep.anchor
    span = 2 * len(rep.seeds) + 4
    vals = f.values(start, start + span - 1)
    L, C = berlekamp_massey(vals)
    if L == 0:
        return []
    degC = max(i for i, c in enumerate(C) if c)
    e0 = L - degC  # multiplicity of the root 0
    char_desc = [Fraction(1)] + [C[i] if i < len(C) else Fraction(0) for i in range(1, L + 1)]
    factors = _factor(char_desc)
    if any(len(coeffs) > 2 for coeffs, _ in factors):
        return IrreducibleFactorReport(tuple(char_desc), tuple(factors))

    roots = [(-coeffs[1], mult) for coeffs, mult in factors if coeffs[1]]
    # columns: n^t a^n for each nonzero root a and t < multiplicity
    basis = [(a, t) for a, mult in roots for t in range(mult)]
    fit_from = start + e0
    comps: list[Component] = []
    if basis:
        rows = [[Fraction(n) ** t * a ** n for a, t in basis]
                for n in range(fit_from, fit_from + len(basis))]
        rhs = f.values(fit_from, fit_from + len(basis) - 1)
        sol = solve(rows, rhs)
        k = 0
        for a, mult in roots:
            comps.append(Component(a, tuple(sol[k:k + mult])))
            k += mult
    if e0:
        finite = {}
        for n, v in zip(range(start, fit_from), f.values(start, fit_from - 1)):
            finite[n] = v - sum((c(n) for c in comps), Fraction(0))
        if any(finite.values()):
            comps.append(Component(0, finite=finite))
    comps = [c for c in comps if c.poly or c.finite]
    comps.sort(key=lambda c: c.root)
    return comps


def translate_matrix(kind: AlgebraKind, f: DualElement, window: tuple[int, int]) -> list[list[Fraction]]:
    """Rows ``(f·x^i)(x^j) = f([x^i, x^j]) = (j−i) f_(i+j−1)`` for ``i, j`` in the window."""
    if f.domain is not kind.domain:
        raise DomainMismatch(f"{f.domain.value} functional on the {kind.value} algebra")
    lo, hi = window
    idx = [e for e in range(lo, hi + 1) if kind.domain.admits(e)]
    if not idx:
        return []
    need_lo, need_hi = 2 * idx[0] - 1, 2 * idx[-1] - 1
    if kind.domain is Domain.POLY:
        need_lo = max(need_lo, 0)
    vals = f.values(need_lo, need_hi) if need_hi >= need_lo else []
    def val(n):
        return vals[n - need_lo] if need_lo <= n <= need_hi else Fraction(0)
    return [[(j - i) * val(i + j - 1) if i != j else Fraction(0) for j in idx] for i in idx]


def translate_rank(kind: AlgebraKind, f: DualElement, window: tuple[int, int]) -> int:
    """Rank of the translates ``{f·x^i}`` seen on the window."""
    return rank(translate_matrix(kind, f, window))


# -- JSON ---------------------------------------------------------------------

def dual_to_json(f: DualElement) -> dict:
    rep = f.rep
    if isinstance(rep, FiniteSupport):
        body = {"type": "finite",
                "coeffs": {str(k): format_scalar(v) for k, v in sorted(rep.coeffs.items())}}
    else:
        body = {"type": "recursive", "order": rep.order,
                "h": [format_scalar(v) for v in rep.h], "anchor": rep.anchor,
                "seeds": [format_scalar(v) for v in rep.seeds]}
    return {"domain": f.domain.value, "rep": body}


def dual_from_json(data: Mapping) -> DualElement:
    try:
        domain = Domain(data["domain"])
        rep = data["rep"]
        if rep["type"] == "finite":
            return DualElement.finite({int(k): parse_scalar(v) for k, v in rep["coeffs"].items()},
                                      domain)
        if rep["type"] == "recursive":
            h = [parse_scalar(v) for v in rep["h"]]
            if "order" in rep and int(rep["order"]) != len(h):
                raise InvalidDualElement("order does not match the number of coefficients")
            return DualElement.recursive(h, [parse_scalar(v) for v in rep["seeds"]],
                                         int(rep.get("anchor", 0)), domain)
        raise InvalidDualElement(f"unknown rep type {rep['type']!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieDualError):
            raise
        raise InvalidDualElement(f"malformed dual element JSON: {exc}") from exc


def decomposition_to_json(result) -> dict:
    if isinstance(result, IrreducibleFactorReport):
        return {
            "type": "irreducible-report",
            "polynomial": [format_scalar(c) for c in result.polynomial],
            "factors": [{"coeffs": [format_scalar(c) for c in coeffs], "multiplicity": mult}
                        for coeffs, mult in result.factors],
        }
    return {
        "type": "components",
        "components": [
            {"root": format_scalar(c.root), "poly": [format_scalar(v) for v in c.poly],
             "finite": {str(k): format_scalar(v) for k, v in sorted(c.finite.items())}}
            for c in result
        ],
    }


def decomposition_from_json(data: Mapping):
    try:
        if data["type"] == "irreducible-report":
            return IrreducibleFactorReport(
                tuple(parse_scalar(c) for c in data["polynomial"]),
                tuple((tuple(parse_scalar(c) for c in f["coeffs"]), int(f["multiplicity"]))
                      for f in data["factors"]))
        return [Component(parse_scalar(c["root"]), tuple(parse_scalar(v) for v in c["poly"]),
                          {int(k): parse_scalar(v) for k, v in c.get("finite", {}).items()})
                for c in data["components"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieDualError):
            raise
        raise InvalidDualElement(f"malformed decomposition JSON: {exc}") from exc
