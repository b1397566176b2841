"""Dual Lie brackets ``[ε^i, ε^j]`` of the two triangular families.

Each structure constant is available two ways: from the closed-form case
tables (:func:`closed_form_witt`, :func:`closed_form_xy`) and from the
pairing oracle ``<[ε^i, ε^j], x^m> = <ε^i⊗ε^j, x^m·r>``
(:func:`dual_bracket_oracle`), which never looks at the tables.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Union

from .algebra import (
    AlgebraKind,
    Domain,
    DomainMismatch,
    LieDualError,
    LieElement,
    format_scalar,
)
from .bialgebra import BialgebraParams, InvalidParams, RMatrix, coboundary_cobracket, witt_r, xy_r
from .dual import DualElement, FiniteSupport, dual_from_json, dual_to_json

Params = Union[int, BialgebraParams]

#: mutation name -> index of the case whose sign gets flipped
MUTATIONS = {"case1-sign": 1, "case2-sign": 2, "case3-sign": 3}


def _finite(domain: Domain, terms) -> DualElement:
    out: dict[int, Fraction] = {}
    for exp, coeff in terms:
        if coeff:
            out[exp] = out.get(exp, 0) + coeff
    return DualElement.finite(out, domain)


def _negate(f: DualElement) -> DualElement:
    return DualElement.finite({k: -v for k, v in f.rep.coeffs.items()}, f.domain)


def _resolve(cases: Callable, i: int, j: int, domain: Domain) -> DualElement:
    # the tables list cases by first index; the rest follows from antisymmetry
    terms = cases(i, j)
    if terms is not None:
        return _finite(domain, terms)
    terms = cases(j, i)
    if terms is not None:
        return _negate(_finite(domain, terms))
    return DualElement.zero(domain)


def _sign(case: int, mutate: str | None) -> int:
    if mutate is None:
        return 1
    if mutate not in MUTATIONS:
        raise LieDualError(f"unknown mutation {mutate!r}; choose from {sorted(MUTATIONS)}")
    return -1 if MUTATIONS[mutate] == case else 1


def _check_n(n: int) -> None:
    if n == 1:
        raise InvalidParams("n = 1 is excluded")


def closed_form_witt(kind: AlgebraKind, n: int, i: int, j: int,
                     mutate: str | None = None) -> DualElement:
    """``[ε^i, ε^j]`` for ``r = x⊗x^n − x^n⊗x``.

    On the Witt and Virasoro duals::

        (2n-j-1) ε^(j+1-n)   if i = 1 != j
        (j-1) ε^j            if i = n, j not in {1, n}
        0                    if i, j not in {1, n}

    On the one-sided dual the first case additionally needs ``j >= n-1``
    (otherwise ``ε^(j+1-n)`` does not exist and the bracket is 0).
    """
    _check_n(n)
    domain = kind.domain
    if domain is Domain.POLY and min(n, i, j) < 0:
        raise DomainMismatch("one-sided Witt dual needs n, i, j >= 0")
    one_sided = kind is AlgebraKind.ONE_SIDED_WITT
    s1, s2 = _sign(1, mutate), _sign(2, mutate)

    def cases(a, b):
        if a == 1 and b != 1:
            if one_sided and b < n - 1:
                return []
            return [(b + 1 - n, s1 * (2 * n - b - 1))]
        if a == n and b not in (1, n):
            return [(b, s2 * (b - 1))]
        if a not in (1, n) and b not in (1, n):
            return []
        return None

    return _resolve(cases, i, j, domain)


def witt_master_formula(kind: AlgebraKind, n: int, i: int, j: int) -> DualElement:
    """Uncased form ``(1-i)δ_{j,n}ε^i − (1-j)δ_{i,n}ε^j + (2n-j-1)δ_{i,1}ε^(j+1-n) − (2n-i-1)δ_{j,1}ε^(i+1-n)``.

    Terms with negative exponent are dropped on the one-sided dual.
    """
    _check_n(n)
    terms = [
        (i, (1 - i) * (j == n)),
        (j, -(1 - j) * (i == n)),
        (j + 1 - n, (2 * n - j - 1) * (i == 1)),
        (i + 1 - n, -(2 * n - i - 1) * (j == 1)),
    ]
    domain = kind.domain
    terms = [(e, Fraction(c)) for e, c in terms if domain.admits(e)]
    return _finite(domain, terms)


def closed_form_xy(kind: AlgebraKind, p: BialgebraParams, i: int, j: int,
                   mutate: str | None = None) -> DualElement:
    """``[ε^i, ε^j]`` for ``r = X⊗Y − Y⊗X`` built from ``p = (n, ℓ, k)``."""
    if kind is AlgebraKind.ONE_SIDED_WITT:
        raise InvalidParams("the (X, Y) family lives on the Witt and Virasoro algebras")
    n, ell, k = p.n, p.ell, p.k
    m2 = 2 * (n - 1) ** 2 * ell
    s1, s2, s3 = (_sign(c, mutate) for c in (1, 2, 3))
    special = (1, 2 - n, n)

    def cases(a, b):
        if a == 1 and b != 1:
            return [(b, s1 * -k * ((b == n) + (b == 2 - n))),
                    (b + n - 1, s1 * -k * (b + 2 * n - 3) / m2),
                    (b - n + 1, s1 * -k * ell / 2 * (2 * n - b - 1))]
        if a == 2 - n and b not in (1, 2 - n):
            return [(1, s2 * -k / 2 * (b == n)),
                    (2 - n, s2 * -k * ell / 2 * (n - 1) * (b == n)),
                    (b, s2 * k * (b - 1) / m2),
                    (b - n + 1, s2 * k * (2 * n - b - 1) / (2 * (n - 1)))]
        if a == n and b not in special:
            return [(b + n - 1, s3 * k * (b + 2 * n - 3) / (2 * (n - 1))),
                    (b, s3 * k * ell / 2 * (1 - b))]
        if a not in special and b not in special:
            return []
        return None

    return _resolve(cases, i, j, Domain.LAURENT)


def xy_a_term(p: BialgebraParams, i: int, j: int) -> DualElement:
    """The functional ``A_ij`` with ``[ε^i, ε^j] = A_ij − A_ji`` for the (X, Y) family."""
    n, ell, k = p.n, p.ell, p.k
    l0, k0, k1 = p.l0, p.k0, p.k1
    y_j = k0 * (j == 2 - n) + k * (j == 1) + k1 * (j == n)
    x_j = l0 * (j == 1) + ell * (j == n)
    terms = [
        (i, y_j * l0 * (1 - i)),
        (i - n + 1, y_j * ell * (2 * n - i - 1)),
        (i + n - 1, -x_j * k0 * (3 - i - 2 * n)),
        (i, -x_j * k * (1 - i)),
        (i - n + 1, -x_j * k1 * (2 * n - i - 1)),
    ]
    return _finite(Domain.LAURENT, terms)


# -- the pairing oracle ---------------------------------------------------------

def family_r(kind: AlgebraKind, params: Params) -> RMatrix:
    if isinstance(params, BialgebraParams):
        return xy_r(kind, params)
    return witt_r(kind, params)


def dual_bracket_oracle(kind: AlgebraKind, r: RMatrix, i: int, j: int, m: int) -> Fraction:
    """``<[ε^i, ε^j], x^m> = <ε^i⊗ε^j, x^m·r>``."""
    domain = kind.domain
    for idx in (i, j, m):
        if not domain.admits(idx):
            raise DomainMismatch(f"index {idx} not allowed on the {kind.value} algebra")
    return coboundary_cobracket(kind, r, LieElement.monomial(m, kind))[(i, j)]


def _n_of(params: Params) -> int:
    return params.n if isinstance(params, BialgebraParams) else params


def support_bound(params: Params, i: int, j: int, slack: int = 2) -> tuple[int, int]:
    """Interval containing every exponent of ``[ε^i, ε^j]``, widened by ``slack``."""
    n = abs(_n_of(params))
    return min(i, j) - n - 1 - slack, max(i, j) + n + 1 + slack


def oracle_bracket(kind: AlgebraKind, params: Params, i: int, j: int,
                   m_range: tuple[int, int] | None = None) -> DualElement:
    """``[ε^i, ε^j]`` assembled from oracle values over an m-sweep."""
    r = family_r(kind, params)
    lo, hi = m_range or support_bound(params, i, j)
    if kind.domain is Domain.POLY:
        lo = max(lo, 0)
    terms = [(m, dual_bracket_oracle(kind, r, i, j, m)) for m in range(lo, hi + 1)]
    return _finite(kind.domain, terms)


# -- tables ------------------------------------------------------------------

def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("LIEDUAL_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class BracketTable:
    kind: AlgebraKind
    params: Params
    window: tuple[int, int]
    entries: Mapping[tuple[int, int], DualElement] = field(default_factory=dict)
    provenance: str = "closed-form"

    def __post_init__(self):
        if self.provenance not in ("closed-form", "oracle"):
            raise LieDualError(f"unknown provenance {self.provenance!r}")
        for (i, j), v in self.entries.items():
            if not isinstance(v.rep, FiniteSupport):
                raise LieDualError(f"entry {(i, j)} is not finitely supported")

    def indices(self) -> list[int]:
        lo, hi = self.window
        return [e for e in range(lo, hi + 1) if self.kind.domain.admits(e)]

    def rows(self) -> list[tuple[int, int, DualElement]]:
        return [(i, j, self.entries[(i, j)]) for i, j in sorted(self.entries)]

    def same_entries(self, other: BracketTable) -> bool:
        return self.window == other.window and dict(self.entries) == dict(other.entries)


def _grid(kind: AlgebraKind, window: tuple[int, int]) -> list[int]:
    lo, hi = window
    return [e for e in range(lo, hi + 1) if kind.domain.admits(e)]


def closed_form(kind: AlgebraKind, params: Params, i: int, j: int,
                mutate: str | None = None) -> DualElement:
    if isinstance(params, BialgebraParams):
        return closed_form_xy(kind, params, i, j, mutate)
    return closed_form_witt(kind, params, i, j, mutate)


def build_table(kind: AlgebraKind, params: Params, window: tuple[int, int],
                mutate: str | None = None) -> BracketTable:
    """Closed-form structure constants for every ``(i, j)`` in ``window × window``."""
    if isinstance(params, BialgebraParams) and kind is AlgebraKind.ONE_SIDED_WITT:
        raise InvalidParams("the (X, Y) family lives on the Witt and Virasoro algebras")
    if not isinstance(params, BialgebraParams):
        witt_r(kind, params)  # validates n against the kind
    idx = _grid(kind, window)
    entries = {(i, j): closed_form(kind, params, i, j, mutate) for i in idx for j in idx}
    return BracketTable(kind, params, tuple(window), entries, "closed-form")


def oracle_m_range(kind: AlgebraKind, params: Params, window: tuple[int, int],
                   extra: tuple[int, int] | None = None) -> tuple[int, int]:
    lo, hi = window
    n = abs(_n_of(params))
    m_lo = min(2 * lo - 2, lo - n - 3)
    m_hi = max(2 * hi + 2, hi + n + 3)
    if extra:
        m_lo, m_hi = min(m_lo, extra[0]), max(m_hi, extra[1])
    if kind.domain is Domain.POLY:
        m_lo = max(m_lo, 0)
    return m_lo, m_hi


def build_oracle_table(kind: AlgebraKind, params: Params, window: tuple[int, int],
                       m_range: tuple[int, int] | None = None) -> BracketTable:
    """Same table as :func:`build_table`, read off ``δ(x^m)`` for every m in the sweep."""
    r = family_r(kind, params)
    idx = _grid(kind, window)
    lo, hi = window
    m_lo, m_hi = m_range or oracle_m_range(kind, params, window)
    ms = range(max(m_lo, 0) if kind.domain is Domain.POLY else m_lo, m_hi + 1)

    def cobracket(m):
        return m, coboundary_cobracket(kind, r, LieElement.monomial(m, kind))

    workers = max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(cobracket, ms))
    else:
        results = [cobracket(m) for m in ms]
    acc: dict[tuple[int, int], dict[int, Fraction]] = {(i, j): {} for i in idx for j in idx}
    for m, delta in results:
        for (a, b), v in delta.terms.items():
            if isinstance(a, int) and isinstance(b, int) and lo <= a <= hi and lo <= b <= hi:
                slot = acc.get((a, b))
                if slot is not None:
                    slot[m] = slot.get(m, 0) + v
    entries = {key: DualElement.finite(vals, kind.domain) for key, vals in acc.items()}
    return BracketTable(kind, params, tuple(window), entries, "oracle")


def diff_tables(a: BracketTable, b: BracketTable) -> list[tuple[int, int, DualElement, DualElement]]:
    keys = sorted(set(a.entries) | set(b.entries))
    zero = DualElement.zero(a.kind.domain)
    out = []
    for key in keys:
        x, y = a.entries.get(key, zero), b.entries.get(key, zero)
        if x != y:
            out.append((key[0], key[1], x, y))
    return out


def cross_check(kind: AlgebraKind, params: Params, window: tuple[int, int],
                mutate: str | None = None, m_range: tuple[int, int] | None = None):
    """``(closed-form table, oracle table, mismatches)``.

    The oracle sweep must cover the closed-form support; any closed-form term
    outside it is reported as a mismatch too.
    """
    table = build_table(kind, params, window, mutate)
    m_lo, m_hi = oracle_m_range(kind, params, window, m_range)
    oracle = build_oracle_table(kind, params, window, (m_lo, m_hi))
    mismatches = diff_tables(table, oracle)
    return table, oracle, mismatches


# -- bracket sources, Jacobi and antisymmetry ------------------------------------

class BracketSource:
    """Callable ``(i, j) -> [ε^i, ε^j]`` backed by a closed form or by the oracle."""

    def __init__(self, kind: AlgebraKind, params: Params, provenance: str = "closed-form",
                 mutate: str | None = None):
        if provenance not in ("closed-form", "oracle"):
            raise LieDualError(f"unknown provenance {provenance!r}")
        self.kind, self.params, self.provenance, self.mutate = kind, params, provenance, mutate
        self._cached = lru_cache(maxsize=None)(self._compute)

    def _compute(self, i: int, j: int) -> DualElement:
        if self.provenance == "oracle":
            return oracle_bracket(self.kind, self.params, i, j)
        return closed_form(self.kind, self.params, i, j, self.mutate)

    def __call__(self, i: int, j: int) -> DualElement:
        return self._cached(i, j)

    def bracket(self, f: DualElement, g: DualElement) -> DualElement:
        """Bilinear extension to finitely supported ε-combinations."""
        acc: dict[int, Fraction] = {}
        for i, fi in f.rep.coeffs.items():
            for j, gj in g.rep.coeffs.items():
                for e, c in self(i, j).rep.coeffs.items():
                    acc[e] = acc.get(e, 0) + fi * gj * c
        return DualElement.finite(acc, self.kind.domain)


def _eps(e: int, domain: Domain) -> DualElement:
    return DualElement.finite({e: 1}, domain)


def jacobi_residual(source: BracketSource, i: int, j: int, l: int) -> DualElement:
    d = source.kind.domain
    ei, ej, el = _eps(i, d), _eps(j, d), _eps(l, d)
    acc: dict[int, Fraction] = {}
    for term in (source.bracket(source(i, j), el),
                 source.bracket(source(j, l), ei),
                 source.bracket(source(l, i), ej)):
        for e, c in term.rep.coeffs.items():
            acc[e] = acc.get(e, 0) + c
    return DualElement.finite(acc, d)


def jacobi_check(source: BracketSource, i: int, j: int, l: int) -> bool:
    return not jacobi_residual(source, i, j, l).rep.coeffs


def antisymmetry_check(source: BracketSource, i: int, j: int) -> bool:
    return source(i, j) == _negate(source(j, i))


# -- JSON / CSV / LaTeX ----------------------------------------------------------

def params_to_json(params: Params):
    if isinstance(params, BialgebraParams):
        return {"family": "xy", **params.to_json()}
    return {"family": "witt-n", "n": params}


def params_from_json(data) -> Params:
    if data.get("family") == "xy":
        return BialgebraParams.from_json(data)
    return int(data["n"])


def table_to_json(t: BracketTable) -> dict:
    return {
        "kind": t.kind.value,
        "params": params_to_json(t.params),
        "window": list(t.window),
        "entries": [{"i": i, "j": j, "value": dual_to_json(v)} for i, j, v in t.rows()],
        "provenance": t.provenance,
    }


def table_from_json(data) -> BracketTable:
    try:
        kind = AlgebraKind(data["kind"])
        entries = {(int(e["i"]), int(e["j"])): dual_from_json(e["value"]) for e in data["entries"]}
        return BracketTable(kind, params_from_json(data["params"]),
                            tuple(int(v) for v in data["window"]), entries, data["provenance"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieDualError):
            raise
        raise LieDualError(f"malformed table JSON: {exc}") from exc


def format_finite(f: DualElement) -> str:
    coeffs = f.rep.coeffs
    if not coeffs:
        return "0"
    return " + ".join(f"{format_scalar(c)}*eps^{e}" for e, c in sorted(coeffs.items()))


def table_to_csv(t: BracketTable) -> str:
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "bracket"])
    for i, j, v in t.rows():
        w.writerow([i, j, format_finite(v)])
    return buf.getvalue()


def _latex_scalar(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return rf"{sign}\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def latex_finite(f: DualElement) -> str:
    coeffs = f.rep.coeffs
    if not coeffs:
        return "0"
    parts = []
    for e, c in sorted(coeffs.items()):
        coef = "" if c == 1 else "-" if c == -1 else _latex_scalar(c)
        parts.append(rf"{coef}\varepsilon^{{{e}}}")
    return " + ".join(parts).replace("+ -", "- ")


def table_to_latex(t: BracketTable) -> str:
    lines = [r"\begin{tabular}{rrl}", r"$i$ & $j$ & $[\varepsilon^i, \varepsilon^j]$ \\", r"\hline"]
    for i, j, v in t.rows():
        lines.append(rf"{i} & {j} & ${latex_finite(v)}$ \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"
