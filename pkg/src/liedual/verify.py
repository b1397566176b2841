"""Exact verification suites, shared by ``liedual verify`` and the test-suite.

Each suite returns a :class:`SuiteResult`; every comparison is exact rational
equality.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .algebra import AlgebraKind, Domain, LieElement, bracket
from .bialgebra import (
    BialgebraParams,
    build_subalgebra_pair,
    check_cojacobi,
    check_compatibility,
    r_from_pair,
    witt_r,
    xy_r,
)
from .dual import (
    DualElement,
    IrreducibleFactorReport,
    cobracket_dual,
    coefficient,
    decompose_components,
    is_in_restricted_dual,
)
from .dual_bracket import (
    MUTATIONS,
    BracketSource,
    antisymmetry_check,
    cross_check,
    jacobi_check,
    xy_a_term,
)
from .recurrence import infer_recurrence
from .tensors import cybe

W, V, O = AlgebraKind.WITT, AlgebraKind.VIRASORO, AlgebraKind.ONE_SIDED_WITT

WITT_N = (-3, -2, -1, 0, 2, 3, 4, 5)
ELL_K = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3))
XY_GRID = tuple(BialgebraParams(n, ell, k)
                for n in range(-4, 5) if n != 1
                for ell in ELL_K for k in ELL_K)
# subset of XY_GRID used for the (slower) bialgebra-axiom sweeps
XY_AXIOM_GRID = tuple(BialgebraParams(n, Fraction(ell), Fraction(k))
                      for n in range(-4, 5) if n != 1
                      for ell, k in ((1, 1), (Fraction(1, 2), 3), (-1, -1), (3, Fraction(-1, 2))))


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.checks} checks, {len(self.failures)} failures, {self.seconds:.2f}s{extra}"


class _Tally:
    def __init__(self, name):
        self.name, self.checks, self.failures = name, 0, []
        self.t0 = time.perf_counter()

    def check(self, ok: bool, what) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, not self.failures and self.checks > 0, self.checks,
                           self.failures, time.perf_counter() - self.t0)


def suite_cybe(window=(-5, 5), **_) -> SuiteResult:
    """CYBE for ``x⊗x^n − x^n⊗x``, with the central labels checked separately on Virasoro."""
    t = _Tally("cybe")
    lo, hi = window
    for kind in (W, V, O):
        for n in range(max(lo, 0) if kind is O else lo, hi + 1):
            if n == 1:
                continue
            res = cybe(kind, witt_r(kind, n).underlying)
            t.check(not res, (kind.value, n))
            if kind is V:
                t.check(not any("c" in key for key in res.terms), (kind.value, n, "central"))
    return t.result()


def suite_lemma(grid=XY_GRID, **_) -> SuiteResult:
    t = _Tally("lemma")
    for kind in (W, V):
        for p in grid:
            X, Y = build_subalgebra_pair(kind, p)
            t.check(bracket(kind, X, Y) == Y, (kind.value, p, "[X,Y]=Y"))
            t.check(not cybe(kind, r_from_pair(X, Y, kind).underlying), (kind.value, p, "cybe"))
    return t.result()


def suite_witt_table(window=(-8, 8), mutate=None, **_) -> SuiteResult:
    t = _Tally("witt-table")
    lo, hi = window
    for kind in (W, V, O):
        ns = [n for n in WITT_N if n >= 0] if kind is O else WITT_N
        win = (max(lo, 0), hi) if kind is O else (lo, hi)
        for n in ns:
            table, _, mismatches = cross_check(kind, n, win, mutate, m_range=(-20, 20))
            t.checks += len(table.entries) - 1
            t.check(not mismatches, (kind.value, n, mismatches[:1]))
    return t.result()


def suite_xy_table(window=(-8, 8), mutate=None, grid=XY_GRID, **_) -> SuiteResult:
    """Closed form vs oracle for the (X, Y) family, plus ``oracle = A_ij − A_ji``."""
    t = _Tally("xy-table")
    lo, hi = window
    for kind in (W, V):
        for p in grid:
            table, oracle, mismatches = cross_check(kind, p, (lo, hi), mutate, m_range=(-20, 20))
            t.checks += len(table.entries) - 1
            t.check(not mismatches, (kind.value, p, mismatches[:1]))
            if kind is V:
                continue
            for (i, j), value in oracle.entries.items():
                a, b = xy_a_term(p, i, j).rep.coeffs, xy_a_term(p, j, i).rep.coeffs
                diff = {e: a.get(e, 0) - b.get(e, 0) for e in set(a) | set(b)}
                diff = {e: v for e, v in diff.items() if v}
                t.check(diff == value.rep.coeffs, (p, i, j, "A_ij - A_ji"))
    return t.result()


def suite_jacobi(window=(-5, 5), pair_window=(-8, 8), mutate=None, grid=XY_GRID, **_) -> SuiteResult:
    t = _Tally("jacobi")
    lo, hi = window
    plo, phi = pair_window
    for p in grid:
        src = BracketSource(W, p, mutate=mutate)
        for i, j, l in product(range(lo, hi + 1), repeat=3):
            t.check(jacobi_check(src, i, j, l), (p, i, j, l))
        for i, j in product(range(plo, phi + 1), repeat=2):
            t.check(antisymmetry_check(src, i, j), (p, i, j, "antisymmetry"))
    return t.result()


def suite_cobracket(window=(-8, 8), **_) -> SuiteResult:
    """``<Δ(ε^n), x^a⊗x^b> = <ε^n, [x^a, x^b]>`` on both duals."""
    t = _Tally("cobracket")
    lo, hi = window
    for kind in (W, V, O):
        domain = kind.domain
        rng = range(max(lo, 0), hi + 1) if domain is Domain.POLY else range(lo, hi + 1)
        for n in rng:
            delta = cobracket_dual(n, domain, (lo, hi))
            eps_n = DualElement.finite({n: 1}, domain)
            for a, b in product(rng, repeat=2):
                br = bracket(kind, LieElement.monomial(a, kind), LieElement.monomial(b, kind))
                expected = sum((eps_n.rep.coeffs.get(e, 0) * c for e, c in br.body.coeffs.items()),
                               Fraction(0))
                got = delta[(a, b)]
                t.check(got == expected and got == (b - a) * (a + b == n + 1), (kind.value, n, a, b))
    return t.result()


def suite_axioms(window=(-6, 6), **_) -> SuiteResult:
    """Cocycle compatibility and co-Jacobi for both r-matrix families."""
    t = _Tally("axioms")
    lo, hi = window
    setups = []
    for kind in (W, V, O):
        for n in WITT_N:
            if kind is O and n < 0:
                continue
            setups.append((kind, witt_r(kind, n)))
    for kind in (W, V):
        for p in XY_AXIOM_GRID:
            setups.append((kind, xy_r(kind, p)))
    for kind, r in setups:
        rng = range(max(lo, 0), hi + 1) if kind is O else range(lo, hi + 1)
        mons = {e: LieElement.monomial(e, kind) for e in rng}
        for a, b in product(rng, repeat=2):
            t.check(check_compatibility(kind, r, mons[a], mons[b]), (kind.value, r, a, b))
        for a in rng:
            t.check(check_cojacobi(kind, r, mons[a]), (kind.value, r, a, "co-Jacobi"))
    return t.result()


def suite_membership(window=(-8, 8), **_) -> SuiteResult:
    t = _Tally("membership")
    fib = DualElement.recursive([1, 1], [0, 1], domain=Domain.POLY)
    t.check(is_in_restricted_dual(fib), "Fibonacci in F[x]°")
    vals = fib.values(0, 11)
    t.check(infer_recurrence(vals) == (2, (Fraction(1), Fraction(1))), "Fibonacci recurrence")
    t.check(not is_in_restricted_dual(DualElement.finite({3: 1}, Domain.LAURENT)),
            "ε^3 not in F[x,x^-1]°")
    g = DualElement.recursive([7, -10], [4, 17], domain=Domain.LAURENT)
    comps = decompose_components(g)
    ok = isinstance(comps, list) and len(comps) == 2
    t.check(ok, "2^n + 3*5^n has two components")
    if ok:
        lo, hi = window
        for n in range(lo, hi + 1):
            t.check(sum((c(n) for c in comps), Fraction(0)) == coefficient(g, n), ("re-sum", n))
    rep = decompose_components(DualElement.recursive([1, 1], [0, 1], domain=Domain.LAURENT))
    t.check(isinstance(rep, IrreducibleFactorReport)
            and rep.factors == (((1, -1, -1), 1),), "Fibonacci irreducible report")
    return t.result()


def suite_mutation(**_) -> SuiteResult:
    """Every sign mutation of a nonzero case must be caught by one of the table suites."""
    t = _Tally("mutation")
    for name in MUTATIONS:
        caught = []
        for kind, params, win in ((W, 2, (-8, 8)), (O, 2, (0, 8)), (W, -2, (-8, 8)),
                                  (W, BialgebraParams(3, 1, 2), (-8, 8)),
                                  (W, BialgebraParams(-2, Fraction(1, 2), 3), (-8, 8))):
            caught.append(bool(cross_check(kind, params, win, name)[2]))
        t.check(any(caught), (name, "not caught"))
    return t.result()


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "cybe": suite_cybe,
    "lemma": suite_lemma,
    "witt-table": suite_witt_table,
    "xy-table": suite_xy_table,
    "jacobi": suite_jacobi,
    "cobracket": suite_cobracket,
    "axioms": suite_axioms,
    "membership": suite_membership,
    "mutation": suite_mutation,
}


def run_suites(names=None, window=None, mutate=None) -> list[SuiteResult]:
    out = []
    for name in names or SUITES:
        kwargs = {"mutate": mutate}
        if window is not None:
            kwargs["window"] = tuple(window)
        out.append(SUITES[name](**kwargs))
    return out
