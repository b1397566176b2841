"""Sparse tensors over the basis ``{x^i} ∪ {c}`` and the CYBE residual."""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .algebra import (
    CENTRAL,
    AlgebraKind,
    KindMismatch,
    LieDualError,
    LieElement,
    ScalarLike,
    _check_kind,
    format_scalar,
    monomial_bracket,
    parse_scalar,
    to_scalar,
)


def label_key(label) -> tuple:
    """Sort key putting exponents first (numerically) and ``c`` last."""
    return (1, 0) if label == CENTRAL else (0, label)


def _label_str(label) -> str:
    return CENTRAL if label == CENTRAL else str(label)


def _parse_label(text: str):
    text = text.strip().replace("−", "-")
    return CENTRAL if text == CENTRAL else int(text)


class Tensor:
    """Sparse element of ``L^{⊗ rank}``; keys are tuples of basis labels."""

    __slots__ = ("kind", "_terms")
    rank = 0

    def __init__(self, kind: AlgebraKind, terms: Mapping[tuple, ScalarLike] | None = None):
        self.kind = kind
        clean: dict[tuple, Fraction] = {}
        for key, value in (terms or {}).items():
            key = tuple(key)
            if len(key) != self.rank:
                raise LieDualError(f"expected {self.rank} labels, got {key!r}")
            for label in key:
                if not kind.admits(label):
                    raise KindMismatch(f"label {label!r} not in the {kind.value} algebra")
            value = to_scalar(value)
            if value:
                total = clean.get(key, 0) + value
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        self._terms = clean

    @classmethod
    def _raw(cls, kind: AlgebraKind, terms: dict):
        # trusted constructor: terms already pruned and conforming
        obj = cls.__new__(cls)
        obj.kind = kind
        obj._terms = {k: v for k, v in terms.items() if v}
        return obj

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.kind is other.kind and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.kind, frozenset(self._terms.items())))

    def _same(self, other: Tensor) -> None:
        if type(other) is not type(self) or other.kind is not self.kind:
            raise KindMismatch("tensors of different kinds or ranks")

    def __add__(self, other):
        self._same(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return type(self)._raw(self.kind, out)

    def __neg__(self):
        return type(self)._raw(self.kind, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor: ScalarLike):
        factor = to_scalar(factor)
        return type(self)._raw(self.kind, {k: factor * v for k, v in self._terms.items()})

    __rmul__ = scale

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: tuple(label_key(l) for l in kv[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(
            f"{format_scalar(v)}*" + "⊗".join(_label_str(l) for l in k)
            for k, v in self.sorted_terms())
        return f"{type(self).__name__}({body})"


class Tensor2(Tensor):
    __slots__ = ()
    rank = 2

    @classmethod
    def pure(cls, kind: AlgebraKind, a: LieElement, b: LieElement) -> Tensor2:
        """``a ⊗ b`` expanded in the basis."""
        _check_kind(kind, a, b)
        out: dict[tuple, Fraction] = {}
        for la, ca in a.terms():
            for lb, cb in b.terms():
                out[(la, lb)] = out.get((la, lb), 0) + ca * cb
        return cls._raw(kind, out)


class Tensor3(Tensor):
    __slots__ = ()
    rank = 3


def _bracket_labels(kind: AlgebraKind, x: LieElement, label) -> list[tuple[object, Fraction]]:
    """Expansion of ``[x, basis(label)]`` as (label, coeff) pairs."""
    if label == CENTRAL:
        return []
    out: dict = {}
    for i, ci in x.body.coeffs.items():
        exp, coeff, central = monomial_bracket(kind, i, label)
        if coeff:
            out[exp] = out.get(exp, 0) + ci * coeff
        if central:
            out[CENTRAL] = out.get(CENTRAL, 0) + ci * central
    return [(l, v) for l, v in out.items() if v]


def _act(kind: AlgebraKind, x: LieElement, t: Tensor):
    _check_kind(kind, x)
    if t.kind is not kind:
        raise KindMismatch(f"tensor of kind {t.kind.value} acted on in {kind.value}")
    out: dict[tuple, Fraction] = {}
    cache: dict = {}
    for key, coeff in t.terms.items():
        for slot, label in enumerate(key):
            if label not in cache:
                cache[label] = _bracket_labels(kind, x, label)
            for new, c in cache[label]:
                nk = key[:slot] + (new,) + key[slot + 1:]
                out[nk] = out.get(nk, 0) + coeff * c
    return type(t)._raw(kind, out)


def act2(kind: AlgebraKind, x: LieElement, t: Tensor2) -> Tensor2:
    """Diagonal action ``x·(y⊗z) = [x,y]⊗z + y⊗[x,z]``."""
    return _act(kind, x, t)


def act3(kind: AlgebraKind, x: LieElement, t: Tensor3) -> Tensor3:
    """Three-slot Leibniz extension of :func:`act2`."""
    return _act(kind, x, t)


def swap(t: Tensor2) -> Tensor2:
    return Tensor2._raw(t.kind, {(b, a): v for (a, b), v in t.terms.items()})


def _basis_bracket(kind: AlgebraKind, a, b) -> list[tuple[object, Fraction]]:
    if a == CENTRAL or b == CENTRAL:
        return []
    exp, coeff, central = monomial_bracket(kind, a, b)
    out = []
    if coeff:
        out.append((exp, coeff))
    if central:
        out.append((CENTRAL, central))
    return out


def cybe(kind: AlgebraKind, r: Tensor2) -> Tensor3:
    """Residual ``[r12, r13] + [r12, r23] + [r13, r23]`` inside ``L⊗L⊗L``.

    ``r23`` is taken as ``Σ 1 ⊗ r1 ⊗ r2``.  Zero means ``r`` solves the
    classical Yang-Baxter equation.
    """
    if r.kind is not kind:
        raise KindMismatch(f"tensor of kind {r.kind.value} checked in {kind.value}")
    out: dict[tuple, Fraction] = {}

    def add(key, value):
        out[key] = out.get(key, 0) + value

    items = list(r.terms.items())
    for (a, b), u in items:
        for (c, d), v in items:
            uv = u * v
            for lab, w in _basis_bracket(kind, a, c):
                add((lab, b, d), uv * w)
            for lab, w in _basis_bracket(kind, b, c):
                add((a, lab, d), uv * w)
            for lab, w in _basis_bracket(kind, b, d):
                add((a, c, lab), uv * w)
    return Tensor3._raw(kind, out)


def tensor_to_json(t: Tensor) -> dict:
    return {
        "kind": t.kind.value,
        "terms": [{"labels": [_label_str(l) for l in k], "coeff": format_scalar(v)}
                  for k, v in t.sorted_terms()],
    }


def tensor_from_json(data: Mapping) -> Tensor:
    try:
        kind = AlgebraKind(data["kind"])
        terms: dict[tuple, Fraction] = {}
        ranks = set()
        for item in data["terms"]:
            key = tuple(_parse_label(str(l)) for l in item["labels"])
            ranks.add(len(key))
            terms[key] = terms.get(key, 0) + parse_scalar(str(item["coeff"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieDualError):
            raise
        raise LieDualError(f"malformed tensor JSON: {exc}") from exc
    if len(ranks) > 1:
        raise LieDualError("tensor terms of mixed rank")
    rank = ranks.pop() if ranks else 2
    cls = {2: Tensor2, 3: Tensor3}.get(rank)
    if cls is None:
        raise LieDualError(f"unsupported tensor rank {rank}")
    return cls(kind, terms)


def tensor2_from_terms(kind: AlgebraKind, terms: Iterable[tuple[object, object, ScalarLike]]) -> Tensor2:
    out: dict[tuple, Fraction] = {}
    for a, b, v in terms:
        out[(a, b)] = out.get((a, b), 0) + to_scalar(v)
    return Tensor2(kind, out)


__all__ = [
    "Tensor", "Tensor2", "Tensor3", "act2", "act3", "swap", "cybe", "label_key",
    "tensor_to_json", "tensor_from_json", "tensor2_from_terms",
]
