"""Seed mutation over pluggable semifields.

Three semifields are provided: exact positive rationals, positive floats and
the tropical semifield of Laurent monomials (exponent vectors with
componentwise ``min`` as addition).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import SignIncoherence, UnknownLabel
from .labels import Label


class Semifield:
    name = "abstract"

    def one(self) -> Any:
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def div(self, x, y):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        return self.div(self.one(), x)

    def pow(self, x, k: int):
        out = self.one()
        base = x if k >= 0 else self.inv(x)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def equal(self, x, y) -> bool:
        return x == y


class ExactPositiveRational(Semifield):
    name = "rational"

    def one(self) -> Fraction:
        return Fraction(1)

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x / y

    def add(self, x, y):
        return x + y

    def coerce(self, x) -> Fraction:
        return Fraction(x)


class Float64Positive(Semifield):
    name = "float"

    def __init__(self, rtol: float = 1e-9):
        self.rtol = rtol

    def one(self) -> float:
        return 1.0

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x / y

    def add(self, x, y):
        return x + y

    def coerce(self, x) -> float:
        return float(x)

    def equal(self, x, y) -> bool:
        return abs(x - y) <= self.rtol * max(abs(x), abs(y))


class TropicalLaurent(Semifield):
    """Monomials y^c in n initial variables; c is an integer vector."""

    name = "tropical"

    def __init__(self, n: int):
        self.n = n

    def one(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def generator(self, i: int) -> np.ndarray:
        e = self.one()
        e[i] = 1
        return e

    def mul(self, x, y):
        return x + y

    def div(self, x, y):
        return x - y

    def inv(self, x):
        return -x

    def add(self, x, y):
        return np.minimum(x, y)

    def pow(self, x, k: int):
        return k * x

    def equal(self, x, y) -> bool:
        return bool(np.array_equal(x, y))


def semifield_by_name(name: str, n: int = 0) -> Semifield:
    if name in ("rational", "exact"):
        return ExactPositiveRational()
    if name == "float":
        return Float64Positive()
    if name == "tropical":
        return TropicalLaurent(n)
    raise ValueError(f"unknown semifield {name!r}")


# ---------------------------------------------------------------------------
# matrix mutation


def mutate_matrix(B: np.ndarray, k: int) -> np.ndarray:
    """b'_ij = -b_ij if k in {i,j}, else b_ij + b_ik [b_kj]_+ + [-b_ik]_+ b_kj."""
    B = np.asarray(B)
    if not 0 <= k < B.shape[0]:
        raise UnknownLabel(k)
    col = B[:, k]
    row = B[k, :]
    out = B + np.outer(col, np.maximum(row, 0)) + np.outer(np.maximum(-col, 0), row)
    out[k, :] = -B[k, :]
    out[:, k] = -B[:, k]
    return out


# ---------------------------------------------------------------------------
# in-place value updates, shared by seeds and trajectories


def y_update(field: Semifield, B: np.ndarray, y: list, k: int) -> None:
    """Coefficient mutation at k, in place (B is the matrix before mutation)."""
    yk = y[k]
    one = field.one()
    plus = field.add(one, yk)  # 1 + y_k
    minus = field.add(one, field.inv(yk))  # 1 + y_k^{-1}
    row = B[k]
    for i in np.nonzero(row)[0]:
        b = int(row[i])
        if i == k:
            continue
        if b < 0:
            y[i] = field.mul(y[i], field.pow(plus, -b))
        else:
            y[i] = field.div(y[i], field.pow(minus, b))
    y[k] = field.inv(yk)


def x_update(B: np.ndarray, x: list, k: int) -> None:
    """Coefficient-free exchange relation at k, in place."""
    col = B[:, k]
    up = 1
    down = 1
    for i in np.nonzero(col)[0]:
        b = int(col[i])
        if b > 0:
            up = up * x[i] ** b
        else:
            down = down * x[i] ** (-b)
    if x[k] == 0:
        raise ZeroDivisionError("cluster variable is zero")
    x[k] = (up + down) / x[k]


# ---------------------------------------------------------------------------
# seeds as values


@dataclass(frozen=True)
class YSeed:
    labels: tuple[Label, ...]
    B: np.ndarray
    y: tuple
    field: Semifield

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def value(self, label):
        return self.y[self.index(label)]


@dataclass(frozen=True)
class XSeed:
    labels: tuple[Label, ...]
    B: np.ndarray
    x: tuple

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def value(self, label):
        return self.x[self.index(label)]


def _k(seed, k) -> int:
    if isinstance(k, (int, np.integer)) and not isinstance(k, tuple):
        if not 0 <= k < len(seed.labels):
            raise UnknownLabel(k)
        return int(k)
    return seed.index(k)


def mutate_y(seed: YSeed, k) -> YSeed:
    k = _k(seed, k)
    y = list(seed.y)
    y_update(seed.field, seed.B, y, k)
    return YSeed(seed.labels, mutate_matrix(seed.B, k), tuple(y), seed.field)


def mutate_x(seed: XSeed, k) -> XSeed:
    k = _k(seed, k)
    x = list(seed.x)
    x_update(seed.B, x, k)
    return XSeed(seed.labels, mutate_matrix(seed.B, k), tuple(x))


def initial_tropical_seed(labels: Sequence[Label], B: np.ndarray) -> YSeed:
    field = TropicalLaurent(len(labels))
    return YSeed(tuple(labels), np.asarray(B), tuple(field.generator(i) for i in range(len(labels))), field)


def c_vector(seed: YSeed, label) -> np.ndarray:
    if not isinstance(seed.field, TropicalLaurent):
        raise TypeError("c-vectors live in the tropical semifield")
    return np.asarray(seed.y[_k(seed, label)])


def tropical_sign(c: np.ndarray) -> int:
    """+1 if all components are >= 0, -1 if all are <= 0."""
    c = np.asarray(c)
    if not c.any():
        raise SignIncoherence("zero c-vector")
    if (c >= 0).all():
        return 1
    if (c <= 0).all():
        return -1
    raise SignIncoherence(f"mixed signs in c-vector {c.tolist()}")
