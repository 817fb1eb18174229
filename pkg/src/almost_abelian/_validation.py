"""Scalar contexts and input validation helpers.

Two arithmetic modes are supported.  In float mode every zero test is an
absolute threshold on a Frobenius norm, scaled by ``max(1, ||L||)`` raised to
the polynomial degree of the quantity being tested.  In exact mode matrices
are numpy object arrays of :class:`fractions.Fraction` and zero tests are
exact.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import InvalidInputError

DEFAULT_TOL = 1e-9
MODES = ("float", "exact")


def _to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise InvalidInputError(f"boolean entry {value!r} is not a number")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse {value!r} as a rational") from exc
    if isinstance(value, numbers.Real):
        x = float(value)
        if not math.isfinite(x):
            raise InvalidInputError(f"non-finite entry {value!r}")
        if x.is_integer():
            return Fraction(int(x))
        raise InvalidInputError(
            f"exact mode rejects the float {value!r}; pass it as a 'p/q' string"
        )
    raise InvalidInputError(f"unsupported entry {value!r} in exact mode")


def _to_float(value):
    if isinstance(value, (bool, np.bool_)):
        raise InvalidInputError(f"boolean entry {value!r} is not a number")
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse {value!r} as a number") from exc
    try:
        x = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"unsupported entry {value!r}") from exc
    if not math.isfinite(x):
        raise InvalidInputError(f"non-finite entry {value!r}")
    return x


@dataclass(frozen=True)
class ScalarContext:
    """Arithmetic mode plus the float tolerance used for zero tests."""

    mode: str = "float"
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {MODES}, got {self.mode!r}")
        tol = float(self.tolerance)
        if not math.isfinite(tol) or tol < 0:
            raise InvalidInputError(f"tolerance must be a finite non-negative number, got {self.tolerance!r}")
        if self.mode == "float" and tol == 0:
            raise InvalidInputError("float mode needs a strictly positive tolerance")
        object.__setattr__(self, "tolerance", tol)

    @property
    def exact(self):
        return self.mode == "exact"

    # -- construction -------------------------------------------------
    def scalar(self, value):
        return _to_fraction(value) if self.exact else _to_float(value)

    def array(self, data):
        raw = np.asarray(data, dtype=object)
        if self.exact:
            out = np.empty(raw.shape, dtype=object)
            for idx, value in np.ndenumerate(raw):
                out[idx] = _to_fraction(value)
            return out
        out = np.empty(raw.shape, dtype=float)
        for idx, value in np.ndenumerate(raw):
            out[idx] = _to_float(value)
        return out

    def zeros(self, shape):
        if self.exact:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape)

    def eye(self, k):
        out = self.zeros((k, k))
        for i in range(k):
            out[i, i] = Fraction(1) if self.exact else 1.0
        return out

    def ratio(self, p, q):
        return Fraction(p, q) if self.exact else p / q

    # -- comparisons --------------------------------------------------
    def threshold(self, scale=1.0, degree=1):
        return self.tolerance * max(1.0, float(scale)) ** degree

    def is_zero(self, value, scale=1.0, degree=1):
        arr = np.asarray(value, dtype=object if self.exact else float)
        if self.exact:
            return all(x == 0 for x in arr.flat)
        return norm(arr) <= self.threshold(scale, degree)


FLOAT = ScalarContext()
EXACT = ScalarContext("exact", 0.0)


def norm(value):
    """Frobenius norm as a float, for float or Fraction arrays alike."""
    arr = np.asarray(value)
    if arr.dtype == object:
        return math.sqrt(float(sum(x * x for x in arr.flat)))
    return float(np.linalg.norm(arr.ravel()))


def as_float(value):
    arr = np.asarray(value)
    if arr.dtype == object:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    return arr.astype(float)


def frozen(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


def check_square(M, size=None, name="matrix"):
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {arr.shape}")
    if size is not None and arr.shape[0] != size:
        raise InvalidInputError(f"{name} must be {size}x{size}, got {arr.shape[0]}x{arr.shape[1]}")
    return arr


def check_vector(v, size, name="vector"):
    arr = np.asarray(v, dtype=object)
    if arr.ndim != 1 or arr.shape[0] != size:
        raise InvalidInputError(f"{name} must have length {size}, got shape {arr.shape}")
    return arr


def check_half_dimension(n):
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, numbers.Integral):
        raise InvalidInputError(f"n must be an integer, got {n!r}")
    if n < 2:
        raise InvalidInputError(f"n must be at least 2, got {n}")
    return int(n)


def half_dimension_from_size(size):
    """Recover n from the side length 2n-1 of L."""
    if size < 3 or size % 2 == 0:
        raise InvalidInputError(f"L must be (2n-1)x(2n-1) with n >= 2, got side {size}")
    return (size + 1) // 2


def context_for(array):
    """Guess the context of an already-converted array."""
    return EXACT if np.asarray(array).dtype == object else FLOAT
