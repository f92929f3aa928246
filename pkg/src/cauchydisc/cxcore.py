"""Branch-aware complex arithmetic.

Two conventions are fixed here and used everywhere else in the package:

* The logarithm of a real observation lives on the primary branch,
  ``log x = ln|x| + i*pi*[x < 0]``.  The imaginary part is exactly ``0.0``
  or exactly ``math.pi``; it is never produced through ``atan2`` so the
  sign of a zero imaginary part cannot leak in.
* Complex powers use ``arg z`` in ``[0, 2*pi)``, i.e. ``arg(-i) = 3*pi/2``,
  plus an optional leaf index ``k``.  This is the leaf on which the closed
  forms ``(g**p - conj(g)**p) / (1 - exp(2j*pi*p))`` hold.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NonFiniteError, ZeroBaseError, ZeroDatumError

TWO_PI = 2.0 * math.pi


def branch_log(x: float) -> complex:
    """Logarithm of a nonzero real on the primary branch."""
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteError(f"non-finite datum {x!r}")
    if x == 0.0:
        raise ZeroDatumError("zero datum has no logarithm")
    if x > 0.0:
        return complex(math.log(x), 0.0)
    return complex(math.log(-x), math.pi)


def branch_log_parts(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`branch_log`, returned as ``(real, imag)`` arrays.

    The caller is responsible for having validated ``values`` (finite,
    nonzero); see :func:`cauchydisc.estimate.as_sample`.
    """
    values = np.asarray(values, dtype=float)
    return np.log(np.abs(values)), np.where(values < 0.0, math.pi, 0.0)


def arg_2pi(z: complex) -> float:
    """Argument of ``z`` normalised to ``[0, 2*pi)``."""
    z = complex(z)
    if z.imag == 0.0:
        # both signed zeros land on the real axis
        return 0.0 if z.real > 0.0 else math.pi
    a = math.atan2(z.imag, z.real)
    if a < 0.0:
        a += TWO_PI
        if a >= TWO_PI:  # atan2 returned -tiny
            a = 0.0
    return a


def clog(z: complex, k: int = 0) -> complex:
    """Logarithm of a nonzero complex number on leaf ``k``."""
    z = complex(z)
    if z == 0:
        raise ZeroBaseError("logarithm of zero")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite argument {z!r}")
    return complex(math.log(abs(z)), arg_2pi(z) + TWO_PI * k)


def cexp(w: complex) -> complex:
    w = complex(w)
    r = math.exp(w.real)
    return complex(r * math.cos(w.imag), r * math.sin(w.imag))


def cpow(z: complex, p: float, k: int = 0) -> complex:
    """``z**p`` computed as ``exp(p * log z)`` with ``arg z`` in ``[0, 2*pi)``.

    >>> cpow(-1, 1/3, k=1)
    (-1+1.2246467991473532e-16j)
    """
    z = complex(z)
    if z == 0:
        raise ZeroBaseError("power of zero base")
    if p == 0:
        return complex(1.0, 0.0)
    return cexp(p * clog(z, k))
