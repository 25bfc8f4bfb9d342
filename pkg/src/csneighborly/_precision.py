"""Working-precision backends.

A :class:`Precision` is identified by a storage width in bits:

* ``64``  -- IEEE binary64 (``numpy.float64``)
* ``80``  -- x87 extended (``numpy.longdouble``, 64-bit mantissa)
* ``> 80`` -- mpmath numbers with that many mantissa bits, held in numpy
  object arrays

Trigonometric values are always computed in mpmath with guard bits and
rounded once into the target format, so ``cos(pi*(q+1)) == -cos(pi*q)``
holds exactly in every backend.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

DOUBLE = 64
EXTENDED = 80
_GUARD_BITS = 32


class PrecisionError(ArithmeticError):
    """Requested computation exceeds the configured precision budget."""


class Precision:
    """Numeric format used for coordinates and linear programming."""

    def __init__(self, bits: int = EXTENDED):
        bits = int(bits)
        if bits < DOUBLE:
            raise PrecisionError(f"precision must be >= {DOUBLE} bits, got {bits}")
        if bits == DOUBLE:
            self.kind = "double"
            self.dtype = np.dtype(np.float64)
            self.mantissa = 53
        elif bits <= EXTENDED:
            bits = EXTENDED
            self.kind = "extended"
            self.dtype = np.dtype(np.longdouble)
            self.mantissa = np.finfo(np.longdouble).nmant + 1
        else:
            self.kind = "mp"
            self.dtype = np.dtype(object)
            self.mantissa = bits
        self.bits = bits
        self._trig = mpmath.MPContext()
        self._trig.prec = self.mantissa + _GUARD_BITS
        if self.kind == "mp":
            self.ctx = mpmath.MPContext()
            self.ctx.prec = self.mantissa
        else:
            self.ctx = None

    def __repr__(self):
        return f"Precision({self.bits})"

    def __eq__(self, other):
        return isinstance(other, Precision) and other.bits == self.bits

    def __hash__(self):
        return hash(self.bits)

    @property
    def eps(self) -> float:
        return 2.0 ** (1 - self.mantissa)

    def doubled(self) -> "Precision":
        return get_precision(2 * self.bits)

    # -- scalars -----------------------------------------------------------

    def scalar(self, x):
        """Round a Python number, numpy scalar, Fraction, or mpf into this format."""
        if isinstance(x, np.generic):
            if isinstance(x, np.integer):
                x = int(x)
            elif isinstance(x, np.longdouble) and self.kind != "extended":
                x = _longdouble_to_fraction(x)
            elif isinstance(x, np.floating) and self.kind != "extended":
                x = float(x)
        if self.kind == "mp":
            if isinstance(x, Fraction):
                return self.ctx.mpf(x.numerator) / x.denominator
            return self.ctx.mpf(x)
        if isinstance(x, Fraction):
            x = self._trig.mpf(x.numerator) / x.denominator
        if isinstance(x, mpmath.mpf) or type(x).__name__ == "mpf":
            return self._from_mpf(x)
        return self.dtype.type(x)

    def _from_mpf(self, x):
        if self.kind == "double":
            return np.float64(float(x))
        # exact rounding to the long double mantissa, then an exact rebuild
        sign, man, exp, _ = mpmath.libmp.normalize(
            *x._mpf_, self.mantissa, mpmath.libmp.round_nearest
        ) if x._mpf_[1] else (0, 0, 0, 0)
        if man == 0:
            return np.longdouble(0)
        hi, lo = man >> 32, man & 0xFFFFFFFF
        v = np.longdouble(hi) * np.longdouble(2.0**32) + np.longdouble(lo)
        v = np.ldexp(v, exp)
        return -v if sign else v

    def cospi(self, q: Fraction):
        return self.scalar(self._trig.cospi(self._trig.mpf(q.numerator) / q.denominator))

    def sinpi(self, q: Fraction):
        return self.scalar(self._trig.sinpi(self._trig.mpf(q.numerator) / q.denominator))

    def sqrt(self, x):
        if self.kind == "mp":
            return self.ctx.sqrt(x)
        return np.sqrt(x)

    def to_decimal_string(self, x) -> str:
        """Full-precision decimal rendering of a scalar."""
        digits = int(math.ceil(self.mantissa * math.log10(2))) + 2
        if self.kind == "mp":
            return mpmath.nstr(x, digits, strip_zeros=False)
        if self.kind == "extended":
            return np.format_float_scientific(np.longdouble(x), precision=digits - 1, unique=False)
        return repr(float(x))

    def parse(self, text: str):
        """Inverse of :meth:`to_decimal_string`."""
        if self.kind == "mp":
            return self.ctx.mpf(text)
        if self.kind == "extended":
            return self.scalar(self._trig.mpf(text))
        return np.float64(text)

    # -- arrays ------------------------------------------------------------

    def array(self, values):
        """Build an array of this precision from nested lists of numbers."""
        if self.kind == "mp":
            a = np.array(values, dtype=object)
            flat = a.reshape(-1)
            for i, v in enumerate(flat):
                flat[i] = self.scalar(v)
            return a
        a = np.empty(np.shape(values), dtype=self.dtype)
        flat = a.reshape(-1)
        for i, v in enumerate(np.asarray(values, dtype=object).reshape(-1)):
            flat[i] = self.scalar(v)
        return a

    def zeros(self, shape):
        if self.kind == "mp":
            a = np.empty(shape, dtype=object)
            a.fill(self.ctx.mpf(0))
            return a
        return np.zeros(shape, dtype=self.dtype)

    def convert(self, a):
        """Convert an array from another backend into this one."""
        a = np.asarray(a)
        out = np.empty(a.shape, dtype=self.dtype)
        flat_out = out.reshape(-1)
        for i, v in enumerate(a.reshape(-1)):
            if isinstance(v, np.longdouble):
                v = _longdouble_to_fraction(v)
            elif isinstance(v, np.floating):
                v = float(v)
            flat_out[i] = self.scalar(v)
        return out

    def to_float(self, a):
        return np.asarray(a, dtype=object).astype(np.float64) if self.kind == "mp" else np.asarray(a, dtype=np.float64)


def _longdouble_to_fraction(v) -> Fraction:
    m, e = np.frexp(v)
    man = int(np.ldexp(m, 64))
    return Fraction(man) * Fraction(2) ** (int(e) - 64)


@lru_cache(maxsize=None)
def get_precision(bits: int = EXTENDED) -> Precision:
    return Precision(bits)
