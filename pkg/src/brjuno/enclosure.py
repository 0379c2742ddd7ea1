"""Directed-rounding interval arithmetic on top of gmpy2/MPFR.

Every quantity that cannot be represented exactly as a rational is carried
as an :class:`Enclosure`, a closed interval ``[lo, hi]`` of MPFR floats that
is guaranteed to contain the mathematical value.  All endpoint computations
go through per-precision rounding contexts (round-down for ``lo``, round-up
for ``hi``), so enclosures stay valid under arithmetic.  Transcendental
evaluations are additionally padded outward by one ulp.

Exact rationals are ``gmpy2.mpq`` internally; ``fractions.Fraction``, ints
and strings are accepted at every public boundary.  Floats are refused:
a float argument is almost always a silent loss of exactness, and the
library's correctness claims depend on exact inputs.
"""

from __future__ import annotations

import functools
import numbers
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_PRECISION = 128

#: Types accepted wherever an exact rational is required.
RationalLike = int | Fraction | mpq | str


def to_rational(value: RationalLike) -> mpq:
    """Coerce *value* to an exact ``gmpy2.mpq``.

    Accepts ``int``, ``Fraction``, ``mpq``, other ``numbers.Rational``
    instances, and strings (``"3/7"``, ``"0.318"``, ``"1e-4"``; decimal
    strings are parsed as exact powers-of-ten rationals).  Floats are
    rejected with ``TypeError``.
    """
    if isinstance(value, mpq):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, float) or isinstance(value, mpfr):
        raise TypeError(
            "floats are refused at the library boundary; pass an exact "
            "rational (Fraction, mpq, int, or a string like '5/7' or '0.318')"
        )
    if isinstance(value, str):
        try:
            return mpq(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as an exact rational") from exc
    if isinstance(value, (Fraction, numbers.Rational)):
        # int() guards against Fractions carrying mpz components (e.g. built
        # from mpmath internals), which gmpy2's Fraction fast path rejects
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot coerce {type(value).__name__} to an exact rational")


def rational_str(value: RationalLike) -> str:
    """Render an exact rational as ``"p/q"`` (or ``"n"`` for integers)."""
    return str(to_rational(value))


@functools.lru_cache(maxsize=None)
def _ctx_pair(prec: int) -> tuple[gmpy2.context, gmpy2.context]:
    if prec < 2:
        raise ValueError(f"precision must be at least 2 bits, got {prec}")
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    return down, up


@functools.lru_cache(maxsize=None)
def _ctx_nearest(prec: int) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)


@functools.lru_cache(maxsize=None)
def _zero(prec: int) -> mpfr:
    return mpfr(0, prec)


def _round_rational(ctx: gmpy2.context, q: mpq) -> mpfr:
    # ctx.plus() passes exact types through unchanged; force an mpfr result
    return ctx.add(_zero(ctx.precision), q)


def _prec_of(*values) -> int:
    prec = 0
    for v in values:
        if isinstance(v, Enclosure):
            prec = max(prec, v.lo.precision, v.hi.precision)
        elif isinstance(v, mpfr):
            prec = max(prec, v.precision)
    return prec or DEFAULT_PRECISION


class Enclosure:
    """A closed interval ``[lo, hi]`` certified to contain a real value.

    Endpoints are finite MPFR floats.  Arithmetic rounds outward, so any
    sequence of operations on valid enclosures yields a valid enclosure.
    Binary operators accept exact rationals (``int``, ``Fraction``,
    ``mpq``) as the other operand; the result precision is the maximum
    operand precision.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: mpfr, hi: mpfr):
        if not isinstance(lo, mpfr) or not isinstance(hi, mpfr):
            raise TypeError("Enclosure endpoints must be mpfr values; "
                            "use from_rational() to build one from exact data")
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi)):
            raise ValueError(f"enclosure endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"inverted enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, value: RationalLike, prec: int = DEFAULT_PRECISION) -> "Enclosure":
        """Tightest *prec*-bit enclosure of an exact rational."""
        q = to_rational(value)
        down, up = _ctx_pair(prec)
        return cls(_round_rational(down, q), _round_rational(up, q))

    @classmethod
    def from_pair(cls, lo: RationalLike, hi: RationalLike,
                  prec: int = DEFAULT_PRECISION) -> "Enclosure":
        """Enclosure of the interval between two exact rationals."""
        a = to_rational(lo)
        b = to_rational(hi)
        if a > b:
            a, b = b, a
        down, up = _ctx_pair(prec)
        return cls(_round_rational(down, a), _round_rational(up, b))

    @classmethod
    def zero(cls, prec: int = DEFAULT_PRECISION) -> "Enclosure":
        z = _zero(prec)
        return cls(z, z)

    @classmethod
    def hull(cls, *members: "Enclosure") -> "Enclosure":
        """Smallest enclosure containing all *members*."""
        if not members:
            raise ValueError("hull() needs at least one enclosure")
        return cls(min(m.lo for m in members), max(m.hi for m in members))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Enclosure | None":
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction, mpq)) and not isinstance(other, bool):
            return None  # handled as an exact scalar by the caller
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        down, up = _ctx_pair(_prec_of(self, c))
        if c is None:
            q = to_rational(other)
            return Enclosure(down.add(self.lo, q), up.add(self.hi, q))
        return Enclosure(down.add(self.lo, c.lo), up.add(self.hi, c.hi))

    __radd__ = __add__

    def __neg__(self):
        # bare unary minus on mpfr rounds in the ambient context; stay directed
        down, up = _ctx_pair(_prec_of(self))
        return Enclosure(down.minus(self.hi), up.minus(self.lo))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        down, up = _ctx_pair(_prec_of(self, c))
        if c is None:
            q = to_rational(other)
            return Enclosure(down.sub(self.lo, q), up.sub(self.hi, q))
        return Enclosure(down.sub(self.lo, c.hi), up.sub(self.hi, c.lo))

    def __rsub__(self, other):
        neg = self.__neg__()
        return neg.__add__(other)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        down, up = _ctx_pair(_prec_of(self, c))
        if c is None:
            q = to_rational(other)
            if q >= 0:
                return Enclosure(down.mul(self.lo, q), up.mul(self.hi, q))
            return Enclosure(down.mul(self.hi, q), up.mul(self.lo, q))
        pairs = ((self.lo, c.lo), (self.lo, c.hi), (self.hi, c.lo), (self.hi, c.hi))
        return Enclosure(min(down.mul(a, b) for a, b in pairs),
                         max(up.mul(a, b) for a, b in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        down, up = _ctx_pair(_prec_of(self, c))
        if c is None:
            q = to_rational(other)
            if q == 0:
                raise ZeroDivisionError("division of enclosure by zero")
            if q > 0:
                return Enclosure(down.div(self.lo, q), up.div(self.hi, q))
            return Enclosure(down.div(self.hi, q), up.div(self.lo, q))
        if c.lo <= 0 <= c.hi:
            raise ZeroDivisionError(f"divisor enclosure [{c.lo}, {c.hi}] contains zero")
        pairs = ((self.lo, c.lo), (self.lo, c.hi), (self.hi, c.lo), (self.hi, c.hi))
        return Enclosure(min(down.div(a, b) for a, b in pairs),
                         max(up.div(a, b) for a, b in pairs))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented or c is not None:
            return NotImplemented
        return Enclosure.from_rational(other, _prec_of(self)).__truediv__(self)

    def recip(self) -> "Enclosure":
        """Enclosure of ``1/x``; the interval must not contain zero."""
        return 1 / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        neg = self.__neg__()
        if self.hi <= 0:
            return neg
        return Enclosure(_zero(self.lo.precision), max(neg.hi, self.hi))

    # -- queries -----------------------------------------------------------

    @property
    def width(self) -> mpfr:
        """Upper bound on ``hi - lo``."""
        _, up = _ctx_pair(_prec_of(self))
        return up.sub(self.hi, self.lo)

    @property
    def mid(self) -> mpfr:
        ctx = _ctx_nearest(_prec_of(self))
        return ctx.div(ctx.add(self.lo, self.hi), 2)

    def contains(self, value) -> bool:
        """Whether an exact rational or a whole enclosure lies in [lo, hi]."""
        if isinstance(value, Enclosure):
            return self.lo <= value.lo and value.hi <= self.hi
        q = to_rational(value)
        return self.lo <= q <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def certainly_le(self, other) -> bool:
        """True only if every point of self is <= every point of other."""
        if isinstance(other, Enclosure):
            return self.hi <= other.lo
        return self.hi <= to_rational(other)

    def certainly_ge(self, other) -> bool:
        if isinstance(other, Enclosure):
            return self.lo >= other.hi
        return self.lo >= to_rational(other)

    def certainly_positive(self) -> bool:
        return self.lo > 0

    def __repr__(self):
        return f"Enclosure[{self.lo!r}, {self.hi!r}]"

    def decimal_pair(self, digits: int | None = None) -> tuple[str, str]:
        """Endpoint decimal strings at full precision (default: all digits)."""
        if digits is None:
            digits = max(2, int(_prec_of(self) * 0.30103) + 2)
        return (f"{self.lo:.{digits}g}", f"{self.hi:.{digits}g}")


def _pad_out(lo: mpfr, hi: mpfr) -> Enclosure:
    return Enclosure(gmpy2.next_below(lo), gmpy2.next_above(hi))


def log_rational(value: RationalLike, prec: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of ``log(value)`` for an exact rational ``value > 0``.

    The argument is rounded directionally before the directionally rounded
    log, and the result is padded outward by one ulp.
    """
    q = to_rational(value)
    if q <= 0:
        raise ValueError(f"log_rational requires a positive argument, got {q}")
    down, up = _ctx_pair(prec)
    return _pad_out(down.log(_round_rational(down, q)),
                    up.log(_round_rational(up, q)))


def log_enclosure(x: Enclosure, prec: int | None = None) -> Enclosure:
    """Enclosure of ``log(x)`` for an enclosure with ``x.lo > 0``."""
    if x.lo <= 0:
        raise ValueError(f"log requires a strictly positive enclosure, got lo={x.lo}")
    down, up = _ctx_pair(prec or _prec_of(x))
    return _pad_out(down.log(x.lo), up.log(x.hi))


def const_e(prec: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of Euler's number e."""
    down, up = _ctx_pair(prec)
    return _pad_out(down.exp(mpfr(1, prec)), up.exp(mpfr(1, prec)))


def const_log2(prec: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of log 2."""
    down, up = _ctx_pair(prec)
    return _pad_out(down.const_log2(), up.const_log2())


def lngamma_enclosure(x: Enclosure, prec: int | None = None) -> Enclosure:
    """Enclosure of ``log Gamma(x)`` for ``x.lo > 0``.

    log Gamma is decreasing then increasing on (0, inf) with minimum near
    1.4616; monotone evaluation is only safe away from the minimum, so both
    endpoints and, when the interval straddles the dip, the hull with the
    certified minimum region are used.
    """
    if x.lo <= 0:
        raise ValueError("lngamma requires a positive enclosure")
    down, up = _ctx_pair(prec or _prec_of(x))
    cands_lo = [down.lngamma(x.lo), down.lngamma(x.hi)]
    cands_hi = [up.lngamma(x.lo), up.lngamma(x.hi)]
    # The minimum of log Gamma on (0, inf) sits in (1.46, 1.47); if the
    # interval covers it, bound below by the value there rounded down.
    if x.lo < mpq(147, 100) and x.hi > mpq(146, 100):
        # safe dip bound: min of log Gamma is -0.121486... > -0.1215
        cands_lo.append(_round_rational(down, mpq(-1215, 10000)))
    return _pad_out(min(cands_lo), max(cands_hi))
