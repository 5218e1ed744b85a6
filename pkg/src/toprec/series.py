"""Truncated Laurent series in one local coordinate.

This is the workhorse of every residue computation in the package.  A
:class:`LocalSeries` represents

    f(t) = sum_{k=lo}^{hi} c_k t^k

where ``hi`` is the *truncation order*: coefficients above it are unknown,
not zero.  Arithmetic tracks the guaranteed window and never reports
coefficients beyond it; extracting a coefficient outside the window raises
:class:`~toprec.errors.TruncationError` instead of silently truncating.

Two coefficient backends sit behind the same interface:

* floating mode -- numpy complex128 arrays (hot products run through the
  jitted kernels in :mod:`toprec._accel`);
* object mode -- any exact coefficient ring with ``+``, ``*`` and truthiness
  (``fractions.Fraction`` for plain rationals, or the partial-fraction
  elements of :mod:`toprec.ratfun` for series whose coefficients carry
  spectator variables).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import _accel
from .errors import SeriesError, TruncationError

#: default number of terms carried beyond the lowest order
DEFAULT_TERMS = 24

#: floating-mode magnitude threshold (relative to the largest coefficient)
#: below which a leading coefficient is treated as zero during normalization
STRIP_TOL = 1e-13


def _is_float_data(coeffs: Sequence[Any]) -> bool:
    if isinstance(coeffs, np.ndarray):
        return True
    return any(isinstance(c, (complex, float, np.complexfloating, np.floating)) for c in coeffs)


class LocalSeries:
    """Truncated Laurent series ``sum_{k=lo}^{trunc} c_k t^k``."""

    __slots__ = ("lo", "coeffs", "is_float")

    def __init__(self, lo: int, coeffs: Sequence[Any], *, normalize: bool = True):
        is_float = _is_float_data(coeffs)
        if is_float:
            c = np.asarray(coeffs, dtype=np.complex128)
        else:
            c = list(coeffs)
        if normalize:
            lo, c = self._normalized(lo, c, is_float)
        self.lo = int(lo)
        self.coeffs = c
        self.is_float = is_float

    # -- construction -------------------------------------------------------

    @staticmethod
    def _normalized(lo: int, c: Any, is_float: bool) -> tuple[int, Any]:
        if is_float:
            if len(c):
                scale = float(np.max(np.abs(c))) if np.max(np.abs(c)) > 0 else 0.0
                tol = STRIP_TOL * max(1.0, scale)
                k = 0
                while k < len(c) and abs(c[k]) <= tol:
                    k += 1
                if k == len(c):  # identically zero: window collapses
                    return lo + len(c), c[:0]
                return lo + k, c[k:]
            return lo, c
        k = 0
        while k < len(c) and not c[k]:
            k += 1
        if k == len(c):
            return lo + len(c), []
        return lo + k, c[k:]

    @classmethod
    def zero(cls, trunc: int, *, is_float: bool = False) -> "LocalSeries":
        s = cls.__new__(cls)
        s.lo = trunc + 1
        s.coeffs = np.zeros(0, dtype=np.complex128) if is_float else []
        s.is_float = is_float
        return s

    @classmethod
    def monomial(cls, order: int, coeff: Any = 1, terms: int = DEFAULT_TERMS) -> "LocalSeries":
        if _is_float_data([coeff]):
            c = np.zeros(terms + 1, dtype=np.complex128)
            c[0] = coeff
        else:
            c = [coeff if isinstance(coeff, Fraction) else Fraction(coeff)] + [Fraction(0)] * terms
        return cls(order, c, normalize=False)

    @classmethod
    def identity(cls, terms: int = DEFAULT_TERMS, *, is_float: bool = False) -> "LocalSeries":
        one = 1.0 + 0j if is_float else Fraction(1)
        return cls.monomial(1, one, terms)

    # -- basic structure -----------------------------------------------------

    @property
    def trunc(self) -> int:
        """Highest order with a guaranteed coefficient."""
        return self.lo + len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def valuation(self) -> int:
        if self.is_zero:
            raise SeriesError("valuation of an identically-zero series window")
        return self.lo

    def coeff(self, k: int) -> Any:
        """Coefficient of t^k; raises TruncationError outside the window."""
        if k > self.trunc:
            raise TruncationError(f"coefficient t^{k} beyond truncation order {self.trunc}")
        if self.is_zero or k < self.lo:
            return 0j if self.is_float else Fraction(0)
        return self.coeffs[k - self.lo]

    def residue(self) -> Any:
        """Coefficient of t^-1, with window check (lo <= -1 <= trunc)."""
        if self.trunc < -1:
            raise TruncationError("truncation window does not include order -1")
        if not self.is_zero and self.lo > -1 and self.trunc >= -1:
            return 0j if self.is_float else Fraction(0)
        return self.coeff(-1)

    def truncate(self, new_trunc: int) -> "LocalSeries":
        if new_trunc >= self.trunc:
            return self
        n = new_trunc - self.lo + 1
        if n <= 0:
            return LocalSeries.zero(new_trunc, is_float=self.is_float)
        return LocalSeries(self.lo, self.coeffs[:n], normalize=False)

    def shift(self, k: int) -> "LocalSeries":
        """Multiply by t^k."""
        s = LocalSeries.__new__(LocalSeries)
        s.lo, s.coeffs, s.is_float = self.lo + k, self.coeffs, self.is_float
        return s

    def to_float(self) -> "LocalSeries":
        if self.is_float:
            return self
        c = np.array([complex(x) for x in self.coeffs], dtype=np.complex128)
        out = LocalSeries.__new__(LocalSeries)
        out.lo, out.coeffs, out.is_float = self.lo, c, True
        return out

    def map_coeffs(self, fn: Callable[[Any], Any]) -> "LocalSeries":
        return LocalSeries(self.lo, [fn(c) for c in self.coeffs])

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other: "LocalSeries") -> tuple["LocalSeries", "LocalSeries"]:
        if self.is_float == other.is_float:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other: "LocalSeries") -> "LocalSeries":
        a, b = self._coerce(other)
        if a.is_zero and b.is_zero:
            return LocalSeries.zero(min(a.trunc, b.trunc), is_float=a.is_float)
        if a.is_zero:
            return b.truncate(min(a.trunc, b.trunc))
        if b.is_zero:
            return a.truncate(min(a.trunc, b.trunc))
        lo = min(a.lo, b.lo)
        hi = min(a.trunc, b.trunc)
        if hi < lo:
            return LocalSeries.zero(hi, is_float=a.is_float)
        if a.is_float:
            c = np.zeros(hi - lo + 1, dtype=np.complex128)
            c[a.lo - lo : a.lo - lo + min(len(a.coeffs), hi - a.lo + 1)] += a.coeffs[: hi - a.lo + 1]
            c[b.lo - lo : b.lo - lo + min(len(b.coeffs), hi - b.lo + 1)] += b.coeffs[: hi - b.lo + 1]
            return LocalSeries(lo, c)
        c = [Fraction(0)] * (hi - lo + 1)
        for src in (a, b):
            for i, v in enumerate(src.coeffs):
                k = src.lo + i
                if k > hi:
                    break
                c[k - lo] = c[k - lo] + v
        return LocalSeries(lo, c)

    def __neg__(self) -> "LocalSeries":
        if self.is_float:
            return LocalSeries(self.lo, -self.coeffs, normalize=False)
        return LocalSeries(self.lo, [-c for c in self.coeffs], normalize=False)

    def __sub__(self, other: "LocalSeries") -> "LocalSeries":
        return self + (-other)

    def scale(self, k: Any) -> "LocalSeries":
        if self.is_zero:
            return self
        if self.is_float or _is_float_data([k]):
            s = self.to_float()
            return LocalSeries(s.lo, s.coeffs * complex(k))
        return LocalSeries(self.lo, [k * c for c in self.coeffs])

    def __mul__(self, other: "LocalSeries") -> "LocalSeries":
        a, b = self._coerce(other)
        if a.is_zero or b.is_zero:
            # product vanishes on a window bounded by the zero factor's window
            if a.is_zero and b.is_zero:
                t = min(a.trunc + b.trunc + 1, a.trunc + b.trunc + 1)
                return LocalSeries.zero(t, is_float=a.is_float)
            z, nz = (a, b) if a.is_zero else (b, a)
            return LocalSeries.zero(z.trunc + nz.lo, is_float=a.is_float)
        lo = a.lo + b.lo
        hi = min(a.trunc + b.lo, b.trunc + a.lo)
        n = hi - lo + 1
        if a.is_float:
            c = _accel.conv_trunc(a.coeffs, b.coeffs, n)
            return LocalSeries(lo, c)
        c = [Fraction(0)] * n
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            jmax = min(len(b.coeffs), n - i)
            for j in range(jmax):
                bj = b.coeffs[j]
                if bj:
                    c[i + j] = c[i + j] + ai * bj
        return LocalSeries(lo, c)

    def inverse(self) -> "LocalSeries":
        """Multiplicative inverse 1/f."""
        if self.is_zero:
            raise SeriesError("division by an identically-zero series")
        v = self.lo
        n = len(self.coeffs)
        u0 = self.coeffs[0]
        if self.is_float:
            inv = np.zeros(n, dtype=np.complex128)
            inv[0] = 1.0 / u0
            u = self.coeffs
            for m in range(1, n):
                acc = 0j
                for k in range(1, m + 1):
                    acc += u[k] * inv[m - k]
                inv[m] = -acc / u0
        else:
            one = Fraction(1)
            inv = [Fraction(0)] * n
            inv[0] = one / u0
            u = self.coeffs
            for m in range(1, n):
                acc = Fraction(0)
                for k in range(1, m + 1):
                    if u[k]:
                        acc = acc + u[k] * inv[m - k]
                inv[m] = -acc / u0
        # 1/(t^v u): window of the unit inverse is n-1 orders; shift by -v
        return LocalSeries(-v, inv, normalize=False).truncate(self.trunc - 2 * v)

    def __truediv__(self, other: "LocalSeries") -> "LocalSeries":
        return self * other.inverse()

    # -- calculus ------------------------------------------------------------

    def derivative(self) -> "LocalSeries":
        if self.is_zero:
            return LocalSeries.zero(self.trunc - 1, is_float=self.is_float)
        ks = range(self.lo, self.trunc + 1)
        if self.is_float:
            c = self.coeffs * np.array(list(ks), dtype=np.complex128)
        else:
            c = [k * v for k, v in zip(ks, self.coeffs)]
        return LocalSeries(self.lo - 1, c)

    def antiderivative(self) -> "LocalSeries":
        """Term-wise antiderivative; raises if a log term (t^-1) is present."""
        res = self.residue() if self.trunc >= -1 else None
        if res is not None:
            bad = abs(res) > 1e-12 if self.is_float else bool(res)
            if bad:
                raise SeriesError("antiderivative would need a log term (nonzero residue)")
        if self.is_zero:
            return LocalSeries.zero(self.trunc + 1, is_float=self.is_float)
        out = []
        for i, v in enumerate(self.coeffs):
            k = self.lo + i
            if k == -1:
                continue
            out.append((k, v / (k + 1) if self.is_float else v * Fraction(1, k + 1)))
        if self.is_float:
            c = np.zeros(self.trunc + 1 - (self.lo + 1) + 1, dtype=np.complex128)
            for k, v in out:
                c[k + 1 - (self.lo + 1)] = v
            return LocalSeries(self.lo + 1, c)
        c = [Fraction(0)] * (self.trunc + 1 - (self.lo + 1) + 1)
        for k, v in out:
            c[k + 1 - (self.lo + 1)] = v
        return LocalSeries(self.lo + 1, c)

    # -- composition and inversion --------------------------------------------

    def compose(self, g: "LocalSeries") -> "LocalSeries":
        """f(g(t)) with window tracking.

        Requires val(g) >= 1 when f has negative orders (else the poles of f
        would hit g's constant term), val(g) >= 0 otherwise.
        """
        f = self
        if g.is_zero:
            if f.lo < 0:
                raise SeriesError("composition of a pole with the zero series")
            c0 = f.coeff(0) if f.lo <= 0 <= f.trunc else (0j if f.is_float else Fraction(0))
            return LocalSeries(0, [c0] + ([0j] if f.is_float else [Fraction(0)]) * g.trunc)
        if f.lo < 0 and g.valuation() < 1:
            raise SeriesError("composition with constant-led series into a pole")
        if g.valuation() < 0:
            raise SeriesError("composition target has negative valuation")
        if f.is_float != g.is_float:
            f, g = f.to_float(), g.to_float()
        paired: list[tuple[int, Any]] = [(f.lo + i, c) for i, c in enumerate(f.coeffs)]
        neg = [(k, c) for k, c in paired if k < 0]
        pos = [(k, c) for k, c in paired if k >= 0]
        zero = 0j if f.is_float else Fraction(0)
        out = None
        if pos:
            kmax = pos[-1][0]
            dense = {k: c for k, c in pos}
            acc = LocalSeries(0, [dense.get(kmax, zero)], normalize=False)
            for k in range(kmax - 1, -1, -1):
                acc = acc * g + LocalSeries(0, [dense.get(k, zero)], normalize=False)
            out = acc
        if neg:
            gi = g.inverse()
            kmin = neg[0][0]
            dense = {-k: c for k, c in neg}  # exponent in gi
            emax = -kmin
            acc = LocalSeries(0, [dense.get(emax, zero)], normalize=False)
            for e in range(emax - 1, 0, -1):
                acc = acc * gi + LocalSeries(0, [dense.get(e, zero)], normalize=False)
            acc = acc * gi
            out = acc if out is None else out + acc
        assert out is not None
        return out

    def invert(self) -> "LocalSeries":
        """Functional inverse: h with f(h(t)) = t up to truncation.

        Requires valuation exactly 1 with an invertible linear coefficient.
        Newton iteration h <- h - (f∘h - t)/(f'∘h); quadratic convergence.
        """
        f = self
        if f.is_zero or f.valuation() != 1:
            raise SeriesError("functional inverse needs valuation exactly 1")
        c1 = f.coeffs[0]
        if (abs(c1) < 1e-300) if f.is_float else (not c1):
            raise SeriesError("vanishing linear coefficient")
        nterms = len(f.coeffs) - 1
        ident = LocalSeries.identity(nterms, is_float=f.is_float)
        one_over = (1.0 / c1) if f.is_float else (Fraction(1) / c1)
        h = ident.scale(one_over)
        fp = f.derivative()
        for _ in range(max(1, int(np.ceil(np.log2(nterms + 1))) + 1)):
            err = f.compose(h) - ident
            if err.is_zero:
                break
            h = h - err / fp.compose(h)
            h = h.truncate(ident.trunc)
        return h

    def sqrt(self, branch: int = +1) -> "LocalSeries":
        """Series square root with even valuation; ``branch`` picks the sign.

        Floating mode: the leading coefficient of the result is
        ``branch * principal_sqrt(leading)``.  Object mode requires the
        leading coefficient to be a perfect rational square.
        """
        if self.is_zero:
            raise SeriesError("sqrt of an identically-zero series window")
        v = self.valuation()
        if v % 2:
            raise SeriesError("sqrt needs even lowest order")
        unit = self.shift(-v)
        if self.is_float:
            r0 = branch * np.sqrt(unit.coeffs[0])
            r = LocalSeries(0, [r0], normalize=False)
        else:
            c0 = unit.coeffs[0]
            num, den = c0.numerator, c0.denominator
            rn, rd = _isqrt_exact(num), _isqrt_exact(den)
            if rn is None or rd is None:
                raise SeriesError("exact sqrt needs a perfect-square leading coefficient")
            r = LocalSeries(0, [branch * Fraction(rn, rd)], normalize=False)
        half = 0.5 if self.is_float else Fraction(1, 2)
        # Newton: r <- (r + u/r)/2, doubling precision each step
        for _ in range(max(1, int(np.ceil(np.log2(len(self.coeffs) + 1))) + 1)):
            r = (r + unit / r).scale(half)
            r = r.truncate(unit.trunc)
        return r.shift(v // 2)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, t0: Any) -> Any:
        if self.is_zero:
            return 0j if self.is_float else Fraction(0)
        acc = None
        for k in range(self.trunc, self.lo - 1, -1):
            c = self.coeff(k)
            acc = c if acc is None else acc * t0 + c
        # acc now equals sum c_k t0^{k - lo}
        return acc * t0**self.lo

    # -- comparison / repr -----------------------------------------------------

    def approx_equal(self, other: "LocalSeries", tol: float = 1e-10) -> bool:
        a, b = self.to_float(), other.to_float()
        lo = min(a.lo, b.lo) if not (a.is_zero and b.is_zero) else 0
        hi = min(a.trunc, b.trunc)
        for k in range(lo, hi + 1):
            va = a.coeff(k) if a.lo <= k <= a.trunc else 0j
            vb = b.coeff(k) if b.lo <= k <= b.trunc else 0j
            if abs(va - vb) > tol * max(1.0, abs(va), abs(vb)):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalSeries):
            return NotImplemented
        if self.is_float or other.is_float:
            return self.approx_equal(other, tol=0.0)
        a, b = self, other
        lo = min(a.lo, b.lo) if not (a.is_zero and b.is_zero) else 0
        hi = min(a.trunc, b.trunc)
        return all(a.coeff(k) == b.coeff(k) for k in range(lo, hi + 1))

    def __hash__(self):  # pragma: no cover - series are not meant as dict keys
        return id(self)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"LocalSeries(0 + O(t^{self.trunc + 1}))"
        parts = []
        for i, c in enumerate(self.coeffs[:6]):
            k = self.lo + i
            parts.append(f"({c})t^{k}")
        more = " + ..." if len(self.coeffs) > 6 else ""
        return f"LocalSeries({' + '.join(parts)}{more} + O(t^{self.trunc + 1}))"


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = int(np.sqrt(float(n)))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    # big-int safe fallback
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def arith(a: LocalSeries, b: LocalSeries, op: str) -> LocalSeries:
    """Spec-facing dispatcher for {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise SeriesError(f"unknown op {op!r}")


def geometric(ratio_coeff: Any, terms: int = DEFAULT_TERMS) -> LocalSeries:
    """1/(1 - c t) as a series; small convenience used by tests."""
    one = Fraction(1) if isinstance(ratio_coeff, (int, Fraction)) else 1.0 + 0j
    s = LocalSeries(0, [one, -one * ratio_coeff] + [one * 0] * (terms - 1), normalize=False)
    return s.inverse()
