"""Exact partial-fraction arithmetic for the closed-form recursion output.

A stable Eynard-Orantin differential on a rational spectral curve, divided
by its ``dz_0 ... dz_{n-1}`` frame, is a rational function of the arguments
whose poles (in each argument separately) sit at ramification points and
which vanishes at infinity.  Every such function is a finite sum of
separable products

    c * prod_i (z_i - a_{j_i})^{e_i},        e_i <= -1,

with rational ``c`` and ramification locations ``a_j``.  :class:`PF` stores
exactly that: a dict from a sorted tuple of ``(slot, base, exponent)``
factors to a ``Fraction`` coefficient.  The representation is closed under
ring operations (products that collide two different bases in the same slot
are reduced with the classical two-pole partial-fraction identity) and
supports exact expansion in the local coordinate at a ramification point,
which is what the exact recursion engine consumes.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Any, Iterable, Mapping

from .errors import SeriesError
from .series import LocalSeries

Factor = tuple[int, Fraction, int]  # (slot, base, exponent<=-1)
Key = tuple[Factor, ...]


def _as_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


class PF:
    """Sum of separable partial-fraction monomials with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, c: Any) -> "PF":
        c = _as_fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def pole(cls, slot: int, base: Any, exp: int, coeff: Any = 1) -> "PF":
        if exp >= 0:
            raise SeriesError("PF factors must have negative exponents")
        key: Key = ((slot, _as_fraction(base), exp),)
        return cls({key: _as_fraction(coeff)})

    @classmethod
    def zero(cls) -> "PF":
        return cls()

    # -- ring structure --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PF):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == PF.const(other).terms
        return NotImplemented

    def __hash__(self):  # pragma: no cover
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "PF | int | Fraction") -> "PF":
        if isinstance(other, (int, Fraction)):
            other = PF.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PF(out)

    __radd__ = __add__

    def __neg__(self) -> "PF":
        return PF({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PF | int | Fraction") -> "PF":
        return self + (-other if isinstance(other, PF) else PF.const(-_as_fraction(other)))

    def __rsub__(self, other: "int | Fraction") -> "PF":
        return PF.const(other) - self

    @staticmethod
    def _mul_term(ka: Key, kb: Key, c: Fraction) -> "PF":
        # Merge two factor tuples.  Same slot + same base adds exponents;
        # two different bases in one slot are eliminated with the classical
        # two-pole partial-fraction identity (recursing via * for 3+ bases).
        by_slot: dict[int, dict[Fraction, int]] = {}
        for (s, b, e) in ka + kb:
            by_slot.setdefault(s, {})
            by_slot[s][b] = by_slot[s].get(b, 0) + e
        simple: list[Factor] = []
        reductions: list[PF] = []
        for s, combined in by_slot.items():
            facs = [(b, e) for b, e in combined.items() if e != 0]
            if any(e > 0 for _, e in facs):
                raise SeriesError("PF products with positive powers are unsupported")
            if not facs:
                continue
            if len(facs) == 1:
                b, e = facs[0]
                simple.append((s, b, e))
                continue
            (b1, e1), (b2, e2) = facs[0], facs[1]
            red = _two_pole_reduce(s, b1, -e1, b2, -e2)
            for (b, e) in facs[2:]:
                red = red * PF.pole(s, b, e)
            reductions.append(red)
        out = PF({tuple(sorted(simple)): c})
        for red in reductions:
            out = out * red
        return out

    def __mul__(self, other: "PF | int | Fraction") -> "PF":
        if isinstance(other, (int, Fraction)):
            o = _as_fraction(other)
            return PF({k: v * o for k, v in self.terms.items()}) if o else PF()
        out = PF()
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                out = out + self._mul_term(ka, kb, va * vb)
        return out

    __rmul__ = __mul__

    # -- queries ---------------------------------------------------------------

    def slots(self) -> set[int]:
        return {s for key in self.terms for (s, _, _) in key}

    def bases_in_slot(self, slot: int) -> set[Fraction]:
        return {b for key in self.terms for (s, b, _) in key if s == slot}

    def max_pole_order(self, slot: int) -> int:
        orders = [-e for key in self.terms for (s, _, e) in key if s == slot]
        return max(orders, default=0)

    def evaluate(self, values: Mapping[int, Any]) -> Any:
        """Substitute values for every slot; exact for Fractions, complex otherwise."""
        total: Any = 0
        for key, c in self.terms.items():
            term: Any = c
            for (s, b, e) in key:
                z = values[s]
                exact = isinstance(z, (int, Fraction))
                d = (z - b) if exact else (complex(z) - complex(b))
                term = term * (d**e if exact else complex(d) ** e)
            total = total + term
        return total

    def permuted(self, perm: Mapping[int, int]) -> "PF":
        out: dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            nk = tuple(sorted((perm.get(s, s), b, e) for (s, b, e) in key))
            out[nk] = out.get(nk, Fraction(0)) + c
        return PF(out)

    def negated_args(self, slots: Iterable[int]) -> "PF":
        """Substitute z_s -> -z_s for the given slots (poles must be symmetric)."""
        ss = set(slots)
        out: dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            sign = 1
            nk = []
            for (s, b, e) in key:
                if s in ss:
                    # (−z − b)^e = (−1)^e (z + b)^e
                    sign *= (-1) ** e
                    nk.append((s, -b, e))
                else:
                    nk.append((s, b, e))
            nk.sort()
            out_key = tuple(nk)
            out[out_key] = out.get(out_key, Fraction(0)) + sign * c
        return PF(out)

    # -- local expansion ---------------------------------------------------------

    def expand_slots(
        self,
        subs: Mapping[int, LocalSeries],
        jacobians: Mapping[int, LocalSeries] | None = None,
        order: int | None = None,
    ) -> LocalSeries:
        """Expand the given slots as local series (z_s -> subs[s](t)).

        Returns a LocalSeries whose coefficients are PF elements over the
        remaining slots.  ``jacobians[s]``, when given, multiplies in the
        pullback factor d(subs[s])/dt for each substituted slot (needed when
        the slot carries a differential).
        """
        if order is None:
            order = min((s.trunc for s in subs.values()), default=0)
        omax = max(order, 1)
        total: LocalSeries | None = None
        jac: LocalSeries | None = None
        if jacobians:
            for s, j in jacobians.items():
                jac = j if jac is None else jac * j
        for key, c in self.terms.items():
            ser = LocalSeries(0, [Fraction(1)] + [Fraction(0)] * omax, normalize=False)
            rest: list[Factor] = []
            for (s, b, e) in key:
                if s in subs:
                    ser = ser * _expand_factor(subs[s], b, e, omax)
                else:
                    rest.append((s, b, e))
            coeff_pf = PF({tuple(sorted(rest)): c})
            term_ser = ser.map_coeffs(lambda q, _p=coeff_pf: _p * q)
            total = term_ser if total is None else total + term_ser
        if total is None:
            total = LocalSeries.zero(omax)
        if jac is not None:
            total = total * jac
        return total

    # -- serialization ------------------------------------------------------------

    def canonical_terms(self) -> list[tuple[Key, Fraction]]:
        def sort_key(item: tuple[Key, Fraction]):
            key, _ = item
            return tuple((s, e, b) for (s, b, e) in key)

        return sorted(self.terms.items(), key=sort_key)

    def __repr__(self) -> str:
        if not self.terms:
            return "PF(0)"
        bits = []
        for key, c in self.canonical_terms()[:4]:
            fac = "*".join(
                f"(z{s}{'-' if b >= 0 else '+'}{abs(b)})^{e}" if b else f"z{s}^{e}"
                for (s, b, e) in key
            )
            bits.append(f"{c}{'*' + fac if fac else ''}")
        more = " + ..." if len(self.terms) > 4 else ""
        return f"PF({' + '.join(bits)}{more})"


def _expand_factor(sub: LocalSeries, base: Fraction, exp: int, order: int | None) -> LocalSeries:
    """(sub(t) - base)^exp as an exact Laurent series (exp <= -1)."""
    shifted = sub - LocalSeries(0, [base] + [Fraction(0)] * (order or len(sub.coeffs)), normalize=False)
    if shifted.is_zero:
        raise SeriesError("expansion point collides with a pole base")
    # shifted = t^v * unit; (shifted)^exp via inverse powers of the unit
    inv = shifted.inverse()
    out = inv
    for _ in range(-exp - 1):
        out = out * inv
    return out


def _two_pole_reduce(slot: int, a: Fraction, m: int, b: Fraction, n: int) -> PF:
    """1/((z-a)^m (z-b)^n) as a PF element in the given slot (m, n >= 1)."""
    out = PF()
    for i in range(m):
        coeff = Fraction((-1) ** i * comb(n + i - 1, i), 1) / (a - b) ** (n + i)
        out = out + PF.pole(slot, a, -(m - i), coeff)
    for j in range(n):
        coeff = Fraction((-1) ** j * comb(m + j - 1, j), 1) / (b - a) ** (m + j)
        out = out + PF.pole(slot, b, -(n - j), coeff)
    return out
