"""Scalar arithmetic: the exact field Q(v) with v**2 = q, and complex
numbers at a fixed numeric q.

Every coefficient in the workbench is either an element of Q(v) (exact
mode) or a complex number tied to an ambient real q > 0, q != 1 (numeric
mode).  The two modes never mix; conversion exact -> numeric is evaluation
at v = sqrt(q).  Working with v rather than q keeps half-integer weight
exponents q**mu inside the field without root extraction.

Exact elements are sympy fraction-field elements over QQ, which are kept
reduced and compare structurally; numeric elements are plain ``complex``.
A :class:`Field` object carries the mode and provides construction,
comparison, q-numbers and serialization, so the rest of the package can
stay mode-generic.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _sympy_field

_FV, V = _sympy_field("v", QQ)

#: default absolute tolerance for numeric equality checks
NUMERIC_TOL = 1e-9


class ModeError(TypeError):
    """Raised when exact and numeric values meet in one operation."""


class ScalarError(ArithmeticError):
    """Division by zero, or evaluation at a root of a denominator."""


class HalfInt:
    """A half-integer stored as twice its value, so arithmetic is exact."""

    __slots__ = ("twice",)

    def __init__(self, twice):
        if not isinstance(twice, int):
            raise TypeError("HalfInt stores twice the value as an int")
        self.twice = twice

    @classmethod
    def of(cls, x):
        """Coerce an int, HalfInt, or exact multiple of 1/2 (float) to HalfInt."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        if isinstance(x, Fraction) and x.denominator in (1, 2):
            return cls(int(2 * x))
        if isinstance(x, float) and (2 * x) == int(2 * x):
            return cls(int(2 * x))
        raise TypeError(f"not a half-integer: {x!r}")

    def is_integer(self):
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, n):
        if isinstance(n, int):
            return HalfInt(self.twice * n)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.twice == HalfInt.of(other).twice
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.of(other).twice

    def __gt__(self, other):
        return self.twice > HalfInt.of(other).twice

    def __ge__(self, other):
        return self.twice >= HalfInt.of(other).twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self):
        return self.twice / 2.0

    def __repr__(self):
        if self.is_integer():
            return str(self.twice // 2)
        return f"{self.twice}/2"


def halfint_range(lo, hi, step=1):
    """Half-integers lo, lo+step, ... up to and including hi."""
    lo, hi = HalfInt.of(lo), HalfInt.of(hi)
    step = HalfInt.of(step)
    out = []
    t = lo.twice
    while t <= hi.twice:
        out.append(HalfInt(t))
        t += step.twice
    return out


def _as_fraction(c):
    """QQ coefficient (gmpy mpq) -> Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


class ExactField:
    """The field Q(v), v a formal square root of q."""

    is_exact = True
    key = "exact"

    def __init__(self):
        self.zero = _FV.zero
        self.one = _FV.one
        self.v = V

    def __repr__(self):
        return "ExactField()"

    # -- construction -------------------------------------------------

    def from_int(self, n):
        return _FV.one * n

    def from_fraction(self, fr):
        fr = Fraction(fr)
        return _FV.one * QQ(fr.numerator, fr.denominator)

    def v_pow(self, n):
        """v**n, any integer n."""
        return V**n

    def q_pow(self, e):
        """q**e for a half-integer exponent e (q = v**2)."""
        return V ** HalfInt.of(e).twice

    def qnum(self, a):
        """The q-number [a]_q = (q**a - q**-a)/(q - q**-1), 2a integral."""
        t = HalfInt.of(a).twice
        return (V**t - V**-t) / (V**2 - V**-2)

    def qnum_complex(self, z):
        raise ModeError("complex q-number arguments need numeric mode")

    # -- predicates and maps ------------------------------------------

    def is_zero(self, s, tol=None):
        return not s

    def eq(self, a, b, tol=None):
        return a == b

    def conj(self, s):
        # v is a positive real once evaluated, so conjugation fixes it
        return s

    def inv(self, s):
        if not s:
            raise ScalarError("division by zero in Q(v)")
        return 1 / s

    def to_complex(self, s, q):
        """Evaluate at v = sqrt(q); a field homomorphism where defined."""
        vq = q**0.5
        den = _eval_poly(s.denom, vq)
        if abs(den) < 1e-300:
            raise ScalarError(f"evaluation at a root of the denominator (q={q})")
        return _eval_poly(s.numer, vq) / den

    # -- serialization -------------------------------------------------

    def to_str(self, s):
        return f"({_poly_str(s.numer)})/({_poly_str(s.denom)})"

    def from_str(self, text):
        from .uq_algebra import parse_scalar

        return parse_scalar(self, text)

    def to_json(self, s):
        return self.to_str(s)

    def from_json(self, obj):
        if not isinstance(obj, str):
            raise ModeError("exact scalars deserialize from strings")
        return self.from_str(obj)


def _eval_poly(p, vq):
    return sum(float(_as_fraction(c)) * vq ** int(e[0]) for e, c in p.terms())


def _poly_str(p):
    """Integer-coefficient string of a sympy polynomial in v."""
    terms = sorted(p.terms(), key=lambda t: -t[0][0])
    if not terms:
        return "0"
    # clear rational coefficients; sympy keeps fractions out of denom/numer
    # split, but guard anyway
    parts = []
    for (e,), c in terms:
        fr = _as_fraction(c)
        coeff = str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"
        if e == 0:
            parts.append(coeff)
        else:
            var = "v" if e == 1 else f"v^{e}"
            if fr == 1:
                parts.append(var)
            elif fr == -1:
                parts.append(f"-{var}")
            else:
                parts.append(f"{coeff}*{var}")
    out = parts[0]
    for p_ in parts[1:]:
        out += " - " + p_[1:] if p_.startswith("-") else " + " + p_
    return out


class NumericField:
    """Complex scalars at a fixed ambient real q > 0, q != 1."""

    is_exact = False

    def __init__(self, q, tol=NUMERIC_TOL):
        q = float(q)
        if not (q > 0) or q == 1.0:
            raise ValueError("numeric mode needs real q > 0, q != 1")
        self.q = q
        self.log_q = cmath.log(q).real
        self.tol = tol
        self.key = ("numeric", q)
        self.zero = 0j
        self.one = 1 + 0j

    def __repr__(self):
        return f"NumericField(q={self.q})"

    def from_int(self, n):
        return complex(n)

    def from_fraction(self, fr):
        fr = Fraction(fr)
        return complex(fr.numerator) / complex(fr.denominator)

    def v_pow(self, n):
        return complex(self.q ** (n / 2.0))

    def q_pow(self, e):
        if isinstance(e, (complex, float)) and not isinstance(e, bool):
            return cmath.exp(complex(e) * self.log_q)
        return complex(self.q ** float(HalfInt.of(e)))

    def qnum(self, a):
        a = float(HalfInt.of(a)) if not isinstance(a, (float, int)) else float(a)
        return (self.q**a - self.q**-a) / (self.q - 1.0 / self.q)

    def qnum_complex(self, z):
        """[z]_q for complex z, with q**z = exp(z log q)."""
        z = complex(z)
        qz = cmath.exp(z * self.log_q)
        return (qz - 1 / qz) / (self.q - 1.0 / self.q)

    def is_zero(self, s, tol=None):
        return abs(s) <= (self.tol if tol is None else tol)

    def eq(self, a, b, tol=None):
        return abs(a - b) <= (self.tol if tol is None else tol)

    def conj(self, s):
        return complex(s).conjugate()

    def inv(self, s):
        if s == 0:
            raise ScalarError("division by zero")
        return 1 / s

    def to_complex(self, s, q=None):
        if q is not None and abs(q - self.q) > 1e-15:
            raise ModeError("numeric scalar already carries its own q")
        return complex(s)

    def to_str(self, s):
        s = complex(s)
        return f"[{s.real!r}, {s.imag!r}]"

    def to_json(self, s):
        s = complex(s)
        return [s.real, s.imag]

    def from_json(self, obj):
        if isinstance(obj, (int, float)):
            return complex(obj)
        re, im = obj
        return complex(re, im)


EXACT = ExactField()


def exact_field():
    return EXACT


def numeric_field(q, tol=NUMERIC_TOL):
    return NumericField(q, tol)


def same_field(a, b):
    if a.key != b.key:
        raise ModeError(f"mode mismatch: {a!r} vs {b!r}")
    return a


def qnum(field, a):
    return field.qnum(a)


def qnum_complex(field, z):
    return field.qnum_complex(z)
