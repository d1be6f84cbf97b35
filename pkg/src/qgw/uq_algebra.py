"""The quantized enveloping algebra of sl2 in PBW normal form.

Elements are finite linear combinations of ordered monomials F^a K^b E^c
(F left, E right, K any integer power).  The defining relations used for
rewriting are

    K E K^-1 = q^2 E,   K F K^-1 = q^-2 F,   E F - F E = (K - K^-1)/(q - q^-1),

with q = v^2.  Products are normalized by innermost-leftmost single-step
rewriting: the E-F step above plus the two K-exchange steps, each of which
strictly reduces the number of out-of-order generator pairs, so rewriting
terminates; confluence is witnessed by the associativity test suite.

The Hopf operations follow the compact-form presentation:

    coproduct:  D(E) = E (x) K + 1 (x) E,  D(F) = F (x) 1 + K^-1 (x) F,
                D(K) = K (x) K
    counit:     eps(E) = eps(F) = 0, eps(K) = 1
    antipode:   S(E) = -E K^-1,  S(F) = -K F,  S(K) = K^-1
    star:       E* = K F,  F* = E K^-1,  K* = K   (conjugate-linear)

The symbol H itself is not a member of the algebra; only K = q^H is.  The
parser rejects H outright.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .scalars import HalfInt, ModeError, same_field


class PBWMonomial(NamedTuple):
    """Exponents of an ordered monomial F^f K^k E^e."""

    f: int
    k: int
    e: int

    def degree(self):
        return self.f + self.e + abs(self.k)

    def text(self):
        parts = []
        for name, p in (("F", self.f), ("K", self.k), ("E", self.e)):
            if p == 0:
                continue
            parts.append(name if p == 1 else f"{name}^{p}")
        return "*".join(parts) if parts else "1"


UNIT_MON = PBWMonomial(0, 0, 0)


class PBWElement:
    """A finite Q(v)- or complex-linear combination of PBW monomials."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for mon, c in (terms or {}).items():
            if not field.is_zero(c):
                clean[mon] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def monomial(cls, field, mon, coeff=None):
        return cls(field, {mon: field.one if coeff is None else coeff})

    @classmethod
    def scalar(cls, field, c):
        return cls(field, {UNIT_MON: c})

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            terms[mon] = terms.get(mon, self.field.zero) + c
        return PBWElement(self.field, terms)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return PBWElement(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            same_field(self.field, other.field)
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return PBWElement(self.field, {m: c * x for m, x in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            same_field(self.field, other.field)
            return other
        return PBWElement.scalar(self.field, other * self.field.one)

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        if self.field.key != other.field.key:
            return False
        if self.field.is_exact:
            return self.terms == other.terms
        keys = set(self.terms) | set(other.terms)
        z = self.field.zero
        return all(
            self.field.eq(self.terms.get(k, z), other.terms.get(k, z)) for k in keys
        )

    def __hash__(self):
        if not self.field.is_exact:
            raise TypeError("numeric elements are not hashable")
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((m.degree() for m in self.terms), default=0)

    def scalar_part(self):
        """Coefficient of the unit monomial."""
        return self.terms.get(UNIT_MON, self.field.zero)

    def is_scalar(self):
        return all(m == UNIT_MON for m in self.terms)

    def __repr__(self):
        return to_text(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0])


def generators(field):
    """(one, E, F, K, K^-1) over the given field."""
    mk = lambda mon: PBWElement.monomial(field, PBWMonomial(*mon))
    return mk((0, 0, 0)), mk((0, 0, 1)), mk((1, 0, 0)), mk((0, 1, 0)), mk((0, -1, 0))


# ---------------------------------------------------------------------------
# rewriting


_EF_CACHE = {}


def _e_past_fpow(field, a):
    """Normal form of E * F^a, by repeated single E-F steps.

    E F^a -> (F E + (K - K^-1)/(q-q^-1)) F^(a-1); the K's then hop over the
    remaining F's with the K F = q^-2 F K step.
    """
    key = (field.key, a)
    got = _EF_CACHE.get(key)
    if got is not None:
        return got
    if a == 0:
        out = PBWElement.monomial(field, PBWMonomial(0, 0, 1))
    else:
        inner = _e_past_fpow(field, a - 1)  # E F^(a-1), already normal
        terms = {}
        # F * (normal form) keeps PBW order
        for (f, k, e), c in inner.terms.items():
            _acc(terms, PBWMonomial(f + 1, k, e), c)
        # deformation term: (K - K^-1)/(q - q^-1) F^(a-1); each K F step
        # contributes q^-2, each K^-1 F step q^2
        dq = field.inv(field.q_pow(1) - field.q_pow(-1))
        _acc(terms, PBWMonomial(a - 1, 1, 0), dq * field.q_pow(-2 * (a - 1)))
        _acc(terms, PBWMonomial(a - 1, -1, 0), -dq * field.q_pow(2 * (a - 1)))
        out = PBWElement(field, terms)
    _EF_CACHE[key] = out
    return out


def _epow_past_fpow(field, c, a):
    """Normal form of E^c * F^a."""
    key = (field.key, c, a)
    got = _EF_CACHE.get(key)
    if got is not None:
        return got
    if c == 0:
        out = PBWElement.monomial(field, PBWMonomial(a, 0, 0))
    elif c == 1:
        out = _e_past_fpow(field, a)
    else:
        # E^(c-1) * (E F^a): multiply each normalized term on the left
        inner = _e_past_fpow(field, a)
        total = PBWElement(field, {})
        for (f, k, e), coeff in inner.terms.items():
            part = _epow_past_fpow(field, c - 1, f)
            terms = {}
            for (f2, k2, e2), c2 in part.terms.items():
                # (F^f2 K^k2 E^e2) K^k E^e, with E^e2 K^k = q^(-2 e2 k) K^k E^e2
                _acc(
                    terms,
                    PBWMonomial(f2, k2 + k, e2 + e),
                    c2 * field.q_pow(-2 * e2 * k),
                )
            total = total + PBWElement(field, terms).scale(coeff)
        out = total
    _EF_CACHE[key] = out
    return out


def _acc(terms, mon, c):
    terms[mon] = terms.get(mon, 0) + c


def _monomial_mul(field, m1, m2):
    """Normal form of (F^a1 K^b1 E^c1)(F^a2 K^b2 E^c2)."""
    mid = _epow_past_fpow(field, m1.e, m2.f)
    terms = {}
    for (f, k, e), c in mid.terms.items():
        # K^b1 hops over F^f; E^e hops over K^b2; each swap costs q^-2
        coeff = c * field.q_pow(-2 * m1.k * f) * field.q_pow(-2 * e * m2.k)
        _acc(terms, PBWMonomial(m1.f + f, m1.k + k + m2.k, e + m2.e), coeff)
    return PBWElement(field, terms)


def multiply(x, y):
    """PBW normal form of the product."""
    field = same_field(x.field, y.field)
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            for mon, c in _monomial_mul(field, m1, m2).terms.items():
                _acc(out, mon, c1 * c2 * c)
    return PBWElement(field, out)


# ---------------------------------------------------------------------------
# tensor square


class TensorElement:
    """Element of U_q (x) U_q in double-PBW coordinates."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for key, c in (terms or {}).items():
            if not field.is_zero(c):
                clean[key] = c
        self.terms = clean

    @classmethod
    def of(cls, x, y):
        field = same_field(x.field, y.field)
        terms = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                terms[(m1, m2)] = c1 * c2
        return cls(field, terms)

    def __add__(self, other):
        same_field(self.field, other.field)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, self.field.zero) + c
        return TensorElement(self.field, terms)

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def scale(self, c):
        return TensorElement(self.field, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other):
        """Componentwise product (x (x) y)(x' (x) y') = xx' (x) yy'."""
        same_field(self.field, other.field)
        out = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                left = _monomial_mul(self.field, a1, b1)
                right = _monomial_mul(self.field, a2, b2)
                for mL, cL in left.terms.items():
                    for mR, cR in right.terms.items():
                        _acc(out, (mL, mR), c1 * c2 * cL * cR)
        return TensorElement(self.field, out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.field.is_exact:
            return self.terms == other.terms
        keys = set(self.terms) | set(other.terms)
        z = self.field.zero
        return all(
            self.field.eq(self.terms.get(k, z), other.terms.get(k, z)) for k in keys
        )

    def sweedler(self):
        """Iterate (x_leg, y_leg, coefficient) with monomial legs."""
        for (m1, m2), c in self.terms.items():
            yield (
                PBWElement.monomial(self.field, m1),
                PBWElement.monomial(self.field, m2),
                c,
            )

    def apply(self, fn1, fn2):
        """Sum of fn1(leg1) * fn2(leg2) over terms; fns return scalars."""
        total = self.field.zero
        for (m1, m2), c in self.terms.items():
            total = total + c * fn1(
                PBWElement.monomial(self.field, m1)
            ) * fn2(PBWElement.monomial(self.field, m2))
        return total

    def map_legs(self, fn1, fn2):
        """Apply elementwise maps PBWElement -> PBWElement to each leg."""
        out = TensorElement(self.field, {})
        for (m1, m2), c in self.terms.items():
            x = fn1(PBWElement.monomial(self.field, m1))
            y = fn2(PBWElement.monomial(self.field, m2))
            out = out + TensorElement.of(x, y).scale(c)
        return out

    def is_zero(self):
        return not self.terms


_COPROD_CACHE = {}
_ANTIPODE_CACHE = {}
_ANTIPODE_INV_CACHE = {}
_STAR_CACHE = {}


def _gen_coproducts(field):
    one, E, F, K, Kinv = generators(field)
    return {
        "E": TensorElement.of(E, K) + TensorElement.of(one, E),
        "F": TensorElement.of(F, one) + TensorElement.of(Kinv, F),
        "K": TensorElement.of(K, K),
        "Kinv": TensorElement.of(Kinv, Kinv),
        "one": TensorElement.of(one, one),
    }


def _monomial_coproduct(field, mon):
    key = (field.key, mon)
    got = _COPROD_CACHE.get(key)
    if got is not None:
        return got
    gens = _gen_coproducts(field)
    out = gens["one"]
    for _ in range(mon.f):
        out = out * gens["F"]
    kfac = gens["K"] if mon.k > 0 else gens["Kinv"]
    for _ in range(abs(mon.k)):
        out = out * kfac
    for _ in range(mon.e):
        out = out * gens["E"]
    _COPROD_CACHE[key] = out
    return out


def coproduct(x):
    """Algebra homomorphism into the tensor square."""
    out = TensorElement(x.field, {})
    for mon, c in x.terms.items():
        out = out + _monomial_coproduct(x.field, mon).scale(c)
    return out


def counit(x):
    """eps(E) = eps(F) = 0, eps(K) = 1, extended as an algebra map."""
    total = x.field.zero
    for mon, c in x.terms.items():
        if mon.f == 0 and mon.e == 0:
            total = total + c
    return total


def _monomial_image(field, mon, img_f, img_k, img_kinv, img_e, cache, reverse):
    """Product of generator images in PBW order (or reversed, for anti-maps)."""
    key = (field.key, mon)
    got = cache.get(key)
    if got is not None:
        return got
    factors = []
    factors.extend([img_f] * mon.f)
    factors.extend([img_k if mon.k > 0 else img_kinv] * abs(mon.k))
    factors.extend([img_e] * mon.e)
    if reverse:
        factors.reverse()
    out = PBWElement.scalar(field, field.one)
    for fac in factors:
        out = multiply(out, fac)
    cache[key] = out
    return out


def antipode(x):
    """S(E) = -E K^-1, S(F) = -K F, S(K) = K^-1; anti-homomorphism."""
    field = x.field
    one, E, F, K, Kinv = generators(field)
    sE, sF, sK, sKinv = -(E * Kinv), -(K * F), Kinv, K
    out = PBWElement(field, {})
    for mon, c in x.terms.items():
        img = _monomial_image(
            field, mon, sF, sK, sKinv, sE, _ANTIPODE_CACHE, reverse=True
        )
        out = out + img.scale(c)
    return out


def antipode_inverse(x):
    """S^-1(E) = -K^-1 E, S^-1(F) = -F K, S^-1(K) = K^-1."""
    field = x.field
    one, E, F, K, Kinv = generators(field)
    sE, sF, sK, sKinv = -(Kinv * E), -(F * K), Kinv, K
    out = PBWElement(field, {})
    for mon, c in x.terms.items():
        img = _monomial_image(
            field, mon, sF, sK, sKinv, sE, _ANTIPODE_INV_CACHE, reverse=True
        )
        out = out + img.scale(c)
    return out


def star(x):
    """Conjugate-linear anti-homomorphism with E* = K F, F* = E K^-1, K* = K."""
    field = x.field
    one, E, F, K, Kinv = generators(field)
    stE, stF = K * F, E * Kinv
    out = PBWElement(field, {})
    for mon, c in x.terms.items():
        img = _monomial_image(
            field, mon, stF, K, Kinv, stE, _STAR_CACHE, reverse=True
        )
        out = out + img.scale(field.conj(c))
    return out


# ---------------------------------------------------------------------------
# parsing and printing


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d+j?|\d+j|\.\d+j?|\d+)|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<qclose>\]_q)|(?P<op>[\^+\-*/()\[\]]))"
)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "num":
            out.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name"), m.start("name")))
        elif m.lastgroup == "qclose":
            out.append(("qclose", "]_q", m.start("qclose")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, field, text):
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        kind, v, pos = self.next()
        if v != val:
            raise ParseError(f"expected {val!r}, found {v!r}", pos)

    def parse(self):
        x = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {v!r}", pos)
        return x

    def expr(self):
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        elif self.peek()[1] == "+":
            self.next()
        x = self.term()
        if sign < 0:
            x = -x
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.next()[1]
            y = self.factor()
            if op == "*":
                x = x * y
            else:
                kind, v, pos = self.toks[self.i - 1]
                if not y.is_scalar():
                    raise ParseError("can only divide by a scalar", pos)
                c = y.scalar_part()
                if self.field.is_zero(c):
                    raise ParseError("division by zero", pos)
                x = x.scale(self.field.inv(c))
        return x

    def factor(self):
        x = self.atom()
        if self.peek()[1] == "^":
            self.next()
            n = self.int_literal()
            x = self.power(x, n)
        return x

    def power(self, x, n):
        if n < 0:
            # negative powers only for K-monomials and scalars
            if len(x.terms) == 1:
                ((mon, c),) = x.terms.items()
                if mon.f == 0 and mon.e == 0:
                    if self.field.is_zero(c):
                        raise ParseError("division by zero", self.toks[self.i - 1][2])
                    ci = self.field.inv(c)
                    coeff = self.field.one
                    for _ in range(-n):
                        coeff = coeff * ci
                    return PBWElement.monomial(
                        self.field, PBWMonomial(0, mon.k * n, 0), coeff
                    )
            raise ParseError(
                "negative powers only for K and scalars", self.toks[self.i - 1][2]
            )
        out = PBWElement.scalar(self.field, self.field.one)
        for _ in range(n):
            out = out * x
        return out

    def int_literal(self):
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        kind, v, pos = self.next()
        if kind != "num" or not v.isdigit():
            raise ParseError("expected an integer", pos)
        return sign * int(v)

    def atom(self):
        kind, v, pos = self.next()
        f = self.field
        if kind == "num":
            if v.endswith("j"):
                if f.is_exact:
                    raise ParseError("complex literals need numeric mode", pos)
                return PBWElement.scalar(f, complex(0.0, float(v[:-1])))
            if "." in v:
                if f.is_exact:
                    raise ParseError("float literals need numeric mode", pos)
                return PBWElement.scalar(f, complex(float(v)))
            return PBWElement.scalar(f, f.from_int(int(v)))
        if kind == "name":
            if v == "H":
                raise ParseError(
                    "H is not an element of the algebra; use K = q^H", pos
                )
            if v in ("E", "F", "K"):
                mon = {"E": (0, 0, 1), "F": (1, 0, 0), "K": (0, 1, 0)}[v]
                return PBWElement.monomial(f, PBWMonomial(*mon))
            if v == "v":
                return PBWElement.scalar(f, f.v_pow(1))
            if v == "q":
                return PBWElement.scalar(f, f.q_pow(1))
            raise ParseError(f"unknown symbol {v!r}", pos)
        if v == "(":
            x = self.expr()
            self.expect(")")
            return x
        if v == "[":
            n = self.int_literal()
            kind, v2, pos2 = self.next()
            if v2 != "]_q":
                raise ParseError("expected ']_q'", pos2)
            return PBWElement.scalar(f, f.qnum(n))
        raise ParseError(f"unexpected token {v!r}", pos)


def parse(field, text):
    """Parse an expression string to a normalized PBWElement."""
    return _Parser(field, text).parse()


def parse_scalar(field, text):
    x = parse(field, text)
    if not x.is_scalar():
        raise ParseError("expected a scalar expression", 0)
    return x.scalar_part()


def to_text(x):
    """Canonical printing: monomials F^a*K^b*E^c sorted lexicographically."""
    if not x.terms:
        return "0"
    parts = []
    for mon, c in x.sorted_terms():
        cs = x.field.to_str(c) if x.field.is_exact else repr(complex(c))
        if not (cs.startswith("(") and cs.endswith(")")):
            cs = f"({cs})"
        parts.append(cs if mon == UNIT_MON else f"{cs}*{mon.text()}")
    return " + ".join(parts)
