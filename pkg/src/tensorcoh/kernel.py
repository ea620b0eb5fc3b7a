"""Exact arithmetic kernel: prime fields, monomial orders, multivariate polynomials.

Everything is immutable after construction.  Coefficients live in a prime
field F_p (default p = 32003) and are stored as ints in [1, p).  Monomials
are exponent tuples; the weighted degree uses the ring's variable degrees.
"""

from __future__ import annotations


class KernelError(Exception):
    """Base error for the algebra engine."""


class RingMismatch(KernelError):
    """Operands belong to different rings."""


class UnsupportedInput(KernelError):
    """Input outside the engine's supported (graded) fragment."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GroundField:
    """The prime field F_p."""

    def __init__(self, char: int = 32003):
        if not _is_prime(char):
            raise UnsupportedInput(f"characteristic {char} is not prime")
        self.char = char

    def normalize(self, a: int) -> int:
        return a % self.char

    def inv(self, a: int) -> int:
        a %= self.char
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.char - 2, self.char)

    def __eq__(self, other):
        return isinstance(other, GroundField) and other.char == self.char

    def __hash__(self):
        return hash(("GroundField", self.char))

    def __repr__(self):
        return f"GF({self.char})"


class AmbientRing:
    """Polynomial ring k[x_1..x_n] with a global monomial order.

    Orders: grevlex (default) or lex, both refined by the weighted degree
    given by ``degrees``.
    """

    def __init__(self, names, char: int = 32003, degrees=None, order: str = "grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UnsupportedInput("variable names must be distinct")
        if order not in ("grevlex", "lex"):
            raise UnsupportedInput(f"unknown monomial order {order!r}")
        self.names = names
        self.n = len(names)
        self.field = GroundField(char)
        self.char = self.field.char
        if degrees is None:
            degrees = (1,) * self.n
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != self.n or any(d <= 0 for d in degrees):
            raise UnsupportedInput("variable degrees must be positive")
        self.degrees = degrees
        self.order = order
        self.sigma = sum(degrees)
        self._index = {nm: i for i, nm in enumerate(names)}
        self._zero_exp = (0,) * self.n

    # -- monomial arithmetic ------------------------------------------------

    def mono_deg(self, e) -> int:
        return sum(w * k for w, k in zip(self.degrees, e))

    def mono_key(self, e):
        """Sort key; larger key means larger monomial."""
        if self.order == "lex":
            return e
        return (self.mono_deg(e), tuple(-k for k in reversed(e)))

    def mono_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mono_div(self, a, b):
        """a / b, or None when b does not divide a."""
        q = tuple(x - y for x, y in zip(a, b))
        if any(k < 0 for k in q):
            return None
        return q

    def mono_lcm(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    # -- constructors ---------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_exp: 1})

    def const(self, c: int) -> "Polynomial":
        c = self.field.normalize(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, e, c: int = 1) -> "Polynomial":
        c = self.field.normalize(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def poly(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, AmbientRing)
            and other.names == self.names
            and other.char == self.char
            and other.degrees == self.degrees
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.names, self.char, self.degrees, self.order))

    def __repr__(self):
        return f"GF({self.char})[{','.join(self.names)}]"


class Polynomial:
    """Sparse multivariate polynomial over an AmbientRing."""

    __slots__ = ("ring", "coeffs", "_lt")

    def __init__(self, ring: AmbientRing, coeffs: dict):
        self.ring = ring
        self.coeffs = coeffs
        self._lt = None

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lt(self):
        """Leading (exponent, coefficient) under the ring order."""
        if self._lt is None:
            if not self.coeffs:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.coeffs, key=self.ring.mono_key)
            self._lt = (e, self.coeffs[e])
        return self._lt

    def lm(self):
        return self.lt()[0]

    def terms(self):
        """Terms sorted strictly descending under the monomial order."""
        return sorted(self.coeffs.items(), key=lambda t: self.ring.mono_key(t[0]), reverse=True)

    def degree(self):
        """Weighted degree, or -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(self.ring.mono_deg(e) for e in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mono_deg(e) for e in self.coeffs}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {self.ring._zero_exp}

    def constant_value(self) -> int:
        return self.coeffs.get(self.ring._zero_exp, 0)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        p = self.ring.char
        c = dict(self.coeffs)
        for e, a in other.coeffs.items():
            b = (c.get(e, 0) + a) % p
            if b:
                c[e] = b
            elif e in c:
                del c[e]
        return Polynomial(self.ring, c)

    def __neg__(self):
        p = self.ring.char
        return Polynomial(self.ring, {e: p - a for e, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.char
        mul = self.ring.mono_mul
        c = {}
        for e1, a1 in self.coeffs.items():
            for e2, a2 in other.coeffs.items():
                e = mul(e1, e2)
                b = (c.get(e, 0) + a1 * a2) % p
                if b:
                    c[e] = b
                elif e in c:
                    del c[e]
        return Polynomial(self.ring, c)

    __rmul__ = __mul__

    def scale(self, c: int):
        c %= self.ring.char
        if c == 0:
            return self.ring.zero()
        p = self.ring.char
        return Polynomial(self.ring, {e: (a * c) % p for e, a in self.coeffs.items()})

    def mul_term(self, e, c: int):
        c %= self.ring.char
        if c == 0:
            return self.ring.zero()
        p = self.ring.char
        mul = self.ring.mono_mul
        return Polynomial(self.ring, {mul(e0, e): (a * c) % p for e0, a in self.coeffs.items()})

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.ring.field.inv(self.lt()[1]))

    def derivative(self, i: int):
        p = self.ring.char
        c = {}
        for e, a in self.coeffs.items():
            k = e[i]
            if k == 0:
                continue
            b = (a * k) % p
            if not b:
                continue
            e2 = list(e)
            e2[i] = k - 1
            c[tuple(e2)] = b
        return Polynomial(self.ring, c)

    # -- comparison / display ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    def _mono_str(self, e):
        parts = []
        for nm, k in zip(self.ring.names, e):
            if k == 1:
                parts.append(nm)
            elif k > 1:
                parts.append(f"{nm}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.coeffs:
            return "0"
        half = self.ring.char // 2
        out = []
        for e, a in self.terms():
            signed = a - self.ring.char if a > half else a
            m = self._mono_str(e)
            coef = abs(signed)
            if m and coef == 1:
                body = m
            elif m:
                body = f"{coef}*{m}"
            else:
                body = str(coef)
            if not out:
                out.append(body if signed > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if signed > 0 else f"- {body}")
        return " ".join(out)

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"


# -- parsing ---------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise UnsupportedInput(f"unexpected character {ch!r} in polynomial")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expr(self):
        sign = 1
        while self.peek() in "+-":
            if self.next()[0] == "-":
                sign = -sign
        p = self.term().scale(sign)
        while self.peek() in "+-":
            sign = 1
            while self.peek() in "+-":
                if self.next()[0] == "-":
                    sign = -sign
            p = p + self.term().scale(sign)
        return p

    def term(self):
        p = self.power()
        while self.peek() == "*":
            self.next()
            p = p * self.power()
        return p

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "int":
                raise UnsupportedInput("exponent must be an integer")
            k = int(val)
            out = self.ring.one()
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                raise UnsupportedInput(f"unknown variable {val!r}")
            return self.ring.var(val)
        if kind == "(":
            p = self.expr()
            if self.next()[0] != ")":
                raise UnsupportedInput("unbalanced parentheses")
            return p
        raise UnsupportedInput(f"unexpected token {val!r}")


def parse_polynomial(ring: AmbientRing, text: str) -> Polynomial:
    """Parse '+ - * ^' expressions in the ring's variables."""
    parser = _Parser(ring, _tokenize(text))
    p = parser.expr()
    if parser.peek() != "end":
        raise UnsupportedInput(f"trailing input in polynomial {text!r}")
    return p
