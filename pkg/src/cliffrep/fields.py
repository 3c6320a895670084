"""Exact fields: the rationals, prime fields, extension fields F_p[a]/(m(a)),
cyclotomic fields Q[a]/(Phi_n(a)), and complex doubles for numeric work.

A :class:`Field` handle does arithmetic on *raw* values (ints, tuples,
fractions) so that the linear algebra layers can run without wrapper
objects; :class:`FieldElement` wraps a raw value for user-facing code.

Canonical raw forms (structural equality is mathematical equality):

* rationals: ``fractions.Fraction``
* prime field: ``int`` in ``[0, p)``
* extension field: tuple of ``k`` ints in ``[0, p)``, constant term first
* cyclotomic: ``(numerators, den)`` with ``den > 0`` and
  ``gcd(den, *numerators) == 1``; numerators constant term first
* complex: ``complex``

Element strings: ``"3/4"``, ``"-2"``, polynomials in ``a`` such as
``"a^2+3*a+1"`` or ``"-1/2*a+1"``, and ``"(re,im)"`` for complex values.
"""

from __future__ import annotations

import cmath
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import polys


class FieldError(ValueError):
    """Invalid field specification, element string, or cross-field operation."""


def is_prime(n: int) -> bool:
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


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n < 1:
        raise FieldError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for e in range(1, n):
        if n % e == 0:
            den = cyclotomic_polynomial(e)
            # exact division by a monic integer polynomial
            quo = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for i in range(len(quo) - 1, -1, -1):
                c = rem[i + len(den) - 1]
                quo[i] = c
                for j, y in enumerate(den):
                    rem[i + j] -= c * y
            num = quo
    return tuple(num)


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class FieldSpec:
    """Hashable description of a field; the cache key for :func:`make_field`."""

    kind: str
    p: int | None = None
    k: int | None = None
    modulus: tuple[int, ...] | None = None
    n: int | None = None

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p=p)

    @classmethod
    def extension(cls, p: int, k: int, modulus=None) -> FieldSpec:
        if modulus is None:
            if not is_prime(p) or k < 1:
                raise FieldError(f"invalid extension parameters p={p}, k={k}")
            modulus = default_modulus(p, k)
        return cls("extension", p=p, k=k, modulus=tuple(int(c) % p for c in modulus))

    @classmethod
    def cyclotomic(cls, n: int) -> FieldSpec:
        return cls("cyclotomic", n=n)

    @classmethod
    def complex_double(cls) -> FieldSpec:
        return cls("complex")

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        if self.kind == "extension":
            return {"kind": "extension", "p": self.p, "k": self.k, "modulus": list(self.modulus)}
        if self.kind == "cyclotomic":
            return {"kind": "cyclotomic", "n": self.n}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError("field spec must be an object with a 'kind' key")
        kind = obj["kind"]
        try:
            if kind == "rationals":
                return cls.rationals()
            if kind == "prime":
                return cls.prime(int(obj["p"]))
            if kind == "extension":
                return cls.extension(int(obj["p"]), int(obj["k"]), obj.get("modulus"))
            if kind == "cyclotomic":
                return cls.cyclotomic(int(obj["n"]))
            if kind == "complex":
                return cls.complex_double()
        except KeyError as exc:
            raise FieldError(f"field spec of kind {kind!r} is missing {exc.args[0]!r}") from None
        raise FieldError(f"unknown field kind {kind!r}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Shorthand: ``QQ``, ``gf7``, ``gf4`` (= GF(2^2)), ``gf2^3``, ``cyc3``, ``CC``."""
        t = text.strip().lower().replace(" ", "")
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t in ("c", "cc", "complex"):
            return cls.complex_double()
        m = re.fullmatch(r"(?:cyc|cyclotomic|q\(zeta_?)(\d+)\)?", t)
        if m:
            return cls.cyclotomic(int(m.group(1)))
        m = re.fullmatch(r"(?:gf|f)\(?(\d+)(?:\^(\d+))?\)?", t)
        if m:
            base = int(m.group(1))
            if m.group(2) is not None:
                k = int(m.group(2))
                return cls.prime(base) if k == 1 else cls.extension(base, k)
            if is_prime(base):
                return cls.prime(base)
            fs = prime_factors(base)
            if len(fs) == 1:
                p = fs[0]
                return cls.extension(p, round(math.log(base, p)))
            raise FieldError(f"{base} is not a prime power")
        if t.startswith("{"):
            import json

            return cls.from_json(json.loads(text))
        raise FieldError(f"cannot parse field {text!r}")

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "QQ"
        if self.kind == "prime":
            return f"GF({self.p})"
        if self.kind == "extension":
            return f"GF({self.p}^{self.k})"
        if self.kind == "cyclotomic":
            return f"QQ(zeta_{self.n})"
        return "CC"


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """Immutable element of a field; arithmetic stays within one field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"cross-field arithmetic: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field.spec}({self.field.format(self.value)!r})"


# ---------------------------------------------------------------------------
# field handles


class Field:
    spec: FieldSpec
    characteristic: int = 0
    order: int | None = None
    is_exact: bool = True
    zero = None
    one = None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<Field {self.spec}>"

    def __str__(self):
        return str(self.spec)

    def __call__(self, x) -> FieldElement:
        return FieldElement(self, self.coerce(x))

    def element(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot coerce {x!r} into {self}")

    def from_int(self, n: int):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x) -> bool:
        return x == self.zero

    def pow(self, x, e: int):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def key(self, x):
        return x

    def elements(self) -> Iterator:
        raise FieldError(f"{self} is infinite")

    def random(self, rng, bound: int = 3):
        """Seeded random raw element (small coefficients for infinite fields)."""
        raise NotImplementedError


class Rationals(Field):
    def __init__(self):
        self.spec = FieldSpec.rationals()
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def div(self, x, y):
        if not y:
            raise ZeroDivisionError("division by zero")
        return x / y

    def parse(self, s: str):
        s = s.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise FieldError(f"bad rational {s!r}")
        return Fraction(s)

    def format(self, x) -> str:
        return str(x)

    def random(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound))


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.spec = FieldSpec.prime(p)
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def pow(self, x, e):
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x, e, self.p)

    def parse(self, s: str):
        s = s.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", s)
        if not m:
            raise FieldError(f"bad element of {self}: {s!r}")
        num = int(m.group(1)) % self.p
        if m.group(2) is None:
            return num
        return self.div(num, int(m.group(2)) % self.p)

    def format(self, x) -> str:
        return str(x)

    def elements(self):
        return iter(range(self.p))

    def random(self, rng, bound=3):
        return rng.randrange(self.p)


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(a(?:\^(\d+))?)?$")


def _parse_poly_terms(s: str) -> list[tuple[Fraction, int]]:
    """Split ``'a^2-3*a+1/2'`` into ``[(1, 2), (-3, 1), (1/2, 0)]``."""
    t = s.replace(" ", "")
    if not t:
        raise FieldError("empty element string")
    parts = re.findall(r"[+-]?[^+-]+", t)
    if "".join(parts) != t:
        raise FieldError(f"bad polynomial element {s!r}")
    out = []
    for part in parts:
        sign = -1 if part[0] == "-" else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise FieldError(f"bad term {part!r} in {s!r}")
        coef = Fraction(m.group(1)) if m.group(1) is not None else Fraction(1)
        if m.group(2) is None:
            power = 0
        else:
            power = int(m.group(3)) if m.group(3) is not None else 1
        out.append((sign * coef, power))
    return out


def _format_poly(coeffs: list, coef_str) -> str:
    """Descending-power rendering; ``coef_str`` returns (sign, magnitude-string)."""
    pieces = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        neg, mag = coef_str(c)
        if power == 0:
            body = mag
        else:
            mono = "a" if power == 1 else f"a^{power}"
            body = mono if mag == "1" else f"{mag}*{mono}"
        if pieces:
            pieces.append(("-" if neg else "+") + body)
        else:
            pieces.append(("-" if neg else "") + body)
    return "".join(pieces) if pieces else "0"


class ExtensionField(Field):
    def __init__(self, spec: FieldSpec):
        p, k, mod = spec.p, spec.k, spec.modulus
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k is None or k < 1 or mod is None or len(mod) != k + 1 or mod[-1] % p != 1:
            raise FieldError("extension modulus must be monic of degree k (constant term first)")
        if not is_irreducible(p, list(mod)):
            raise FieldError(f"modulus {list(mod)} is reducible over GF({p})")
        self.spec = spec
        self.p, self.k = p, k
        self.modulus = tuple(mod)
        self.characteristic = p
        self.order = p**k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        k, p, mod = self.k, self.p, self.modulus
        r = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    r[i + j] += a * b
        for i in range(2 * k - 2, k - 1, -1):
            c = r[i] % p
            if c:
                base = i - k
                for j in range(k):
                    r[base + j] -= c * mod[j]
        return tuple(c % p for c in r[:k])

    def _base(self):
        return make_field(FieldSpec.prime(self.p))

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero")
        Fp = self._base()
        g, s, _ = polys.xgcd(Fp, list(x), list(self.modulus))
        s = list(s) + [0] * (self.k - len(s))
        return tuple(s[: self.k])

    def gen(self):
        if self.k == 1:
            return (-self.modulus[0] % self.p,)
        return (0, 1) + (0,) * (self.k - 2)

    def _from_terms(self, terms):
        acc = self.zero
        a = self.gen()
        Fp = self._base()
        for coef, power in terms:
            c = Fp.div(coef.numerator % self.p, coef.denominator % self.p)
            acc = self.add(acc, self.mul(self.from_int(c), self.pow(a, power)))
        return acc

    def parse(self, s: str):
        return self._from_terms(_parse_poly_terms(s))

    def format(self, x) -> str:
        return _format_poly(list(x), lambda c: (False, str(c)))

    def key(self, x):
        return sum(c * self.p**i for i, c in enumerate(x))

    def from_index(self, idx: int):
        out = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)

    def elements(self):
        return (self.from_index(i) for i in range(self.order))

    def random(self, rng, bound=3):
        return self.from_index(rng.randrange(self.order))


class CyclotomicField(Field):
    def __init__(self, n: int):
        if n < 1:
            raise FieldError("cyclotomic index must be positive")
        self.spec = FieldSpec.cyclotomic(n)
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.deg = len(self.phi) - 1
        self.zero = ((0,) * self.deg, 1)
        self.one = ((1,) + (0,) * (self.deg - 1), 1)

    @staticmethod
    def _norm(nums, den):
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [c // g for c in nums]
            den //= g
        return tuple(nums), den

    def from_int(self, n):
        return ((n,) + (0,) * (self.deg - 1), 1)

    def from_fraction(self, q: Fraction):
        return ((q.numerator,) + (0,) * (self.deg - 1), q.denominator)

    def add(self, x, y):
        (xn, xd), (yn, yd) = x, y
        if xd == yd:
            if xd == 1:
                return tuple(a + b for a, b in zip(xn, yn)), 1
            return self._norm([a + b for a, b in zip(xn, yn)], xd)
        return self._norm([a * yd + b * xd for a, b in zip(xn, yn)], xd * yd)

    def neg(self, x):
        return tuple(-a for a in x[0]), x[1]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        (xn, xd), (yn, yd) = x, y
        k = self.deg
        r = [0] * (2 * k - 1)
        for i, a in enumerate(xn):
            if a:
                for j, b in enumerate(yn):
                    r[i + j] += a * b
        phi = self.phi
        for i in range(2 * k - 2, k - 1, -1):
            c = r[i]
            if c:
                base = i - k
                for j in range(k):
                    r[base + j] -= c * phi[j]
        den = xd * yd
        if den == 1:
            return tuple(r[:k]), 1
        return self._norm(r[:k], den)

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero")
        Q = make_field(FieldSpec.rationals())
        nums, den = x
        g, s, _ = polys.xgcd(Q, [Fraction(c, den) for c in nums], [Fraction(c) for c in self.phi])
        s = list(s) + [Fraction(0)] * (self.deg - len(s))
        return self._from_fractions(s[: self.deg])

    def _from_fractions(self, coeffs):
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return self._norm([int(c * den) for c in coeffs], den)

    def to_fractions(self, x) -> list[Fraction]:
        nums, den = x
        return [Fraction(c, den) for c in nums]

    def gen(self):
        if self.deg == 1:
            return (-self.phi[0],), 1
        return (0, 1) + (0,) * (self.deg - 2), 1

    def parse(self, s: str):
        acc = self.zero
        a = self.gen()
        for coef, power in _parse_poly_terms(s):
            acc = self.add(acc, self.mul(self.from_fraction(coef), self.pow(a, power)))
        return acc

    def format(self, x) -> str:
        def cs(c):
            return (c < 0, str(abs(c)))

        return _format_poly(self.to_fractions(x), cs)

    def key(self, x):
        return tuple(self.to_fractions(x))

    def random(self, rng, bound=3):
        return self._norm([rng.randint(-bound, bound) for _ in range(self.deg)], 1)


class ComplexDouble(Field):
    is_exact = False

    def __init__(self):
        self.spec = FieldSpec.complex_double()
        self.zero = 0j
        self.one = 1 + 0j

    def from_int(self, n):
        return complex(n)

    def coerce(self, x):
        if isinstance(x, (float, complex)):
            return complex(x)
        return super().coerce(x)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def div(self, x, y):
        return x / y

    def parse(self, s: str):
        m = re.fullmatch(r"\s*\(\s*([^,\s]+)\s*,\s*([^,\s)]+)\s*\)\s*", s)
        if not m:
            raise FieldError(f"bad complex literal {s!r}; expected '(re,im)'")
        try:
            return complex(float(m.group(1)), float(m.group(2)))
        except ValueError:
            raise FieldError(f"bad complex literal {s!r}") from None

    def format(self, x) -> str:
        return f"({float(x.real)!r},{float(x.imag)!r})"

    def key(self, x):
        return (x.real, x.imag)

    def random(self, rng, bound=3):
        return complex(rng.gauss(0, 1), rng.gauss(0, 1))


# ---------------------------------------------------------------------------


def is_irreducible(p: int, poly: list[int]) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    Fp = make_field(FieldSpec.prime(p))
    f = polys.trim(Fp, [c % p for c in poly])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for q in prime_factors(k):
        h = polys.powmod(Fp, x, p ** (k // q), f)
        if len(polys.gcd(Fp, polys.sub(Fp, h, x), f)) != 1:
            return False
    return polys.sub(Fp, polys.powmod(Fp, x, p**k, f), x) == []


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k, ordering by sum(c_i p^i)."""
    for idx in range(p**k):
        coeffs = []
        for _ in range(k):
            idx, c = divmod(idx, p)
            coeffs.append(c)
        cand = coeffs + [1]
        if is_irreducible(p, cand):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@functools.lru_cache(maxsize=None)
def make_field(spec: FieldSpec) -> Field:
    """Build (and cache) the field handle for ``spec``."""
    if spec.kind == "rationals":
        return Rationals()
    if spec.kind == "prime":
        return PrimeField(spec.p)
    if spec.kind == "extension":
        return ExtensionField(spec)
    if spec.kind == "cyclotomic":
        return CyclotomicField(spec.n)
    if spec.kind == "complex":
        return ComplexDouble()
    raise FieldError(f"unknown field kind {spec.kind!r}")


def field(text_or_spec) -> Field:
    if isinstance(text_or_spec, Field):
        return text_or_spec
    if isinstance(text_or_spec, FieldSpec):
        return make_field(text_or_spec)
    return make_field(FieldSpec.parse(text_or_spec))


def _has_order(F: Field, x, n: int) -> bool:
    if F.pow(x, n) != F.one:
        return False
    return all(F.pow(x, n // q) != F.one for q in prime_factors(n))


def primitive_root_of_unity(F: Field, n: int) -> FieldElement:
    """A primitive n-th root of unity in ``F``.

    Finite fields return the least one in canonical element order.
    Cyclotomic fields QQ(zeta_N) return a power of the generator (or of its
    negative when N is odd and n divides 2N).
    """
    if n < 1:
        raise FieldError("n must be positive")
    if F.characteristic and n % F.characteristic == 0:
        raise FieldError(f"characteristic {F.characteristic} divides {n}")
    if n == 1:
        return F.element(F.one)
    kind = F.spec.kind
    if kind in ("prime", "extension"):
        if (F.order - 1) % n:
            raise FieldError(f"no primitive {n}-th root of unity in {F}: {n} does not divide {F.order - 1}")
        for x in F.elements():
            if not F.is_zero(x) and _has_order(F, x, n):
                return F.element(x)
        raise AssertionError("unreachable: cyclic group has an element of every order")
    if kind == "rationals":
        if n == 2:
            return F.element(F.from_int(-1))
        raise FieldError(f"no primitive {n}-th root of unity in QQ")
    if kind == "cyclotomic":
        N = F.n
        g = F.gen()
        top = N
        if N % n and N % 2:
            g = F.neg(g)
            top = 2 * N
        if top % n:
            raise FieldError(f"no primitive {n}-th root of unity in {F}")
        return F.element(F.pow(g, top // n))
    if kind == "complex":
        return F.element(cmath.exp(2j * cmath.pi / n))
    raise FieldError(f"unsupported field {F}")
