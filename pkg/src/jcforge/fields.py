"""Exact arithmetic for the supported coefficient fields.

Three fields are available: the rationals Q, prime fields GF(p), and the
rational function fields GF(p)(t).  Every element is kept in a canonical
form that is unique per value, so equality is structural:

* Q: a reduced `fractions.Fraction` (positive denominator).
* GF(p): a residue in [0, p).
* GF(p)(t): a pair (numerator, denominator) of polynomials in t over
  GF(p), denominator monic, gcd(numerator, denominator) = 1, and
  denominator 1 whenever the numerator is 0.  The inner polynomials are
  tuples of residues in ascending degree with no trailing zeros; () is 0.

All values are immutable and all operations pure, so elements can be
shared freely between threads.

Integer arithmetic is arbitrary precision throughout (Python ints /
Fraction); fraction growth during elimination over Q is unbounded.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import _backend
from .errors import DivisionByZero, FieldMismatch, NotPrime, ParseError

RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"
RATIONAL_FUNCTIONS = "RationalFunctions"

#: Largest supported prime modulus.  Keeps the brute-force irreducibility
#: search tractable; every shipped example needs only p in {2, 3}.
MAX_PRIME = 17

_ONE = (1,)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Identifies one of the supported fields."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ParseError("Rationals take no modulus")
        elif self.kind in (PRIME_FIELD, RATIONAL_FUNCTIONS):
            if self.p is None or not _is_prime(self.p):
                raise NotPrime(f"modulus {self.p!r} is not prime")
            if self.p > MAX_PRIME:
                raise ParseError(
                    f"modulus {self.p} exceeds the supported bound {MAX_PRIME}")
        else:
            raise ParseError(f"unknown field kind {self.kind!r}")

    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    def zero(self) -> "FieldElem":
        return self.from_int(0)

    def one(self) -> "FieldElem":
        return self.from_int(1)

    def from_int(self, k: int) -> "FieldElem":
        if self.kind == RATIONALS:
            return RationalElem(self, Fraction(k))
        if self.kind == PRIME_FIELD:
            return PrimeElem(self, k % self.p)
        k %= self.p
        return RatFuncElem(self, (k,) if k else (), _ONE)

    def t(self) -> "FieldElem":
        """The indeterminate t of GF(p)(t)."""
        if self.kind != RATIONAL_FUNCTIONS:
            raise FieldMismatch(f"{self} has no indeterminate t")
        return RatFuncElem(self, (0, 1), _ONE)

    def __str__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME_FIELD:
            return f"GF({self.p})"
        return f"GF({self.p})(t)"


def rationals() -> FieldSpec:
    return FieldSpec(RATIONALS)


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(PRIME_FIELD, p)


def rational_functions(p: int) -> FieldSpec:
    return FieldSpec(RATIONAL_FUNCTIONS, p)


def characteristic(spec: FieldSpec) -> int:
    return spec.characteristic()


class FieldElem:
    """Base class for exact field elements.  Subclasses are canonical."""

    __slots__ = ("spec",)

    def _coerce(self, other):
        if isinstance(other, int):
            return self.spec.from_int(other)
        if not isinstance(other, FieldElem):
            return None
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        return other

    def is_zero(self) -> bool:
        raise NotImplementedError

    def is_one(self) -> bool:
        raise NotImplementedError

    def inverse(self) -> "FieldElem":
        raise NotImplementedError

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __bool__(self):
        return not self.is_zero()


class RationalElem(FieldElem):
    __slots__ = ("value",)

    def __init__(self, spec: FieldSpec, value: Fraction):
        self.spec = spec
        self.value = value

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else RationalElem(self.spec, self.value + o.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else RationalElem(self.spec, self.value * o.value)

    def __neg__(self):
        return RationalElem(self.spec, -self.value)

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("inverse of 0")
        return RationalElem(self.spec, 1 / self.value)

    def __eq__(self, other):
        return isinstance(other, RationalElem) and self.value == other.value

    def __hash__(self):
        return hash(("Q", self.value))

    def __repr__(self):
        return f"<Q {self.value}>"


class PrimeElem(FieldElem):
    __slots__ = ("value",)

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeElem(self.spec, (self.value + o.value) % self.spec.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeElem(self.spec, (self.value * o.value) % self.spec.p)

    def __neg__(self):
        return PrimeElem(self.spec, (-self.value) % self.spec.p)

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("inverse of 0")
        return PrimeElem(self.spec, pow(self.value, self.spec.p - 2, self.spec.p))

    def __eq__(self, other):
        return (isinstance(other, PrimeElem) and self.value == other.value
                and self.spec.p == other.spec.p)

    def __hash__(self):
        return hash(("GFp", self.spec.p, self.value))

    def __repr__(self):
        return f"<GF({self.spec.p}) {self.value}>"


class RatFuncElem(FieldElem):
    """Element of GF(p)(t) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, spec: FieldSpec, num: tuple, den: tuple):
        self.spec = spec
        self.num = num
        self.den = den

    @classmethod
    def make(cls, spec: FieldSpec, num: tuple, den: tuple) -> "RatFuncElem":
        """Construct from an arbitrary fraction, normalizing."""
        if not den:
            raise DivisionByZero("zero denominator")
        p = spec.p
        if not num:
            return cls(spec, (), _ONE)
        k = _backend.impl
        g = k.gfp_gcd(p, num, den)
        if len(g) > 1:
            num = k.gfp_divmod(p, num, g)[0]
            den = k.gfp_divmod(p, den, g)[0]
        lc = den[-1]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            num = tuple((x * inv) % p for x in num)
            den = tuple((x * inv) % p for x in den)
        return cls(spec, num, den)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _ONE and self.den == _ONE

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.spec.p
        k = _backend.impl
        if self.den == _ONE and o.den == _ONE:
            return RatFuncElem(self.spec, k.gfp_add(p, self.num, o.num), _ONE)
        num = k.gfp_add(p, k.gfp_mul(p, self.num, o.den), k.gfp_mul(p, o.num, self.den))
        return RatFuncElem.make(self.spec, num, k.gfp_mul(p, self.den, o.den))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.spec.p
        k = _backend.impl
        if self.den == _ONE and o.den == _ONE:
            return RatFuncElem(self.spec, k.gfp_mul(p, self.num, o.num), _ONE)
        return RatFuncElem.make(self.spec, k.gfp_mul(p, self.num, o.num),
                                k.gfp_mul(p, self.den, o.den))

    def __neg__(self):
        p = self.spec.p
        return RatFuncElem(self.spec, tuple((-x) % p for x in self.num), self.den)

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of 0")
        p = self.spec.p
        lc = self.num[-1]
        num, den = self.den, self.num
        if lc != 1:
            inv = pow(lc, p - 2, p)
            num = tuple((x * inv) % p for x in num)
            den = tuple((x * inv) % p for x in den)
        return RatFuncElem(self.spec, num, den)

    def __eq__(self, other):
        return (isinstance(other, RatFuncElem) and self.num == other.num
                and self.den == other.den and self.spec.p == other.spec.p)

    def __hash__(self):
        return hash(("GFpt", self.spec.p, self.num, self.den))

    def __repr__(self):
        return f"<GF({self.spec.p})(t) {render_element(self)}>"


# ---------------------------------------------------------------------------
# Spec-level operation surface
# ---------------------------------------------------------------------------

def arith(op: str, a: FieldElem, b: FieldElem) -> FieldElem:
    """Exact field arithmetic; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


# ---------------------------------------------------------------------------
# Text form: GF(p) residues as decimal integers; GF(p)(t) as `<poly>` or
# `(<poly>)/(<poly>)` in descending degree; Q as `a` or `a/b`.
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(t)?(?:\^(\d+))?$")


def _parse_tpoly(s: str, p: int) -> tuple:
    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial in t")
    out = {}
    sign = 1
    pos = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    buf = []
    terms = []
    for ch in s[pos:]:
        if ch in "+-":
            terms.append((sign, "".join(buf)))
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
    terms.append((sign, "".join(buf)))
    for sg, term in terms:
        m = _TERM_RE.match(term)
        if not m or not term:
            raise ParseError(f"bad term {term!r} in polynomial over GF({p})[t]")
        cstr, tvar, expstr = m.groups()
        if cstr is None and tvar is None:
            raise ParseError(f"bad term {term!r}")
        if expstr is not None and tvar is None:
            raise ParseError(f"exponent without t in {term!r}")
        c = int(cstr) if cstr is not None else 1
        k = 0 if tvar is None else (int(expstr) if expstr is not None else 1)
        out[k] = (out.get(k, 0) + sg * c) % p
    deg = max(out) if out else 0
    coeffs = [out.get(i, 0) for i in range(deg + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def render_tpoly(coeffs: tuple) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            var = "t" if k == 1 else f"t^{k}"
            parts.append(var if c == 1 else f"{c}*{var}")
    return "+".join(parts)


def parse_element(s: str, spec: FieldSpec) -> FieldElem:
    s = s.strip()
    if not s:
        raise ParseError("empty field element")
    if spec.kind == RATIONALS:
        try:
            return RationalElem(spec, Fraction(s))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {s!r}") from e
    if spec.kind == PRIME_FIELD:
        try:
            return PrimeElem(spec, int(s) % spec.p)
        except ValueError as e:
            raise ParseError(f"bad GF({spec.p}) literal {s!r}") from e
    # GF(p)(t): bare polynomial or (num)/(den)
    slash = _top_level_slash(s)
    if slash is None:
        return RatFuncElem.make(spec, _parse_tpoly(_strip_parens(s), spec.p), _ONE)
    ns, ds = s[:slash], s[slash + 1:]
    ns, ds = _strip_parens(ns), _strip_parens(ds)
    den = _parse_tpoly(ds, spec.p)
    if not den:
        raise ParseError("zero denominator")
    return RatFuncElem.make(spec, _parse_tpoly(ns, spec.p), den)


def _top_level_slash(s: str) -> int | None:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
        elif ch == "/" and depth == 0:
            return i
    if depth:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    return None


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        depth = 0
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(s) - 1:
                    return s
        s = s[1:-1].strip()
    return s


def render_element(a: FieldElem) -> str:
    if isinstance(a, RationalElem):
        return str(a.value)
    if isinstance(a, PrimeElem):
        return str(a.value)
    if isinstance(a, RatFuncElem):
        if a.den == _ONE:
            return render_tpoly(a.num)
        return f"({render_tpoly(a.num)})/({render_tpoly(a.den)})"
    raise TypeError(f"not a field element: {a!r}")


def random_element(spec: FieldSpec, rng, deg: int = 2, nonzero: bool = False) -> FieldElem:
    """A random element, with t-degrees at most `deg` over GF(p)(t)."""
    while True:
        if spec.kind == RATIONALS:
            e = RationalElem(spec, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        elif spec.kind == PRIME_FIELD:
            e = PrimeElem(spec, rng.randrange(spec.p))
        else:
            p = spec.p
            num = tuple(rng.randrange(p) for _ in range(rng.randint(1, deg + 1)))
            den = ()
            while not den:
                den = tuple(rng.randrange(p) for _ in range(rng.randint(1, deg + 1)))
                den = den[:_last_nonzero(den)]
            e = RatFuncElem.make(spec, num[:_last_nonzero(num)], den)
        if not nonzero or not e.is_zero():
            return e


def _last_nonzero(c: tuple) -> int:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return n
