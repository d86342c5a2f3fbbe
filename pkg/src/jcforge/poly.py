"""Univariate polynomial arithmetic over a supported field.

Coefficients are stored ascending by degree, highest-index coefficient
nonzero; the zero polynomial has an empty coefficient tuple and its
degree() is None (a sentinel, never compared numerically).

Besides ring arithmetic this module provides the separability-related
quantities the classification is parameterized by: the formal derivative,
the inseparability degree, and a bounded exhaustive irreducibility test.
The irreducibility test is deliberately a brute-force divisor search:
at desk scale (bidegree <= 6) exhaustion is affordable and obviously
correct, which matters more here than speed.
"""

import itertools
import math
from fractions import Fraction

from . import _backend
from .errors import (DegreeTooLarge, DivisionByZero, FieldMismatch, NotSquare,
                     ParseError)
from .fields import (PRIME_FIELD, RATIONAL_FUNCTIONS, RATIONALS, FieldElem,
                     FieldSpec, RatFuncElem, _strip_parens, parse_element,
                     render_element)

_ONE = (1,)


class Poly:
    """Dense univariate polynomial over one FieldSpec."""

    __slots__ = ("spec", "coeffs", "varname")

    def __init__(self, spec: FieldSpec, coeffs, varname: str = "T"):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.spec = spec
        self.coeffs = tuple(coeffs)
        self.varname = varname

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.one(),))

    @classmethod
    def constant(cls, c: FieldElem) -> "Poly":
        return cls(c.spec, (c,))

    @classmethod
    def variable(cls, spec: FieldSpec, varname: str = "T") -> "Poly":
        return cls(spec, (spec.zero(), spec.one()), varname)

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints, varname: str = "T") -> "Poly":
        return cls(spec, [spec.from_int(k) for k in ints], varname)

    # -- structure ----------------------------------------------------

    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def lc(self) -> FieldElem:
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of 0")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.coeffs[-1].inverse()
        return Poly(self.spec, [c * inv for c in self.coeffs], self.varname)

    def coeff(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.spec.zero()

    def _check(self, other) -> "Poly":
        if isinstance(other, FieldElem):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return None
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        return other

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.spec, out, self.varname)

    def __neg__(self):
        return Poly(self.spec, [-c for c in self.coeffs], self.varname)

    def __sub__(self, other):
        o = self._check(other)
        return NotImplemented if o is None else self + (-o)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly.zero(self.spec)
        zero = self.spec.zero()
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.spec, out, self.varname)

    def __divmod__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if len(self.coeffs) < len(o.coeffs):
            return Poly.zero(self.spec), self
        zero = self.spec.zero()
        rem = list(self.coeffs)
        qlen = len(rem) - len(o.coeffs) + 1
        quo = [zero] * qlen
        lcinv = o.coeffs[-1].inverse()
        db = len(o.coeffs) - 1
        for k in range(qlen - 1, -1, -1):
            c = rem[k + db] * lcinv
            quo[k] = c
            if not c.is_zero():
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return (Poly(self.spec, quo, self.varname),
                Poly(self.spec, rem[:db], self.varname))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one(self.spec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"<Poly {render_poly(self)} over {self.spec}>"

    def evaluate(self, x: FieldElem) -> FieldElem:
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        if len(self.coeffs) <= 1:
            return Poly.zero(self.spec)
        out = []
        for k in range(1, len(self.coeffs)):
            out.append(self.spec.from_int(k) * self.coeffs[k])
        return Poly(self.spec, out, self.varname)


# ---------------------------------------------------------------------------
# Spec-level operation surface
# ---------------------------------------------------------------------------

def poly_arith(op: str, a: Poly, b: Poly):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown op {op!r}")


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def derivative(a: Poly) -> Poly:
    return a.derivative()


def insep_degree(f: Poly, check_irreducible: bool = False) -> int:
    """Inseparability degree q of a monic irreducible polynomial.

    q = 1 in characteristic 0; otherwise the largest power p^e dividing
    every exponent of the variable that occurs in f.  Writing f as a
    polynomial g in T^q, the factor g then has nonzero derivative.

    Irreducibility is a caller responsibility by default because the
    exhaustive check is exponential; pass check_irreducible=True to
    enforce it here.
    """
    if check_irreducible and not is_irreducible(f):
        from .errors import NotIrreducible
        raise NotIrreducible(f"{render_poly(f)} is reducible over {f.spec}")
    p = f.spec.characteristic()
    if p == 0:
        return 1
    exps = [k for k in range(1, len(f.coeffs)) if not f.coeffs[k].is_zero()]
    q = 1
    while all(e % (q * p) == 0 for e in exps):
        q *= p
    return q


# ---------------------------------------------------------------------------
# Irreducibility by bounded exhaustive trial division
# ---------------------------------------------------------------------------

DEFAULT_CANDIDATE_BUDGET = 10 ** 7


def is_irreducible(f: Poly, budget: int = DEFAULT_CANDIDATE_BUDGET) -> bool:
    """True iff the monic polynomial f is irreducible over its field.

    Exhaustive trial division; raises DegreeTooLarge when the candidate
    space exceeds `budget`.
    """
    d = f.degree()
    if d is None or d < 1 or not f.is_monic():
        raise ValueError("is_irreducible requires a monic polynomial of degree >= 1")
    if d == 1:
        return True
    kind = f.spec.kind
    if kind == PRIME_FIELD:
        return _irreducible_gfp(f, budget)
    if kind == RATIONAL_FUNCTIONS:
        return _irreducible_ratfunc(f, budget)
    return _irreducible_rationals(f, budget)


def _irreducible_gfp(f: Poly, budget: int) -> bool:
    p = f.spec.p
    d = f.degree()
    total = sum(p ** k for k in range(1, d // 2 + 1))
    if total > budget:
        raise DegreeTooLarge(f"{total} candidates exceed budget {budget}")
    spec = f.spec
    one = spec.one()
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = Poly(spec, [spec.from_int(c) for c in tail] + [one])
            if (f % g).is_zero():
                return False
    return True


def _irreducible_ratfunc(f: Poly, budget: int) -> bool:
    # Clear denominators to a primitive element of GF(p)[t][T], then trial
    # divide by primitive candidates g with deg_T g <= deg_T f / 2 and
    # deg_t g <= deg_t f; t-degrees of factors are bounded by the t-degree
    # of the product since t-degree is additive over an integral domain.
    spec = f.spec
    p = spec.p
    k = _backend.impl
    lcm = _ONE
    for c in f.coeffs:
        if len(c.den) > 1:
            g = k.gfp_gcd(p, lcm, c.den)
            lcm = k.gfp_mul(p, lcm, k.gfp_divmod(p, c.den, g)[0])
    tcoeffs = []
    for c in f.coeffs:
        scale = k.gfp_divmod(p, lcm, c.den)[0]
        tcoeffs.append(k.gfp_mul(p, c.num, scale))
    content = ()
    for tc in tcoeffs:
        if tc:
            content = k.gfp_gcd(p, content, tc) if content else tc
    if len(content) > 1:
        tcoeffs = [k.gfp_divmod(p, tc, content)[0] if tc else () for tc in tcoeffs]
    dT = len(tcoeffs) - 1
    dt = max(len(tc) for tc in tcoeffs) - 1
    npolys = p ** (dt + 1)
    total = sum(npolys ** (kk + 1) for kk in range(1, dT // 2 + 1))
    if total > budget:
        raise DegreeTooLarge(f"{total} candidates exceed budget {budget}")

    all_tpolys = [tuple(_trim_int(list(c)))
                  for c in itertools.product(range(p), repeat=dt + 1)]
    for kk in range(1, dT // 2 + 1):
        for coeffs in itertools.product(all_tpolys, repeat=kk + 1):
            lead = coeffs[-1]
            if not lead or lead[-1] != 1:
                continue  # normalize: leading t-coefficient monic
            content = ()
            for tc in coeffs:
                if tc:
                    content = k.gfp_gcd(p, content, tc) if content else tc
                if content == _ONE:
                    break
            if content != _ONE and len(content) != 1:
                continue  # not primitive
            g = Poly(spec, [RatFuncElem.make(spec, tc, _ONE) for tc in coeffs])
            if (f % g).is_zero():
                return False
    return True


def _trim_int(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divisors(n: int) -> list:
    n = abs(n)
    out = set()
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def _irreducible_rationals(f: Poly, budget: int) -> bool:
    # Clear to a primitive integer polynomial; candidate factors have
    # leading/constant coefficients dividing those of f and inner
    # coefficients within the standard 2^k * |f|_2 factor bound.
    denlcm = 1
    for c in f.coeffs:
        denlcm = denlcm * c.value.denominator // math.gcd(denlcm, c.value.denominator)
    ints = [int(c.value * denlcm) for c in f.coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    ints = [v // content for v in ints]
    d = len(ints) - 1
    if ints[0] == 0:
        return False  # divisible by T
    norm2 = math.isqrt(sum(v * v for v in ints)) + 1
    lead_divs = _divisors(ints[-1])
    const_divs = _divisors(ints[0])
    spec = f.spec
    for k in range(1, d // 2 + 1):
        bound = (2 ** k) * (norm2 + abs(ints[-1]))
        inner = 2 * bound + 1
        count = len(lead_divs) * len(const_divs) * 4 * inner ** max(0, k - 1)
        if count > budget:
            raise DegreeTooLarge(f"{count} candidates exceed budget {budget}")
        for lead in lead_divs:
            for const in const_divs:
                for sl in (1, -1):
                    for sc in (1, -1):
                        for mid in itertools.product(range(-bound, bound + 1),
                                                     repeat=k - 1):
                            cand = [sc * const, *mid, sl * lead]
                            g = Poly(spec, [spec.from_int(v) for v in cand])
                            if g.degree() == k and (f % g).is_zero():
                                return False
    return True


# ---------------------------------------------------------------------------
# Polynomial evaluation on endomorphisms
# ---------------------------------------------------------------------------

def eval_at_matrix(g: Poly, x):
    """g(x) for a square matrix x, by Horner evaluation."""
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols} matrix")
    ident = x.identity_like()
    acc = x.zeros_like()
    for c in reversed(g.coeffs):
        acc = acc @ x
        if not c.is_zero():
            acc = acc + ident.scale(c)
    return acc


# ---------------------------------------------------------------------------
# Text grammar: sums of terms `c*T^k`, `T^k`, `c`, with +/-, where c is a
# field-element literal, parenthesized when it contains operators.
# ---------------------------------------------------------------------------

def parse_poly_text(s: str, spec: FieldSpec, varname: str = "T") -> Poly:
    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = _split_signed_terms(s)
    coeffs: dict[int, FieldElem] = {}
    for sign, term in terms:
        if not term:
            raise ParseError(f"empty term in {s!r}")
        k, cstr = _split_term(term, varname)
        if cstr == "":
            c = spec.one()
        else:
            c = parse_element(_strip_parens(cstr), spec)
        if sign < 0:
            c = -c
        coeffs[k] = coeffs.get(k, spec.zero()) + c
    deg = max(coeffs) if coeffs else 0
    return Poly(spec, [coeffs.get(i, spec.zero()) for i in range(deg + 1)],
                varname)


def _split_signed_terms(s: str):
    terms = []
    sign = 1
    pos = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    depth = 0
    buf = []
    for ch in s[pos:]:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
        if ch in "+-" and depth == 0:
            terms.append((sign, "".join(buf)))
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    terms.append((sign, "".join(buf)))
    return terms


def _split_term(term: str, varname: str):
    """Return (exponent, coefficient-literal) of one signed term."""
    depth = 0
    vpos = -1
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == varname and depth == 0:
            if vpos >= 0:
                raise ParseError(f"more than one {varname} in term {term!r}")
            vpos = i
    if vpos < 0:
        return 0, term
    rest = term[vpos + 1:]
    if rest == "":
        k = 1
    elif rest.startswith("^") and rest[1:].isdigit():
        k = int(rest[1:])
    else:
        raise ParseError(f"bad exponent in term {term!r}")
    cstr = term[:vpos]
    if cstr.endswith("*"):
        cstr = cstr[:-1]
    elif cstr not in ("",):
        raise ParseError(f"missing '*' between coefficient and {varname} in {term!r}")
    return k, cstr


def render_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    var = f.varname
    rat = f.spec.kind == RATIONALS
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c.is_zero():
            continue
        neg = rat and c.value < 0
        cc = -c if neg else c
        text = render_element(cc)
        if k == 0:
            body = text
        else:
            tvar = var if k == 1 else f"{var}^{k}"
            if cc.is_one():
                body = tvar
            else:
                if any(ch in text for ch in "+-*/"):
                    text = f"({text})"
                body = f"{text}*{tvar}"
        parts.append(("-" if neg else "+", body))
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
