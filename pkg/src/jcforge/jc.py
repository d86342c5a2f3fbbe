"""Decomposition engine: binds exact linear algebra to the combinatorics.

Given a validated f-primary matrix this module computes its invariant
partition, decides whether commuting semisimple + nilpotent splittings
exist, lists the admissible types with their dimensions, constructs an
explicit witness per type, and emits the classification table.

Construction strategy: a splitting of type phi exists iff the input is
similar to the standard block matrix J built from phi, so a witness is
obtained by computing Frobenius normal forms of both sides and conjugating
the obvious splitting of J through the two change-of-basis matrices.
Semisimplicity of a candidate s is always checked as f(s) = 0 with the
given irreducible f, never through gcd with the derivative: the
derivative criterion breaks down exactly in the inseparable cases this
library exists for.
"""

import functools
import random
from dataclasses import dataclass

from .errors import (BudgetExceeded, DimensionMismatch, FieldMismatch,
                     InternalInconsistency, NoSuchType, NotDivisible,
                     NotIrreducible, NotPrimary, NotSquare)
from .fields import PRIME_FIELD, RATIONAL_FUNCTIONS, FieldSpec, RatFuncElem
from .linalg import (Mat, char_matrix, companion, frobenius_normal_form,
                     kernel_dim, mat_inverse, minimal_polynomial, rank,
                     smith_invariant_factors, solve_conjugation_space)
from .partitions import (DEFAULT_SUM_BOUND, Partition, enumerate_preimages,
                         jc_dimension, partitions_of, zeta_apply)
from .poly import Poly, eval_at_matrix, insep_degree, is_irreducible, render_poly


@dataclass(frozen=True)
class PrimaryEndo:
    """A validated f-primary matrix with its derived constants."""

    spec: FieldSpec
    f: Poly
    q: int
    x: Mat
    m: int
    power: int          # minimal polynomial is f**power
    minpoly: Poly

    def __repr__(self):
        return (f"<PrimaryEndo n={self.x.rows} f={render_poly(self.f)} "
                f"q={self.q} m={self.m}>")


@dataclass(frozen=True)
class JCDecomp:
    """A candidate pair (s, n) with its type."""

    s: Mat
    n: Mat
    type: Partition


@dataclass(frozen=True)
class ClassificationReport:
    inv: Partition
    exists: bool
    types: tuple        # ((Partition, dimension), ...) lexicographically decreasing


class VerifyResult:
    """Boolean with a diagnostic naming the first failed check."""

    __slots__ = ("ok", "diagnostic")

    def __init__(self, ok: bool, diagnostic: str | None = None):
        self.ok = ok
        self.diagnostic = diagnostic

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "<ok>" if self.ok else f"<failed: {self.diagnostic}>"


@functools.lru_cache(maxsize=None)
def _irreducible_cached(f: Poly) -> bool:
    return is_irreducible(f)


def validate_primary(spec: FieldSpec, f: Poly, x: Mat,
                     paranoid: bool = False) -> PrimaryEndo:
    """Check the standing hypotheses and package the instance.

    f must be monic irreducible over spec, deg f must divide the size of
    the square matrix x, and the minimal polynomial of x (the first
    invariant factor of the characteristic matrix) must be a power of f.
    """
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols}")
    if x.spec != spec or f.spec != spec:
        raise FieldMismatch("matrix, polynomial and field spec must agree")
    d = f.degree()
    if d is None or d < 1 or not f.is_monic():
        raise NotIrreducible("f must be monic of degree >= 1")
    if not _irreducible_cached(f):
        raise NotIrreducible(f"{render_poly(f)} is reducible over {spec}")
    n = x.rows
    if n == 0 or n % d:
        raise DimensionMismatch(f"deg f = {d} does not divide n = {n}")
    minpoly = minimal_polynomial(x)
    if paranoid:
        first = smith_invariant_factors(char_matrix(x))[0]
        if first != minpoly:
            raise InternalInconsistency(
                "Krylov minimal polynomial disagrees with the Smith route")
    dm = minpoly.degree()
    if dm % d:
        raise NotPrimary(
            f"minimal polynomial {render_poly(minpoly)} is not a power of f")
    k = dm // d
    if minpoly != f ** k:
        raise NotPrimary(
            f"minimal polynomial {render_poly(minpoly)} is not a power of f")
    m = n // d
    if not 1 <= k <= m:
        raise InternalInconsistency("minimal polynomial degree out of range")
    return PrimaryEndo(spec, f, insep_degree(f), x, m, k, minpoly)


def inv_of(e: PrimaryEndo, paranoid: bool = False) -> Partition:
    """Invariant partition via kernel dimensions of powers of f(x).

    With k_i = dim ker f(x)^i / deg f, the multiplicity of the part b is
    (k_b - k_{b-1}) - (k_{b+1} - k_b).  The paranoid flag cross-checks
    against the Smith normal form route and raises on any disagreement.
    """
    d = e.f.degree()
    fx = eval_at_matrix(e.f, e.x)
    ks = [0]
    g = fx
    while True:
        kd = kernel_dim(g)
        if kd % d:
            raise InternalInconsistency(
                f"kernel dimension {kd} not divisible by deg f = {d}")
        ki = kd // d
        ks.append(ki)
        if ki == e.m:
            break
        if len(ks) > e.m + 1:
            raise InternalInconsistency("kernel chain failed to stabilize")
        g = g @ fx
    maxb = len(ks) - 1
    ks.append(e.m)
    parts = []
    for b in range(maxb, 0, -1):
        mult = (ks[b] - ks[b - 1]) - (ks[b + 1] - ks[b])
        parts.extend([b] * mult)
    out = Partition(parts)
    if sum(out) != e.m:
        raise InternalInconsistency(f"partition {out} does not sum to m = {e.m}")
    if paranoid and out != _inv_via_smith(e):
        raise InternalInconsistency("kernel route and Smith route disagree")
    return out


def _inv_via_smith(e: PrimaryEndo) -> Partition:
    """Invariant partition by f-adic multiplicities of the invariant factors."""
    parts = []
    for factor in smith_invariant_factors(char_matrix(e.x)):
        k = 0
        g = factor
        while g.degree():
            g, r = divmod(g, e.f)
            if not r.is_zero():
                raise NotPrimary("invariant factor is not a power of f")
            k += 1
        parts.append(k)
    return Partition(sorted(parts, reverse=True))


def build_C(f: Poly, psi: Partition) -> Mat:
    """Block diagonal of companion matrices of f^(psi_i)."""
    psi = Partition(psi)
    if not psi:
        raise ValueError("psi must be nonempty")
    return Mat.block_diag([companion(f ** k) for k in psi])


def build_J(f: Poly, phi: Partition):
    """The standard split model for type phi.

    Returns (J, s0, n0): per part a, a superblock with deg f-sized
    companion blocks of f on the diagonal and identity blocks on the
    block superdiagonal; s0 collects the diagonal, n0 = J - s0.
    """
    phi = Partition(phi)
    if not phi:
        raise ValueError("phi must be nonempty")
    d = f.degree()
    spec = f.spec
    cf = companion(f)
    ident = Mat.identity(spec, d)
    zero = spec.zero()
    superblocks = []
    for a in phi:
        size = a * d
        grid = [[zero] * size for _ in range(size)]
        for b in range(a):
            for i in range(d):
                for j in range(d):
                    v = cf.entry(i, j)
                    if not v.is_zero():
                        grid[b * d + i][b * d + j] = v
            if b + 1 < a:
                for i in range(d):
                    grid[b * d + i][(b + 1) * d + i] = ident.entry(i, i)
        superblocks.append(Mat.from_rows(spec, grid))
    j = Mat.block_diag(superblocks)
    s0 = Mat.block_diag([cf] * sum(phi))
    return j, s0, j - s0


def typ_of(e: PrimaryEndo, s: Mat, n: Mat) -> Partition:
    """Type of a verified pair: the Jordan partition of n over the
    extension field L that s generates, read off rank(n^j) / deg f."""
    d = e.f.degree()
    m = e.m
    rs = [m]
    power = n
    j = 1
    while True:
        r = rank(power)
        if r % d:
            raise NotDivisible(
                f"rank(n^{j}) = {r} is not divisible by deg f = {d}")
        rj = r // d
        rs.append(rj)
        if rj == 0:
            break
        if j > m:
            raise NotDivisible("n is not nilpotent; verify the pair first")
        power = power @ n
        j += 1
    maxb = len(rs) - 1
    rs.append(0)
    parts = []
    for b in range(maxb, 0, -1):
        mult = rs[b - 1] - 2 * rs[b] + rs[b + 1]
        parts.extend([b] * mult)
    out = Partition(parts)
    if sum(out) != m:
        raise InternalInconsistency(f"type {out} does not sum to m = {m}")
    return out


def verify_decomp(e: PrimaryEndo, s: Mat, n: Mat) -> VerifyResult:
    """Check the defining identities; reports the first failure.

    f(s) = 0 with f irreducible forces the minimal polynomial of s to be
    exactly f, which is the semisimplicity required here.
    """
    if s.rows != s.cols or n.rows != n.cols or s.rows != e.x.rows or n.rows != e.x.rows:
        raise NotSquare("shapes do not match the validated matrix")
    if s.spec != e.spec or n.spec != e.spec:
        raise FieldMismatch("components over a different field")
    if s + n != e.x:
        return VerifyResult(False, "s + n = x")
    if s @ n != n @ s:
        return VerifyResult(False, "s*n = n*s")
    if not (n ** (e.m + 1)).is_zero():
        return VerifyResult(False, "n nilpotent")
    if not eval_at_matrix(e.f, s).is_zero():
        return VerifyResult(False, "f(s) = 0")
    return VerifyResult(True)


def admissible_types(e: PrimaryEndo, bound: int | None = None,
                     paranoid: bool = False) -> ClassificationReport:
    """Invariant partition, existence, and the full fiber with dimensions."""
    inv = inv_of(e, paranoid=paranoid)
    d = e.f.degree()
    fiber = enumerate_preimages(inv, e.q, bound)
    types = tuple((phi, jc_dimension(inv, phi, d)) for phi in fiber)
    return ClassificationReport(inv, bool(types), types)


@functools.lru_cache(maxsize=None)
def _j_model(f: Poly, phi: Partition):
    """Cached split model with its Frobenius data: (J, s0, n0, F_J, P_J^-1)."""
    j, s0, n0 = build_J(f, phi)
    fj, pj = frobenius_normal_form(j)
    return j, s0, n0, fj, mat_inverse(pj)


def decompose(e: PrimaryEndo, phi, paranoid: bool = False) -> JCDecomp:
    """An explicit decomposition of the requested type.

    Conjugates the obvious splitting of the standard model J through the
    Frobenius change-of-basis of both sides; NoSuchType when phi is not
    in the fiber over the invariant partition.
    """
    phi = Partition(phi)
    if sum(phi) != e.m or zeta_apply(phi, e.q) != inv_of(e):
        raise NoSuchType(f"no decomposition of type {phi}")
    _, s0, n0, fj, pj_inv = _j_model(e.f, phi)
    fx, px = frobenius_normal_form(e.x)
    if fx != fj:
        raise InternalInconsistency(
            "Frobenius forms disagree although the types match")
    q = px @ pj_inv
    qi = mat_inverse(q)
    s = q @ s0 @ qi
    n = q @ n0 @ qi
    result = JCDecomp(s, n, phi)
    check = verify_decomp(e, s, n)
    if not check:
        raise InternalInconsistency(f"constructed pair fails: {check.diagnostic}")
    if paranoid and typ_of(e, s, n) != phi:
        raise InternalInconsistency("constructed pair has the wrong type")
    return result


def _random_coeff(spec: FieldSpec, rng):
    if spec.kind == RATIONAL_FUNCTIONS:
        p = spec.p
        num = [rng.randrange(p) for _ in range(rng.randint(1, 3))]
        while num and num[-1] == 0:
            num.pop()
        return RatFuncElem(spec, tuple(num), (1,))
    if spec.kind == PRIME_FIELD:
        return spec.from_int(rng.randrange(spec.p))
    return spec.from_int(rng.randint(-3, 3))


def random_decomposition(e: PrimaryEndo, phi, seed: int) -> JCDecomp:
    """decompose() conjugated by a random invertible centralizer element.

    Deterministic per seed.  Over a perfect-field instance (q = 1) the
    output is seed-independent because the decomposition is unique."""
    base = decompose(e, phi)
    basis = solve_conjugation_space([e.x])
    rng = random.Random(seed)
    n = e.x.rows
    for _ in range(64):
        cand = Mat.zeros(e.spec, n, n)
        for b in basis:
            c = _random_coeff(e.spec, rng)
            if not c.is_zero():
                cand = cand + b.scale(c)
        if rank(cand) != n:
            continue
        ci = mat_inverse(cand)
        return JCDecomp(cand @ base.s @ ci, cand @ base.n @ ci, base.type)
    raise InternalInconsistency(
        "no invertible centralizer element found in 64 draws")


def classification_table(q: int, degf: int, m: int,
                         bound: int | None = None) -> list:
    """Rows (psi, [(phi, dim), ...]) over all psi in Part_m, canonical
    (lexicographically decreasing) order; purely combinatorial.

    One pass over Part_m groups every partition under its collapse image,
    which is the same exhaustion enumerate_preimages performs per fiber
    but amortized across the whole table."""
    if q < 1 or degf < 1 or m < 1:
        raise ValueError("q, degf and m must be positive")
    limit = DEFAULT_SUM_BOUND if bound is None else bound
    if m > limit:
        raise BudgetExceeded(f"partition sum {m} exceeds the bound {limit}")
    everything = list(partitions_of(m))
    fibers: dict = {}
    for phi in everything:
        fibers.setdefault(zeta_apply(phi, q), []).append(phi)
    rows = []
    for psi in everything:
        fiber = fibers.get(psi, [])
        rows.append((psi, [(phi, jc_dimension(psi, phi, degf)) for phi in fiber]))
    return rows
