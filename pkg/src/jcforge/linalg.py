"""Exact dense linear algebra over a field.

Matrices are immutable, row-major, with all entries in one FieldSpec.
Elimination-style operations (rank, kernel, inverse, commutant) dispatch
to the kernel backend for GF(p) and GF(p)(t); everything else, and the Q
case, runs generically over FieldElem arithmetic.

The two canonical-form engines the classification rests on live here:

* frobenius_normal_form: cyclic decomposition by the Krylov spanning
  method with deterministic pivot order (lowest index first).  The block
  polynomials form a descending divisor chain, the first block being the
  minimal polynomial.
* smith_invariant_factors: Euclidean elimination over K[T] with
  degree-minimal pivot selection, monic normalization at the end, and the
  same descending order.  The two engines are algorithmically independent
  so they can cross-check each other.
"""

from . import _backend
from .errors import (FieldMismatch, InternalInconsistency, NotSquare,
                     ParseError, RaggedRows, Singular, SingularInput)
from .fields import (PRIME_FIELD, RATIONAL_FUNCTIONS, FieldElem, FieldSpec,
                     PrimeElem, RatFuncElem, parse_element, render_element)
from .poly import Poly, gcd as poly_gcd, render_poly


class Mat:
    """Immutable dense matrix over a field."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "Mat":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(spec, 0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise RaggedRows("rows of differing lengths")
        flat = [e for r in rows for e in r]
        for e in flat:
            if e.spec != spec:
                raise FieldMismatch(f"entry over {e.spec}, matrix over {spec}")
        return cls(spec, len(rows), ncols, flat)

    @classmethod
    def from_ints(cls, spec: FieldSpec, rows) -> "Mat":
        return cls.from_rows(spec, [[spec.from_int(v) for v in r] for r in rows])

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "Mat":
        z = spec.zero()
        return cls(spec, rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Mat":
        z, o = spec.zero(), spec.one()
        return cls(spec, n, n, tuple(o if i == j else z
                                     for i in range(n) for j in range(n)))

    @classmethod
    def block_diag(cls, blocks) -> "Mat":
        blocks = list(blocks)
        spec = blocks[0].spec
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = spec.zero()
        grid = [[z] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                row = grid[r0 + i]
                for j in range(b.cols):
                    row[c0 + j] = b.entry(i, j)
            r0 += b.rows
            c0 += b.cols
        return cls(spec, n, m, [e for row in grid for e in row])

    def entry(self, i: int, j: int) -> FieldElem:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_lists(self) -> list:
        return [self.row_list(i) for i in range(self.rows)]

    def to_lists_raw(self) -> list:
        return [[e.value for e in self.row_list(i)] for i in range(self.rows)]

    def zeros_like(self) -> "Mat":
        return Mat.zeros(self.spec, self.rows, self.cols)

    def identity_like(self) -> "Mat":
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols}")
        return Mat.identity(self.spec, self.rows)

    def transpose(self) -> "Mat":
        return Mat(self.spec, self.cols, self.rows,
                   tuple(self.entries[j * self.cols + i]
                         for i in range(self.cols) for j in range(self.rows)))

    def scale(self, c: FieldElem) -> "Mat":
        return Mat(self.spec, self.rows, self.cols,
                   tuple(e * c for e in self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def _shape_check(self, other, same=True):
        if not isinstance(other, Mat):
            return None
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        if same and (other.rows != self.rows or other.cols != self.cols):
            raise ValueError("matrix shapes differ")
        return other

    def __add__(self, other):
        o = self._shape_check(other)
        if o is None:
            return NotImplemented
        return Mat(self.spec, self.rows, self.cols,
                   tuple(a + b for a, b in zip(self.entries, o.entries)))

    def __sub__(self, other):
        o = self._shape_check(other)
        if o is None:
            return NotImplemented
        return Mat(self.spec, self.rows, self.cols,
                   tuple(a - b for a, b in zip(self.entries, o.entries)))

    def __neg__(self):
        return Mat(self.spec, self.rows, self.cols,
                   tuple(-a for a in self.entries))

    def __matmul__(self, other):
        o = self._shape_check(other, same=False)
        if o is None:
            return NotImplemented
        if self.cols != o.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by "
                             f"{o.rows}x{o.cols}")
        n, k, m = self.rows, self.cols, o.cols
        a, b = self.entries, o.entries
        zero = self.spec.zero()
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                acc = zero
                for l in range(k):
                    e = arow[l]
                    if not e.is_zero():
                        acc = acc + e * b[l * m + j]
                out.append(acc)
        return Mat(self.spec, n, m, out)

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols}")
        if k < 0:
            raise ValueError("negative matrix power")
        out = self.identity_like()
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.spec == other.spec
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.spec, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"<Mat {self.rows}x{self.cols} over {self.spec}>"

    def __str__(self):
        return render_matrix(self)


# ---------------------------------------------------------------------------
# Elimination with backend dispatch
# ---------------------------------------------------------------------------

def _rref_elems(rows, spec):
    """RREF of a list-of-lists of FieldElem.  Returns (rows, pivot_cols)."""
    if not rows or not rows[0]:
        return [list(r) for r in rows], []
    impl = _backend.impl
    if spec.kind == PRIME_FIELD:
        raw, piv = impl.pmat_rref(spec.p, [[e.value for e in r] for r in rows])
        return [[PrimeElem(spec, v) for v in r] for r in raw], piv
    if spec.kind == RATIONAL_FUNCTIONS:
        nrows, ncols = len(rows), len(rows[0])
        flat = [(e.num, e.den) for r in rows for e in r]
        out, piv = impl.rfmat_rref(spec.p, nrows, ncols, flat)
        elems = [RatFuncElem(spec, n, d) for (n, d) in out]
        return [elems[i * ncols:(i + 1) * ncols] for i in range(nrows)], piv
    return _rref_generic(rows, spec)


def _rref_generic(rows, spec):
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [e * inv for e in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Mat) -> int:
    """Exact rank by fraction-free or pivoted Gaussian elimination."""
    if a.rows == 0 or a.cols == 0:
        return 0
    impl = _backend.impl
    if a.spec.kind == RATIONAL_FUNCTIONS:
        flat = [(e.num, e.den) for e in a.entries]
        return impl.rfmat_rank(a.spec.p, a.rows, a.cols, flat)
    if a.spec.kind == PRIME_FIELD:
        return len(impl.pmat_rref(a.spec.p, a.to_lists_raw())[1])
    return len(_rref_generic(a.to_lists(), a.spec)[1])


def kernel_dim(a: Mat) -> int:
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    return a.cols - rank(a)


def kernel_basis(a: Mat) -> list:
    """Basis of {v : a v = 0} as column vectors (lists of FieldElem)."""
    rref, piv = _rref_elems(a.to_lists(), a.spec)
    zero, one = a.spec.zero(), a.spec.one()
    pivset = set(piv)
    basis = []
    for j in range(a.cols):
        if j in pivset:
            continue
        v = [zero] * a.cols
        v[j] = one
        for r, pc in enumerate(piv):
            v[pc] = -rref[r][j]
        basis.append(v)
    return basis


def mat_inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    n = a.rows
    ident = Mat.identity(a.spec, n)
    aug = [a.row_list(i) + ident.row_list(i) for i in range(n)]
    rref, piv = _rref_elems(aug, a.spec)
    if piv != list(range(n)):
        raise Singular("matrix is not invertible")
    return Mat(a.spec, n, n, [rref[i][n + j] for i in range(n) for j in range(n)])


# ---------------------------------------------------------------------------
# Centralizer computations
# ---------------------------------------------------------------------------

def _entry_size(e) -> int:
    if isinstance(e, RatFuncElem):
        return len(e.num) + len(e.den)
    return 1


def _recombine_pair(gens):
    """For two generators, swap in their sum when it is smaller.

    The joint commutant depends only on the span of the generators, and
    any two of {g1, g2, g1 + g2} span the same space, so the two with the
    smallest entries give an equivalent but cheaper system (a decomposed
    pair (s, n) has bulky entries while s + n is the original matrix)."""
    if len(gens) != 2 or gens[0].spec.kind != RATIONAL_FUNCTIONS:
        return gens
    g1, g2 = gens
    g3 = g1 + g2
    scored = sorted(
        (sum(_entry_size(e) for e in g.entries), i, g)
        for i, g in enumerate((g1, g2, g3)))
    return [scored[0][2], scored[1][2]]


def _commutation_system(gens) -> Mat:
    """Linear system in the n^2 unknowns X_ij expressing X g = g X for all g."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    spec = gens[0].spec
    n = gens[0].rows
    for g in gens:
        if g.rows != g.cols:
            raise NotSquare(f"{g.rows}x{g.cols}")
        if g.spec != spec:
            raise FieldMismatch(f"{g.spec} vs {spec}")
        if g.rows != n:
            raise ValueError("generators of differing sizes")
    gens = _recombine_pair(gens)
    zero = spec.zero()
    rows = []
    for g in gens:
        ge = g.entries
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                # (X g)_ij - (g X)_ij = sum_k X_ik g_kj - g_ik X_kj
                for k in range(n):
                    c = ge[k * n + j]
                    if not c.is_zero():
                        row[i * n + k] = row[i * n + k] + c
                for k in range(n):
                    c = ge[i * n + k]
                    if not c.is_zero():
                        row[k * n + j] = row[k * n + j] - c
                rows.append(row)
    return Mat(spec, len(rows), n * n, [e for r in rows for e in r])


def solve_conjugation_space(gens) -> list:
    """Basis of the joint centralizer {X : X g = g X for all g in gens}."""
    gens = list(gens)
    system = _commutation_system(gens)
    n = gens[0].rows
    spec = gens[0].spec
    return [Mat(spec, n, n, v) for v in kernel_basis(system)]


def commutant_dim(gens) -> int:
    """Dimension of the joint centralizer (length of its basis)."""
    gens = list(gens)
    system = _commutation_system(gens)
    n = gens[0].rows
    return n * n - rank(system)


# ---------------------------------------------------------------------------
# Frobenius normal form by Krylov cyclic decomposition
# ---------------------------------------------------------------------------

class _Echelon:
    """Incremental reduced echelon basis with combination tracking.

    Stored rows are mutually reduced: each has a 1 at its pivot (the
    lowest nonzero index at insertion time) and zeros at every other
    stored pivot.  Each row remembers its expression in terms of the
    vectors added so far, so a dependent vector can be rewritten exactly
    as a combination of the previous ones.
    """

    def __init__(self, spec: FieldSpec, dim: int):
        self.spec = spec
        self.dim = dim
        self.rows = []          # [vec, combo, pivot_index]
        self.count = 0          # number of added vectors

    def reduce(self, vec):
        v = list(vec)
        combo = [self.spec.zero()] * self.count
        for rv, rc, piv in self.rows:
            f = v[piv]
            if f.is_zero():
                continue
            for j in range(piv, self.dim):
                if not rv[j].is_zero():
                    v[j] = v[j] - f * rv[j]
            for j, c in enumerate(rc):
                if not c.is_zero():
                    combo[j] = combo[j] + f * c
        return v, combo

    def add(self, vec):
        """Add a vector; returns (independent?, combo-if-dependent)."""
        v, combo = self.reduce(vec)
        piv = next((j for j in range(self.dim) if not v[j].is_zero()), None)
        idx = self.count
        self.count += 1
        if piv is None:
            return False, combo
        inv = v[piv].inverse()
        v = [e * inv for e in v]
        newc = [-c * inv for c in combo] + [inv]
        zero = self.spec.zero()
        for rv, rc, _ in self.rows:
            f = rv[piv]
            if f.is_zero():
                continue
            for j in range(piv, self.dim):
                if not v[j].is_zero():
                    rv[j] = rv[j] - f * v[j]
            if len(rc) < idx + 1:
                rc.extend([zero] * (idx + 1 - len(rc)))
            for j, c in enumerate(newc):
                if not c.is_zero():
                    rc[j] = rc[j] - f * c
        self.rows.append([v, newc, piv])
        return True, None

    def pivot_cols(self):
        return sorted(p for _, _, p in self.rows)


def _matvec(rows, v, spec):
    zero = spec.zero()
    out = []
    for row in rows:
        acc = zero
        for a, b in zip(row, v):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


def _poly_on_vector(rows, g: Poly, w, spec):
    """g(x) w by Horner, x given by row lists."""
    acc = [spec.zero()] * len(w)
    for c in reversed(g.coeffs):
        acc = _matvec(rows, acc, spec)
        if not c.is_zero():
            acc = [a + c * b for a, b in zip(acc, w)]
    return acc


def _vector_order(rows, u, spec, varname="T"):
    """Monic generator of {g : g(x) u = 0}."""
    n = len(u)
    ech = _Echelon(spec, n)
    s = list(u)
    while True:
        indep, combo = ech.add(s)
        if not indep:
            coeffs = [-c for c in combo] + [spec.one()]
            return Poly(spec, coeffs, varname)
        s = _matvec(rows, s, spec)


def _coprime_part(a: Poly, b: Poly) -> Poly:
    """Largest divisor of a coprime to b."""
    g = poly_gcd(a, b)
    while g.degree():
        a = a // g
        g = poly_gcd(a, g)
    return a.monic()


def _lcm_split(a: Poly, b: Poly):
    """(a1, b1) with a1 | a, b1 | b, gcd(a1, b1) = 1 and a1 b1 = lcm(a, b)."""
    g = poly_gcd(a, b)
    a0, b0 = (a // g).monic(), (b // g).monic()
    ga = _coprime_part(g, b0)
    return (a0 * ga).monic(), (b0 * (g // ga)).monic()


def _maximal_vector(rows, n, spec, varname="T"):
    """A vector whose order is the minimal polynomial, plus that polynomial."""
    one = spec.one()
    zero = spec.zero()
    v = None
    mu = Poly(spec, (one,), varname)
    for i in range(n):
        e = [zero] * n
        e[i] = one
        if v is not None and mu.degree() == n:
            break
        ordi = _vector_order(rows, e, spec, varname)
        if v is None:
            v, mu = e, ordi
            continue
        if (ordi % mu).is_zero():
            v, mu = e, ordi
            continue
        if (mu % ordi).is_zero():
            continue
        a1, b1 = _lcm_split(mu, ordi)
        va = _poly_on_vector(rows, mu // a1, v, spec)
        vb = _poly_on_vector(rows, ordi // b1, e, spec)
        v = [x + y for x, y in zip(va, vb)]
        mu = (a1 * b1).monic()
    return v, mu


def _cyclic_blocks(rows, n, spec, varname="T"):
    """Cyclic decomposition: [(d_i, generator)] with descending divisibility."""
    if n == 0:
        return []
    v, mu = _maximal_vector(rows, n, spec, varname)
    d = mu.degree()
    chain = [list(v)]
    for _ in range(d - 1):
        chain.append(_matvec(rows, chain[-1], spec))
    ech = _Echelon(spec, n)
    for w in chain:
        indep, _ = ech.add(w)
        if not indep:
            raise InternalInconsistency("Krylov chain shorter than the order")
    pivset = set(ech.pivot_cols())
    free = [j for j in range(n) if j not in pivset]
    zero = spec.zero()
    # induced action on the quotient along the free coordinates
    qn = len(free)
    qrows = [[zero] * qn for _ in range(qn)]
    for cj, j in enumerate(free):
        col = [rows[i][j] for i in range(n)]
        red, _ = ech.reduce(col)
        for ci, i in enumerate(free):
            qrows[ci][cj] = red[i]
    sub = _cyclic_blocks(qrows, qn, spec, varname)
    blocks = [(mu, v)]
    for dq, wq in sub:
        wlift = [zero] * n
        for ci, i in enumerate(free):
            wlift[i] = wq[ci]
        u = _poly_on_vector(rows, dq, wlift, spec)
        red, combo = ech.reduce(u)
        if any(not c.is_zero() for c in red):
            raise InternalInconsistency("lift did not land in the cyclic span")
        rpoly = Poly(spec, combo, varname)
        h, rem = divmod(rpoly, dq)
        if not rem.is_zero():
            raise InternalInconsistency("cyclic generator lift is not divisible")
        hv = _poly_on_vector(rows, h, v, spec)
        w = [a - b for a, b in zip(wlift, hv)]
        blocks.append((dq, w))
    return blocks


def companion(f: Poly) -> Mat:
    """Companion matrix: multiplication by the variable on K[T]/f."""
    if not f.is_monic() or not f.degree():
        raise ValueError("companion matrix needs a monic nonconstant polynomial")
    d = f.degree()
    spec = f.spec
    zero, one = spec.zero(), spec.one()
    grid = [[zero] * d for _ in range(d)]
    for k in range(d - 1):
        grid[k + 1][k] = one
    for k in range(d):
        grid[k][d - 1] = -f.coeff(k)
    return Mat.from_rows(spec, grid)


def minimal_polynomial(x: Mat, varname: str = "T") -> Poly:
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols}")
    _, mu = _maximal_vector(x.to_lists(), x.rows, x.spec, varname)
    return mu


def frobenius_normal_form(x: Mat):
    """(F, P) with P invertible, P^-1 x P = F, F block-diagonal of
    companion matrices of a descending divisor chain (first block is the
    minimal polynomial).  F is unique; P is one valid witness."""
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols}")
    n = x.rows
    spec = x.spec
    rows = x.to_lists()
    blocks = _cyclic_blocks(rows, n, spec)
    for (da, _), (db, _) in zip(blocks, blocks[1:]):
        if not (da % db).is_zero():
            raise InternalInconsistency("invariant factors not a divisor chain")
    cols = []
    for d, v in blocks:
        w = list(v)
        for _ in range(d.degree()):
            cols.append(w)
            w = _matvec(rows, w, spec)
    p = Mat(spec, n, n, [cols[j][i] for i in range(n) for j in range(n)])
    f = Mat.block_diag([companion(d) for d, _ in blocks])
    return f, p


def invariant_factors_of(x: Mat) -> list:
    """Descending divisor chain of x (via the Frobenius engine)."""
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols}")
    return [d for d, _ in _cyclic_blocks(x.to_lists(), x.rows, x.spec)]


# ---------------------------------------------------------------------------
# Smith normal form over K[T]
# ---------------------------------------------------------------------------

class PolyMat:
    """Square matrix with Poly entries over one coefficient field."""

    __slots__ = ("spec", "n", "entries")

    def __init__(self, spec: FieldSpec, n: int, entries):
        entries = tuple(entries)
        if len(entries) != n * n:
            raise ValueError(f"need {n * n} entries")
        for e in entries:
            if e.spec != spec:
                raise FieldMismatch("mixed coefficient fields")
        self.spec = spec
        self.n = n
        self.entries = entries

    def entry(self, i, j):
        return self.entries[i * self.n + j]

    def to_lists(self):
        return [list(self.entries[i * self.n:(i + 1) * self.n])
                for i in range(self.n)]

    def __repr__(self):
        return f"<PolyMat {self.n}x{self.n} over {self.spec}[T]>"


def char_matrix(x: Mat, varname: str = "T") -> PolyMat:
    """T I - x over K[T]."""
    if x.rows != x.cols:
        raise NotSquare(f"{x.rows}x{x.cols}")
    spec = x.spec
    tvar = Poly.variable(spec, varname)
    entries = []
    for i in range(x.rows):
        for j in range(x.cols):
            e = Poly.constant(-x.entry(i, j))
            e.varname = varname
            entries.append(tvar + e if i == j else e)
    return PolyMat(spec, x.rows, entries)


def smith_invariant_factors(pm: PolyMat) -> list:
    """Nontrivial invariant factors (degree >= 1), monic, in descending
    divisibility order.  Raises SingularInput if the determinant is 0."""
    n = pm.n
    m = pm.to_lists()
    diag = []
    for k in range(n):
        while True:
            # degree-minimal pivot over the trailing submatrix
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    e = m[i][j]
                    if not e.is_zero():
                        d = e.degree()
                        if best is None or d < best[0]:
                            best = (d, i, j)
            if best is None:
                raise SingularInput("zero block; determinant is 0")
            _, bi, bj = best
            if bi != k:
                m[k], m[bi] = m[bi], m[k]
            if bj != k:
                for row in m:
                    row[k], row[bj] = row[bj], row[k]
            piv = m[k][k]
            dirty = False
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    q = m[i][k] // piv
                    if not q.is_zero():
                        m[i] = [a - q * b for a, b in zip(m[i], m[k])]
                    if not m[i][k].is_zero():
                        dirty = True
            for j in range(k + 1, n):
                if not m[k][j].is_zero():
                    q = m[k][j] // piv
                    if not q.is_zero():
                        for i in range(k, n):
                            m[i][j] = m[i][j] - m[i][k] * q
                    if not m[k][j].is_zero():
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            culprit = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not (m[i][j] % piv).is_zero():
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            m[k] = [a + b for a, b in zip(m[k], m[culprit])]
        diag.append(m[k][k].monic())
    factors = [d for d in diag if d.degree() and d.degree() >= 1]
    factors.reverse()
    return factors


# ---------------------------------------------------------------------------
# Matrix text format: [[e, e, ...], [...]] with entries in the field grammar
# ---------------------------------------------------------------------------

def _split_top_level(s: str, sep: str = ","):
    parts = []
    depth = 0
    buf = []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {s!r}")
        if ch == sep and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {s!r}")
    parts.append("".join(buf))
    return parts


def parse_matrix_text(s: str, spec: FieldSpec) -> Mat:
    s = s.strip().replace(" ", "")
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("matrix literal must be bracketed")
    body = s[1:-1]
    if not body:
        return Mat(spec, 0, 0, ())
    rows = []
    for rtext in _split_top_level(body):
        rtext = rtext.strip()
        if not (rtext.startswith("[") and rtext.endswith("]")):
            raise ParseError(f"matrix row {rtext!r} must be bracketed")
        inner = rtext[1:-1]
        if not inner:
            raise ParseError("empty matrix row")
        rows.append([parse_element(e, spec) for e in _split_top_level(inner)])
    if len({len(r) for r in rows}) > 1:
        raise RaggedRows("rows of differing lengths")
    return Mat.from_rows(spec, rows)


def render_matrix(m: Mat) -> str:
    rows = []
    for i in range(m.rows):
        rows.append("[" + ",".join(render_element(e) for e in m.row_list(i)) + "]")
    return "[" + ",".join(rows) + "]"
