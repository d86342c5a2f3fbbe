# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: GF(p)[t] polynomial primitives and dense elimination
over GF(p) and GF(p)(t).

Drop-in twin of jcforge._purekernels (same functions, same data
conventions); jcforge._backend picks this module when the build produced
it.  Coefficients live in C int16 buffers; residue products go through a
lookup table so the hot loops contain no division.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

from .errors import DivisionByZero

IS_COMPILED = True

ctypedef short coef_t

# Multiplication-mod-p lookup for residues; p <= 17 so a 32x32 grid covers
# all operand pairs.  Refreshed at every public entry point; kernel calls
# never interleave (GIL held, no callbacks mid-computation).
cdef int MM[1024]
cdef int INV[32]
cdef int CURP = 0


cdef void set_modulus(int p) noexcept:
    global CURP
    cdef int i, j
    if CURP == p:
        return
    for i in range(p):
        for j in range(p):
            MM[(i << 5) | j] = (i * j) % p
    INV[0] = 0
    for i in range(1, p):
        for j in range(1, p):
            if (i * j) % p == 1:
                INV[i] = j
                break
    CURP = p


cdef struct PB:
    coef_t* c
    int n
    int cap


cdef inline void pb_init(PB* a) noexcept:
    a.c = NULL
    a.n = 0
    a.cap = 0


cdef int pb_reserve(PB* a, int cap) except -1:
    cdef coef_t* nc
    if cap < 1:
        cap = 1
    if a.cap < cap:
        nc = <coef_t*>realloc(a.c, cap * sizeof(coef_t))
        if nc == NULL:
            raise MemoryError()
        a.c = nc
        a.cap = cap
    return 0


cdef inline void pb_free(PB* a) noexcept:
    if a.c != NULL:
        free(a.c)
        a.c = NULL
    a.n = 0
    a.cap = 0


cdef inline void pb_trim(PB* a) noexcept:
    while a.n and a.c[a.n - 1] == 0:
        a.n -= 1


cdef int pb_set(PB* a, PB* b) except -1:
    pb_reserve(a, b.n)
    if b.n:
        memcpy(a.c, b.c, b.n * sizeof(coef_t))
    a.n = b.n
    return 0


cdef int pb_set_one(PB* a) except -1:
    pb_reserve(a, 1)
    a.c[0] = 1
    a.n = 1
    return 0


cdef int pb_from_obj(PB* a, obj) except -1:
    cdef int n = len(obj)
    cdef int i
    pb_reserve(a, n)
    for i in range(n):
        a.c[i] = obj[i]
    a.n = n
    pb_trim(a)
    return 0


cdef tuple pb_to_obj(PB* a):
    cdef int i
    return tuple([a.c[i] for i in range(a.n)])


cdef inline bint pb_is_one(PB* a) noexcept:
    return a.n == 1 and a.c[0] == 1


cdef void pb_scale(PB* a, int s) noexcept:
    cdef int i, base
    if s == 1:
        return
    base = s << 5
    for i in range(a.n):
        a.c[i] = <coef_t>MM[base | a.c[i]]


cdef int pb_mul(PB* out, PB* a, PB* b, int p) except -1:
    """out = a * b; out must not alias a or b."""
    cdef int i, k, lo, hi, n, acc
    if a.n == 0 or b.n == 0:
        out.n = 0
        return 0
    n = a.n + b.n - 1
    pb_reserve(out, n)
    for k in range(n):
        acc = 0
        lo = k - b.n + 1
        if lo < 0:
            lo = 0
        hi = k if k < a.n - 1 else a.n - 1
        for i in range(lo, hi + 1):
            acc += a.c[i] * b.c[k - i]
        out.c[k] = <coef_t>(acc % p)
    out.n = n
    return 0


cdef int pb_sub_into(PB* a, PB* b, int p) except -1:
    """a -= b."""
    cdef int i, v
    if b.n > a.n:
        pb_reserve(a, b.n)
        memset(a.c + a.n, 0, (b.n - a.n) * sizeof(coef_t))
        a.n = b.n
    for i in range(b.n):
        v = a.c[i] - b.c[i]
        if v < 0:
            v += p
        a.c[i] = <coef_t>v
    pb_trim(a)
    return 0


cdef int pb_add_into(PB* a, PB* b, int p) except -1:
    """a += b."""
    cdef int i, v
    if b.n > a.n:
        pb_reserve(a, b.n)
        memset(a.c + a.n, 0, (b.n - a.n) * sizeof(coef_t))
        a.n = b.n
    for i in range(b.n):
        v = a.c[i] + b.c[i]
        if v >= p:
            v -= p
        a.c[i] = <coef_t>v
    pb_trim(a)
    return 0


cdef int pb_divmod(PB* q, PB* r, PB* a, PB* b, int p) except -1:
    """q = a // b, r = a % b.  q and r must be distinct from a and b."""
    cdef int qn, binv, db, top, k, c, j, v, base
    if b.n == 0:
        raise DivisionByZero("polynomial division by zero")
    pb_set(r, a)
    qn = a.n - b.n + 1
    if qn <= 0:
        q.n = 0
        return 0
    pb_reserve(q, qn)
    memset(q.c, 0, qn * sizeof(coef_t))
    q.n = qn
    binv = INV[b.c[b.n - 1]]
    db = b.n - 1
    top = r.n
    while True:
        while top and r.c[top - 1] == 0:
            top -= 1
        if top <= db:
            break
        k = top - 1 - db
        c = MM[(r.c[top - 1] << 5) | binv]
        q.c[k] = <coef_t>c
        if c:
            base = c << 5
            for j in range(db + 1):
                v = r.c[k + j] - MM[base | b.c[j]]
                if v < 0:
                    v += p
                r.c[k + j] = <coef_t>v
        top -= 1
    r.n = top
    pb_trim(r)
    pb_trim(q)
    return 0


cdef int pb_mod_into(PB* r, PB* b, int p) except -1:
    """r = r mod b, in place; b nonzero."""
    cdef int binv = INV[b.c[b.n - 1]]
    cdef int db = b.n - 1
    cdef int top = r.n
    cdef int k, c, j, v, base
    while True:
        while top and r.c[top - 1] == 0:
            top -= 1
        if top <= db:
            break
        k = top - 1 - db
        c = MM[(r.c[top - 1] << 5) | binv]
        if c:
            base = c << 5
            for j in range(db):
                v = r.c[k + j] - MM[base | b.c[j]]
                if v < 0:
                    v += p
                r.c[k + j] = <coef_t>v
        r.c[top - 1] = 0
        top -= 1
    r.n = top
    pb_trim(r)
    return 0


cdef int pb_gcd(PB* out, PB* a, PB* b, int p, PB* s1, PB* s2) except -1:
    """out = monic gcd(a, b); scratches s1, s2 distinct from out, a, b."""
    pb_set(s1, a)
    pb_set(s2, b)
    cdef PB* x = s1
    cdef PB* y = s2
    cdef PB* tmp
    while y.n:
        pb_mod_into(x, y, p)
        tmp = x
        x = y
        y = tmp
    pb_set(out, x)
    if out.n and out.c[out.n - 1] != 1:
        pb_scale(out, INV[out.c[out.n - 1]])
    return 0


# ---------------------------------------------------------------------------
# Scalar wrappers (tuples in / tuples out)
# ---------------------------------------------------------------------------

cdef class _Scratch:
    """Module-level workspace so the scalar wrappers avoid repeated mallocs."""
    cdef PB a, b, q, r, s1, s2

    def __cinit__(self):
        pb_init(&self.a)
        pb_init(&self.b)
        pb_init(&self.q)
        pb_init(&self.r)
        pb_init(&self.s1)
        pb_init(&self.s2)

    def __dealloc__(self):
        pb_free(&self.a)
        pb_free(&self.b)
        pb_free(&self.q)
        pb_free(&self.r)
        pb_free(&self.s1)
        pb_free(&self.s2)


cdef _Scratch _scratch = _Scratch()


def gfp_add(int p, a, b):
    cdef _Scratch w = _scratch
    set_modulus(p)
    pb_from_obj(&w.a, a)
    pb_from_obj(&w.b, b)
    pb_add_into(&w.a, &w.b, p)
    return pb_to_obj(&w.a)


def gfp_sub(int p, a, b):
    cdef _Scratch w = _scratch
    set_modulus(p)
    pb_from_obj(&w.a, a)
    pb_from_obj(&w.b, b)
    pb_sub_into(&w.a, &w.b, p)
    return pb_to_obj(&w.a)


def gfp_mul(int p, a, b):
    cdef _Scratch w = _scratch
    set_modulus(p)
    pb_from_obj(&w.a, a)
    pb_from_obj(&w.b, b)
    pb_mul(&w.q, &w.a, &w.b, p)
    return pb_to_obj(&w.q)


def gfp_divmod(int p, a, b):
    cdef _Scratch w = _scratch
    set_modulus(p)
    pb_from_obj(&w.a, a)
    pb_from_obj(&w.b, b)
    pb_divmod(&w.q, &w.r, &w.a, &w.b, p)
    return pb_to_obj(&w.q), pb_to_obj(&w.r)


def gfp_gcd(int p, a, b):
    cdef _Scratch w = _scratch
    set_modulus(p)
    pb_from_obj(&w.a, a)
    pb_from_obj(&w.b, b)
    pb_gcd(&w.q, &w.a, &w.b, p, &w.s1, &w.s2)
    return pb_to_obj(&w.q)


# ---------------------------------------------------------------------------
# GF(p) dense matrices
# ---------------------------------------------------------------------------

def pmat_rref(int p, rows):
    cdef int nrows = len(rows)
    cdef int ncols = len(rows[0]) if nrows else 0
    cdef int i, j, c, r, pr, inv, f, v, base
    if nrows == 0 or ncols == 0:
        return [list(rw) for rw in rows], []
    set_modulus(p)
    cdef coef_t* m = <coef_t*>malloc(nrows * ncols * sizeof(coef_t))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = <coef_t>(row[j] % p)
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = -1
            for i in range(r, nrows):
                if m[i * ncols + c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    m[r * ncols + j], m[pr * ncols + j] = \
                        m[pr * ncols + j], m[r * ncols + j]
            inv = INV[m[r * ncols + c]]
            if inv != 1:
                base = inv << 5
                for j in range(c, ncols):
                    m[r * ncols + j] = <coef_t>MM[base | m[r * ncols + j]]
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f:
                        base = f << 5
                        for j in range(c, ncols):
                            v = m[i * ncols + j] - MM[base | m[r * ncols + j]]
                            if v < 0:
                                v += p
                            m[i * ncols + j] = <coef_t>v
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
        return out, pivots
    finally:
        free(m)


# ---------------------------------------------------------------------------
# GF(p)(t) dense matrices
# ---------------------------------------------------------------------------

cdef PB* grid_alloc(int count) except NULL:
    cdef PB* g = <PB*>malloc(count * sizeof(PB))
    cdef int i
    if g == NULL:
        raise MemoryError()
    for i in range(count):
        pb_init(&g[i])
    return g


cdef void grid_free(PB* g, int count) noexcept:
    cdef int i
    if g == NULL:
        return
    for i in range(count):
        pb_free(&g[i])
    free(g)


cdef int load_cleared(PB* num, int p, int nrows, int ncols, list entries,
                      PB* s1, PB* s2, PB* s3, PB* s4, PB* s5) except -1:
    """Clear per-row denominators; fill `num` with the scaled numerators."""
    cdef int i, j
    cdef PB lcm, scale
    pb_init(&lcm)
    pb_init(&scale)
    try:
        for i in range(nrows):
            pb_set_one(&lcm)
            for j in range(ncols):
                dt = entries[i * ncols + j][1]
                if len(dt) > 1:
                    pb_from_obj(s3, dt)
                    pb_gcd(s4, &lcm, s3, p, s1, s2)
                    pb_divmod(s5, s2, s3, s4, p)     # s5 = den / g
                    pb_mul(s3, &lcm, s5, p)
                    pb_set(&lcm, s3)
            for j in range(ncols):
                nt, dt = entries[i * ncols + j]
                pb_from_obj(s3, nt)
                if pb_is_one(&lcm):
                    pb_set(&num[i * ncols + j], s3)
                else:
                    pb_from_obj(s4, dt)
                    pb_divmod(&scale, s2, &lcm, s4, p)
                    pb_mul(&num[i * ncols + j], s3, &scale, p)
        return 0
    finally:
        pb_free(&lcm)
        pb_free(&scale)


cdef int strip_content(PB* row, int start, int ncols, int p,
                       PB* s1, PB* s2, PB* s3, PB* s4) except -1:
    """Divide row[start:ncols] by the gcd of its entries (rank-preserving)."""
    cdef int j, have = 0
    for j in range(start, ncols):
        if row[j].n:
            if not have:
                pb_set(s4, &row[j])
                have = 1
            else:
                pb_gcd(s3, s4, &row[j], p, s1, s2)
                pb_set(s4, s3)
            if s4.n == 1:
                return 0
    if have and s4.n > 1:
        for j in range(start, ncols):
            if row[j].n:
                pb_divmod(s1, s2, &row[j], s4, p)
                pb_set(&row[j], s1)
    return 0


def rfmat_rank(int p, int nrows, int ncols, list entries):
    """Exact rank by fraction-free elimination with full pivoting.

    Cross-multiplication Gaussian steps with the content (entry gcd) of
    every updated row divided out; the content always contains the
    Bareiss divisor, so degrees never exceed the classical fraction-free
    scheme and collapse on rows with common factors.  The multipliers are
    also reduced by their own gcd before each row update.
    """
    cdef int rank = 0, lim, bi, bj, bd, i, j, d
    cdef PB* m = NULL
    cdef PB t1, t2, s1, s2, s3, s4, piv, fac
    cdef PB* rowi
    cdef PB* rowr
    cdef PB tmp
    if nrows == 0 or ncols == 0:
        return 0
    set_modulus(p)
    pb_init(&t1)
    pb_init(&t2)
    pb_init(&s1)
    pb_init(&s2)
    pb_init(&s3)
    pb_init(&s4)
    pb_init(&piv)
    pb_init(&fac)
    m = grid_alloc(nrows * ncols)
    try:
        load_cleared(m, p, nrows, ncols, entries, &s1, &s2, &s3, &s4, &t1)
        for i in range(nrows):
            strip_content(&m[i * ncols], 0, ncols, p, &s1, &s2, &s3, &s4)
        lim = nrows if nrows < ncols else ncols
        while rank < lim:
            bd = -1
            bi = bj = -1
            for i in range(rank, nrows):
                for j in range(rank, ncols):
                    d = m[i * ncols + j].n
                    if d and (bd < 0 or d < bd):
                        bd = d
                        bi = i
                        bj = j
                        if bd == 1:
                            break
                if bd == 1:
                    break
            if bd < 0:
                break
            if bi != rank:
                for j in range(ncols):
                    tmp = m[rank * ncols + j]
                    m[rank * ncols + j] = m[bi * ncols + j]
                    m[bi * ncols + j] = tmp
            if bj != rank:
                for i in range(nrows):
                    tmp = m[i * ncols + rank]
                    m[i * ncols + rank] = m[i * ncols + bj]
                    m[i * ncols + bj] = tmp
            rowr = &m[rank * ncols]
            for i in range(rank + 1, nrows):
                rowi = &m[i * ncols]
                if rowi[rank].n == 0:
                    continue
                # divide the update pair by its gcd before cross-multiplying
                pb_gcd(&s4, &rowr[rank], &rowi[rank], p, &s1, &s2)
                if s4.n > 1:
                    pb_divmod(&piv, &s1, &rowr[rank], &s4, p)
                    pb_divmod(&fac, &s1, &rowi[rank], &s4, p)
                else:
                    pb_set(&piv, &rowr[rank])
                    pb_set(&fac, &rowi[rank])
                for j in range(rank + 1, ncols):
                    pb_mul(&t1, &rowi[j], &piv, p)
                    pb_mul(&t2, &fac, &rowr[j], p)
                    pb_sub_into(&t1, &t2, p)
                    tmp = rowi[j]
                    rowi[j] = t1
                    t1 = tmp
                rowi[rank].n = 0
                strip_content(rowi, rank + 1, ncols, p, &s1, &s2, &s3, &s4)
            rank += 1
        return rank
    finally:
        grid_free(m, nrows * ncols)
        pb_free(&t1)
        pb_free(&t2)
        pb_free(&s1)
        pb_free(&s2)
        pb_free(&s3)
        pb_free(&s4)
        pb_free(&piv)
        pb_free(&fac)


cdef int frac_reduce(PB* num, PB* den, int p,
                     PB* s1, PB* s2, PB* s3) except -1:
    """Normalize a fraction in place: reduced, monic denominator."""
    if num.n == 0:
        pb_set_one(den)
        return 0
    pb_gcd(s3, num, den, p, s1, s2)
    if s3.n > 1:
        pb_divmod(s1, s2, num, s3, p)
        pb_set(num, s1)
        pb_divmod(s1, s2, den, s3, p)
        pb_set(den, s1)
    cdef int lc = den.c[den.n - 1]
    if lc != 1:
        pb_scale(num, INV[lc])
        pb_scale(den, INV[lc])
    return 0


def rfmat_rref(int p, int nrows, int ncols, list entries):
    """Gauss-Jordan over GF(p)(t); returns (flat entries, pivot columns)."""
    cdef int r = 0, c, i, j, pr, bd, sz, idx
    cdef PB* num = NULL
    cdef PB* den = NULL
    cdef PB pn, pd, fn, fd, t1, t2, s1, s2, s3
    cdef PB tmp
    if nrows == 0 or ncols == 0:
        return list(entries), []
    set_modulus(p)
    pb_init(&pn)
    pb_init(&pd)
    pb_init(&fn)
    pb_init(&fd)
    pb_init(&t1)
    pb_init(&t2)
    pb_init(&s1)
    pb_init(&s2)
    pb_init(&s3)
    num = grid_alloc(nrows * ncols)
    den = grid_alloc(nrows * ncols)
    try:
        for idx in range(nrows * ncols):
            nt, dt = entries[idx]
            pb_from_obj(&num[idx], nt)
            pb_from_obj(&den[idx], dt)
        pivots = []
        for c in range(ncols):
            if r == nrows:
                break
            pr = -1
            bd = -1
            for i in range(r, nrows):
                if num[i * ncols + c].n:
                    sz = num[i * ncols + c].n + den[i * ncols + c].n
                    if bd < 0 or sz < bd:
                        bd = sz
                        pr = i
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    tmp = num[r * ncols + j]
                    num[r * ncols + j] = num[pr * ncols + j]
                    num[pr * ncols + j] = tmp
                    tmp = den[r * ncols + j]
                    den[r * ncols + j] = den[pr * ncols + j]
                    den[pr * ncols + j] = tmp
            # scale row r by the inverse of the pivot
            pb_set(&pn, &num[r * ncols + c])
            pb_set(&pd, &den[r * ncols + c])
            for j in range(c, ncols):
                idx = r * ncols + j
                if num[idx].n == 0:
                    continue
                pb_mul(&t1, &num[idx], &pd, p)
                pb_mul(&t2, &den[idx], &pn, p)
                pb_set(&num[idx], &t1)
                pb_set(&den[idx], &t2)
                frac_reduce(&num[idx], &den[idx], p, &s1, &s2, &s3)
            for i in range(nrows):
                if i == r or num[i * ncols + c].n == 0:
                    continue
                pb_set(&fn, &num[i * ncols + c])
                pb_set(&fd, &den[i * ncols + c])
                for j in range(c, ncols):
                    idx = r * ncols + j
                    if num[idx].n == 0:
                        continue
                    # entry_i -= f * entry_r
                    pb_mul(&t1, &fn, &num[idx], p)       # t1 = fn * rn
                    pb_mul(&t2, &fd, &den[idx], p)       # t2 = fd * rd
                    pb_mul(&s1, &num[i * ncols + j], &t2, p)
                    pb_mul(&s2, &t1, &den[i * ncols + j], p)
                    pb_sub_into(&s1, &s2, p)
                    pb_mul(&s3, &den[i * ncols + j], &t2, p)
                    pb_set(&num[i * ncols + j], &s1)
                    pb_set(&den[i * ncols + j], &s3)
                    frac_reduce(&num[i * ncols + j], &den[i * ncols + j],
                                p, &s1, &s2, &s3)
            pivots.append(c)
            r += 1
        out = []
        for idx in range(nrows * ncols):
            if num[idx].n == 0:
                out.append(((), (1,)))
            else:
                out.append((pb_to_obj(&num[idx]), pb_to_obj(&den[idx])))
        return out, pivots
    finally:
        grid_free(num, nrows * ncols)
        grid_free(den, nrows * ncols)
        pb_free(&pn)
        pb_free(&pd)
        pb_free(&fn)
        pb_free(&fd)
        pb_free(&t1)
        pb_free(&t2)
        pb_free(&s1)
        pb_free(&s2)
        pb_free(&s3)
