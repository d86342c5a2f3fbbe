"""Pure-Python fallback for the computational kernels.

Same contract as the compiled module jcforge._fastkernels; see _backend for
how one of the two gets selected at import time.

Data conventions shared by both backends:

* A polynomial over GF(p) in the inner indeterminate t is a tuple of ints
  in [0, p), ascending degree, with no trailing zeros; () is zero.
* A GF(p) matrix is a list of lists of residues.
* A GF(p)(t) matrix is passed flat (row-major) as a list of
  (numerator, denominator) tuple pairs, denominator monic and coprime to
  the numerator.
"""

from .errors import DivisionByZero

IS_COMPILED = False


# ---------------------------------------------------------------------------
# GF(p)[t] polynomial primitives
# ---------------------------------------------------------------------------

def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    del c[n:]
    return c


def gfp_add(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return tuple(_trim(c))


def gfp_sub(p, a, b):
    c = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % p
    return tuple(_trim(c))


def gfp_mul(p, a, b):
    if not a or not b:
        return ()
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] = (c[i + j] + x * y) % p
    return tuple(c)


def gfp_divmod(p, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv = pow(b[-1], p - 2, p)
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    db = len(b) - 1
    top = len(r)
    while True:
        while top and r[top - 1] == 0:
            top -= 1
        if top <= db:
            break
        k = top - 1 - db
        c = (r[top - 1] * inv) % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
        top -= 1
    del r[top:]
    return tuple(_trim(list(q))), tuple(_trim(r))


def gfp_gcd(p, a, b):
    while b:
        a, b = b, gfp_divmod(p, a, b)[1]
    if a and a[-1] != 1:
        inv = pow(a[-1], p - 2, p)
        a = tuple((x * inv) % p for x in a)
    return a


# ---------------------------------------------------------------------------
# GF(p) dense matrices
# ---------------------------------------------------------------------------

def pmat_rref(p, rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                for j in range(c, ncols):
                    mi[j] = (mi[j] - f * mr[j]) % p
        pivots.append(c)
        r += 1
    return m, pivots


# ---------------------------------------------------------------------------
# GF(p)(t) dense matrices
# ---------------------------------------------------------------------------

_ONE = (1,)


def _frac_norm(p, num, den):
    if not num:
        return ((), _ONE)
    g = gfp_gcd(p, num, den)
    if len(g) > 1:
        num = gfp_divmod(p, num, g)[0]
        den = gfp_divmod(p, den, g)[0]
    lc = den[-1]
    if lc != 1:
        inv = pow(lc, p - 2, p)
        num = tuple((x * inv) % p for x in num)
        den = tuple((x * inv) % p for x in den)
    return (num, den)


def _clear_rows(p, nrows, ncols, entries):
    """Multiply each row by the lcm of its denominators; returns numerators."""
    out = [None] * (nrows * ncols)
    for i in range(nrows):
        row = entries[i * ncols:(i + 1) * ncols]
        lcm = _ONE
        for (_, d) in row:
            if len(d) > 1:
                g = gfp_gcd(p, lcm, d)
                lcm = gfp_mul(p, lcm, gfp_divmod(p, d, g)[0])
        for j, (n, d) in enumerate(row):
            scale = gfp_divmod(p, lcm, d)[0] if len(lcm) > 1 or len(d) > 1 else _ONE
            out[i * ncols + j] = gfp_mul(p, n, scale) if scale != _ONE else n
    return out


def _strip_content(p, row, start):
    """Divide row[start:] by the gcd of its entries (rank-preserving)."""
    content = ()
    for e in row[start:]:
        if e:
            content = gfp_gcd(p, content, e) if content else e
            if len(content) == 1:
                return
    if len(content) > 1:
        for j in range(start, len(row)):
            if row[j]:
                row[j] = gfp_divmod(p, row[j], content)[0]


def rfmat_rank(p, nrows, ncols, entries):
    """Exact rank by fraction-free elimination with full pivoting.

    Cross-multiplication Gaussian steps with the content (entry gcd) of
    every updated row divided out.  Row scaling by nonzero polynomials
    preserves rank, and the content always contains the Bareiss divisor,
    so entry degrees stay at most those of the classical fraction-free
    scheme; on rows with denominators in common they stay far smaller.
    Row and column transpositions pick a minimal-degree pivot.
    """
    m = _clear_rows(p, nrows, ncols, entries)
    grid = [m[i * ncols:(i + 1) * ncols] for i in range(nrows)]
    for row in grid:
        _strip_content(p, row, 0)
    rank = 0
    lim = min(nrows, ncols)
    while rank < lim:
        # minimal-degree nonzero entry of the trailing submatrix
        bi = bj = -1
        bd = None
        for i in range(rank, nrows):
            gi = grid[i]
            for j in range(rank, ncols):
                e = gi[j]
                if e and (bd is None or len(e) < bd):
                    bd = len(e)
                    bi, bj = i, j
                    if bd == 1:
                        break
            if bd == 1:
                break
        if bd is None:
            break
        grid[rank], grid[bi] = grid[bi], grid[rank]
        if bj != rank:
            for row in grid:
                row[rank], row[bj] = row[bj], row[rank]
        gr = grid[rank]
        for i in range(rank + 1, nrows):
            gi = grid[i]
            fac = gi[rank]
            if not fac:
                continue
            # reduce the update pair by its gcd before cross-multiplying
            g = gfp_gcd(p, gr[rank], fac)
            if len(g) > 1:
                piv = gfp_divmod(p, gr[rank], g)[0]
                fac = gfp_divmod(p, fac, g)[0]
            else:
                piv = gr[rank]
            for j in range(rank + 1, ncols):
                gi[j] = gfp_sub(p, gfp_mul(p, gi[j], piv), gfp_mul(p, fac, gr[j]))
            gi[rank] = ()
            _strip_content(p, gi, rank + 1)
        rank += 1
    return rank


def rfmat_rref(p, nrows, ncols, entries):
    """Gauss-Jordan over GF(p)(t) with smallest-entry row pivoting.

    Returns (entries, pivot_columns) with entries flat row-major fraction
    pairs; pivot columns carry 1 and zeros elsewhere.
    """
    grid = [list(entries[i * ncols:(i + 1) * ncols]) for i in range(nrows)]
    zero = ((), _ONE)
    one = (_ONE, _ONE)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        bd = None
        for i in range(r, nrows):
            n, d = grid[i][c]
            if n:
                sz = len(n) + len(d)
                if bd is None or sz < bd:
                    bd = sz
                    pr = i
        if pr < 0:
            continue
        grid[r], grid[pr] = grid[pr], grid[r]
        pn, pd = grid[r][c]
        # scale row r by the inverse of the pivot
        inv = _frac_norm(p, pd, pn)
        row = grid[r]
        row[c] = one
        for j in range(c + 1, ncols):
            n, d = row[j]
            if n:
                row[j] = _frac_norm(p, gfp_mul(p, n, inv[0]), gfp_mul(p, d, inv[1]))
        for i in range(nrows):
            if i == r:
                continue
            fn, fd = grid[i][c]
            if not fn:
                continue
            gi = grid[i]
            gi[c] = zero
            for j in range(c + 1, ncols):
                n, d = row[j]
                if not n:
                    continue
                sn, sd = gfp_mul(p, fn, n), gfp_mul(p, fd, d)
                an, ad = gi[j]
                num = gfp_sub(p, gfp_mul(p, an, sd), gfp_mul(p, sn, ad))
                gi[j] = _frac_norm(p, num, gfp_mul(p, ad, sd))
        pivots.append(c)
        r += 1
    flat = [e for row in grid for e in row]
    return flat, pivots
