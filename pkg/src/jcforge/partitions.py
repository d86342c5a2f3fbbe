"""Integer partitions as a free commutative monoid, and the type map.

A Partition is a weakly decreasing tuple of positive integers; reading
past the stored length gives 0 (1-based access via part()).  Splicing is
the multiset union, making the set of all partitions a free commutative
monoid on the singletons [a].

The type collapse map zeta_q sends the type of a commuting
semisimple/nilpotent pair to the invariant-factor partition of its sum;
it is the monoid homomorphism determined by

    [a]  ->  l parts (k+1) and q - l parts k,   a = k q + l, 0 <= l < q.

Image membership, the standard preimage, multiplicity of preimages and
the dimension attached to a (source, target) pair are all provided, with
preimage fibers computed by exhausting Part_m (5604 partitions at the
default bound m = 30): the enumeration doubles as the independent oracle
for the closed-form criteria.
"""

from .errors import BudgetExceeded, NotInImage, ParseError, TypeMismatch

#: Largest partition sum the fiber enumeration will exhaust.
DEFAULT_SUM_BOUND = 30


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        if parts and (not all(isinstance(a, int) for a in parts) or parts[-1] < 1):
            raise ValueError(f"parts must be positive integers: {parts}")
        return super().__new__(cls, parts)

    def part(self, i: int) -> int:
        """1-based part access; indices beyond the length read 0."""
        if i < 1:
            raise IndexError("partition indices start at 1")
        return self[i - 1] if i <= len(self) else 0

    def __str__(self):
        return "[" + ",".join(str(a) for a in self) + "]"

    def __repr__(self):
        return f"Partition({list(self)})"


def parse_partition(s: str) -> Partition:
    s = s.strip().replace(" ", "")
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"partition literal must be bracketed: {s!r}")
    body = s[1:-1]
    if not body:
        return Partition(())
    try:
        parts = tuple(int(x) for x in body.split(","))
        return Partition(parts)
    except ValueError as e:
        raise ParseError(f"bad partition literal {s!r}: {e}") from e


def partitions_of(m: int):
    """All partitions of m, yielded in lexicographically decreasing order."""
    def gen(rest, maxpart, prefix):
        if rest == 0:
            yield Partition(prefix)
            return
        for a in range(min(rest, maxpart), 0, -1):
            yield from gen(rest - a, a, prefix + (a,))
    if m < 0:
        raise ValueError("negative partition sum")
    yield from gen(m, m if m else 1, ())


def splice(a: Partition, b: Partition) -> Partition:
    """Multiset union, re-sorted decreasing; the monoid operation."""
    return Partition(sorted(tuple(a) + tuple(b), reverse=True))


def mult_of(b: int, phi: Partition) -> int:
    """Multiplicity of the part b >= 1."""
    if b < 1:
        raise ValueError("parts are >= 1")
    return sum(1 for a in phi if a == b)


def weight(phi: Partition) -> int:
    """Sum of (2i - 1) * phi_i over 1-based positions i."""
    return sum((2 * i - 1) * a for i, a in enumerate(phi, start=1))


def zeta_generator(a: int, q: int) -> Partition:
    """Image of the singleton [a]: l parts k+1 and q-l parts k, a = kq + l."""
    if a < 1 or q < 1:
        raise ValueError("a and q must be positive")
    k, l = divmod(a, q)
    parts = [k + 1] * l + ([k] * (q - l) if k else [])
    return Partition(parts)


def zeta_apply(phi: Partition, q: int) -> Partition:
    """Monoid extension of zeta_generator; preserves the partition sum."""
    if q < 1:
        raise ValueError("q must be positive")
    parts = []
    for a in phi:
        k, l = divmod(a, q)
        parts.extend([k + 1] * l)
        if k:
            parts.extend([k] * (q - l))
    return Partition(sorted(parts, reverse=True))


def existence_check(psi: Partition, q: int) -> bool:
    """True iff psi_{(i-1)q+1} <= 1 + psi_{iq} for all i >= 1."""
    if q < 1:
        raise ValueError("q must be positive")
    psi = Partition(psi)
    i = 1
    while True:
        left = psi.part((i - 1) * q + 1)
        if left == 0:
            return True
        if left > 1 + psi.part(i * q):
            return False
        i += 1


def standard_preimage(psi: Partition, q: int) -> Partition:
    """The preimage summing q consecutive parts per window; it is the
    unique preimage with at most one part strictly between consecutive
    multiples of q, per stride."""
    psi = Partition(psi)
    if not existence_check(psi, q):
        raise NotInImage(f"{psi} is not in the image for q = {q}")
    parts = []
    i = 1
    while (i - 1) * q + 1 <= len(psi):
        s = sum(psi.part(j) for j in range((i - 1) * q + 1, i * q + 1))
        if s:
            parts.append(s)
        i += 1
    return Partition(parts)


def enumerate_preimages(psi: Partition, q: int, bound: int | None = None) -> list:
    """The full fiber over psi, by exhausting Part_m; empty iff the
    existence criterion fails.  Lexicographically decreasing order."""
    if q < 1:
        raise ValueError("q must be positive")
    psi = Partition(psi)
    m = sum(psi)
    limit = DEFAULT_SUM_BOUND if bound is None else bound
    if m > limit:
        raise BudgetExceeded(f"partition sum {m} exceeds the bound {limit}")
    fiber = [phi for phi in partitions_of(m) if zeta_apply(phi, q) == psi]
    return fiber


def has_multiple_preimages(psi: Partition, q: int) -> bool:
    """True iff psi has more than one preimage; closed-form criterion."""
    psi = Partition(psi)
    if q == 1:
        if not existence_check(psi, q):
            raise NotInImage(f"{psi} is not in the image for q = 1")
        return False
    if not existence_check(psi, q):
        raise NotInImage(f"{psi} is not in the image for q = {q}")
    top = len(psi) // q + 2
    for i1 in range(1, top + 1):
        a = psi.part((i1 - 1) * q + 1)
        if a == 0 or a != psi.part((i1 - 1) * q + 2):
            continue
        r = a - 1
        for i2 in range(i1 + 1, top + 1):
            if psi.part(i2 * q - 1) == r and psi.part(i2 * q) == r:
                return True
    return False


def jc_dimension(psi: Partition, phi: Partition, degf: int) -> int:
    """degf * (weight(psi) - weight(phi)); nonnegative on fiber pairs."""
    psi, phi = Partition(psi), Partition(phi)
    if degf < 1:
        raise ValueError("degf must be positive")
    if sum(psi) != sum(phi):
        raise TypeMismatch(f"sums differ: {sum(psi)} vs {sum(phi)}")
    return degf * (weight(psi) - weight(phi))
