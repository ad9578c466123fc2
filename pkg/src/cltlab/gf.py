"""Exact linear algebra over prime fields GF(q).

Matrices are small (dimension <= 3 in practice) and stored as tuples of
reduced integer rows, so they are hashable and usable as model elements
for matrix groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce


class NoSuchElement(ValueError):
    """No matrix with the requested order exists."""


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


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _check_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"modulus {q} is not prime")


@dataclass(frozen=True)
class GFScalar:
    value: int
    q: int

    def __post_init__(self):
        _check_prime(self.q)
        object.__setattr__(self, "value", self.value % self.q)

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class GFMatrix:
    q: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_prime(self.q)
        rows = tuple(tuple(int(v) % self.q for v in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dim: int, q: int) -> GFMatrix:
        return cls(q, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: GFMatrix) -> GFMatrix:
        return mat_mul(self, other)

    def __str__(self):
        return "[" + ";".join(",".join(str(v) for v in r) for r in self.rows) + "]"

    def apply(self, v) -> tuple[int, ...]:
        """Matrix times column vector."""
        return tuple(sum(a * b for a, b in zip(r, v)) % self.q for r in self.rows)


def mat_mul(A: GFMatrix, B: GFMatrix) -> GFMatrix:
    if A.q != B.q:
        raise ValueError(f"modulus mismatch: {A.q} vs {B.q}")
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    cols = list(zip(*B.rows))
    return GFMatrix(A.q, tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in A.rows))


def mat_pow(A: GFMatrix, e: int) -> GFMatrix:
    if e < 0:
        return mat_pow(mat_inv(A), -e)
    result = GFMatrix.identity(A.dim, A.q)
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def _row_reduce(A: GFMatrix):
    """Gaussian elimination; returns (det, reduced augmented [A | I])."""
    q, n = A.q, A.dim
    M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A.rows)]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0, None
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        pv = M[col][col]
        det = det * pv % q
        inv = pow(pv, q - 2, q)
        M[col] = [v * inv % q for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [(a - f * b) % q for a, b in zip(M[r], M[col])]
    return det % q, M


def mat_det(A: GFMatrix) -> GFScalar:
    det, _ = _row_reduce(A)
    return GFScalar(det, A.q)


def mat_inv(A: GFMatrix) -> GFMatrix:
    det, M = _row_reduce(A)
    if det == 0:
        raise ValueError("singular matrix")
    n = A.dim
    return GFMatrix(A.q, tuple(tuple(r[n:]) for r in M))


def gl_order(dim: int, q: int) -> int:
    return reduce(lambda acc, i: acc * (q**dim - q**i), range(dim), 1)


def sl_order(dim: int, q: int) -> int:
    return gl_order(dim, q) // (q - 1)


def mat_order(A: GFMatrix) -> int:
    if mat_det(A).value == 0:
        raise ValueError("singular matrix has no multiplicative order")
    I = GFMatrix.identity(A.dim, A.q)
    for d in divisors(gl_order(A.dim, A.q)):
        if mat_pow(A, d) == I:
            return d
    raise AssertionError("order must divide |GL|")  # pragma: no cover


# --- polynomials over GF(q): coefficient tuples, lowest degree first, monic ---


def _poly_trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(a, b, f, q):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % q
    return _poly_mod(prod, f, q)


def _poly_mod(a, f, q):
    a = list(a)
    d = len(f) - 1
    lead_inv = pow(f[-1], q - 2, q)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * lead_inv % q
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % q
    return _poly_trim(a[:d] or [0])


def _x_pow_mod(e, f, q):
    result, base = [1], _poly_mod([0, 1], f, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, q)
        base = _poly_mulmod(base, base, f, q)
        e >>= 1
    return result


def _has_root(f, q):
    return any(sum(c * pow(x, i, q) for i, c in enumerate(f)) % q == 0 for x in range(q))


def irreducible_factors_of_xp_minus_1(p: int, q: int, max_degree: int = 3) -> list[tuple[int, ...]]:
    """Monic irreducible factors of x^p - 1 over GF(q) of degree <= max_degree.

    Found by trial division over all monic polynomials; ordered by degree then
    lexicographically on coefficients (highest degree first).
    """
    _check_prime(q)
    if max_degree > 3:
        raise ValueError("factorisation only implemented up to degree 3")
    found = []
    for deg in range(1, max_degree + 1):
        for tail in itertools.product(range(q), repeat=deg):
            f = list(reversed(tail)) + [1]
            if deg > 1 and _has_root(f, q):
                continue
            if _x_pow_mod(p, f, q) == [1]:
                found.append(tuple(f))
    return found


def companion(f, q: int) -> GFMatrix:
    """Companion matrix of monic f (coefficients lowest first)."""
    d = len(f) - 1
    rows = []
    for i in range(d):
        row = [0] * d
        if i > 0:
            row[i - 1] = 1
        row[d - 1] = -f[i] % q
        rows.append(tuple(row))
    return GFMatrix(q, tuple(rows))


def block_diag(blocks: list[GFMatrix]) -> GFMatrix:
    q = blocks[0].q
    n = sum(b.dim for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.dim):
            for j in range(b.dim):
                rows[off + i][off + j] = b[i, j]
        off += b.dim
    return GFMatrix(q, tuple(tuple(r) for r in rows))


def char_poly(A: GFMatrix) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - A), coefficients lowest first (dim <= 3)."""
    q, n = A.q, A.dim
    if n == 1:
        return ((-A[0, 0]) % q, 1)
    if n == 2:
        tr = A[0, 0] + A[1, 1]
        return (mat_det(A).value, -tr % q, 1)
    if n == 3:
        tr = A[0, 0] + A[1, 1] + A[2, 2]
        m2 = sum(A[i, i] * A[j, j] - A[i, j] * A[j, i] for i, j in ((0, 1), (0, 2), (1, 2)))
        return (-mat_det(A).value % q, m2 % q, -tr % q, 1)
    raise ValueError("char_poly implemented for dim <= 3")


def _multisets_of_degree(factors, dim):
    """Multisets (as sorted index tuples) of factors whose degrees sum to dim."""
    degs = [len(f) - 1 for f in factors]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(factors)):
            if degs[i] <= remaining:
                rec(i, remaining - degs[i], acc + [i])

    rec(0, dim, [])
    return out


def order_p_action_representatives(dim: int, q: int, p: int) -> list[GFMatrix]:
    """One matrix per GL(dim, q)-conjugacy class of elements of order exactly p.

    For p != q these elements are semisimple, so each class is determined by
    its multiset of irreducible factors of x^p - 1; the representative is the
    block-diagonal of the corresponding companion matrices.
    """
    _check_prime(q)
    _check_prime(p)
    if p == q:
        raise ValueError("p must differ from q (semisimple classes only)")
    if dim > 3:
        raise ValueError("only dimensions up to 3 are supported")
    if gl_order(dim, q) % p:
        return []
    factors = irreducible_factors_of_xp_minus_1(p, q, max_degree=dim)
    one = (q - 1, 1)  # x - 1
    reps = []
    for ms in _multisets_of_degree(factors, dim):
        if all(factors[i] == one for i in ms):
            continue
        # larger blocks first so irreducible actions appear as a single companion
        blocks = sorted((factors[i] for i in ms), key=lambda f: (-len(f), f))
        reps.append(block_diag([companion(f, q) for f in blocks]))
    return reps


def find_gl_element_of_order(dim: int, q: int, p: int) -> GFMatrix:
    _check_prime(q)
    _check_prime(p)
    if gl_order(dim, q) % p:
        raise NoSuchElement(f"{p} does not divide |GL({dim},{q})| = {gl_order(dim, q)}")
    if p != q and dim <= 3:
        reps = order_p_action_representatives(dim, q, p)
        # prefer the action with the fewest blocks (irreducible when available)
        return min(reps, key=lambda M: (_block_count(M), M.rows))
    I = GFMatrix.identity(dim, q)
    for entries in itertools.product(range(q), repeat=dim * dim):
        M = GFMatrix(q, tuple(tuple(entries[i * dim:(i + 1) * dim]) for i in range(dim)))
        if mat_det(M).value and M != I and mat_pow(M, p) == I:
            return M
    raise NoSuchElement(f"no element of order {p} in GL({dim},{q})")  # pragma: no cover


def _block_count(M: GFMatrix) -> int:
    n, count, start = M.dim, 0, 0
    for end in range(1, n + 1):
        if all(M[i, j] == 0 and M[j, i] == 0 for i in range(start, end) for j in range(end, n)):
            count += 1
            start = end
    return count


def find_sl2_element_of_order(q: int, p: int) -> GFMatrix:
    """First determinant-1 2x2 matrix over GF(q) of order exactly p, row-major order."""
    _check_prime(q)
    _check_prime(p)
    if sl_order(2, q) % p:
        raise NoSuchElement(f"{p} does not divide |SL(2,{q})| = {sl_order(2, q)}")
    I = GFMatrix.identity(2, q)
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if (a * d - b * c) % q != 1:
            continue
        M = GFMatrix(q, ((a, b), (c, d)))
        if M != I and mat_pow(M, p) == I:
            return M
    raise NoSuchElement(f"no element of order {p} in SL(2,{q})")  # pragma: no cover
