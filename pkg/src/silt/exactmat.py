"""Dense exact linear algebra over a prime field.

Matrices are numpy ``int64`` arrays with entries reduced into ``[0, p)``.
Pivoting is deterministic (first nonzero entry scanning left to right), so
bases, solutions and kernels are reproducible across runs and platforms;
everything downstream relies on that for canonical output.

With the default prime 32003 all intermediate products stay far below the
``int64`` overflow threshold, so no arbitrary-precision arithmetic is needed.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_field_prime(p: int) -> int:
    """Validate a field characteristic: an odd prime."""
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"field characteristic must be an odd prime, got {p!r}")
    return p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def asmat(data, p: int) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a two-dimensional array")
    return a % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = m % p
    nr, nc = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        for i in range(nr):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def solve_right(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``X`` of ``a @ X == b`` with free variables set to zero.

    Returns ``None`` when the system has no solution.
    """
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a % p, b % p], axis=1)
    r, pivots = rref(aug, p)
    if any(c >= n for c in pivots):
        return None
    x = zeros(n, b.shape[1])
    for row, c in enumerate(pivots):
        x[c] = r[row, n:]
    return x


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Right null space basis; columns are the basis vectors.

    Free variables get unit values in ascending column order, so the result
    is canonical for a given matrix.
    """
    r, pivots = rref(m, p)
    nc = m.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(nc) if c not in pivot_set]
    out = zeros(nc, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for row, c in enumerate(pivots):
            out[c, k] = (-r[row, f]) % p
    return out


def left_kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : x @ m == 0}``; rows are the basis vectors."""
    return kernel_basis(m.T, p).T


def quotient_projection(span_cols: np.ndarray, p: int) -> np.ndarray:
    """Projection ``V -> V / W`` where ``W`` is the column span.

    The rows form a left-kernel basis of the span, so the kernel of the
    returned map is exactly ``W``.
    """
    return left_kernel_basis(span_cols, p)


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def invert(m: np.ndarray, p: int) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise ValueError("only square matrices can be inverted")
    x = solve_right(m, identity(m.shape[0]), p)
    if x is None:
        raise ValueError("matrix is singular")
    return x


def int_det(m) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
