"""Exact integer lattice arithmetic: Smith normal form, spans, indices.

All matrices are tuples of equal-length tuples of Python ints, so every
computation is exact; there is no floating point anywhere in this
module.  The Smith normal form uses a fixed pivot rule (smallest
nonzero absolute value, lowest index first) so the transforms U, V are
deterministic functions of the input.
"""

from dataclasses import dataclass


class LatticeError(ValueError):
    pass


def as_int_matrix(rows):
    """Normalize to a tuple-of-tuples of ints; reject ragged input."""
    out = tuple(tuple(x) for x in rows)
    if out:
        w = len(out[0])
        for r in out:
            if len(r) != w:
                raise LatticeError("matrix is not rectangular")
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise LatticeError(f"non-integer entry {x!r}")
    return out


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A, B):
    if A and B and len(A[0]) != len(B):
        raise LatticeError("dimension mismatch in matmul")
    Bt = tuple(zip(*B)) if B else ()
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A
    )


def transpose(A):
    return tuple(zip(*A)) if A else ()


def mat_vec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def vec_mat(v, A):
    return tuple(sum(x * A[i][j] for i, x in enumerate(v)) for j in range(len(A[0]))) if A else ()


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == D with |det U| = |det V| = 1, D diagonal with
    d1 | d2 | ... and trailing zeros last.  V_inv is V's exact inverse."""

    U: tuple
    D: tuple
    V: tuple
    V_inv: tuple
    invariant_factors: tuple

    @property
    def rank(self):
        return sum(1 for d in self.invariant_factors if d)


def _pivot(M, start, rows, cols):
    """Smallest |entry| != 0 at or below/right of start; lowest index wins."""
    best = None
    for i in range(start, rows):
        for j in range(start, cols):
            x = M[i][j]
            if x and (best is None or abs(x) < abs(M[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(A):
    """Smith normal form with both transforms, fully deterministic."""
    A = as_int_matrix(A)
    if not A or not A[0]:
        raise LatticeError("empty matrix")
    rows, cols = len(A), len(A[0])
    M = [list(r) for r in A]
    U = [list(r) for r in identity(rows)]
    V = [list(r) for r in identity(cols)]
    Vi = [list(r) for r in identity(cols)]

    def row_op(i, j, q):  # row i -= q * row j
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(j, i, q):  # col j -= q * col i ; V_inv gets the inverse op
        for r in M:
            r[j] -= q * r[i]
        for r in V:
            r[j] -= q * r[i]
        Vi[i] = [a + q * b for a, b in zip(Vi[i], Vi[j])]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while True:
        piv = _pivot(M, t, rows, cols)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        # clear row and column t, restarting when a remainder shrinks the pivot
        while True:
            done = True
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    row_op(i, t, q)
                    if M[i][t]:
                        row_swap(i, t)
                        done = False
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    col_op(j, t, q)
                    if M[t][j]:
                        col_swap(j, t)
                        done = False
            if done:
                break
        # make the pivot divide everything below-right
        p = M[t][t]
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % p:
                    row_op(t, i, -1)  # add row i to row t and redo the clearing
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if p < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1
        if t == min(rows, cols):
            break
    diag = tuple(M[k][k] if k < cols else 0 for k in range(min(rows, cols)))
    return SmithForm(
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in M),
        tuple(tuple(r) for r in V),
        tuple(tuple(r) for r in Vi),
        diag,
    )


def det_int(A):
    """Exact signed determinant by fraction-free (Bareiss) elimination."""
    A = as_int_matrix(A)
    n = len(A)
    if n == 0 or len(A[0]) != n:
        raise LatticeError("determinant of a non-square matrix")
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_modulus(modulus):
    if modulus == 0:
        return
    if not _is_prime(modulus):
        raise LatticeError(f"modulus must be 0 or a prime, got {modulus}")


def _rank_mod_p(A, p):
    M = [[x % p for x in row] for row in A]
    rank = 0
    cols = len(A[0]) if A else 0
    for j in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][j]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][j], -1, p)
        M[rank] = [(x * inv) % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][j]:
                f = M[i][j]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def in_span(M, v, modulus=0):
    """Is v an integer (or mod-p) combination of M's rows?

    Returns (flag, witness): witness @ M == v in the given ring when the
    flag is true, otherwise witness is None.
    """
    _check_modulus(modulus)
    M = as_int_matrix(M)
    v = tuple(v)
    if not M:
        if any(x % modulus if modulus else x for x in v):
            return False, None
        return True, ()
    if len(v) != len(M[0]):
        raise LatticeError("vector length does not match matrix columns")
    if modulus:
        p = modulus
        rows = [[x % p for x in row] + [0] * len(M) for row in M]
        for i, row in enumerate(rows):
            row[len(v) + i] = 1
        target = [x % p for x in v]
        rank = 0
        pivots = []
        for j in range(len(v)):
            piv = next((i for i in range(rank, len(rows)) if rows[i][j]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = pow(rows[rank][j], -1, p)
            rows[rank] = [(x * inv) % p for x in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][j]:
                    f = rows[i][j]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
            pivots.append(j)
            rank += 1
        coeffs = [0] * len(M)
        for r, j in enumerate(pivots):
            if target[j]:
                f = target[j]
                target = [(a - f * b) % p for a, b in zip(target, rows[r][: len(v)])]
                coeffs = [(a + f * b) % p for a, b in zip(coeffs, rows[r][len(v):])]
        if any(target):
            return False, None
        return True, tuple(coeffs)
    snf = smith_normal_form(M)
    w = vec_mat(v, snf.V)
    r = snf.rank
    y = []
    for i in range(len(M)):
        if i < min(len(M), len(v)) and i < r:
            d = snf.invariant_factors[i]
            if w[i] % d:
                return False, None
            y.append(w[i] // d)
        else:
            y.append(0)
    if any(w[i] for i in range(r, len(v))):
        return False, None
    x = vec_mat(tuple(y), snf.U)
    return True, x


def is_partial_basis(M, modulus=0):
    """Can M's rows be extended to a basis (over Z: primitive sublattice)?"""
    _check_modulus(modulus)
    M = as_int_matrix(M)
    if not M or not M[0]:
        return True
    if len(M) > len(M[0]):
        return False
    if modulus:
        return _rank_mod_p(M, modulus) == len(M)
    snf = smith_normal_form(M)
    return all(d == 1 for d in snf.invariant_factors)


def subgroup_index(M):
    """Index of the row span in the full lattice, or None for infinite."""
    M = as_int_matrix(M)
    if not M or not M[0]:
        return None
    cols = len(M[0])
    snf = smith_normal_form(M)
    if snf.rank < cols:
        return None
    idx = 1
    for d in snf.invariant_factors:
        idx *= d
    return idx


def complete_to_unimodular(M, ambient_cols=None):
    """Rows completing a partial basis to a square matrix of det +-1.

    An empty matrix needs ``ambient_cols`` to know the ambient rank; any
    unimodular completion satisfies the contract, so it gets the identity.
    """
    M = as_int_matrix(M)
    if not M or not M[0]:
        if ambient_cols is None:
            raise LatticeError("cannot complete an empty matrix of unknown width")
        return identity(ambient_cols)
    if not is_partial_basis(M, 0):
        raise LatticeError("rows are not a partial basis")
    snf = smith_normal_form(M)
    n = len(M[0])
    added = snf.V_inv[snf.rank:]
    stacked = M + tuple(added)
    if abs(det_int(stacked)) != 1:
        raise AssertionError("completion failed to be unimodular")
    return tuple(added)


def int_inverse(A):
    """Exact inverse of a unimodular integer matrix.

    With U A V = I the inverse is V U, both exactly integral.
    """
    A = as_int_matrix(A)
    n = len(A)
    if n == 0 or len(A[0]) != n:
        raise LatticeError("inverse of a non-square matrix")
    snf = smith_normal_form(A)
    if any(d != 1 for d in snf.invariant_factors):
        raise LatticeError("matrix is not unimodular")
    return matmul(snf.V, snf.U)
