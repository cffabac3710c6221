"""Exact linear algebra over Q and over Q[del].

Two layers:

* dense Gaussian elimination over ``Fraction`` (row reduction, kernel and
  image bases, linear solving) -- the workhorse behind the truncated cocycle
  solver and the tau/eta solvers;
* univariate polynomial matrices over Q[del] (determinants, Smith invariant
  factors, inverses of unimodular matrices) -- used to validate extension
  diagrams and automorphisms exactly rather than over the fraction field.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly

# ---------------------------------------------------------------------------
# rational matrices


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(map(Fraction, row)) for row in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right kernel of the matrix, as lists of Fractions."""
    if not rows:
        return [
            [Fraction(i == j) for i in range(ncols or 0)] for j in range(ncols or 0)
        ]
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One solution of A x = b, or None if inconsistent.

    ``rows`` is a list of rows of A, ``rhs`` the right-hand side vector.
    """
    if not rows:
        return [] if not rhs or not any(rhs) else None
    ncols = len(rows[0])
    augmented = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        solution[pc] = reduced[r][ncols]
    return solution


def column_space_contains(columns, vector):
    """Whether ``vector`` is a rational combination of the given columns."""
    if not columns:
        return not any(vector)
    rows = [[col[i] for col in columns] for i in range(len(vector))]
    return solve(rows, vector) is not None


def independent_subset(vectors):
    """Indices of a maximal linearly independent subset, in input order."""
    kept = []
    stacked = []
    current_rank = 0
    for index, vec in enumerate(vectors):
        stacked.append(list(vec))
        new_rank = rank(stacked)
        if new_rank > current_rank:
            kept.append(index)
            current_rank = new_rank
        else:
            stacked.pop()
    return kept


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficient tuples, low degree first)


def upoly_from(poly):
    """Convert a del-only Poly to a coefficient tuple."""
    if any(poly.uses_var(i) for i in range(1, poly.arity + 1)):
        raise ValueError("polynomial uses lambda-variables; not univariate")
    degree = poly.degree_in(0)
    coeffs = [Fraction(0)] * (degree + 1 if degree >= 0 else 0)
    for key, coeff in poly.terms.items():
        coeffs[key[0]] = coeff
    return tuple(coeffs)


def upoly_to(coeffs, arity=0):
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            terms[(e,) + (0,) * arity] = c
    return Poly(arity, terms)


def utrim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def uadd(a, b):
    n = max(len(a), len(b))
    return utrim(
        [
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)
        ]
    )


def uneg(a):
    return tuple(-c for c in a)


def umul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return utrim(out)


def udivmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    quotient = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1) / b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        factor = a[shift + len(b) - 1] * inv
        if factor:
            quotient[shift] = factor
            for j, cb in enumerate(b):
                a[shift + j] -= factor * cb
    return utrim(quotient), utrim(a)


def ugcd(a, b):
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if a:
        inv = Fraction(1) / a[-1]
        a = tuple(c * inv for c in a)
    return a


# ---------------------------------------------------------------------------
# polynomial matrices (entries: del-only Poly)


def poly_matrix_to_u(matrix):
    return [[upoly_from(entry) for entry in row] for row in matrix]


def poly_rank(matrix):
    """Rank over the fraction field Q(del)."""
    m = poly_matrix_to_u(matrix)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank_ = 0
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, rows):
            if m[i][c]:
                # fraction-free: row_i := row_i * pivot - row_r * lead
                p, q = m[r][c], m[i][c]
                m[i] = [
                    uadd(umul(m[i][j], p), uneg(umul(m[r][j], q)))
                    for j in range(cols)
                ]
        r += 1
        rank_ += 1
        if r == rows:
            break
    return rank_


def smith_invariants(matrix):
    """Invariant factors of a matrix over Q[del] (monic, unit -> (1,))."""
    m = poly_matrix_to_u(matrix)
    if not m or not m[0]:
        return []
    rows, cols = len(m), len(m[0])
    invariants = []
    top = 0
    while top < min(rows, cols):
        # find the nonzero entry of minimal degree in the working block
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] and (best is None or len(m[i][j]) < len(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        # clear the pivot row and column; repeat until clean
        dirty = True
        while dirty:
            dirty = False
            pivot = m[top][top]
            for i in range(top + 1, rows):
                if m[i][top]:
                    q, rem = udivmod(m[i][top], pivot)
                    m[i] = [
                        uadd(m[i][j], uneg(umul(q, m[top][j]))) for j in range(cols)
                    ]
                    if rem:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, cols):
                if m[top][j]:
                    q, rem = udivmod(m[top][j], pivot)
                    for i in range(rows):
                        m[i][j] = uadd(m[i][j], uneg(umul(q, m[i][top])))
                    if rem:
                        for i in range(rows):
                            m[i][top], m[i][j] = m[i][j], m[i][top]
                        dirty = True
                        break
        pivot = m[top][top]
        inv = Fraction(1) / pivot[-1]
        invariants.append(tuple(c * inv for c in pivot))
        top += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(invariants) - 1):
            a, b = invariants[i], invariants[i + 1]
            if udivmod(b, a)[1]:
                g = ugcd(a, b)
                lcm = udivmod(umul(a, b), g)[0]
                inv = Fraction(1) / lcm[-1] if lcm else Fraction(1)
                invariants[i] = g
                invariants[i + 1] = tuple(c * inv for c in lcm)
                changed = True
    return invariants


def is_split_injection(matrix):
    """Columns span a free direct summand: all invariant factors are units."""
    m = [row[:] for row in matrix]
    if not m or not m[0]:
        return not m or not m[0]
    ncols = len(m[0])
    invariants = smith_invariants(m)
    return len(invariants) == ncols and all(len(f) == 1 for f in invariants)


def is_split_surjection(matrix):
    """Rows define a surjection Q[del]^cols -> Q[del]^rows."""
    if not matrix:
        return True
    nrows = len(matrix)
    invariants = smith_invariants([row[:] for row in matrix])
    return len(invariants) == nrows and all(len(f) == 1 for f in invariants)


def poly_det(matrix):
    """Determinant of a square matrix of del-only Polys (Bareiss)."""
    m = poly_matrix_to_u(matrix)
    n = len(m)
    if n == 0:
        return Poly.one(0)
    sign = 1
    prev = (Fraction(1),)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Poly.zero(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = uadd(umul(m[i][j], m[k][k]), uneg(umul(m[i][k], m[k][j])))
                m[i][j], rem = udivmod(num, prev)
                assert not rem, "Bareiss exact division failed"
            m[i][k] = ()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = uneg(det)
    return upoly_to(det)


def poly_unimodular_inverse(matrix):
    """Inverse of a square Q[del]-matrix with unit (constant) determinant.

    Returns None when the determinant is not a nonzero constant.
    """
    n = len(matrix)
    det = poly_det(matrix)
    u = upoly_from(det)
    if len(u) != 1:
        return None
    scale = Fraction(1) / u[0]
    inverse = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = poly_det(minor) if minor else Poly.one(0)
            if (i + j) % 2:
                cof = -cof
            row.append(cof.scale(scale))
        inverse.append(row)
    return inverse
