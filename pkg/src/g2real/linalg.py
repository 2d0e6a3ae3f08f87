"""Exact linear algebra over a field handle.

Matrices are immutable tuples of tuples of raw field elements; the field
handle supplies the arithmetic.  Gaussian elimination requires an honest
field (division), so callers must not pass split quadratic algebras here;
3x3 determinants and adjugates use ring-safe closed forms in fields.py.
"""


def mat(rows):
    return tuple(tuple(r) for r in rows)


def identity(F, n):
    return tuple(
        tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)
    )


def zeros(F, n, m):
    return tuple(tuple(F.zero for _ in range(m)) for _ in range(n))


def transpose(a):
    return tuple(zip(*a))


def mat_add(F, a, b):
    return tuple(tuple(F.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_sub(F, a, b):
    return tuple(tuple(F.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(F, a):
    return tuple(tuple(F.neg(x) for x in r) for r in a)


def scalar_mat(F, c, a):
    return tuple(tuple(F.mul(c, x) for x in r) for r in a)


def mat_mul(F, a, b):
    bt = transpose(b)
    out = []
    for row in a:
        orow = []
        for col in bt:
            s = F.zero
            for x, y in zip(row, col):
                s = F.add(s, F.mul(x, y))
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)


def mat_vec(F, a, v):
    out = []
    for row in a:
        s = F.zero
        for x, y in zip(row, v):
            s = F.add(s, F.mul(x, y))
        out.append(s)
    return tuple(out)


def mat_pow(F, a, n):
    r = identity(F, len(a))
    b = a
    while n:
        if n & 1:
            r = mat_mul(F, r, b)
        b = mat_mul(F, b, b)
        n >>= 1
    return r


def mat_eq(F, a, b):
    return all(F.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def map_entries(f, a):
    return tuple(tuple(f(x) for x in r) for r in a)


def _echelon(F, a):
    """Row-reduce; returns (reduced rows as lists, pivot column list)."""
    rows = [list(r) for r in a]
    n = len(rows)
    m = len(rows[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        pr = None
        for i in range(r, n):
            if not F.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(n):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(F, a):
    if not a:
        return 0
    _, pivots = _echelon(F, a)
    return len(pivots)


def nullspace(F, a):
    """Basis (tuple of vectors) of the right null space of a."""
    if not a:
        return ()
    rows, pivots = _echelon(F, a)
    m = len(a[0])
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * m
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(rows[r][fc])
        basis.append(tuple(v))
    return tuple(basis)


def solve(F, a, b):
    """One solution x of a x = b, or None when inconsistent."""
    n = len(a)
    m = len(a[0])
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    rows, pivots = _echelon(F, aug)
    for r in rows:
        if all(F.is_zero(x) for x in r[:m]) and not F.is_zero(r[m]):
            return None
    x = [F.zero] * m
    for r, pc in enumerate(pivots):
        if pc < m:
            x[pc] = rows[r][m]
    return tuple(x)


def det(F, a):
    n = len(a)
    rows = [list(r) for r in a]
    d = F.one
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not F.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            return F.zero
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            d = F.neg(d)
        d = F.mul(d, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(rows[i][c]):
                f = F.mul(inv, rows[i][c])
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return d


def inverse(F, a):
    n = len(a)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(a)]
    rows, pivots = _echelon(F, aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def charpoly3(F, a):
    """Characteristic polynomial X^3 - tr X^2 + s2 X - det of a 3x3 matrix,
    returned low-first as (c0, c1, c2) with X^3 + c2 X^2 + c1 X + c0."""
    tr = F.add(F.add(a[0][0], a[1][1]), a[2][2])
    m00 = F.sub(F.mul(a[1][1], a[2][2]), F.mul(a[1][2], a[2][1]))
    m11 = F.sub(F.mul(a[0][0], a[2][2]), F.mul(a[0][2], a[2][0]))
    m22 = F.sub(F.mul(a[0][0], a[1][1]), F.mul(a[0][1], a[1][0]))
    s2 = F.add(F.add(m00, m11), m22)
    d = det3(F, a)
    return (F.neg(d), s2, F.neg(tr))


def det3(F, a):
    t1 = F.mul(a[0][0], F.sub(F.mul(a[1][1], a[2][2]), F.mul(a[1][2], a[2][1])))
    t2 = F.mul(a[0][1], F.sub(F.mul(a[1][2], a[2][0]), F.mul(a[1][0], a[2][2])))
    t3 = F.mul(a[0][2], F.sub(F.mul(a[1][0], a[2][1]), F.mul(a[1][1], a[2][0])))
    return F.add(F.add(t1, t2), t3)


def adjugate3(F, a):
    c = [[None] * 3 for _ in range(3)]
    idx = ((1, 2), (0, 2), (0, 1))
    for i in range(3):
        for j in range(3):
            r0, r1 = idx[i]
            c0, c1 = idx[j]
            minor = F.sub(F.mul(a[r0][c0], a[r1][c1]), F.mul(a[r0][c1], a[r1][c0]))
            c[j][i] = minor if (i + j) % 2 == 0 else F.neg(minor)
    return mat(c)


def inverse3(F, a):
    d = det3(F, a)
    if F.is_zero(d):
        raise ZeroDivisionError("matrix is singular")
    dinv = F.inv(d)
    return scalar_mat(F, dinv, adjugate3(F, a))


def eval_poly_at(F, coeffs, a):
    """f(a) for a square matrix a and f given low-first over F."""
    n = len(a)
    out = scalar_mat(F, coeffs[0], identity(F, n)) if coeffs else zeros(F, n, n)
    p = a
    for c in coeffs[1:]:
        out = mat_add(F, out, scalar_mat(F, c, p))
        p = mat_mul(F, p, a)
    return out


def vectors_matrix_to_flat(a):
    return tuple(x for row in a for x in row)


def flat_to_matrix(v, n, m):
    return tuple(tuple(v[i * m + j] for j in range(m)) for i in range(n))


def solve_sylvester_space(F, left, right, n=3):
    """Basis of {X : left X = X right} for n x n matrices over F.

    Returns a tuple of n x n matrices spanning the solution space.
    """
    # unknowns X[i][j] flattened row-major; equations (left X - X right)[i][j] = 0
    rows = []
    for i in range(n):
        for j in range(n):
            coeff = [F.zero] * (n * n)
            for k in range(n):
                coeff[k * n + j] = F.add(coeff[k * n + j], left[i][k])
                coeff[i * n + k] = F.sub(coeff[i * n + k], right[k][j])
            rows.append(tuple(coeff))
    basis = nullspace(F, tuple(rows))
    return tuple(flat_to_matrix(v, n, n) for v in basis)


def bilinear_eval(F, gram, u, w):
    s = F.zero
    for i, ui in enumerate(u):
        if F.is_zero(ui):
            continue
        row = gram[i]
        for j, wj in enumerate(w):
            if not F.is_zero(wj):
                s = F.add(s, F.mul(ui, F.mul(row[j], wj)))
    return s


def diagonalize_form(F, gram):
    """Orthogonal basis for a symmetric bilinear form given by its Gram matrix.

    Returns (basis, diag) with diag[i] = B(v_i, v_i).  Characteristic != 2.
    Isotropic pivots are repaired with u + w when B(u, w) != 0; a totally
    isotropic tail (degenerate form) is emitted with zero diagonal entries.
    """
    n = len(gram)
    remaining = [
        tuple(F.one if j == i else F.zero for j in range(n)) for i in range(n)
    ]
    basis, diag = [], []
    while remaining:
        v = None
        for u in remaining:
            if not F.is_zero(bilinear_eval(F, gram, u, u)):
                v = u
                break
        if v is None:
            found = None
            for a in range(len(remaining)):
                for b in range(a + 1, len(remaining)):
                    if not F.is_zero(bilinear_eval(F, gram, remaining[a], remaining[b])):
                        found = tuple(
                            F.add(x, y) for x, y in zip(remaining[a], remaining[b])
                        )
                        break
                if found:
                    break
            if found is None:
                for u in remaining:
                    basis.append(u)
                    diag.append(F.zero)
                break
            v = found
        d = bilinear_eval(F, gram, v, v)
        basis.append(v)
        diag.append(d)
        dinv = F.inv(d)
        sel = []
        for u in remaining:
            c = F.mul(dinv, bilinear_eval(F, gram, u, v))
            u2 = tuple(F.sub(x, F.mul(c, y)) for x, y in zip(u, v))
            if all(F.is_zero(x) for x in u2):
                continue
            if rank(F, tuple(sel) + (u2,)) > len(sel):
                sel.append(u2)
        remaining = sel
    return tuple(basis), tuple(diag)


def first_invertible_combination(F, basis, rng=None, tries=200):
    """An invertible matrix in the span of `basis`, or None.

    Scans the basis first, then seeded random combinations.  Over the fields
    used here an invertible element exists whenever the span contains one
    with substantial probability, so the bounded scan is reliable.
    """
    for b in basis:
        if not F.is_zero(det(F, b)):
            return b
    if rng is None or not basis:
        return None
    n = len(basis[0])
    for _ in range(tries):
        combo = zeros(F, n, n)
        for b in basis:
            c = F.random(rng)
            combo = mat_add(F, combo, scalar_mat(F, c, b))
        if not F.is_zero(det(F, combo)):
            return combo
    return None
