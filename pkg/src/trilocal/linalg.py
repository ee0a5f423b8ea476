"""Exact matrix normal forms over Z, Z[1/k], Q and Q[x].

The diagonalization routines return the transformation matrices and
re-verify the identity U * M * V = D (and unimodularity of U, V) before
returning, so a successful call is its own certificate.
"""

from __future__ import annotations

from .errors import UnsupportedRingError
from .rings import IntegerRing, KadicFraction, KadicRing, PolynomialRing, RationalField, ZZ


class Matrix:
    """Immutable rectangular matrix over one of the exact rings."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        rows = [list(r) for r in rows]
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, m, n):
        return cls(ring, [[ring.zero()] * n for _ in range(m)])

    @classmethod
    def from_ints(cls, ring, rows):
        return cls(ring, [[ring.from_int(x) for x in r] for r in rows])

    def copy_rows(self):
        return [r[:] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        eq = self.ring.eq
        return all(
            eq(self.rows[i][j], other.rows[i][j])
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        rg = self.ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = rg.zero()
                for t in range(self.ncols):
                    acc = rg.add(acc, rg.mul(self.rows[i][t], other.rows[t][j]))
                row.append(acc)
            out.append(row)
        return Matrix(rg, out)

    def transpose(self):
        return Matrix(self.ring, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def det(self):
        """Fraction-free (Bareiss) determinant; exact in an integral domain."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        rg = self.ring
        if n == 0:
            return rg.one()
        a = self.copy_rows()
        sign = 1
        prev = rg.one()
        for k in range(n - 1):
            if rg.is_zero(a[k][k]):
                for i in range(k + 1, n):
                    if not rg.is_zero(a[i][k]):
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return rg.zero()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = rg.sub(rg.mul(a[i][j], a[k][k]), rg.mul(a[i][k], a[k][j]))
                    q = rg.exact_div(num, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division failed; ring is not an integral domain?")
                    a[i][j] = q
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return rg.neg(d) if sign < 0 else d

    def is_invertible(self):
        """Square and determinant a unit of the ring."""
        return self.nrows == self.ncols and self.ring.is_unit(self.det())

    def fmt(self):
        return "[" + "; ".join(" ".join(self.ring.fmt(x) for x in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self.ring.name}, {self.fmt()})"


def int_matrix(rows):
    return Matrix(ZZ, rows)


class DiagonalForm:
    """Result of a diagonalization U * M * V = D with invertible U, V."""

    __slots__ = ("ring", "source", "U", "D", "V")

    def __init__(self, ring, source, U, D, V):
        self.ring = ring
        self.source = source
        self.U = U
        self.D = D
        self.V = V

    def diagonal(self):
        n = min(self.D.nrows, self.D.ncols)
        return [self.D.rows[i][i] for i in range(n)]

    def rank(self):
        return sum(1 for d in self.diagonal() if not self.ring.is_zero(d))

    def invariant_factors(self):
        """Non-unit, nonzero diagonal entries in canonical form."""
        out = []
        for d in self.diagonal():
            if self.ring.is_zero(d) or self.ring.is_unit(d):
                continue
            rep, _ = self.ring.unit_normal(d)
            out.append(rep)
        return out

    def free_rank(self):
        """Rank of the cokernel R^cols / rowspan(M)."""
        return self.D.ncols - self.rank()

    def verify(self):
        """Recheck U*M*V == D, invertibility of U and V, divisibility chain."""
        if self.U * self.source * self.V != self.D:
            return False
        if not (self.U.is_invertible() and self.V.is_invertible()):
            return False
        diag = self.diagonal()
        for i in range(len(diag) - 1):
            if self.ring.is_zero(diag[i]):
                if not self.ring.is_zero(diag[i + 1]):
                    return False
            elif self.ring.exact_div(diag[i + 1], diag[i]) is None:
                return False
        # off-diagonal entries must vanish
        for i in range(self.D.nrows):
            for j in range(self.D.ncols):
                if i != j and not self.ring.is_zero(self.D.rows[i][j]):
                    return False
        return True


def _euclidean_engine(mat, size, divmod_):
    """Shared diagonalization loop for Euclidean rings.

    size(a) is a nonnegative measure with size(a) == 0 iff a == 0;
    divmod_(a, b) returns (q, r) with a == q*b + r and size(r) < size(b)
    or r == 0.
    """
    rg = mat.ring
    a = mat.copy_rows()
    m, n = mat.nrows, mat.ncols
    U = Matrix.identity(rg, m).copy_rows()
    V = Matrix.identity(rg, n).copy_rows()

    def row_add(i, j, c):  # row_i += c * row_j, mirrored in U
        a[i] = [rg.add(a[i][t], rg.mul(c, a[j][t])) for t in range(n)]
        U[i] = [rg.add(U[i][t], rg.mul(c, U[j][t])) for t in range(m)]

    def col_add(j, i, c):  # col_j += col_i * c, mirrored in V
        for t in range(m):
            a[t][j] = rg.add(a[t][j], rg.mul(a[t][i], c))
        for t in range(n):
            V[t][j] = rg.add(V[t][j], rg.mul(V[t][i], c))

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for t in range(m):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(n):
            V[t][i], V[t][j] = V[t][j], V[t][i]

    def row_scale(i, u):  # u must be a unit
        a[i] = [rg.mul(u, x) for x in a[i]]
        U[i] = [rg.mul(u, x) for x in U[i]]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if not rg.is_zero(a[i][j]) and (best is None or size(a[i][j]) < size(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            clean = True
            for i in range(t + 1, m):
                if rg.is_zero(a[i][t]):
                    continue
                q, r = divmod_(a[i][t], a[t][t])
                row_add(i, t, rg.neg(q))
                if not rg.is_zero(r):
                    clean = False
            for j in range(t + 1, n):
                if rg.is_zero(a[t][j]):
                    continue
                q, r = divmod_(a[t][j], a[t][t])
                col_add(j, t, rg.neg(q))
                if not rg.is_zero(r):
                    clean = False
            if not clean:
                best = min(
                    ((i, j) for i in range(t, m) for j in range(t, n) if not rg.is_zero(a[i][j])),
                    key=lambda ij: size(a[ij[0]][ij[1]]),
                )
                continue
            # pivot must divide the whole trailing block for the chain
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if rg.is_zero(a[i][j]):
                        continue
                    if not rg.is_zero(divmod_(a[i][j], a[t][t])[1]):
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad is None:
                break
            row_add(t, bad[0], rg.one())
            best = min(
                ((i, j) for i in range(t, m) for j in range(t, n) if not rg.is_zero(a[i][j])),
                key=lambda ij: size(a[ij[0]][ij[1]]),
            )
        t += 1

    # canonicalize diagonal entries by unit scaling
    for i in range(min(m, n)):
        if rg.is_zero(a[i][i]):
            continue
        rep, u = rg.unit_normal(a[i][i])
        if not rg.eq(u, rg.one()):
            inv = rg.exact_div(rg.one(), u)
            row_scale(i, inv)
    return DiagonalForm(rg, mat, Matrix(rg, U), Matrix(rg, a), Matrix(rg, V))


def smith_normal_form(mat):
    """Smith normal form of an integer matrix: U*M*V = D, d_i | d_{i+1}, d_i >= 0."""
    if not isinstance(mat.ring, IntegerRing):
        raise UnsupportedRingError("smith_normal_form expects an integer matrix")
    out = _euclidean_engine(mat, abs, divmod)
    if not out.verify():
        raise AssertionError("Smith reduction failed self-verification")
    return out


def _poly_divmod(a, b):
    return a.divmod(b)


def _poly_size(p):
    return 0 if p.is_zero() else p.degree() + 1


def _field_divmod(ring):
    def dm(a, b):
        return ring.exact_div(a, b), ring.zero()
    return dm


def _kadic_reduce(mat):
    """Diagonalize over Z[1/k]: clear denominators, integer SNF, strip units."""
    rg = mat.ring
    k = rg.k
    e = max((x.exp for row in mat.rows for x in row), default=0)
    int_rows = [[x.num * k ** (e - x.exp) for x in row] for row in mat.rows]
    snf = smith_normal_form(Matrix(ZZ, int_rows))
    U = Matrix(rg, [[rg.from_int(x) for x in row] for row in snf.U.rows])
    V = Matrix(rg, [[rg.from_int(x) for x in row] for row in snf.V.rows])
    # U * (k^e * mat) * V = D_int, so U * mat * V = D_int / k^e; rescale each
    # row so the diagonal becomes the canonical k-free representative.
    D_rows = [[rg.zero()] * mat.ncols for _ in range(mat.nrows)]
    U_rows = U.copy_rows()
    for i in range(min(mat.nrows, mat.ncols)):
        d_int = snf.D.rows[i][i]
        if d_int == 0:
            continue
        d = KadicFraction(k, d_int, e)
        rep, u = rg.unit_normal(d)
        inv = rg.exact_div(rg.one(), u)
        U_rows[i] = [rg.mul(inv, x) for x in U_rows[i]]
        D_rows[i][i] = rep
    out = DiagonalForm(rg, mat, Matrix(rg, U_rows), Matrix(rg, D_rows), V)
    if not out.verify():
        raise AssertionError("Z[1/k] reduction failed self-verification")
    return out


def euclidean_reduce(mat):
    """Diagonal form with invariant factors over Z[1/k], Q[x] or Q."""
    rg = mat.ring
    if isinstance(rg, KadicRing):
        return _kadic_reduce(mat)
    if isinstance(rg, PolynomialRing):
        if rg.base != "Q":
            raise UnsupportedRingError("euclidean_reduce needs field polynomial coefficients")
        out = _euclidean_engine(mat, _poly_size, _poly_divmod)
    elif isinstance(rg, RationalField):
        out = _euclidean_engine(mat, lambda x: 0 if x == 0 else 1, _field_divmod(rg))
    else:
        raise UnsupportedRingError(f"euclidean_reduce does not support {rg.name}")
    if not out.verify():
        raise AssertionError("Euclidean reduction failed self-verification")
    return out


def diagonal_form(mat):
    """Dispatch to the Smith or Euclidean routine appropriate for mat.ring."""
    if isinstance(mat.ring, IntegerRing):
        return smith_normal_form(mat)
    return euclidean_reduce(mat)


def solve_left(form, v):
    """Solve x * M = v over the ring, given a DiagonalForm of M.

    Returns the coefficient list x, or None when v is not in the row
    span of M.
    """
    rg = form.ring
    r, n = form.source.nrows, form.source.ncols
    if len(v) != n:
        raise ValueError("vector length does not match matrix columns")
    # w = v * V; then z * D = w, x = z * U.
    w = [rg.zero()] * n
    for j in range(n):
        acc = rg.zero()
        for t in range(n):
            acc = rg.add(acc, rg.mul(v[t], form.V.rows[t][j]))
        w[j] = acc
    z = [rg.zero()] * r
    for i in range(n):
        d = form.D.rows[i][i] if i < min(r, n) else rg.zero()
        if rg.is_zero(d):
            if not rg.is_zero(w[i]):
                return None
        else:
            q = rg.exact_div(w[i], d)
            if q is None:
                return None
            z[i] = q
    x = [rg.zero()] * r
    for j in range(r):
        acc = rg.zero()
        for t in range(r):
            acc = rg.add(acc, rg.mul(z[t], form.U.rows[t][j]))
        x[j] = acc
    return x


def in_row_span(form, v):
    return solve_left(form, v) is not None
