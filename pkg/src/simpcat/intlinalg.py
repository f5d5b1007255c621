"""Exact integer matrix routines: Smith normal form with transforms,
integer linear solving, kernels, and lattice quotients.

Matrices carry their shape explicitly (zero-rank degrees of complexes
make empty matrices routine).  All arithmetic is exact big-integer.
"""

from .errors import InputError


class Mat:
    """A rows x cols integer matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            self.data = [list(r) for r in data]
            if len(self.data) != rows or any(len(r) != cols
                                             for r in self.data):
                raise InputError("matrix data does not match shape "
                                 "%dx%d" % (rows, cols))

    @classmethod
    def identity(cls, n):
        M = cls(n, n)
        for i in range(n):
            M.data[i][i] = 1
        return M

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if not rows:
            raise InputError("shape needed for an empty matrix")
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        n = len(entries)
        M = cls(rows if rows is not None else n,
                cols if cols is not None else n)
        for i, e in enumerate(entries):
            M.data[i][i] = e
        return M

    def copy(self):
        return Mat(self.rows, self.cols, self.data)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return "Mat(%dx%d)" % (self.rows, self.cols)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise InputError("shape mismatch in product")
            out = Mat(self.rows, other.cols)
            for i in range(self.rows):
                row = self.data[i]
                orow = out.data[i]
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        brow = other.data[k]
                        for j in range(other.cols):
                            orow[j] += a * brow[j]
            return out
        raise TypeError

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError("shape mismatch in sum")
        return Mat(self.rows, self.cols,
                   [[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return Mat(self.rows, self.cols,
                   [[k * a for a in r] for r in self.data])

    def is_zero(self):
        return all(a == 0 for r in self.data for a in r)

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def apply(self, vec):
        if len(vec) != self.cols:
            raise InputError("vector length mismatch")
        return [sum(self.data[i][j] * vec[j] for j in range(self.cols))
                for i in range(self.rows)]

    def hstack(self, other):
        if self.rows != other.rows:
            raise InputError("row mismatch in hstack")
        return Mat(self.rows, self.cols + other.cols,
                   [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def reduced(self, moduli):
        """Rows reduced modulo per-row annihilators (0 = no reduction)."""
        if len(moduli) != self.rows:
            raise InputError("need one modulus per row")
        return Mat(self.rows, self.cols,
                   [[a % m if m else a for a in row]
                    for row, m in zip(self.data, moduli)])

    def transpose(self):
        return Mat(self.cols, self.rows,
                   [[self.data[i][j] for i in range(self.rows)]
                    for j in range(self.cols)])


def from_columns(cols, rows):
    M = Mat(rows, len(cols))
    for j, c in enumerate(cols):
        if len(c) != rows:
            raise InputError("column length mismatch")
        for i in range(rows):
            M.data[i][j] = c[i]
    return M


def smith_normal_form(A):
    """(D, S, T, Sinv, Tinv) with D = S * A * T diagonal in divisor-chain
    form, S and T unimodular, and their inverses tracked alongside."""
    D = A.copy()
    m, n = D.rows, D.cols
    S = Mat.identity(m)
    Sinv = Mat.identity(m)
    T = Mat.identity(n)
    Tinv = Mat.identity(n)

    def swap_rows(i, j):
        D.data[i], D.data[j] = D.data[j], D.data[i]
        S.data[i], S.data[j] = S.data[j], S.data[i]
        for r in Sinv.data:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in D.data:
            r[i], r[j] = r[j], r[i]
        for r in T.data:
            r[i], r[j] = r[j], r[i]
        Tinv.data[i], Tinv.data[j] = Tinv.data[j], Tinv.data[i]

    def add_row(i, j, k):
        # row_i += k * row_j ; inverse: column j of Sinv -= k * column i
        D.data[i] = [a + k * b for a, b in zip(D.data[i], D.data[j])]
        S.data[i] = [a + k * b for a, b in zip(S.data[i], S.data[j])]
        for r in Sinv.data:
            r[j] -= k * r[i]

    def add_col(j, i, k):
        # col_j += k * col_i ; inverse: row i of Tinv -= k * row j
        for r in D.data:
            r[j] += k * r[i]
        for r in T.data:
            r[j] += k * r[i]
        Tinv.data[i] = [a - k * b
                        for a, b in zip(Tinv.data[i], Tinv.data[j])]

    def negate_row(i):
        D.data[i] = [-a for a in D.data[i]]
        S.data[i] = [-a for a in S.data[i]]
        for r in Sinv.data:
            r[i] = -r[i]

    s = 0
    while s < min(m, n):
        # find pivot of least absolute value
        piv = None
        best = None
        for i in range(s, m):
            for j in range(s, n):
                a = D.data[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != s:
            swap_rows(s, i)
        if j != s:
            swap_cols(s, j)
        # clear the pivot row and column
        dirty = False
        for i in range(s + 1, m):
            a = D.data[i][s]
            if a:
                add_row(i, s, -(a // D.data[s][s]))
                if D.data[i][s]:
                    dirty = True
        for j in range(s + 1, n):
            a = D.data[s][j]
            if a:
                add_col(j, s, -(a // D.data[s][s]))
                if D.data[s][j]:
                    dirty = True
        if dirty:
            continue
        if any(D.data[i][s] for i in range(s + 1, m)) or \
                any(D.data[s][j] for j in range(s + 1, n)):
            continue
        # enforce divisibility of the remaining block by the pivot
        p = D.data[s][s]
        offender = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if D.data[i][j] % p != 0:
                    offender = (i, j)
                    break
            if offender:
                break
        if offender:
            add_row(s, offender[0], 1)
            continue
        if p < 0:
            negate_row(s)
        s += 1
    return D, S, T, Sinv, Tinv


def rank(A):
    D, _, _, _, _ = smith_normal_form(A)
    return sum(1 for i in range(min(D.rows, D.cols)) if D.data[i][i] != 0)


def invariant_factors(A):
    """Nonzero diagonal entries of the Smith form, in divisor order."""
    D, _, _, _, _ = smith_normal_form(A)
    return [D.data[i][i] for i in range(min(D.rows, D.cols))
            if D.data[i][i] != 0]


def solve(A, b):
    """One integer solution x of A x = b, or None."""
    X = solve_matrix(A, from_columns([list(b)], A.rows))
    return X.column(0) if X is not None else None


def solve_matrix(A, B):
    """Integer X with A X = B, or None.  Uses D = S A T."""
    if A.rows != B.rows:
        raise InputError("shape mismatch in solve")
    D, S, T, _, _ = smith_normal_form(A)
    SB = S * B
    Y = Mat(A.cols, B.cols)
    r = min(A.rows, A.cols)
    for j in range(B.cols):
        for i in range(A.rows):
            d = D.data[i][i] if i < r else 0
            v = SB.data[i][j]
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d != 0:
                    return None
                if i < A.cols:
                    Y.data[i][j] = v // d
    return T * Y


def kernel_basis(A):
    """Columns generating the integer kernel of A."""
    D, _, T, _, _ = smith_normal_form(A)
    r = min(A.rows, A.cols)
    free = [j for j in range(A.cols)
            if j >= r or D.data[j][j] == 0]
    return [T.column(j) for j in free]


def in_span(L, v):
    """Is v in the column span of L over the integers?"""
    return solve(L, v) is not None


def quotient_invariant_factors(G, N):
    """Invariant factors of span(G)/span(N) for integer column-span
    lattices with span(N) contained in span(G) inside Z^k.

    Returns the normalized factor list: torsion entries > 1 in divisor
    order, then one 0 per free rank."""
    if G.cols == 0:
        if N.cols and not N.is_zero():
            raise InputError("relations outside the lattice")
        return []
    X = solve_matrix(G, N)
    if X is None:
        raise InputError("relation lattice is not inside the module "
                         "lattice")
    K = kernel_basis(G)
    R = from_columns(X.columns() + K, G.cols) if (X.cols + len(K)) else \
        Mat(G.cols, 0)
    D, _, _, _, _ = smith_normal_form(R)
    r = min(D.rows, D.cols)
    factors = []
    for i in range(G.cols):
        d = D.data[i][i] if i < r else 0
        factors.append(abs(d))
    return normalize_factors(factors)


def normalize_factors(factors):
    """Drop units, keep torsion in divisor order then zeros (free)."""
    torsion = sorted(f for f in factors if f not in (0, 1))
    zeros = [0] * sum(1 for f in factors if f == 0)
    return torsion + zeros
