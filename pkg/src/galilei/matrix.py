"""Dense matrices over an exact ring (GRat, Poly, or Weyl elements).

Entries of one matrix all live in the same ring.  Elimination-based
operations (rank, rref, nullspace) require field entries, i.e. GRat.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GRat, ZERO, ONE, as_grat


def _one_like(x):
    if isinstance(x, GRat):
        return ONE
    if hasattr(x, "algebra"):
        return x.algebra.one
    if hasattr(x, "ring"):
        return x.ring.one
    raise TypeError(f"no unit for {type(x)}")


def _zero_like(x):
    if isinstance(x, GRat):
        return ZERO
    if hasattr(x, "algebra"):
        return x.algebra.zero
    if hasattr(x, "ring"):
        return x.ring.zero
    raise TypeError(f"no zero for {type(x)}")


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = [list(r) for r in entries]
        if entries:
            w = len(entries[0])
            if any(len(r) != w for r in entries):
                raise ValueError("ragged matrix")
        self.entries = entries
        self.rows = len(entries)
        # empty matrices still need a column count for shape algebra
        self.cols = len(entries[0]) if entries else (cols or 0)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zeros(rows, cols, zero=ZERO):
        if rows == 0:
            return Matrix([], cols=cols)
        return Matrix([[zero] * cols for _ in range(rows)])

    @staticmethod
    def identity(n, one=ONE, zero=ZERO):
        return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rational_rows(rows):
        return Matrix([[as_grat(x) for x in r] for r in rows])

    @staticmethod
    def column(vec):
        return Matrix([[x] for x in vec])

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.entries], cols=self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    # -- algebra ------------------------------------------------------------

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, c):
        """Scalar multiple (scalar on the right to keep ring order sane)."""
        return self.map(lambda x: x * c)

    def __rmul__(self, c):
        return self.map(lambda x: c * x)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in @: {self.shape} x {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            z = ZERO
            if self.rows and self.cols:
                z = _zero_like(self.entries[0][0])
            elif other.rows and other.cols:
                z = _zero_like(other.entries[0][0])
            return Matrix.zeros(self.rows, other.cols, z)
        zero = _zero_like(self.entries[0][0])
        nc = other.cols
        brows = other.entries
        out = []
        for r in self.entries:
            # skip zero left factors; these matrices are usually sparse
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = [zero] * nc
            for k, a in nz:
                brow = brows[k]
                for j, b in enumerate(brow):
                    if b:
                        row[j] = row[j] + a * b
            out.append(row)
        return Matrix(out, cols=nc)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix([[] for _ in range(self.cols)], cols=0) if self.cols else Matrix([])
        if self.cols == 0:
            return Matrix([], cols=self.rows)
        return Matrix(list(map(list, zip(*self.entries))))

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        return self.T.map(lambda x: x.conjugate())

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; dims multiply."""
        if self.rows == 0 or other.rows == 0:
            return Matrix.zeros(self.rows * other.rows, self.cols * other.cols)
        out = []
        for r1 in self.entries:
            for r2 in other.entries:
                out.append([a * b for a in r1 for b in r2])
        return Matrix(out)

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = self.entries[0][0]
        for k in range(1, self.rows):
            acc = acc + self.entries[k][k]
        return acc

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = Matrix.identity(
            self.rows,
            _one_like(self.entries[0][0]) if self.rows else ONE,
            _zero_like(self.entries[0][0]) if self.rows else ZERO,
        )
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    # -- block building -----------------------------------------------------

    @staticmethod
    def block(blocks) -> "Matrix":
        """Assemble from a 2D grid of matrices (shapes must tile)."""
        out = []
        width = None
        for brow in blocks:
            if not brow:
                continue
            width = sum(b.cols for b in brow)
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                out.append(row)
        return Matrix(out, cols=width)

    @staticmethod
    def direct_sum(mats) -> "Matrix":
        mats = list(mats)
        zero = ZERO
        for m in mats:
            if m.rows and m.cols:
                zero = _zero_like(m.entries[0][0])
                break
        n = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = [[zero] * c for _ in range(n)]
        i0 = j0 = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    out[i0 + i][j0 + j] = m.entries[i][j]
            i0 += m.rows
            j0 += m.cols
        return Matrix(out, cols=c)

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix([[self.entries[i][j] for j in cols] for i in rows])

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.entries) + "]"

    __repr__ = __str__


# -- elimination over the GRat field ------------------------------------------


def rref(m: Matrix):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    a = [row[:] for row in m.entries]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Matrix(a), pivots


def rank(m: Matrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a = [row[:] for row in m.entries]
    nr, nc = m.rows, m.cols
    prev = ONE
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        for i in range(r + 1, nr):
            fi = a[i][c]
            a[i] = [(piv * a[i][j] - fi * a[r][j]) / prev for j in range(nc)]
        prev = piv
        r += 1
        if r == nr:
            break
    return r


def nullspace(m: Matrix):
    """Exact right-nullspace basis as a list of column tuples (canonical)."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(ONE if i == j else ZERO for i in range(m.cols)) for j in range(m.cols)]
    R, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -R.entries[r][f]
        basis.append(tuple(v))
    return basis


def canonical_span(vectors, dim: int):
    """Unique reduced basis (rref rows) spanning the given vectors."""
    if not vectors:
        return Matrix.zeros(0, dim)
    R, _ = rref(Matrix([list(v) for v in vectors]))
    rows = [r for r in R.entries if any(r)]
    return Matrix(rows) if rows else Matrix.zeros(0, dim)


class SubspaceBasis:
    """A subspace of GRat^dim, held in canonical reduced echelon form."""

    def __init__(self, dim: int, vectors):
        self.dim = dim
        self.basis = canonical_span(vectors, dim)

    @property
    def dimension(self) -> int:
        return self.basis.rows

    def vectors(self):
        return [tuple(r) for r in self.basis.entries]

    def contains(self, vec) -> bool:
        probe = canonical_span(list(self.vectors()) + [tuple(vec)], self.dim)
        return probe.rows == self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.dim == other.dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, rank={self.dimension})"


def solve_homogeneous(coeff: Matrix) -> SubspaceBasis:
    """Full solution space of coeff @ x = 0, exact."""
    return SubspaceBasis(coeff.cols, nullspace(coeff))


def det(m: Matrix):
    """Determinant by expansion with subset memoisation (small matrices).

    Works over any commutative entry ring (GRat or Poly).
    """
    if m.rows != m.cols:
        raise ValueError("det of non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    zero = _zero_like(m.entries[0][0])
    # memo[mask] = det of submatrix using rows [n-popcount..] and columns in mask
    memo = {0: _one_like(m.entries[0][0])}
    full = (1 << n) - 1

    def rec(mask, row):
        if mask in memo:
            return memo[mask]
        acc = zero
        j = 0  # position of column c among the set bits of mask
        for c in range(n):
            bit = 1 << c
            if not (mask & bit):
                continue
            e = m.entries[row][c]
            if e:
                sub = rec(mask ^ bit, row + 1)
                term = e * sub
                acc = acc + term if j % 2 == 0 else acc - term
            j += 1
        memo[mask] = acc
        return acc

    return rec(full, 0)


def nilpotency_index(m: Matrix, max_power=None):
    """Smallest k >= 1 with m^k = 0, or None if not nilpotent up to dim."""
    if m.rows != m.cols:
        raise ValueError("nilpotency of non-square matrix")
    limit = max_power or m.rows + 1
    p = m
    for k in range(1, limit + 1):
        if p.is_zero():
            return k
        p = p @ m
    return None


def nilpotent_exp(n: Matrix, t=None) -> Matrix:
    """exp(t*n) as an exact finite sum; rejects non-nilpotent n.

    The diagnostic names the smallest power that fails to vanish up to dim.
    """
    idx = nilpotency_index(n)
    if idx is None:
        raise ValueError(
            f"matrix is not nilpotent: power {n.rows + 1} still nonzero "
            f"(checked up to dimension {n.rows})"
        )
    one = _one_like(n.entries[0][0]) if n.rows else ONE
    zero = _zero_like(n.entries[0][0]) if n.rows else ZERO
    tn = n if t is None else n.map(lambda x: x * t)
    out = Matrix.identity(n.rows, one, zero)
    term = Matrix.identity(n.rows, one, zero)
    fact = 1
    for k in range(1, idx):
        term = term @ tn
        fact *= k
        out = out + term.map(lambda x: x * GRat(Fraction(1, fact)))
    return out


def evaluate_matrix(m: Matrix, assignment: dict) -> Matrix:
    """Evaluate a Poly matrix at a rational point, yielding a GRat matrix."""
    return m.map(lambda p: p.eval(assignment) if hasattr(p, "eval") else p)
