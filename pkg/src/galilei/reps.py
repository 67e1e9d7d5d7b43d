"""Finite-dimensional homogeneous-Galilei representations.

Carriers are built from rotation generators S_a and commuting boost
generators eta_a with [S_a,S_b] = i eps_abc S_c, [eta_a,S_b] = i eps_abc
eta_c, [eta_a,eta_b] = 0.  The scalar/vector carriers come from triples
(A, B, C) with AB = 0, CA = 0, A^2 + BC = 0; the two spinor carriers are
fixed 2x2 / 4x4 realizations.

Label convention: the ten vector/scalar triples are keyed (n, m, lam).
The source tables disagree with their own later use for the two
(1,1,*) rows; this module follows the convention that makes the
equation tables consistent, i.e. D(1,1,0) has B = 1, C = 0 and
D(1,1,1) has B = 0, C = 1.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import GRat, ZERO, ONE, I
from .matrix import Matrix, rank, nullspace, nilpotency_index, rref, canonical_span
from .poly import PolyRing

EPS = {
    (0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
    (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1,
}


def eps(a, b, c) -> int:
    return EPS.get((a, b, c), 0)


def spin1_matrix(a: int) -> Matrix:
    """(s_a)_bc = -i eps_abc, the spin-1 matrices with [s_a,s_b] = i eps_abc s_c.

    (The opposite sign convention does not satisfy the commutation
    relation it is paired with, so it is not usable here.)
    """
    return Matrix([[-I * eps(a, b, c) for c in range(3)] for b in range(3)])


def k_row(a: int) -> Matrix:
    """k_a: the 1x3 row with i in slot a."""
    return Matrix([[I if c == a else ZERO for c in range(3)]])


S1_SPIN = [Matrix([[ZERO, GRat(Fraction(1, 2))], [GRat(Fraction(1, 2)), ZERO]]),
           Matrix([[ZERO, GRat(0, Fraction(-1, 2))], [GRat(0, Fraction(1, 2)), ZERO]]),
           Matrix([[GRat(Fraction(1, 2)), ZERO], [ZERO, GRat(Fraction(-1, 2))]])]

PAULI = [m * 2 for m in S1_SPIN]


# (n, m, lam) -> (A, B, C); None marks a block that does not exist.
# B is n x m, C is m x n, A is n x n.
def _m(rows):
    return Matrix.from_rational_rows(rows)


TABLE1 = {
    (0, 1, 0): (None, None, None),
    (1, 0, 0): (_m([[0]]), None, None),
    (1, 1, 0): (_m([[0]]), _m([[1]]), _m([[0]])),
    (1, 1, 1): (_m([[0]]), _m([[0]]), _m([[1]])),
    (1, 2, 1): (_m([[0]]), _m([[1, 0]]), _m([[0], [1]])),
    (2, 0, 0): (_m([[0, 0], [1, 0]]), None, None),
    (2, 1, 0): (_m([[0, 0], [1, 0]]), _m([[0], [0]]), _m([[1, 0]])),
    # B must lie in ker A for AB = 0; (1,0)^T does not, (0,1)^T does.
    (2, 1, 1): (_m([[0, 0], [1, 0]]), _m([[0], [1]]), _m([[0, 0]])),
    (2, 2, 1): (
        _m([[0, 0], [1, 0]]),
        _m([[0, 0], [1, 0]]),
        _m([[0, 0], [1, 0]]),
    ),
    (3, 1, 1): (
        _m([[0, 0, 0], [1, 0, 0], [0, 1, 0]]),
        _m([[0], [0], [-1]]),
        _m([[1, 0, 0]]),
    ),
}


@dataclass(frozen=True)
class RepLabel:
    kind: str  # "S1", "S2", or "D"
    n: int = 0
    m: int = 0
    lam: int = 0

    def __str__(self):
        if self.kind == "D":
            return f"D({self.n},{self.m},{self.lam})"
        return self.kind

    @property
    def dim(self) -> int:
        if self.kind == "S1":
            return 2
        if self.kind == "S2":
            return 4
        return 3 * self.n + self.m


def parse_label(text: str):
    """Parse "D(n,m,l)", "S1", "S2" or sums like "D(2,1,0)+D(0,1,0)"."""
    labels = []
    for piece in text.replace(" ", "").split("+"):
        if piece in ("S1", "S2"):
            labels.append(RepLabel(piece))
            continue
        mt = re.fullmatch(r"D\((\d+),(\d+),(\d+)\)", piece)
        if not mt:
            raise ValueError(f"bad representation label: {piece!r}")
        key = (int(mt.group(1)), int(mt.group(2)), int(mt.group(3)))
        if key not in TABLE1:
            raise ValueError(f"unknown representation label: {piece!r}")
        labels.append(RepLabel("D", *key))
    return labels


@dataclass
class Representation:
    """Carrier with explicit S_a and eta_a matrices.

    Basis order inside a vector/scalar carrier: all triplets first (in
    label order), then all scalars; direct sums concatenate sector-wise
    is NOT done -- summands are kept contiguous, which keeps their own
    block structure intact.
    """

    labels: tuple
    S: list
    eta: list

    @property
    def dim(self) -> int:
        return self.S[0].rows

    def __str__(self):
        return "+".join(str(l) for l in self.labels)


def _abc_rep(A, B, C, n, m):
    """S, eta from an (A, B, C) triple via the standard block pattern."""
    dim = 3 * n + m
    S = []
    eta = []
    for a in range(3):
        sa = spin1_matrix(a)
        ka = k_row(a)
        S_blocks = Matrix.direct_sum(
            [Matrix.identity(n).kron(sa) if n else Matrix.zeros(0, 0),
             Matrix.zeros(m, m)]
        )
        S.append(S_blocks)
        top_left = A.kron(sa) if n else Matrix.zeros(0, 0)
        top_right = B.kron(ka.H) if (n and m) else Matrix.zeros(3 * n, m)
        bot_left = C.kron(ka) if (n and m) else Matrix.zeros(m, 3 * n)
        bot_right = Matrix.zeros(m, m)
        eta.append(Matrix.block([[top_left, top_right], [bot_left, bot_right]]))
    return Representation((RepLabel("D", n, m, 0),), S, eta)


def build(label: RepLabel) -> Representation:
    if label.kind == "S1":
        return Representation((label,), list(S1_SPIN), [Matrix.zeros(2, 2) for _ in range(3)])
    if label.kind == "S2":
        S = [Matrix.direct_sum([s, s]) for s in S1_SPIN]
        half_i = GRat(0, Fraction(1, 2))
        eta = [
            Matrix.block(
                [
                    [Matrix.zeros(2, 2), Matrix.zeros(2, 2)],
                    [sig * half_i, Matrix.zeros(2, 2)],
                ]
            )
            for sig in PAULI
        ]
        return Representation((label,), S, eta)
    key = (label.n, label.m, label.lam)
    if key not in TABLE1:
        raise ValueError(f"unknown label {label}")
    A, B, C = TABLE1[key]
    n, m = label.n, label.m
    if n == 0:
        rep = Representation(
            (label,), [Matrix.zeros(m, m) for _ in range(3)], [Matrix.zeros(m, m) for _ in range(3)]
        )
        return rep
    if m == 0:
        rep = _abc_rep(A, Matrix.zeros(n, 0), Matrix.zeros(0, n), n, 0)
    else:
        rep = _abc_rep(A, B, C, n, m)
    return Representation((label,), rep.S, rep.eta)


def direct_sum(reps) -> Representation:
    reps = list(reps)
    if not reps:
        raise ValueError("empty direct sum")
    labels = tuple(l for r in reps for l in r.labels)
    S = [Matrix.direct_sum([r.S[a] for r in reps]) for a in range(3)]
    eta = [Matrix.direct_sum([r.eta[a] for r in reps]) for a in range(3)]
    return Representation(labels, S, eta)


def build_text(text: str) -> Representation:
    return direct_sum([build(l) for l in parse_label(text)])


def commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


def verify_hg(rep: Representation) -> dict:
    """Check the nine hg(1,3) commutators exactly; list violations."""
    bad = []
    for a in range(3):
        for b in range(3):
            want = Matrix.zeros(rep.dim, rep.dim)
            for c in range(3):
                e = eps(a, b, c)
                if e:
                    want = want + rep.S[c] * (I * e)
            if commutator(rep.S[a], rep.S[b]) != want:
                bad.append(("S,S", a, b))
            want_eta = Matrix.zeros(rep.dim, rep.dim)
            for c in range(3):
                e = eps(a, b, c)
                if e:
                    want_eta = want_eta + rep.eta[c] * (I * e)
            if commutator(rep.eta[a], rep.S[b]) != want_eta:
                bad.append(("eta,S", a, b))
            if not commutator(rep.eta[a], rep.eta[b]).is_zero():
                bad.append(("eta,eta", a, b))
    return {"ok": not bad, "violations": bad}


def eta_dot_symbolic(rep: Representation, names=("p1", "p2", "p3"), ring=None):
    """eta . p with symbolic direction, as a Poly matrix."""
    if ring is None:
        ring = PolyRing(names)
    out = Matrix.zeros(rep.dim, rep.dim, ring.zero)
    for a in range(3):
        pa = ring.sym(names[a])
        out = out + rep.eta[a].map(lambda x: ring.const(x)) * pa
    return out


def rep_nilpotency_index(rep: Representation) -> int:
    """Smallest k with (eta.p)^k = 0 identically in the direction p."""
    m = eta_dot_symbolic(rep)
    idx = nilpotency_index(m)
    if idx is None:
        raise ValueError("eta.p is not nilpotent")
    return idx


# -- brute-force rediscovery of Table 1 ----------------------------------------

TABLE1_PAIRS = sorted({(n, m) for (n, m, _) in TABLE1})


def _abc_ok(A, B, C, n, m):
    if n:
        if m:
            if not (A @ B).is_zero():
                return False
            if not (C @ A).is_zero():
                return False
            if not (A @ A + B @ C).is_zero():
                return False
        else:
            if not (A @ A).is_zero():
                return False
    return True


def _endo_space(A, B, C, n, m):
    """Basis of {(X, Y): XA=AX, XB=BY, YC=CX} as flat GRat vectors."""
    nv = n * n + m * m
    rows = []

    def unit(k):
        v = [ZERO] * nv
        v[k] = ONE
        X = Matrix([[v[i * n + j] for j in range(n)] for i in range(n)])
        Y = Matrix([[v[n * n + i * m + j] for j in range(m)] for i in range(m)])
        return X, Y

    conditions = []
    for k in range(nv):
        X, Y = unit(k)
        resid = []
        if n:
            resid.append(X @ A - A @ X)
        if n and m:
            resid.append(X @ B - B @ Y)
            resid.append(Y @ C - C @ X)
        col = []
        for rmat in resid:
            for row in rmat.entries:
                col.extend(row)
        conditions.append(col)
    if not conditions or not conditions[0]:
        coeff = Matrix.zeros(0, nv)
    else:
        coeff = Matrix(conditions).T
    return [list(v) for v in nullspace(coeff)], nv


def _is_indecomposable(A, B, C, n, m) -> bool:
    """Local endomorphism ring test, exact over the rationals.

    The module is indecomposable iff End/rad is one-dimensional; the
    radical is computed as the kernel of the trace form of the regular
    representation (characteristic zero).
    """
    basis, nv = _endo_space(A, B, C, n, m)
    dim_e = len(basis)
    if dim_e == 0:
        return False  # zero module
    if dim_e == 1:
        return True

    def to_mats(v):
        X = Matrix([[v[i * n + j] for j in range(n)] for i in range(n)])
        Y = Matrix([[v[n * n + i * m + j] for j in range(m)] for i in range(m)])
        return X, Y

    mats = [to_mats(v) for v in basis]
    # Gram matrix of the trace form tr(xy) on End (as matrices acting on
    # the carrier pair); its kernel is the radical in char 0.
    gram = []
    for X1, Y1 in mats:
        row = []
        for X2, Y2 in mats:
            t = ZERO
            if n:
                t = t + (X1 @ X2).trace()
            if m:
                t = t + (Y1 @ Y2).trace()
            row.append(t)
        gram.append(row)
    rad_dim = len(nullspace(Matrix(gram)))
    return dim_e - rad_dim == 1


def _signature(A, B, C, n, m):
    def r(x):
        return rank(x) if x is not None and x.rows and x.cols else 0

    A2 = (A @ A) if n else None
    AB = Matrix.block([[A, B]]) if (n and m) else A
    AC = Matrix.block([[A], [C]]) if (n and m) else A
    return (
        n,
        m,
        r(A) if n else 0,
        r(A2) if n else 0,
        r(B) if (n and m) else 0,
        r(C) if (n and m) else 0,
        r(AB) if n else 0,
        r(AC) if n else 0,
    )


def table1_signatures():
    """The ten invariant signatures computed from the embedded triples."""
    sigs = set()
    for (n, m, lam), (A, B, C) in TABLE1.items():
        if n == 0:
            sigs.add((0, m, 0, 0, 0, 0, 0, 0))
        else:
            B0 = B if B is not None else Matrix.zeros(n, 0)
            C0 = C if C is not None else Matrix.zeros(0, n)
            sigs.add(_signature(A, B0, C0, n, m))
    return sigs


def classify_bruteforce(pairs=None, entries=(-1, 0, 1), max_cells=200_000_000):
    """Enumerate (A,B,C) solutions of the consistency equations over a
    fixed entry set, keep the indecomposable ones, and group them by
    invariant signature.

    Returns the sorted list of signatures found.
    """
    if pairs is None:
        pairs = TABLE1_PAIRS
    entry_vals = [GRat(e) for e in entries]
    found = set()
    for (n, m) in pairs:
        cells = len(entries) ** (n * n + 2 * n * m)
        if cells > max_cells:
            raise ValueError(
                f"enumeration for (n,m)=({n},{m}) needs {cells} cells "
                f"(limit {max_cells})"
            )
        if n == 0:
            # no matrices at all; the scalar module is indecomposable iff m == 1
            if m == 1:
                found.add((0, 1, 0, 0, 0, 0, 0, 0))
            continue
        for a_flat in itertools.product(entry_vals, repeat=n * n):
            A = Matrix([list(a_flat[i * n:(i + 1) * n]) for i in range(n)])
            A2 = A @ A
            if m == 0:
                if not A2.is_zero():
                    continue
                sig = _signature(A, None, None, n, 0)
                # a repeat signature cannot change the result set
                if sig not in found and _is_indecomposable(
                        A, Matrix.zeros(n, 0), Matrix.zeros(0, n), n, 0):
                    found.add(sig)
                continue
            b_cands = []
            for b_flat in itertools.product(entry_vals, repeat=n * m):
                B = Matrix([list(b_flat[i * m:(i + 1) * m]) for i in range(n)])
                if (A @ B).is_zero():
                    b_cands.append(B)
            c_cands = []
            for c_flat in itertools.product(entry_vals, repeat=m * n):
                C = Matrix([list(c_flat[i * n:(i + 1) * n]) for i in range(m)])
                if (C @ A).is_zero():
                    c_cands.append(C)
            for B in b_cands:
                for C in c_cands:
                    if not (A2 + B @ C).is_zero():
                        continue
                    sig = _signature(A, B, C, n, m)
                    if sig not in found and _is_indecomposable(A, B, C, n, m):
                        found.add(sig)
    return sorted(found)
