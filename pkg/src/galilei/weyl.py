"""Normal-ordered operator calculus for x_a, p0, p_a and central symbols.

Canonical form: every element is a sum of monomials

    c(params) * x1^a1 x2^a2 x3^a3 * t^g * p0^k * p1^b1 p2^b2 p3^b3

with all position factors to the left of all momentum factors.  The
commutators are [x_a, p_b] = i delta_ab, [t, p0] = -i (momenta act as
-i d/dx, the energy as +i d/dt), everything else commutes.  Reordering a
product into canonical form uses the closed two-factor formula

    p^n x^m = sum_j C(n,j) C(m,j) j! (-i)^j x^(m-j) p^(n-j)

per axis, so normal_order(u*v) is exact in one pass.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .scalars import GRat, ZERO, ONE, I, as_grat
from .poly import PolyRing, Poly
from .matrix import Matrix

X_SLOTS = (0, 1, 2)
T_SLOT = 3
P0_SLOT = 4
P_SLOTS = (5, 6, 7)
NSLOTS = 8


class WeylAlgebra:
    """Operator algebra with a fixed coefficient ring of central symbols."""

    def __init__(self, params: PolyRing):
        self.params = params
        self.zero = WeylElement(self, {})
        self.one = WeylElement(self, {(0,) * NSLOTS: params.one})

    def const(self, c) -> "WeylElement":
        if isinstance(c, Poly):
            if c.ring != self.params:
                raise ValueError("foreign coefficient ring")
            return WeylElement(self, {(0,) * NSLOTS: c} if c else {})
        c = as_grat(c)
        return WeylElement(self, {(0,) * NSLOTS: self.params.const(c)} if c else {})

    def sym(self, name: str, power: int = 1) -> "WeylElement":
        return self.const(self.params.sym(name, power))

    def _gen(self, slot: int, power: int = 1) -> "WeylElement":
        e = [0] * NSLOTS
        e[slot] = power
        return WeylElement(self, {tuple(e): self.params.one})

    def x(self, a: int) -> "WeylElement":
        return self._gen(X_SLOTS[a])

    def p(self, a: int) -> "WeylElement":
        return self._gen(P_SLOTS[a])

    @property
    def p0(self) -> "WeylElement":
        return self._gen(P0_SLOT)

    @property
    def t(self) -> "WeylElement":
        return self._gen(T_SLOT)

    def from_x_poly(self, poly: Poly, xnames=("x1", "x2", "x3")) -> "WeylElement":
        """Lift a commutative polynomial in x (and params) to an operator."""
        out = self.zero
        ring = poly.ring
        xidx = [ring.index.get(nm) for nm in xnames]
        for e, c in poly.terms.items():
            key = [0] * NSLOTS
            rest = list(e)
            for a, k in enumerate(xidx):
                if k is not None:
                    key[X_SLOTS[a]] = e[k]
                    rest[k] = 0
            coeff = Poly(ring, {tuple(rest): c}).map_to(self.params)
            out = out + WeylElement(self, {tuple(key): coeff})
        return out

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and self.params == other.params

    def __hash__(self):
        return hash(("weyl", self.params))


def _pair_reorder(n: int, m: int, bracket: GRat):
    """Coefficients for p^n x^m = sum_j c_j x^(m-j) p^(n-j), [x,p] = bracket^-ish.

    bracket is the scalar s in  p x = x p + s  (so s = -i for [x,p] = i).
    """
    out = []
    for j in range(min(n, m) + 1):
        out.append((j, GRat(comb(n, j) * comb(m, j) * factorial(j)) * bracket ** j))
    return out


class WeylElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: WeylAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms  # exponent tuple (len 8) -> nonzero Poly coefficient

    # -- additive structure ---------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return WeylElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def _lift(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.algebra != self.algebra:
                raise ValueError("mixed Weyl algebras")
            return other
        return self.algebra.const(other)

    # -- multiplication ----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GRat, Poly)):
            other = self._lift(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        alg = self.algebra
        acc: dict = {}
        minus_i = GRat(0, -1)
        plus_i = I
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                coeff0 = c1 * c2
                # start from the naive concatenation, then reorder the
                # momentum part of e1 across the position part of e2
                expansions = [((), coeff0)]
                # per-axis expansion: (slots to subtract, coefficient)
                parts: list = []
                for a in range(3):
                    n = e1[P_SLOTS[a]]
                    m = e2[X_SLOTS[a]]
                    if n and m:
                        parts.append((P_SLOTS[a], X_SLOTS[a], _pair_reorder(n, m, minus_i)))
                n0 = e1[P0_SLOT]
                m0 = e2[T_SLOT]
                if n0 and m0:
                    parts.append((P0_SLOT, T_SLOT, _pair_reorder(n0, m0, plus_i)))
                combos = [({}, ONE)]
                for pslot, xslot, options in parts:
                    new = []
                    for sub, cf in combos:
                        for j, cj in options:
                            s2 = dict(sub)
                            s2[(pslot, xslot)] = j
                            new.append((s2, cf * cj))
                    combos = new
                for sub, cf in combos:
                    key = [a + b for a, b in zip(e1, e2)]
                    for (pslot, xslot), j in sub.items():
                        key[pslot] -= j
                        key[xslot] -= j
                    coeff = coeff0 * cf
                    k = tuple(key)
                    s = acc.get(k)
                    s = coeff if s is None else s + coeff
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)
        return WeylElement(alg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GRat, Poly)):
            return self._lift(other) * self
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def commutator(self, other) -> "WeylElement":
        other = self._lift(other)
        return self * other - other * self

    def conjugate(self) -> "WeylElement":
        """Formal adjoint: reverse factor order, conjugate coefficients.

        x, p, p0, t are self-adjoint; params are treated as real.
        """
        alg = self.algebra
        out = alg.zero
        for e, c in self.terms.items():
            pkey = [0] * NSLOTS
            xkey = [0] * NSLOTS
            for s in (*P_SLOTS, P0_SLOT):
                pkey[s] = e[s]
            for s in (*X_SLOTS, T_SLOT):
                xkey[s] = e[s]
            left = WeylElement(alg, {tuple(pkey): c.conjugate()})
            right = WeylElement(alg, {tuple(xkey): alg.params.one})
            out = out + left * right
        return out

    # -- structure --------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GRat, Poly)):
            other = self._lift(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset((e, hash(c)) for e, c in self.terms.items())))

    def param_degree(self, name: str) -> int:
        return max((c.degree_in(name) for c in self.terms.values()), default=0)

    def truncate(self, spec) -> "WeylElement":
        """Drop monomials whose central-symbol exponents leave the declared
        window.  spec: iterable of (name, lo, hi) exponent bounds."""
        spec = list(spec)
        terms = {}
        for e, c in self.terms.items():
            kept = c
            for name, lo, hi in spec:
                pieces = {}
                k = kept.ring.index[name]
                for ee, cc in kept.terms.items():
                    if lo <= ee[k] <= hi:
                        pieces[ee] = cc
                kept = Poly(kept.ring, pieces)
                if not kept:
                    break
            if kept:
                terms[e] = kept
        return WeylElement(self.algebra, terms)

    def subs_params(self, assignment: dict) -> "WeylElement":
        poly_vals = any(isinstance(v, Poly) for v in assignment.values())
        terms = {}
        for e, c in self.terms.items():
            c2 = c.subs_poly(assignment) if poly_vals else c.subs(assignment)
            if c2:
                terms[e] = terms[e] + c2 if e in terms else c2
        return WeylElement(self.algebra, terms)

    def coefficient_of_key(self, **powers) -> Poly:
        """Coefficient Poly of the canonical monomial with the given
        exponents (x1..x3, t, p0, p1..p3 keywords; default 0)."""
        names = ["x1", "x2", "x3", "t", "p0", "p1", "p2", "p3"]
        key = tuple(powers.get(nm, 0) for nm in names)
        return self.terms.get(key, self.algebra.params.zero)

    # -- text ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["x1", "x2", "x3", "t", "p0", "p1", "p2", "p3"]
        bits = []
        for e, c in sorted(self.terms.items()):
            facs = [f"{names[k]}^{p}" if p != 1 else names[k] for k, p in enumerate(e) if p]
            cs = str(c)
            if " + " in cs or cs.startswith("-") and facs:
                cs = f"({cs})"
            bits.append("*".join([cs] + facs) if facs else cs)
        return " + ".join(bits)

    __repr__ = __str__


# -- matrices over the Weyl algebra -------------------------------------------


def weyl_matrix(alg: WeylAlgebra, mat: Matrix) -> Matrix:
    """Lift a GRat matrix to a Weyl-element matrix."""
    return mat.map(lambda x: alg.const(x))


def matrix_dagger(m: Matrix) -> Matrix:
    return m.T.map(lambda w: w.conjugate())


def matrix_exp_nilpotent(m: Matrix, max_order: int = 12) -> Matrix:
    """exp of a matrix over the Weyl algebra whose powers terminate."""
    alg = m.entries[0][0].algebra
    out = Matrix.identity(m.rows, alg.one, alg.zero)
    term = out
    for k in range(1, max_order + 1):
        term = term @ m
        if term.is_zero():
            return out
        out = out + term.map(lambda w: w * GRat(Fraction(1, factorial(k))))
    raise ValueError(f"matrix exponential did not terminate by order {max_order}")


# -- external fields -----------------------------------------------------------


class FieldConfig:
    """Static external potentials A0(x), A(x) of polynomial degree <= cap.

    Derived fields: E_a = -dA0/dx_a (static), H = curl A.  With the
    degree cap at 2 both are polynomials of degree <= 1, so div E and
    dE_a/dx_b are constants.  mode "magnetic" is the (A0, A, 0) shape;
    mode "electric" keeps (0, A, A4) with A4 entering no pi component
    used here (p4 -> m - e*A4 is carried for completeness).
    """

    def __init__(self, alg: WeylAlgebra, a0: Poly, avec, a4=None, degree_cap: int = 2,
                 mode: str = "magnetic"):
        self.algebra = alg
        self.mode = mode
        xnames = ("x1", "x2", "x3")
        for nm, poly in [("A0", a0)] + [(f"A{i+1}", p) for i, p in enumerate(avec)]:
            if poly.total_degree(xnames) > degree_cap:
                raise ValueError(f"{nm} exceeds degree cap {degree_cap}")
        self.a0 = a0
        self.avec = list(avec)
        self.a4 = a4 if a4 is not None else a0.ring.zero
        if self.a4.total_degree(xnames) > degree_cap:
            raise ValueError(f"A4 exceeds degree cap {degree_cap}")

    def amplitude_symbols(self):
        """Names of parameter symbols appearing in the potentials."""
        out = []
        xnames = {"x1", "x2", "x3"}
        for poly in [self.a0, *self.avec, self.a4]:
            for e in poly.terms:
                for k, p in enumerate(e):
                    nm = poly.ring.names[k]
                    if p and nm not in xnames and nm not in out:
                        out.append(nm)
        return tuple(out)

    def e_field(self):
        """E_a = -dA0/dx_a as x-polynomials."""
        return [-(self.a0.diff(f"x{a+1}")) for a in range(3)]

    def h_field(self):
        """H = curl A."""
        from .reps import eps as _eps
        out = []
        for a in range(3):
            h = self.a0.ring.zero
            for b in range(3):
                for c in range(3):
                    e = _eps(a, b, c)
                    if e:
                        h = h + self.avec[c].diff(f"x{b+1}") * e
            out.append(h)
        return out

    def e_ops(self):
        return [self.algebra.from_x_poly(p) for p in self.e_field()]

    def h_ops(self):
        return [self.algebra.from_x_poly(p) for p in self.h_field()]

    def div_e(self) -> Poly:
        e = self.e_field()
        return sum((e[a].diff(f"x{a+1}") for a in range(3)), self.a0.ring.zero)

    def pi(self, index: int) -> WeylElement:
        """Minimally coupled five-momentum component pi^0..pi^4."""
        alg = self.algebra
        e = alg.sym("e")
        if index == 0:
            return alg.p0 - e * alg.from_x_poly(self.a0)
        if 1 <= index <= 3:
            return alg.p(index - 1) - e * alg.from_x_poly(self.avec[index - 1])
        if index == 4:
            m = alg.sym("m")
            if self.mode == "electric" and self.a4:
                return m - e * alg.from_x_poly(self.a4)
            return m
        raise ValueError("pi index must be 0..4")

    def pis(self):
        return [self.pi(i) for i in range(5)]


def field_strength(fc: FieldConfig):
    """e*F^{mn} = -i[pi^m, pi^n] computed exactly; returned as the 5x5
    matrix of Weyl elements (the e factor left in)."""
    pis = fc.pis()
    mi = GRat(0, -1)
    out = []
    for m in range(5):
        out.append([pis[m].commutator(pis[n]) * mi for n in range(5)])
    return Matrix(out)
