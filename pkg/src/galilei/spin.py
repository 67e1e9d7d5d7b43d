"""Casimir operators, plane-wave spin content and particle conditions.

The three invariants are C1 = m, C2 = 2 m p0 - p^2 and the squared
internal angular momentum C3.  Conjugating by W = exp((i/m) eta.p)
turns C3 into m^2 S^2 exactly (the boosts are nilpotent), and turns the
wave operator into the decoupled pencil form

    beta0 (2 m p0 - p^2) + 2 m^2 beta4     (up to the overall 1/2m),

so plane-wave content is read off the sector pencils

    P_vec(e) = e F + 2 R        (spin-1 multiplets),
    P_sc(e)  = e G + 2 E        (spin-0 components),

in units m = 1 with the internal energy e the eigenvalue of C2; a
branch exists where a pencil is singular.  The direct route (kernel of
the wave operator at rest-frame momenta) is kept alongside as an
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import GRat, ZERO, ONE, I
from .matrix import Matrix, det, nullspace, rank, nilpotent_exp, evaluate_matrix, rref
from .poly import PolyRing, Poly
from .reps import Representation, eps, spin1_matrix
from .beta import BetaSystem, _lift


# -- Casimir assembly -----------------------------------------------------------


def casimir_ring() -> PolyRing:
    return PolyRing(("p1", "p2", "p3", "m"), invertible=("m",))


def casimir_c3(rep: Representation, ring=None) -> Matrix:
    """C3 = m^2 S^2 + m (S x eta - eta x S).p + p^2 eta^2 - (p.eta)^2."""
    if ring is None:
        ring = casimir_ring()
    p = [ring.sym(f"p{a+1}") for a in range(3)]
    m = ring.sym("m")
    lift = lambda mat: _lift(mat, ring)
    dim = rep.dim
    S = [lift(s) for s in rep.S]
    eta = [lift(e) for e in rep.eta]
    out = Matrix.zeros(dim, dim, ring.zero)
    s2 = Matrix.zeros(dim, dim, ring.zero)
    for a in range(3):
        s2 = s2 + S[a] @ S[a]
    out = out + s2 * (m * m)
    for c in range(3):
        cross = Matrix.zeros(dim, dim, ring.zero)
        for a in range(3):
            for b in range(3):
                e = eps(c, a, b)
                if e:
                    cross = cross + (S[a] @ eta[b] - eta[a] @ S[b]) * e
        out = out + cross * (m * p[c])
    eta2 = Matrix.zeros(dim, dim, ring.zero)
    etap = Matrix.zeros(dim, dim, ring.zero)
    psq = ring.zero
    for a in range(3):
        eta2 = eta2 + eta[a] @ eta[a]
        etap = etap + eta[a] * p[a]
        psq = psq + p[a] * p[a]
    out = out + eta2 * psq - etap @ etap
    return out


def diagonalize_casimir(rep: Representation, ring=None) -> dict:
    """Conjugate C3 by W = exp((i/m) eta.p); assert C3' = m^2 S^2."""
    if ring is None:
        ring = casimir_ring()
    p = [ring.sym(f"p{a+1}") for a in range(3)]
    minv = ring.sym("m", -1)
    m = ring.sym("m")
    etap = Matrix.zeros(rep.dim, rep.dim, ring.zero)
    for a in range(3):
        etap = etap + _lift(rep.eta[a], ring) * (p[a] * minv)
    iu = ring.const(I)
    W = nilpotent_exp(etap * iu)
    Winv = nilpotent_exp(etap * (-iu))
    c3 = casimir_c3(rep, ring)
    c3p = W @ c3 @ Winv
    s2 = Matrix.zeros(rep.dim, rep.dim, ring.zero)
    for a in range(3):
        s2 = s2 + _lift(rep.S[a], ring) @ _lift(rep.S[a], ring)
    want = s2 * (m * m)
    return {"ok": c3p == want, "c3_transformed": c3p, "m2s2": want}


def c2_is_central(rep: Representation) -> bool:
    """[C2, X] = 0 for all ten symmetry generators, symbolically.

    The generators carry x and t dependence, so this runs in the
    operator algebra with matrix coefficients.
    """
    from .weyl import WeylAlgebra

    params = PolyRing(("m",), invertible=("m",))
    alg = WeylAlgebra(params)
    m = alg.sym("m")
    x = [alg.x(a) for a in range(3)]
    p = [alg.p(a) for a in range(3)]
    p0, t = alg.p0, alg.t
    c2 = p0 * m * 2 - (p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
    dim = rep.dim
    iden = Matrix.identity(dim, alg.one, alg.zero)
    c2m = iden * c2

    def wlift(mat):
        return mat.map(lambda g: alg.const(g))

    gens = [iden * p0, iden * p[0], iden * p[1], iden * p[2], iden * m]
    for a in range(3):
        orb = alg.zero
        for b in range(3):
            for c in range(3):
                e = eps(a, b, c)
                if e:
                    orb = orb + x[b] * p[c] * e
        gens.append(iden * orb + wlift(rep.S[a]))
        gens.append(iden * (t * p[a] - m * x[a]) + wlift(rep.eta[a]))
    for g in gens:
        if not (c2m @ g - g @ c2m).is_zero():
            return False
    return True


# -- spin content ------------------------------------------------------------------


@dataclass
class Branch:
    spin: Fraction
    epsilon: GRat  # internal energy in units of m^2
    multiplicity: int


@dataclass
class SpinContentReport:
    system: str
    branches: list
    consistent_spin1: bool
    consistent_spin0: bool
    two_route_equal: bool
    notes: tuple = ()


def _rational_roots(poly: Poly, var: str):
    """Exact rational roots of a univariate polynomial over GRat."""
    terms = {e[poly.ring.index[var]]: c for e, c in poly.terms.items()}
    if not terms:
        return None  # identically zero
    degs = sorted(terms)
    lo, hi = degs[0], degs[-1]
    if lo > 0:
        roots = {ZERO}
    else:
        roots = set()
    # divide out e^lo, then rational-root search on the integer-cleared poly
    shifted = {d - lo: c for d, c in terms.items()}
    if max(shifted) == 0:
        return roots
    if any(not c.is_rational() for c in shifted.values()):
        raise ValueError("rational-root sweep needs rational coefficients")
    from math import gcd

    mult = 1
    for c in shifted.values():
        mult = mult * c.re.denominator // gcd(mult, c.re.denominator)
    ints = {d: int(c.re * mult) for d, c in shifted.items()}
    a0 = ints.get(0, 0)
    an = ints[max(ints)]
    if a0 == 0:
        roots.add(ZERO)
        while ints.get(0, 0) == 0:
            ints = {d - 1: c for d, c in ints.items() if d > 0}
        a0 = ints.get(0, 0)
        if not ints:
            return roots
        an = ints[max(ints)]

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out

    for pn in divisors(a0):
        for qn in divisors(an):
            for sgn in (1, -1):
                cand = Fraction(sgn * pn, qn)
                val = sum(Fraction(c) * cand ** d for d, c in ints.items())
                if val == 0:
                    roots.add(GRat(cand))
    return roots


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def _pencil_roots(F: Matrix, Rb: Matrix):
    """Values of e where e F + 2 R is singular (square blocks), with
    None meaning identically singular."""
    n = F.rows
    if n == 0:
        return set()
    ring = PolyRing(("e",))
    e = ring.sym("e")
    pen = _lift(F, ring) * e + _lift(Rb, ring) * 2
    d = det(pen)
    if not d:
        return None
    return _rational_roots(d, "e")


def _pencil_kernel_dim(F: Matrix, Rb: Matrix, e_val: GRat) -> int:
    pen = F * e_val + Rb * GRat(2)
    return len(nullspace(pen))


def spin_content(bs, name=None) -> SpinContentReport:
    """Plane-wave content of a block system (vector/scalar carriers or the
    four-component spinor system).

    Pencil route: roots of det(eF + 2R) give spin-1 branches (each
    multiplet contributes 2s+1 = 3 states), roots of det(eG + 2E) give
    spin-0 branches; identically singular pencils are reported as
    gauge-like branches with no particle content.  Direct route:
    kernel of beta0 p0 + beta4 m at the rest frame, classified by S^2.
    """
    name = name or getattr(bs, "name", "system")
    notes = []
    blocks = getattr(bs, "blocks", None)
    if blocks and "R" in blocks:
        Rb, E, F, G = blocks["R"], blocks["E"], blocks["F"], blocks["G"]
        branches = []
        v_roots = _pencil_roots(F, Rb)
        if v_roots is None:
            notes.append("vector pencil identically singular: no particle content branch")
            v_roots = set()
        for r in sorted(v_roots, key=str):
            k = _pencil_kernel_dim(F, Rb, r)
            if k:
                branches.append(Branch(Fraction(1), r, 3 * k))
        s_roots = _pencil_roots(G, E)
        if s_roots is None:
            notes.append("scalar pencil identically singular: no particle content branch")
            s_roots = set()
        for r in sorted(s_roots, key=str):
            k = _pencil_kernel_dim(G, E, r)
            if k:
                branches.append(Branch(Fraction(0), r, k))
    else:
        # spinor system: single sector, beta0/beta4 blocks directly
        branches = _spinor_branches(bs)
    direct = _direct_branches(bs)
    two_route = _branch_set(branches) == _branch_set(direct)
    c1 = check_particle_conditions(bs, 1) if blocks and "R" in blocks else False
    c0 = check_particle_conditions(bs, 0) if blocks and "R" in blocks else False
    return SpinContentReport(name, branches, c1, c0, two_route, tuple(notes))


def _branch_set(branches):
    return {(b.spin, b.epsilon, b.multiplicity) for b in branches}


def _spinor_branches(bs):
    """Pencil route for the four-component spinor system: the transformed
    operator is beta0 C2 + 2 m^2 beta4 (m = 1); branch where the 4x4
    pencil drops rank, classified by S^2 on the kernel."""
    ring = PolyRing(("e",))
    e = ring.sym("e")
    pen = _lift(bs.beta0, ring) * e + _lift(bs.beta4, ring) * 2
    d = det(pen)
    branches = []
    roots = _rational_roots(d, "e") if d else None
    if roots is None:
        return branches
    for r in sorted(roots, key=str):
        ker = nullspace(evaluate_matrix(pen, {"e": r}))
        if ker:
            branches.extend(_classify_by_spin(bs.rep, ker, r))
    return branches


def _direct_branches(bs):
    """Kernel of beta0 p0 + beta4 m at rest momenta, m = 1; epsilon = 2 p0."""
    # the operator is linear in p0: L(p0) = beta0 p0 + beta4; kernel exists
    # where det L = 0; epsilon = C2 = 2 p0 at the rest frame.
    ring = PolyRing(("q",))  # q = p0
    q = ring.sym("q")
    L = _lift(bs.beta0, ring) * q + _lift(bs.beta4, ring)
    d = det(L)
    roots = _rational_roots(d, "q") if d else None
    branches = []
    if roots is None:
        return branches
    for r in sorted(roots, key=str):
        ker = nullspace(evaluate_matrix(L, {"q": r}))
        if ker:
            branches.extend(_classify_by_spin(bs.rep, ker, r * 2))
    return branches


def _classify_by_spin(rep: Representation, kernel_vectors, epsilon):
    """Split a kernel into S^2 eigenspaces; spins from s(s+1)."""
    dim = rep.dim
    s2 = Matrix.zeros(dim, dim)
    for a in range(3):
        s2 = s2 + rep.S[a] @ rep.S[a]
    K = Matrix([list(v) for v in kernel_vectors]).T  # columns span the kernel
    out = []
    for spin in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)):
        lam = GRat(spin * (spin + 1))
        proj = (s2 - Matrix.identity(dim) * lam) @ K
        # states with S^2 = lam inside the kernel: kernel of proj on coeffs
        sub = nullspace(proj)
        if sub:
            out.append(Branch(spin, epsilon, len(sub)))
    total = sum(b.multiplicity for b in out)
    if total != len(kernel_vectors):
        out.append(Branch(Fraction(-1), epsilon, len(kernel_vectors) - total))
    return out


def check_particle_conditions(bs, spin: int) -> bool:
    """Rank conditions for single-particle consistency at the content-
    bearing internal energy:

        spin 1: rank(eF + 2R) = n - 1 and rank(eG + 2E) = m
        spin 0: rank(eF + 2R) = n and rank(eG + 2E) = m - 1

    evaluated at each branch energy of the requested spin (generic
    rational parameter values are substituted first if needed).
    """
    blocks = bs.blocks
    Rb, E, F, G = blocks["R"], blocks["E"], blocks["F"], blocks["G"]
    n, m = Rb.rows, E.rows
    roots = _pencil_roots(F, Rb) if spin == 1 else _pencil_roots(G, E)
    if roots is None or not roots:
        return False
    for e_val in roots:
        pv = F * e_val + Rb * GRat(2)
        ps = G * e_val + E * GRat(2)
        rv, rs = rank(pv), rank(ps)
        if spin == 1 and (rv != n - 1 or rs != m):
            return False
        if spin == 0 and (rv != n or rs != m - 1):
            return False
    return True


def generic_instance(bs: BetaSystem, values: dict) -> BetaSystem:
    """Substitute rational values for symbolic parameters, exactly."""
    def sub(mat):
        if not isinstance(mat, Matrix):
            return mat
        return mat.map(lambda x: x.eval(values) if isinstance(x, Poly) else x)

    blocks = {k: sub(v) for k, v in bs.blocks.items()} if bs.blocks else {}
    return BetaSystem(bs.name, bs.rep, sub(bs.beta0), [sub(b) for b in bs.betas],
                      sub(bs.beta4), params=(), carrier=bs.carrier, blocks=blocks)
