from fractions import Fraction

import pytest

from galilei import catalog as cat
from galilei import reps
from galilei.matrix import Matrix
from galilei.poly import PolyRing
from galilei.scalars import GRat, ZERO
from galilei.spin import (
    c2_is_central,
    casimir_c3,
    casimir_ring,
    check_particle_conditions,
    diagonalize_casimir,
    generic_instance,
    spin_content,
)


ALL_BASE = [reps.RepLabel("D", *k) for k in sorted(reps.TABLE1)] + \
    [reps.RepLabel("S1"), reps.RepLabel("S2")]


def test_c3_for_flat_spinor():
    rep = reps.build(reps.RepLabel("S1"))
    ring = casimir_ring()
    c3 = casimir_c3(rep, ring)
    m = ring.sym("m")
    want = Matrix.identity(2, ring.one, ring.zero) * (m * m * GRat(Fraction(3, 4)))
    assert c3 == want


def test_c3_scalar_rep_zero():
    rep = reps.build_text("D(0,1,0)")
    assert casimir_c3(rep).is_zero()


def test_c3_d121_degree():
    rep = reps.build_text("D(1,2,1)")
    c3 = casimir_c3(rep)
    deg = max(p.total_degree(("p1", "p2", "p3")) for row in c3.entries for p in row)
    assert deg == 2


def test_diagonalization_all_base_reps():
    for label in ALL_BASE:
        rep = reps.build(label)
        assert diagonalize_casimir(rep)["ok"], str(label)


def test_diagonalization_direct_sums():
    for text in ("D(1,2,1)+D(0,1,0)", "S2+S2", "D(2,1,0)+D(1,1,0)"):
        assert diagonalize_casimir(reps.build_text(text))["ok"]


def test_c2_central():
    assert c2_is_central(reps.build(reps.RepLabel("S2")))
    assert c2_is_central(reps.build_text("D(3,1,1)"))


def _branches(bs):
    rep = spin_content(bs)
    return {(str(b.spin), str(b.epsilon), b.multiplicity) for b in rep.branches}, rep


def test_spin_content_catalog():
    got, rep = _branches(cat.system_D110())
    assert got == {("0", "0", 1)}
    assert rep.two_route_equal

    got, rep = _branches(cat.system_D210())
    assert got == {("1", "0", 3)}
    assert rep.two_route_equal

    got, rep = _branches(cat.system_D221())
    assert got == {("1", "0", 3), ("0", "0", 1)}
    assert rep.two_route_equal

    inst = generic_instance(cat.system_D311(), {"nu": GRat(2)})
    got, rep = _branches(inst)
    assert got == {("1", "4", 3)}          # epsilon = nu^2 in m^2 units
    assert rep.two_route_equal

    inst = generic_instance(cat.system_D311(), {"nu": GRat(Fraction(1, 3))})
    got, _ = _branches(inst)
    assert got == {("1", "1/9", 3)}

    got, rep = _branches(cat.levy_leblond())
    assert got == {("1/2", "0", 2)}
    assert rep.two_route_equal

    got, rep = _branches(cat.dkp_spin0_system())
    assert got == {("0", "1", 1)}          # epsilon = c^2 with c = 1
    assert rep.two_route_equal


def test_particle_conditions():
    assert check_particle_conditions(cat.system_D210(), 1)
    assert not check_particle_conditions(cat.system_D210(), 0)
    # the eight-component system fails both rank conditions
    assert not check_particle_conditions(cat.system_D221(), 1)
    assert not check_particle_conditions(cat.system_D221(), 0)
    inst = generic_instance(cat.system_D311(), {"nu": GRat(2)})
    assert check_particle_conditions(inst, 1)
    assert check_particle_conditions(cat.dkp_spin0_system(), 0)
    # the four-component system is a consistent spin-0 particle
    assert check_particle_conditions(cat.system_D110(), 0)
    assert not check_particle_conditions(cat.system_D110(), 1)


def test_multiplicity_bounded_by_dimension():
    for bs in (cat.system_D110(), cat.system_D210(), cat.system_D221(),
               cat.levy_leblond()):
        rep = spin_content(bs)
        assert sum(b.multiplicity for b in rep.branches) <= bs.rep.S[0].rows
