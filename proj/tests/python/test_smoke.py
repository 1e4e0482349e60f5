import math

import pytest

import engelsr as es


def test_classification():
    assert es.classify((0, 0, 1, 1, 0, 1)) == ["III"]
    assert sorted(es.classify((0, 1, 0, 0, 0, 0))) == ["II", "IV"]
    assert es.classify((0, 0, 0, 0, 1, 0)) == ["I"]


def test_jacobi_violation_raises():
    with pytest.raises(es.EngelError, match="JacobiViolated"):
        es.classify((1, 0, 0, 1, 0, 0))


def test_family_builder_and_round_trip():
    t = es.build_family("V", {"T1": 2.0, "T2": 1.0, "T3": 0.0})
    assert t.t4 == pytest.approx(1.0)
    assert t.t5 == pytest.approx(-1.0)
    assert t.t6 == pytest.approx(-1.0)

    table = es.structure_constants_from_t(t)
    assert es.jacobi_residual(table) < 1e-12
    frame = es.canonical_frame(table)
    for got, want in zip(frame.constants.as_tuple(), t.as_tuple()):
        assert got == pytest.approx(want, abs=1e-10)


def test_growth_vector_and_kernel():
    table = es.nilpotent_engel_table()
    assert es.growth_vector(table) == (2, 3, 4)
    k = es.levi_kernel(table)
    assert abs(abs(k[1]) - 1.0) < 1e-12
    assert abs(k[0]) < 1e-12


def test_flow_conservation():
    t = es.build_family("III", {"T3": 1.0, "T4": 1.0, "T6": 1.0})
    traj = es.integrate(t, (0.6, 0.8, 0.1, 0.2), t_max=5.0, step=1e-3)
    rep = es.conservation_report(t, traj)
    assert rep["H_drift"] < 1e-9
    assert rep["G_drift"] < 1e-8
    assert rep["max_drift"] < 1e-7
    r0 = es.right_momenta(traj)[0]
    assert tuple(r0) == pytest.approx((-0.6, -0.8, -0.1, -0.2))


def test_independence_minor():
    t = es.EngelConstants(t3=1.0, t4=1.0, t6=1.0)
    _, det = es.independence_matrix(t, (2.0, 0.5, 3.0, 0.0), 1.0)
    assert det == pytest.approx(54.0)


def test_conjugate_times_and_verdict():
    t = es.EngelConstants(t4=1.0, t6=4.0)
    times = es.conjugate_times_const(t, 5.0)
    assert times == pytest.approx([math.pi / 2, math.pi, 3 * math.pi / 2])
    v = es.minimality_verdict(t, 2.0)
    assert v["verdict"] == "not_minimizer"
    assert v["first_conjugate"] == pytest.approx(math.pi / 2)


def test_shooting_with_python_callables():
    p = es.CoefficientProfile.from_functions(lambda t: 0.0, lambda t: 1.0, 7.0)
    zeros = es.conjugate_shoot(p, 7.0, step=1e-3)
    assert zeros == pytest.approx([math.pi, 2 * math.pi], abs=1e-7)


def test_type1_integrals_drift():
    t = es.type1_constants(1, 2)
    assert "I" in es.classify(t.as_tuple())
    traj = es.integrate(t, (0.6, 0.8, 0.1, 0.2), t_max=5.0)
    f1_0, f2_0 = es.type1_integrals(1, 2, traj.states[0])
    for h in traj.states[:: len(traj.states) // 50]:
        f1, f2 = es.type1_integrals(1, 2, h)
        assert f1 == pytest.approx(f1_0, abs=1e-9)
        assert f2 == pytest.approx(f2_0, abs=1e-9)
