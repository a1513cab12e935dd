"""Équilibres, intégration RK4, portraits et balayages"""
import time

import numpy as np
import pytest

from dynamics import (
    EquilibriumType,
    a_sweep,
    bifurcation_sweep,
    classify_eigenvalues,
    equilibria_on_line,
    field_equilibria,
    fixed_line_detect,
    integrate_ensemble,
    integrate_trajectory,
    phase_portrait,
    real_roots,
    seed_points,
)
from dynamics.integrator import COMPLETED, OUT_OF_BOX
from jets import Jet
from mufields import PlanarMuField
from unfold import f2_family
from utils.errors import InvalidParameter, NonFiniteState


# ══════════════════════════════════════════════════════════════════════════════
# RACINES ET ÉQUILIBRES
# ══════════════════════════════════════════════════════════════════════════════

def test_real_roots_with_multiplicity():
    roots = real_roots([0.0, 0.0, 1.0, 1.0])
    assert [r.multiplicity for r in roots] == [1, 2]
    assert roots[0].value == pytest.approx(-1.0, abs=1e-12)
    assert roots[1].value == pytest.approx(0.0, abs=1e-9)


def test_real_roots_of_zero_and_constant():
    assert real_roots([0.0, 0.0]) == []
    assert real_roots([3.0]) == []


def test_single_equilibrium():
    reports = equilibria_on_line(2, 1, (1, 1))
    assert len(reports) == 1
    assert reports[0].point[0] == -1.0
    assert reports[0].point[1] == pytest.approx(-1.465571231876768, abs=1e-9)
    assert reports[0].residual <= 1e-10


def test_three_equilibria():
    reports = equilibria_on_line(2, 1, (-0.02, 1))
    assert len(reports) == 3
    ys = [r.point[1] for r in reports]
    assert -1.0 < ys[0] < -0.9
    assert -0.2 < ys[1] < -0.1
    assert 0.1 < ys[2] < 0.2
    assert all(r.residual <= 1e-10 for r in reports)
    assert [r.type for r in reports] == [EquilibriumType.SADDLE] * 3


def test_saddle_and_fixed_line_of_f2():
    reports = equilibria_on_line(2, 1, (0, 1))
    saddle, double = reports
    assert saddle.type == EquilibriumType.SADDLE
    assert saddle.point == pytest.approx((-1.0, -1.0), abs=1e-12)
    assert sorted(e.real for e in saddle.eigenvalues) == pytest.approx([-1.0, 1.0], abs=1e-12)
    assert double.type == EquilibriumType.DEGENERATE
    assert double.multiplicity == 2 and double.fixed_line


def test_equilibrium_count_is_odd_for_generic_parameters(rng):
    for l1 in rng.uniform(-1.0, 1.0, size=20):
        if min(abs(l1), abs(l1 + 4 / 27)) < 1e-3:
            continue
        assert len(equilibria_on_line(2, 1, (float(l1), 1.0))) % 2 == 1


def test_fixed_line_detection():
    assert fixed_line_detect(f2_family(1, 0, 1)).kind == 'x_axis'
    assert fixed_line_detect(f2_family(1, 1, 1)) is None
    assert fixed_line_detect(PlanarMuField(Jet.zero(3))).kind == 'plane'


def test_zero_field_is_a_plane_of_fixed_points():
    reports = field_equilibria(PlanarMuField(Jet.zero(3)))
    assert len(reports) == 1
    assert reports[0].type == EquilibriumType.ON_FIXED_LINE


@pytest.mark.parametrize("eigs, kind", [
    ((-1, 1), EquilibriumType.SADDLE),
    ((-1, -2), EquilibriumType.NODE),
    ((1 + 1j, 1 - 1j), EquilibriumType.FOCUS),
    ((1j, -1j), EquilibriumType.DEGENERATE),
    ((0, 1), EquilibriumType.DEGENERATE),
])
def test_classify_eigenvalues(eigs, kind):
    assert classify_eigenvalues(eigs) == kind


# ══════════════════════════════════════════════════════════════════════════════
# INTÉGRATION
# ══════════════════════════════════════════════════════════════════════════════

def test_regular_model_flows_in_straight_lines():
    trajectory = integrate_trajectory(PlanarMuField(Jet.constant(2, 3)), (0.0, 0.0), 1.0, step=1e-2)
    assert trajectory.completed
    assert trajectory.times[-1] == pytest.approx(1.0)
    assert np.allclose(trajectory.points[:, 0], 0.0)
    assert np.allclose(trajectory.points[:, 1], 2.0 * trajectory.times)


def test_linear_model_matches_closed_form():
    trajectory = integrate_trajectory(PlanarMuField(Jet.from_coeffs([0, 1], 3)), (0.0, 0.1), 1.0, step=1e-3)
    x, y = trajectory.points[-1]
    assert 1.0 + x == pytest.approx(np.exp(-1.0), abs=1e-9)
    assert y == pytest.approx(0.1 * np.exp(1.0), abs=1e-9)
    assert trajectory.hamiltonian_drift <= 1e-12


def test_backward_time():
    trajectory = integrate_trajectory(PlanarMuField(Jet.from_coeffs([0, 1], 3)), (0.0, 0.1), -1.0, step=1e-3)
    assert trajectory.times[-1] == pytest.approx(-1.0)
    assert trajectory.points[-1][1] == pytest.approx(0.1 * np.exp(-1.0), abs=1e-9)


@pytest.mark.parametrize("l1, y0, t_end", [(-0.02, -0.5, 2.0), (0.0, -0.3, 2.0), (1.0, -1.4, -2.0)])
def test_trajectories_stay_on_invariant_line(l1, y0, t_end):
    trajectory = integrate_trajectory(f2_family(1.0, l1, 1.0), (-1.0, y0), t_end, step=1e-2)
    assert trajectory.completed
    assert np.max(np.abs(trajectory.points[:, 0] + 1.0)) <= 1e-12
    assert trajectory.hamiltonian_drift == 0.0


def test_hamiltonian_conserved_until_blow_up():
    field = f2_family(1, 0, 1)
    with pytest.raises(NonFiniteState) as info:
        integrate_trajectory(field, (0.0, 0.5), 5.0, step=1e-3, box=(-5.0, 5.0, -5.0, 2.0))
    trajectory = info.value.trajectory
    assert info.value.reason == OUT_OF_BOX
    # y' = y² + y³ depuis 0.5 atteint 2 vers t ≈ 0.807
    assert 0.75 < trajectory.times[-1] < 0.85
    assert trajectory.hamiltonian_drift <= 1e-8


def test_fourth_order_drift_on_nonlinear_field():
    field = f2_family(1, 0, 1)
    coarse = integrate_trajectory(field, (0.0, 0.5), 0.7, step=0.005).hamiltonian_drift
    fine = integrate_trajectory(field, (0.0, 0.5), 0.7, step=0.0025).hamiltonian_drift
    assert coarse / fine >= 12.0


def test_fourth_order_drift_on_linear_field():
    field = PlanarMuField(Jet.from_coeffs([0, 1], 3))
    box = (-10.0, 10.0, -100.0, 100.0)
    coarse = integrate_trajectory(field, (0.0, 0.1), 5.0, step=0.1, box=box).hamiltonian_drift
    fine = integrate_trajectory(field, (0.0, 0.1), 5.0, step=0.05, box=box).hamiltonian_drift
    assert coarse / fine >= 12.0


def test_ensemble_stops_each_seed_independently():
    field = f2_family(1, 0, 1)
    result = integrate_ensemble(field, [(0.0, 0.5), (0.0, -0.1)], 2.0, step=1e-2)
    assert result.reasons == [OUT_OF_BOX, COMPLETED]
    assert result.stop_index[0] < result.stop_index[1]
    assert np.isfinite(result.path(0)).all()


def test_step_must_be_positive():
    with pytest.raises(InvalidParameter):
        integrate_ensemble(f2_family(1, 0, 1), [(0.0, 0.1)], 1.0, step=0.0)


# ══════════════════════════════════════════════════════════════════════════════
# PORTRAITS
# ══════════════════════════════════════════════════════════════════════════════

def test_seed_points_are_cell_centers():
    seeds = seed_points((0.0, 1.0, 0.0, 2.0), 2)
    assert seeds.tolist() == [[0.25, 0.5], [0.25, 1.5], [0.75, 0.5], [0.75, 1.5]]


def test_svg_portrait_is_byte_stable_and_fast():
    field = f2_family(1, 0, 1)
    window = (-2.0, 1.0, -2.0, 2.0)
    start = time.perf_counter()
    first = phase_portrait(field, window, 20)
    elapsed = time.perf_counter() - start
    second = phase_portrait(field, window, 20)

    assert elapsed < 5.0
    assert first.content == second.content
    assert '<svg' in first.content
    assert first.report['seeds'] == 400
    assert first.report['fixed_lines'] == pytest.approx([0.0], abs=1e-9)
    saddle = [eq for eq in first.report['equilibria'] if eq['type'] == 'saddle']
    assert saddle[0]['point'] == pytest.approx([-1.0, -1.0])


def test_csv_portrait_layout(tmp_path):
    artifact = phase_portrait(f2_family(1, 1, 1), (-2.0, 1.0, -2.0, 2.0), 3, 'csv', max_steps=50)
    lines = artifact.content.split("\n")
    assert lines[0] == "trajectory_id,t,x,y"
    assert all(eq['point'][0] == -1.0 for eq in artifact.report['equilibria'])
    path = artifact.write(tmp_path / "portrait.csv")
    assert path.read_bytes() == artifact.content.encode()


def test_zero_field_portrait_has_only_fixed_points():
    artifact = phase_portrait(PlanarMuField(Jet.zero(3)), (-1.0, 1.0, -1.0, 1.0), 4, 'csv')
    assert artifact.report['fixed'] == 16
    assert artifact.report['trajectories'] == 16


@pytest.mark.parametrize("window, grid, fmt", [
    ((1.0, 0.0, 0.0, 1.0), 5, 'svg'),
    ((0.0, 1.0, 0.0, float('inf')), 5, 'svg'),
    ((0.0, 1.0, 0.0, 1.0), 0, 'svg'),
    ((0.0, 1.0, 0.0, 1.0), 5, 'png'),
])
def test_portrait_validation(window, grid, fmt):
    with pytest.raises(InvalidParameter):
        phase_portrait(f2_family(1, 0, 1), window, grid, fmt)


# ══════════════════════════════════════════════════════════════════════════════
# BALAYAGES
# ══════════════════════════════════════════════════════════════════════════════

def test_lambda1_sweep_finds_both_fold_values():
    start = time.perf_counter()
    diagram = bifurcation_sweep(1.0, 1.0, (-0.2, 0.2), 401)
    assert time.perf_counter() - start < 5.0
    assert len(diagram.critical_values) == 2
    assert diagram.critical_values[0] == pytest.approx(-4 / 27, abs=1e-6)
    assert diagram.critical_values[1] == pytest.approx(0.0, abs=1e-6)
    assert diagram.regimes() == [1, 3, 1]
    assert diagram.count_at(-0.19) == 1
    assert diagram.count_at(-0.1) == 3
    assert diagram.count_at(0.1) == 1


def test_lambda1_sweep_without_bifurcation():
    diagram = bifurcation_sweep(1.0, 1.0, (0.5, 1.0), 51)
    assert diagram.critical_values == []
    assert set(diagram.counts) == {1}
    assert list(diagram.to_frame().columns) == ['l1', 'count']


def test_sweep_counts_match_equilibria_on_line():
    diagram = bifurcation_sweep(1.0, 1.0, (-0.2, 0.2), 41)
    for i in range(0, 41, 4):
        l1 = float(diagram.l1_values[i])
        assert len(equilibria_on_line(2, 1.0, (l1, 1.0))) == diagram.counts[i]


def test_sweep_needs_two_samples():
    with pytest.raises(InvalidParameter):
        bifurcation_sweep(1.0, 1.0, (0.0, 1.0), 1)


def test_saddle_crosses_fixed_axis_at_zero():
    sweep = a_sweep(0.0, 1.0, (-1.0, 1.0), 21)
    assert len(sweep.crossings) == 1
    assert sweep.crossings[0] == pytest.approx(0.0, abs=1e-6)
    frame = sweep.to_frame()
    assert list(frame.columns) == ['a', 'saddle_y', 'count']
    row = frame.iloc[15]
    assert row['a'] == pytest.approx(0.5)
    assert row['saddle_y'] == pytest.approx(-0.5, abs=1e-9)
