"""Interface en ligne de commande"""
import json

import pandas as pd
import pytest

from config import config
from main import main


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_classify_json(capsys):
    status, out, _ = run_cli(capsys, 'classify', '--jet', '0,0,1,7', '--exact')
    data = json.loads(out)
    assert status == 0
    assert data['type'] == 'degenerate'
    assert (data['k'], data['a'], data['d']) == (2, 1, 7)
    assert data['label'] == "X_2, a=1, d=7"
    assert data['eigenvalues'] == [0, 0]


def test_classify_float_kernel_by_default(capsys):
    status, out, _ = run_cli(capsys, 'classify', '--jet', '5')
    assert status == 0
    assert json.loads(out)['label'] == "X_0, a=5"


@pytest.mark.parametrize("jet, label", [
    ('0,0,1', "X_2, a=1, d=0"),
    ('0,0,0,1', "X_3, a=1, d=0"),
])
def test_classify_uses_default_truncation(capsys, jet, label):
    status, out, _ = run_cli(capsys, 'classify', '--jet', jet, '--exact')
    data = json.loads(out)
    assert status == 0
    assert data['label'] == label
    assert len(data['normal_form']) == config.trunc_order + 1


@pytest.mark.parametrize("argv, flag", [
    (['classify', '--jet', ''], '--jet'),
    (['classify', '--jet', '0,abc'], '--jet'),
    (['classify', '--jet', '0,0,1', '--order', '2'], 'k=2'),
    (['classify', '--jet', '0,0,0,1', '--order', '4'], 'k=3'),
    (['verify', '--psi', '0,1'], '--jet'),
    (['unfold', '--k', '2', '--lambda', '1'], '--lambda'),
    (['conjugate', '--jet', '0,0,1,7', '--psi', '1,1'], 'ψ'),
])
def test_validation_errors_exit_with_2(capsys, argv, flag):
    status, out, err = run_cli(capsys, *argv)
    assert status == 2
    assert out == ""
    assert flag in err


def test_unknown_command_exits_with_2(capsys):
    status, _, _ = run_cli(capsys, 'frobnicate')
    assert status == 2


def test_conjugate_then_classify_agree(capsys):
    status, out, _ = run_cli(capsys, 'conjugate', '--jet', '0,0,1,7', '--psi', '0,1,1/10', '--order', '6', '--exact')
    assert status == 0
    g = json.loads(out)['g']
    assert g[:2] == [0, 0] and g[2] == 1

    status, out, _ = run_cli(capsys, 'classify', '--jet', ','.join(str(c) for c in g), '--exact')
    assert json.loads(out)['label'] == "X_2, a=1, d=7"


def test_verify_with_classify_descriptor(capsys, tmp_path):
    _, out, _ = run_cli(capsys, 'classify', '--jet', '0,0,1,0,1/10', '--order', '10', '--exact')
    descriptor = tmp_path / "germ.json"
    descriptor.write_text(out)

    status, out, _ = run_cli(capsys, 'verify', '--jet', '0,0,1,0,1/10', '--descriptor', str(descriptor),
                             '--order', '10', '--exact')
    report = json.loads(out)
    assert status == 0
    assert report['passed'] is True


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("exact", [True, False])
def test_verify_with_field_descriptor(capsys, tmp_path, sign, exact):
    descriptor = tmp_path / "field.json"
    descriptor.write_text(json.dumps({'f': [0, 0, 1, 7], 'psi': [0, 1, "1/10"], 'sign': sign}))

    argv = ['verify', '--descriptor', str(descriptor)] + (['--exact'] if exact else [])
    status, out, _ = run_cli(capsys, *argv)
    report = json.loads(out)
    assert status == 0
    assert report['passed'] is True
    assert report['sign'] == sign
    assert report['alpha_preserved'] is True


@pytest.mark.parametrize("content, flag", [
    ({'f': [0, 0, 1], 'psi': [0, 1], 'sign': 2}, '--descriptor'),
    ({'f': "0,0,1", 'psi': [0, 1]}, '--descriptor'),
    ({'psi': [0, 1]}, '--jet'),
])
def test_verify_rejects_bad_descriptor(capsys, tmp_path, content, flag):
    descriptor = tmp_path / "field.json"
    descriptor.write_text(json.dumps(content))
    status, out, err = run_cli(capsys, 'verify', '--descriptor', str(descriptor))
    assert status == 2
    assert out == ""
    assert flag in err


def test_verify_fails_on_wrong_target(capsys):
    status, out, _ = run_cli(capsys, 'verify', '--jet', '0,0,1,7', '--psi', '0,1', '--g', '0,0,1,8')
    assert status == 1
    assert json.loads(out)['passed'] is False


def test_unfold_then_equilibria(capsys):
    status, out, _ = run_cli(capsys, 'unfold', '--k', '2', '--a', '1', '--lambda', '1,1', '--exact')
    data = json.loads(out)
    assert status == 0
    assert data['y_component']['coefficients'] == [1, 0, 1, 1]
    assert data['preserves_mu'] is True

    status, out, _ = run_cli(capsys, 'equilibria', '--k', '2', '--a', '1', '--lambda', '1,1')
    data = json.loads(out)
    assert status == 0
    assert data['count'] == 1
    assert data['fixed_line'] is None


def test_equilibria_reports_fixed_axis(capsys):
    _, out, _ = run_cli(capsys, 'equilibria', '--lambda', '0,1')
    data = json.loads(out)
    assert data['count'] == 2
    assert data['fixed_line']['kind'] == 'x_axis'


def test_portrait_writes_csv(capsys, tmp_path):
    path = tmp_path / "f2.csv"
    status, out, _ = run_cli(capsys, 'portrait', '--lambda', '0,1', '--grid', '3', '--max-steps', '40',
                             '--out', str(path))
    assert status == 0
    frame = pd.read_csv(path)
    assert list(frame.columns) == ['trajectory_id', 't', 'x', 'y']
    assert json.loads(out)['seeds'] == 9


def test_portrait_rejects_unknown_extension(capsys, tmp_path):
    status, _, err = run_cli(capsys, 'portrait', '--lambda', '0,1', '--out', str(tmp_path / "f2.png"))
    assert status == 2
    assert '--out' in err


def test_sweep_writes_csv(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    status, out, _ = run_cli(capsys, 'sweep', '--l1=-0.2:0.2:81', '--out', str(path))
    assert status == 0
    frame = pd.read_csv(path)
    assert list(frame.columns) == ['l1', 'count']
    assert len(frame) == 81
    assert json.loads(out)['regimes'] == [1, 3, 1]


def test_saddle_sweep_writes_csv(capsys, tmp_path):
    path = tmp_path / "saddle.csv"
    status, out, _ = run_cli(capsys, 'saddle-sweep', '--a=-1:1:11', '--out', str(path))
    assert status == 0
    assert list(pd.read_csv(path).columns) == ['a', 'saddle_y', 'count']
    assert json.loads(out)['crossings'] == [pytest.approx(0.0, abs=1e-6)]


def test_metrics_file_written(capsys, tmp_path):
    metrics = tmp_path / "metrics.prom"
    status, _, _ = run_cli(capsys, 'classify', '--jet', '0,3', '--metrics', str(metrics))
    assert status == 0
    text = metrics.read_text()
    assert 'martinet_classifications_total{type="regular1"} 1.0' in text
    assert 'martinet_commands_total{command="classify",status="0"} 1.0' in text


def test_classify_psi_feeds_conjugate(capsys):
    _, out, _ = run_cli(capsys, 'classify', '--jet', '0,0,1,7,3,1', '--exact')
    germ = json.loads(out)
    psi = ','.join(str(c) for c in germ['psi'])

    status, out, _ = run_cli(capsys, 'conjugate', '--jet', '0,0,1,7,3,1', '--psi', psi, '--exact')
    assert status == 0
    assert json.loads(out)['g'] == germ['normal_form']


def test_outputs_are_deterministic(capsys):
    first = run_cli(capsys, 'classify', '--jet', '0,0,1,7,3,1')
    second = run_cli(capsys, 'classify', '--jet', '0,0,1,7,3,1')
    assert first == second
