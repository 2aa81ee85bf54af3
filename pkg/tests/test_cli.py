from __future__ import absolute_import

import csv
import json
import os

import pytest

from quditmagic import __version__
from quditmagic.cli import EXIT_CONFIG, EXIT_GUARD, main


def writeJson(path, data):
    with open(str(path), 'w') as f:
        json.dump(data, f)
    return str(path)


def readJson(path):
    with open(str(path)) as f:
        return json.load(f)


def readCsv(path):
    with open(str(path)) as f:
        return list(csv.DictReader(f))


@pytest.fixture
def zeroStateFile(tmp_path):
    return writeJson(tmp_path / 'zero.json', {'q': 3, 'N': 1, 'amplitudes': [[1, 0], [0, 0], [0, 0]]})


def test_measures_of_stabilizer_state(tmp_path, zeroStateFile):
    out = str(tmp_path / 'measures.json')
    assert main(['measures', '--state', zeroStateFile, '--out', out]) == 0
    result = readJson(out)
    assert result['mana'] == 0.0
    assert result['one_norm'] == 1.0
    assert result['sre_2'] == pytest.approx(0.0, abs=1e-12)


def test_wigner_table(tmp_path, zeroStateFile):
    out = str(tmp_path / 'wigner.csv')
    assert main(['wigner', '--state', zeroStateFile, '--out', out]) == 0
    rows = readCsv(out)
    assert len(rows) == 9
    assert set(rows[0]) == {'m0', 'n0', 'W'}
    assert sum(float(row['W']) for row in rows) == pytest.approx(1.0)


def test_state_dimension_mismatch(tmp_path, zeroStateFile):
    assert main(['measures', '--state', zeroStateFile, '--q', '5']) == EXIT_CONFIG
    broken = writeJson(tmp_path / 'broken.json', {'q': 3, 'N': 1, 'amplitudes': [[1, 0], [1, 0], [0, 0]]})
    assert main(['measures', '--state', broken]) == EXIT_CONFIG


def test_predict_concentration(tmp_path, capsys):
    geometry = writeJson(tmp_path / 'geometry.json', {
        'N': 7, 't': 2, 'A': [0, 1, 2], 'M': [3, 4, 5, 6], 'measured': [3, 4, 5, 6],
        'injection': 'single_qudit_haar', 'scenario': 'concentration',
    })
    assert main(['statmech-predict', '--config', geometry]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['mana_logq_units'] == 1.0
    assert result['unit'] == 'log q'


def test_predict_every_scenario(tmp_path):
    geometry = writeJson(tmp_path / 'geometry.json', {'N': 4, 't': 2, 'A': [0, 1]})
    out = str(tmp_path / 'predictions.json')
    assert main(['statmech-predict', '--config', geometry, '--n', '2', '--out', out]) == 0
    result = readJson(out)
    assert result['n'] == 2
    assert result['predictions']['haar_subsystem']['mana_logq_units'] == 1.0
    assert 'teleportation' in result['skipped']


def test_invalid_config_exit_code(tmp_path, capsys):
    config = writeJson(tmp_path / 'config.json', {'q': 3})
    assert main(['run', '--config', config, '--out', str(tmp_path / 'run')]) == EXIT_CONFIG
    assert capsys.readouterr().err.startswith('error: ')
    assert main(['run', '--config', str(tmp_path / 'missing.json')]) == EXIT_CONFIG


def test_guard_exit_code():
    assert main(['enumerate-lagrangian', '--t', '12', '--q', '3']) == EXIT_GUARD


def test_enumerate_lagrangian(tmp_path):
    out = tmp_path / 'sigma'
    assert main(['enumerate-lagrangian', '--t', '2', '--q', '3', '--out', str(out)]) == 0
    bases = readJson(out / 'bases.json')
    assert len(bases['bases']) == 2
    rows = readCsv(out / 'distances.csv')
    assert [(row['d0'], row['d1']) for row in rows] == [('0', '1'), ('1', '0')]


def test_run_then_compare(tmp_path):
    config = writeJson(tmp_path / 'config.json', {
        'q': 3, 'N': 3, 't': 2, 'A': [0, 1], 'gates': 'clifford', 'samples': 3, 'seed': 11,
    })
    run = tmp_path / 'run'
    assert main(['run', '--config', config, '--workers', '1', '--out', str(run)]) == 0
    for name in ('samples.csv', 'summary.json', 'manifest.json'):
        assert os.path.exists(str(run / name))

    manifest = readJson(run / 'manifest.json')
    assert manifest['seed'] == 11
    assert manifest['version'] == __version__
    samples = readCsv(run / 'samples.csv')
    assert {row['sample_id'] for row in samples} == {'0', '1', '2'}

    with open(str(run / 'summary.json')) as f:
        before = f.read()
    prediction = writeJson(tmp_path / 'prediction.json', {'mana_logq_units': 0.0})
    out = str(tmp_path / 'compare.csv')
    assert main(['compare', '--run', str(run), '--predict', prediction, '--out', out]) == 0
    rows = readCsv(out)
    assert {row['measure'] for row in rows} == {'mana', 'annealed_mana'}
    for row in rows:
        assert float(row['deviation_sigma']) == 0.0
        assert float(row['deviation_abs']) == 0.0
    with open(str(run / 'summary.json')) as f:
        assert f.read() == before


def test_compare_needs_a_prediction(tmp_path):
    config = writeJson(tmp_path / 'config.json', {'q': 3, 'N': 2, 't': 1, 'A': [0], 'samples': 1})
    run = tmp_path / 'run'
    assert main(['run', '--config', config, '--workers', '1', '--out', str(run)]) == 0
    prediction = writeJson(tmp_path / 'prediction.json', {'other': 1})
    assert main(['compare', '--run', str(run), '--predict', prediction]) == EXIT_CONFIG
