from __future__ import absolute_import

import json

import numpy as np
import pytest

from quditmagic.exceptions import ConfigError, GuardExceededError
from quditmagic.utils import (
    THREADS_ENV, CustomEncoder, checkGuard, dumpJson, getThreadCount, loadJson, sampleRng,
    sampleSeed, saveJson,
)
from quditmagic.utils.regions import Region


def test_regions():
    region = Region([4, 1], nSites=6)
    assert region == (1, 4)
    assert region.complement(6) == (0, 2, 3, 5)
    assert region.union([2]) == (1, 2, 4)
    assert region.intersection([4, 5]) == (4,)
    assert region.difference([1]) == (4,)
    assert region.isdisjoint([0, 2])
    assert region.issubset(range(5))


@pytest.mark.parametrize('sites, nSites', [([1, 1], None), ([-1], None), ([6], 6)])
def test_invalid_regions(sites, nSites):
    with pytest.raises(ConfigError):
        Region(sites, nSites)


def test_encoder_handles_numpy():
    data = {'array': np.arange(3), 'value': np.float64(0.5), 'count': np.int64(2), 'region': Region([2, 0])}
    assert json.loads(dumpJson(data)) == {'array': [0, 1, 2], 'value': 0.5, 'count': 2, 'region': [0, 2]}


def test_encoder_rejects_unknown():
    with pytest.raises(TypeError):
        json.dumps(object(), cls=CustomEncoder)


def test_json_files(tmp_path):
    path = saveJson(str(tmp_path / 'data.json'), {'b': 1, 'a': [1, 2]})
    assert loadJson(path) == {'a': [1, 2], 'b': 1}
    with pytest.raises(ConfigError):
        loadJson(str(tmp_path / 'missing.json'))
    (tmp_path / 'bad.json').write_text('{')
    with pytest.raises(ConfigError):
        loadJson(str(tmp_path / 'bad.json'))


def test_thread_count(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert getThreadCount() == 1
    monkeypatch.setenv(THREADS_ENV, '3')
    assert getThreadCount() == 3
    monkeypatch.setenv(THREADS_ENV, 'many')
    with pytest.raises(ConfigError):
        getThreadCount()
    monkeypatch.setenv(THREADS_ENV, '0')
    with pytest.raises(ConfigError):
        getThreadCount()


def test_sample_streams():
    assert sampleRng(5, 2).random() == sampleRng(5, 2).random()
    assert sampleRng(5, 2).random() != sampleRng(5, 3).random()
    assert sampleSeed(5, 2) == sampleSeed(5, 2)


def test_guard_message():
    checkGuard(10, 10, 'size')
    with pytest.raises(GuardExceededError) as info:
        checkGuard(11, 10, 'size', 'shrink it')
    assert str(info.value) == 'size is 11, above the limit of 10 (shrink it)'
