# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

import numpy as np
import pytest

from orbitspaces import config


@pytest.fixture
def rng():
    return np.random.default_rng(2021)


@pytest.fixture(autouse=True)
def factory_settings(tmp_path, monkeypatch):
    """Every test starts from factory settings and no user config file"""
    monkeypatch.setenv('XDG_CONFIG_HOME', str(tmp_path / 'config'))
    config.reset()
    yield
    config.reset()
