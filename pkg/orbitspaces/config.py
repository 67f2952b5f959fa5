# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Handle configuration files and factory settings, mostly for CLI
"""

import configparser
import logging
import os
import sys

from . import __about__ as a
from . import util as u


# Factory settings, all options can be changed at config file
OPTIONS = {
    'samples'      : 10000,
    'seed'         : 42,
    'gap'          : 0.1,    # orbit distance below which pairs are not compared
    'floor'        : 1e-4,   # minimum image distance of separated pairs
    'workers'      : 1,
    'grid_steps'   : 32,
    'refine_iters' : 20,
    'stratum_tol'  : 1e-8,
    'batch'        : 256,
}

# Default tolerance per suite kind, "<target>/<kind>"
TOLERANCES = {
    'octonion/norm'           : 1e-12,
    'octonion/automorphism'   : 1e-12,
    'octonion/orthogonality'  : 1e-14,
    'octonion/homomorphism'   : 1e-12,
    'matrices/invariance'     : 1e-11,
    'matrices/rank'           : 1e-10,
    'matrices/height'         : 1e-9,
    'matrices/sphere'         : 1e-12,
    'matrices/separation'     : 1e-4,
    'hp2/invariance'          : 1e-9,
    'hp2/constraint'          : 1e-9,
    'hp2/separation'          : 1e-4,
    's6/invariance'           : 1e-9,
    's6/sigma'                : 1e-11,
    's6/constraint'           : 1e-12,
    'cp2/invariance'          : 1e-11,
    'cp2/constraint'          : 1e-10,
    'cp2/separation'          : 1e-4,
    'quoric-fibers/invariance': 1e-11,
    'quoric-fibers/constraint': 1e-12,
    'arnold/invariance'       : 1e-11,
    'arnold/constraint'       : 1e-12,
}

_FACTORY = dict(OPTIONS), dict(TOLERANCES)

log = logging.getLogger(__name__)


def config_home() -> str:
    """Platform directory for user configuration, as per XDG on Linux"""
    home = os.path.expanduser('~')
    if sys.platform.startswith('linux'):
        return os.environ.get('XDG_CONFIG_HOME') or os.path.join(home, '.config')
    if sys.platform.startswith('darwin'):
        # Not ~/Library/Preferences, that's for .plists
        return (os.environ.get('XDG_CONFIG_HOME') or
                os.path.join(home, 'Library', 'Application Support'))
    if sys.platform.startswith('win'):
        return os.environ.get('LOCALAPPDATA') or home
    return home


def config_path(apptitle="") -> str:
    """Return the path to the config file. Does not create anything"""
    apptitle = apptitle or a.__title__
    return os.path.join(config_home(), apptitle, f"{apptitle}.ini")


def reset():
    """Restore factory settings"""
    OPTIONS.clear()
    OPTIONS.update(_FACTORY[0])
    TOLERANCES.clear()
    TOLERANCES.update(_FACTORY[1])


def _convert(section:str, key:str, value:str, default):
    try:
        if isinstance(default, bool):
            return configparser.ConfigParser.BOOLEAN_STATES[value.lower()]
        return type(default)(value)
    except (KeyError, ValueError):
        raise u.UsageError("Invalid value for %r in [%s]: %r", key, section, value)


def read_config(args=None, apptitle="") -> dict:
    """Read the configuration file, update the OPTIONS dictionary and return it"""
    confpath = getattr(args, 'config', None) or config_path(apptitle)
    parser = configparser.ConfigParser()
    try:
        with open(confpath) as fd:
            parser.read_file(fd)
    except FileNotFoundError:
        log.debug("No config file at %s, using factory settings", confpath)
        return OPTIONS
    except (OSError, configparser.Error) as e:
        raise u.UsageError("Could not read config file %s: %s", confpath, e)
    log.debug("Reading config file: %s", confpath)

    section = a.__title__
    if parser.has_section(section):
        for key, value in parser.items(section):
            if key not in OPTIONS:
                log.warning("Ignoring unknown option %r in %s", key, confpath)
                continue
            OPTIONS[key] = _convert(section, key, value, OPTIONS[key])

    if parser.has_section('tolerances'):
        for key, value in parser.items('tolerances'):
            TOLERANCES[key] = _convert('tolerances', key, value, 0.0)
    return OPTIONS


def tolerance(suite:str, override:float = None) -> float:
    """Tolerance for a suite kind, the override winning over configured values"""
    if override is not None:
        return override
    try:
        return TOLERANCES[suite]
    except KeyError:
        raise u.RegistryError("No default tolerance for suite %r", suite)
