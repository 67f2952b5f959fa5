# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Command-line functions
"""

import argparse
import logging
import os
import sys
import typing as t

import argh

# Undo __init__'s NullHandler
logging.getLogger(__package__).handlers.clear()

from . import __about__ as a
from . import config
from . import harness
from . import model
from . import orbits
from . import sponge
from . import tasks
from . import util as u


log = logging.getLogger(__name__)


# CLI command wrappers ###################################################

def _emit(reports:tasks.Reports, out:t.Optional[str], timings:bool) -> t.Iterator[str]:
    """Write the JSON report to out, or yield it, then fail on failed suites"""
    document = harness.reports_json(reports, timings)
    if out:
        try:
            with open(out, 'w') as fd:
                fd.write(document)
        except OSError as e:
            raise u.UsageError("Could not write report to %s: %s", out, e)
        log.info("Report written to %s", out)
    else:
        yield document.rstrip('\n')
    tasks.check_reports(reports)


def _setup(workers:t.Optional[int]):
    if workers is not None:
        if workers < 1:
            raise u.UsageError("Worker count must be positive, got %s", workers)
        config.OPTIONS['workers'] = workers


@argh.arg('target', choices=list(tasks.TARGETS), help="Group of gating suites to run")
@argh.arg('--samples', type=int, help="Samples per suite [Default: from config, 10000]")
@argh.arg('--seed', type=int, help="Master seed of every sample stream [Default: 42]")
@argh.arg('--tol', type=float, help="Tolerance for every sampled suite [Default: per suite]")
@argh.arg('--out', help="Write the JSON report to this file instead of standard output")
@argh.arg('--timings', help="Include wall time in the report, which breaks reproducibility")
@argh.arg('--workers', type=int, help="Threads evaluating sample batches [Default: 1]")
def verify(target:str, *, samples:int = None, seed:int = None, tol:float = None,
           out:str = None, timings:bool = False, workers:int = None) -> t.Iterator[str]:
    """Run the gating suites of a target and emit their report"""
    _setup(workers)
    yield from _emit(tasks.verify(target, samples, seed, tol), out, timings)


@argh.arg('--out', help="Write the JSON report to this file instead of standard output")
@argh.arg('--samples', type=int, help="Samples per suite [Default: from config, 10000]")
@argh.arg('--seed', type=int, help="Master seed of every sample stream [Default: 42]")
@argh.arg('--tol', type=float, help="Tolerance for every sampled suite [Default: per suite]")
@argh.arg('--timings', help="Include wall time in the report, which breaks reproducibility")
@argh.arg('--workers', type=int, help="Threads evaluating sample batches [Default: 1]")
def report(*, out:str = None, samples:int = None, seed:int = None, tol:float = None,
           timings:bool = False, workers:int = None) -> t.Iterator[str]:
    """Run every gating suite, including matrices and combinatorics"""
    _setup(workers)
    yield from _emit(tasks.verify_all(samples, seed, tol), out, timings)


@argh.named('enumerate')
@argh.arg('kind', choices=['quoric'], help="What to enumerate")
@argh.arg('--m', type=int, required=True, help="Number of polygon sides, at least 3")
@argh.arg('--symmetry', choices=[_.value for _ in model.Symmetry],
          help="Identify colorings under this symmetry group")
def enumerate_colorings(kind:str, *, m:int, symmetry:str = 'raw') -> t.Iterator[str]:
    """List quoric characteristic functors, one coloring per line"""
    functors = model.enumerate_quoric(m, symmetry)
    for qf in functors:
        yield model.format_coloring(qf)
    log.info("%s colorings of the %s-gon up to %s", len(functors), m, symmetry)


@argh.arg('--input', help="Chain complex file, see docs/formats.md")
@argh.arg('--preset', choices=list(sponge.PRESETS), help="Built-in cell complex")
def homology(*, input:str = None, preset:str = None) -> t.Iterator[str]:
    """Integral homology of a chain complex, as a betti/torsion table"""
    if bool(input) == bool(preset):
        raise u.UsageError("Use exactly one of --input or --preset")
    if input:
        complex_ = sponge.read_chain_complex(input)
    else:
        complex_ = sponge.preset(preset).chain_complex()
    result = sponge.homology(complex_)
    log.info("Homology %s, Euler characteristic %s", result, complex_.euler_characteristic())
    yield from result.table()


@argh.arg('--chart', choices=list(model.CHARTS), help="Bimultiplication chart")
def weights(*, chart:str = 'A') -> t.Iterator[str]:
    """Tangent weights of the torus action at a fixed point, and general position"""
    ws = model.chart_weights(chart)
    for w in ws:
        yield ' '.join(f"{_:2d}" for _ in w)
    general = model.general_position_check(ws)
    log.info("Chart %s weights %s in general position", chart, "are" if general else "are NOT")
    if not general:
        raise u.SuiteFailure("Weights of chart %s are not in general position", chart)


@argh.arg('kind', choices=['hp2-skeleton'], help="Which census")
def census(kind:str) -> t.Iterator[str]:
    """Invariant submanifolds of HP^2 by coordinate pattern, with their inclusions"""
    c = sponge.hp2_skeleton_census()
    for label, pattern in c.patterns.items():
        yield f"{label}\t{pattern}\t{' '.join(sorted(c.contained[label]))}"
    log.info("%s quaternionic lines, %s complex planes, %s spheres, %s fixed points",
             *c.counts())


@argh.arg('coords', nargs=12, type=float, help="Real coordinates of (h0, h1, h2)")
@argh.arg('--tol', type=float, help="Tolerance for vanishing coordinates [Default: 1e-8]")
def stratum(*coords:float, tol:float = None) -> t.Iterator[str]:
    """Orbit type stratum and torus stabilizer of a point of HP^2"""
    tol = config.OPTIONS['stratum_tol'] if tol is None else tol
    stab = orbits.hp2_stabilizer_check(orbits.HP2Point(coords), tol)
    yield f"{stab.stratum}\t{stab.describe()}"
    if stab.stratum.ambiguous:
        log.warning("Point is %.3g away from stratum %s", stab.stratum.distance, stab.stratum)


# ########################################################################

def parse_args(argv:list=None) -> t.Tuple[argparse.Namespace, argh.ArghParser]:
    """Argument parsing and CLI interface setup"""
    parser = argh.ArghParser(
        prog            = __package__,
        description     = f"{a.__project__}\n{a.__description__}",
        epilog          = a.epilog,
        formatter_class = argparse.RawDescriptionHelpFormatter,
    )

    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        '-q', '--quiet',
        dest='loglevel',
        const=logging.WARNING,
        default=logging.INFO,
        action="store_const",
        help="Suppress informative messages."
    )
    group.add_argument(
        '-v', '--verbose',
        dest='loglevel',
        const=logging.DEBUG,
        action="store_const",
        help="Verbose mode, output extra info."
    )
    parser.add_argument('-C', '--config', help="Path for an alternate configuration file")

    argh.add_commands(parser, functions=(
        # Gating suites
        verify,
        report,

        # Combinatorics and homology
        enumerate_colorings,
        homology,
        weights,
        census,
        stratum,
    ))

    args = parser.parse_args(argv)
    args.debug = args.loglevel == logging.DEBUG
    logging.getLogger().setLevel(args.loglevel)

    return args, parser


def cli(argv:list=None):
    """CLI main function"""
    logging.basicConfig(format='%(levelname)-8s: %(message)s')

    args, parser = parse_args(argv)
    log.debug(args)

    config.read_config(args)

    argh.dispatch(parser, argv, output_file=sys.stdout)


def main(argv:list=None):
    """Main CLI entry point"""
    try:
        sys.exit(cli(argv or sys.argv[1:]))
    except u.OrbitSpacesError as e:
        log.critical(e)
        sys.exit(e.errno)
    except BrokenPipeError:
        # https://docs.python.org/3/library/signal.html#note-on-sigpipe
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
    except (KeyboardInterrupt, EOFError):
        print()
        sys.exit(2)  # signal.SIGINT.value
    except Exception as e:
        log.critical(e, exc_info=True)
        sys.exit(1)
