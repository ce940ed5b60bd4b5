"""glclab command line.

Exit codes: 0 success, 1 verification failure, 2 input or schema error,
3 mathematical precondition unmet, 4 precision exhaustion.
"""

from __future__ import annotations

import functools
import hashlib
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from .config import ConfigError, config_hash, load_config, validate
from .dynamics import PreconditionError
from .exact.interval import PrecisionExhausted, set_precision_floor
from .exact.numfield import ReducibleError
from .experiments import RUNNERS, RunContext
from .manifest import MANIFEST_NAME, RunManifest, build_manifest, compare_outputs
from .verify import verify_file

EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_PRECISION = 4


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def execute(command: str, cfg: dict, out_dir: Path, workers: int, seed: int, floor_bits: int, inputs: dict) -> tuple[int, RunManifest | None]:
    """Validate, run and write the manifest. Returns (exit code, manifest)."""
    try:
        validate(cfg, command)
    except ConfigError as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_INPUT, None
    set_precision_floor(Fraction(1, 2**floor_bits))
    out_dir.mkdir(parents=True, exist_ok=True)
    h = config_hash(cfg)
    ctx = RunContext(out_dir, workers, seed, h)
    t0 = time.perf_counter()
    try:
        outputs, code = RUNNERS[command](cfg, ctx)
    except PreconditionError as e:
        click.echo(f"precondition unmet: {e}", err=True)
        return EXIT_PRECONDITION, None
    except PrecisionExhausted as e:
        click.echo(f"precision exhausted: {e}", err=True)
        return EXIT_PRECISION, None
    except (ConfigError, ReducibleError, ValueError, KeyError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_INPUT, None
    wall = time.perf_counter() - t0
    m = build_manifest(command, cfg, h, inputs, seed, workers, floor_bits, wall, out_dir, outputs)
    m.write(out_dir)
    for o in m.outputs:
        click.echo(f"{'certified' if o.certified else 'estimate '}  {o.path}  {o.sha256[:16]}")
    return code, m


def run_options(f):
    @click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False), help="YAML or JSON experiment config.")
    @click.option("--out-dir", default="out", show_default=True, type=click.Path(file_okay=False), help="Output directory.")
    @click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1), help="Worker processes.")
    @click.option("--seed", default=0, show_default=True, type=int, help="Seed of the single random generator.")
    @click.option("--precision-floor", "floor_bits", default=256, show_default=True, type=click.IntRange(min=8), help="Refinement gives up below width 2^-BITS.")
    @functools.wraps(f)
    def wrapper(config_path, out_dir, workers, seed, floor_bits):
        try:
            cfg = load_config(config_path)
        except ConfigError as e:
            _fail(EXIT_INPUT, str(e))
        inputs = {Path(config_path).name: hashlib.sha256(Path(config_path).read_bytes()).hexdigest()}
        code, _ = execute(f.__name__.removeprefix("cmd_"), cfg, Path(out_dir), workers, seed, floor_bits, inputs)
        sys.exit(code)

    return wrapper


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact certificates for Littlewood-type problems on grids."""


@main.command("scan")
@run_options
def cmd_scan():
    """Witness search for inf |N(w)| over tau-embedded grids."""


@main.command("orbit")
@run_options
def cmd_orbit():
    """Cone-ray flows, systoles and unboundedness witnesses."""


@main.command("nf")
@run_options
def cmd_nf():
    """Number-field pipeline: units, ID conditions, fixed grids, FL certificates."""


@main.command("dim")
@run_options
def cmd_dim():
    """Separation curve and box-dimension ESTIMATE."""


@main.command("entropy")
@run_options
def cmd_entropy():
    """Topological-entropy ESTIMATE from (n, eps)-separated counts."""


@main.command("verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def cmd_verify(path):
    """Re-verify every certificate in a JSON file."""
    try:
        results = verify_file(path)
    except ValueError as e:
        _fail(EXIT_INPUT, f"cannot read {path}: {e}")
    bad = [r for r in results if not r.ok]
    for i, r in enumerate(results):
        if not r.ok:
            click.echo(f"record {i} ({r.kind}): FAILED invariant {r.invariant}" + (f": {r.message}" if r.message else ""))
    click.echo(f"{len(results) - len(bad)}/{len(results)} records verified")
    sys.exit(EXIT_VERIFY if bad else 0)


@main.command("rerun")
@click.argument("manifest", type=click.Path(exists=True))
@click.option("--out-dir", required=True, type=click.Path(file_okay=False), help="Fresh directory for the re-run.")
@click.option("--workers", default=None, type=click.IntRange(min=1), help="Override the recorded worker count.")
def cmd_rerun(manifest, out_dir, workers):
    """Re-execute a run from its manifest and compare certified outputs byte for byte."""
    mpath = Path(manifest)
    if mpath.is_dir():
        mpath = mpath / MANIFEST_NAME
    old = RunManifest.read(mpath)
    code, new = execute(old.command, old.config, Path(out_dir), workers or old.workers, old.seed, old.precision_floor_bits, old.input_hashes)
    if new is None:
        sys.exit(code)
    diff = compare_outputs(old, new)
    for p in diff:
        click.echo(f"MISMATCH {p}")
    click.echo(f"{len(old.certified()) - len(diff)}/{len(old.certified())} certified outputs reproduced")
    sys.exit(EXIT_VERIFY if diff else code)


if __name__ == "__main__":
    main()
