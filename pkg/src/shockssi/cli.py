"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 input or parse error, 3 numerical
degeneracy, 4 a proved bound failed.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import modal as _modal
from .errors import BoundViolation, ParameterError, ShockError
from .sdof import OscillatorBank
from .signal import gen_damped_sine_sum, gen_half_sine, load_signal, pyroshock_like, save_signal
from .spectrum import build_response_matrix, export_src, srs, write_srs_csv, write_srs_svg
from .ssi import analyse, write_dual_csv, write_dual_svg

log = logging.getLogger("shockssi")

EXIT_USAGE = 1


@dataclass(frozen=True)
class AnalysisConfig:
    fmin: float = 100.0
    fmax: float = 25600.0
    points_per_octave: int = 6
    q: float = 10.0
    src_floor: float = 240.0
    src_ceiling: float = 200_000.0
    output_dir: Path = Path(".")
    seed: int = 0

    def __post_init__(self):
        if not (self.fmin > 0 and self.fmax > self.fmin):
            raise ParameterError("need 0 < fmin < fmax")
        if self.points_per_octave < 1:
            raise ParameterError("points per octave must be >= 1")
        if not self.q > 0.5:
            raise ParameterError("q must exceed 0.5")
        if not 0 < self.src_floor < self.src_ceiling:
            raise ParameterError("need 0 < src_floor < src_ceiling")
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    @classmethod
    def from_sources(cls, config_path=None, **flags):
        """Defaults, then the JSON config file, then non-None flags."""
        values = {}
        if config_path is not None:
            try:
                values.update(json.loads(Path(config_path).read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError) as exc:
                raise click.UsageError(f"bad config file {config_path}: {exc}")
            aliases = {"ppo": "points_per_octave", "out": "output_dir"}
            values = {aliases.get(k, k): v for k, v in values.items()}
            names = {f.name for f in dataclasses.fields(cls)}
            unknown = set(values) - names
            if unknown:
                raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update({k: v for k, v in flags.items() if v is not None})
        return cls(**values)

    def bank(self):
        return OscillatorBank.log_spaced(self.fmin, self.fmax, self.points_per_octave, self.q)


def _outdir(cfg):
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    return cfg.output_dir


def signal_options(f):
    f = click.option("--dt", type=float, default=None,
                     help="Sample interval for single-column files.")(f)
    f = click.option("--format", "fmt", default="csv_two_column",
                     type=click.Choice(["csv_two_column", "csv_single_column"]))(f)
    return f


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--fmin", type=float, default=None, help="Lowest natural frequency, Hz [100].")
@click.option("--fmax", type=float, default=None, help="Highest natural frequency, Hz [25600].")
@click.option("--ppo", type=int, default=None, help="Points per octave [6].")
@click.option("--q", type=float, default=None, help="Quality factor [10].")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory [.].")
@click.option("--config", type=click.Path(dir_okay=False), default=None,
              help="JSON file with any of the above; flags win.")
@click.option("--seed", type=int, default=None, help="Seed for random weight vectors [0].")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def cli(ctx, fmin, fmax, ppo, q, out, config, seed, verbose):
    """Shock response spectrum, shock severity infimum and modal bounds."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        ctx.obj = AnalysisConfig.from_sources(
            config, fmin=fmin, fmax=fmax, points_per_octave=ppo, q=q,
            output_dir=out, seed=seed)
    except (ParameterError, TypeError) as exc:
        raise click.UsageError(str(exc))


@cli.command("srs")
@click.argument("signal_path", type=click.Path())
@signal_options
@click.pass_obj
def cmd_srs(cfg, signal_path, fmt, dt):
    """Write <label>_srs.csv and <label>_srs.svg."""
    sig = load_signal(signal_path, format=fmt, dt=dt)
    spec = srs(build_response_matrix(sig, cfg.bank()))
    if not np.any(spec.values):
        click.echo(f"warning: {sig.label}: response is identically zero", err=True)
    out = _outdir(cfg)
    write_srs_csv(spec, out / f"{sig.label}_srs.csv")
    write_srs_svg(spec, out / f"{sig.label}_srs.svg")
    click.echo(f"wrote {out / (sig.label + '_srs.csv')}")


def _print_svd(res):
    click.echo(f"alpha = {res.alpha:.6f}")
    click.echo("sigma = " + " ".join(f"{s:.6g}" for s in res.sigma))


@cli.command("ssi")
@click.argument("signal_path", type=click.Path())
@signal_options
@click.pass_obj
def cmd_ssi(cfg, signal_path, fmt, dt):
    """Write <label>_ssi.csv (infimum spectrum) and <label>_u_ssi.csv (time shape)."""
    sig = load_signal(signal_path, format=fmt, dt=dt)
    M = build_response_matrix(sig, cfg.bank())
    _, res, _ = analyse(M)
    out = _outdir(cfg)
    np.savetxt(out / f"{sig.label}_ssi.csv", np.column_stack([M.freqs, res.v_ssi]),
               fmt="%.17g", delimiter=",", header="freq_hz,ssi_ms2", comments="")
    np.savetxt(out / f"{sig.label}_u_ssi.csv", np.column_stack([M.times, res.u_ssi]),
               fmt="%.17g", delimiter=",", header="time_s,u_ssi", comments="")
    _print_svd(res)


@cli.command("dual")
@click.argument("signal_path", type=click.Path())
@signal_options
@click.pass_obj
def cmd_dual(cfg, signal_path, fmt, dt):
    """Write <label>_dual.csv/.svg and print alpha and the singular values."""
    sig = load_signal(signal_path, format=fmt, dt=dt)
    M = build_response_matrix(sig, cfg.bank())
    _, res, dual = analyse(M)
    out = _outdir(cfg)
    write_dual_csv(dual, out / f"{sig.label}_dual.csv")
    write_dual_svg(dual, out / f"{sig.label}_dual.svg")
    if dual.flagged.any():
        click.echo(f"warning: {int(dual.flagged.sum())} bins with vanishing SSI", err=True)
    _print_svd(res)


@cli.command("src")
@click.argument("signal_path", type=click.Path())
@signal_options
@click.option("--floor", type=float, default=None, help="Contour floor, m/s^2 [240].")
@click.option("--ceiling", type=float, default=None, help="Contour ceiling, m/s^2 [200000].")
@click.pass_obj
def cmd_src(cfg, signal_path, fmt, dt, floor, ceiling):
    """Write the shock response contour as <label>_src.csv and .svg."""
    sig = load_signal(signal_path, format=fmt, dt=dt)
    M = build_response_matrix(sig, cfg.bank())
    export_src(M, _outdir(cfg) / f"{sig.label}_src",
               floor if floor is not None else cfg.src_floor,
               ceiling if ceiling is not None else cfg.src_ceiling)


@cli.command("predict")
@click.argument("signal_paths", nargs=-1, required=True, type=click.Path())
@click.option("--modal", "modal_path", type=click.Path(), default=None,
              help="Modal CSV mode_no,freq_hz,gamma,phi[,m_eff_kg]; "
                   "defaults to the bundled cantilever beam.")
@click.option("--report", default="bounds.csv", show_default=True)
@signal_options
@click.pass_obj
def cmd_predict(cfg, signal_paths, modal_path, report, fmt, dt):
    """Modal peak response and its SSI/SRS bounds for each signal."""
    model = (_modal.load_modal_model(modal_path) if modal_path
             else _modal.cantilever_beam())
    rows = []
    for p in signal_paths:
        sig = load_signal(p, format=fmt, dt=dt)
        M = build_response_matrix(sig, cfg.bank())
        _, res, _ = analyse(M)
        b = _modal.predict_bounds(M, srs(M), res, model)
        rows.append(b)
        click.echo(f"{b.label}: actual={b.actual_max:.4g} |Nx|={b.abs_max:.4g} "
                   f"ssi={b.ssi_bound:.4g} srs={b.srs_bound:.4g}")
    _modal.write_bounds_csv(rows, _outdir(cfg) / report)


def _component(text):
    try:
        f, a, d, p = (float(v) for v in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected freq,amp,decay,phase, got {text!r}")
    return f, a, d, p


@cli.command("synth")
@click.argument("kind", type=click.Choice(["half-sine", "damped-sines", "pyroshock"]))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--amplitude", type=float, default=100.0, show_default=True)
@click.option("--duration", type=float, default=0.011, show_default=True)
@click.option("--dt", type=float, default=1e-5, show_default=True)
@click.option("--pad", type=float, default=0.0, show_default=True)
@click.option("--component", "components", multiple=True,
              help="freq,amp,decay,phase; repeatable (damped-sines).")
@click.pass_obj
def cmd_synth(cfg, kind, out_path, amplitude, duration, dt, pad, components):
    """Write a synthetic signal as a two-column CSV."""
    label = Path(out_path).stem
    if kind == "half-sine":
        sig = gen_half_sine(amplitude, duration, dt, pad, label)
    elif kind == "damped-sines":
        if not components:
            raise click.UsageError("damped-sines needs at least one --component")
        sig = gen_damped_sine_sum([_component(c) for c in components], duration, dt, label)
    else:
        sig = pyroshock_like(cfg.seed, duration=duration, dt=dt, label=label)
    save_signal(sig, out_path)


@cli.command("verify")
@click.argument("signal_path", type=click.Path())
@click.option("--trials", type=int, default=1000, show_default=True)
@signal_options
@click.pass_obj
def cmd_verify(cfg, signal_path, trials, fmt, dt):
    """Check the trend and sandwich bounds over random weight vectors.

    Writes <label>_verify.json. Fails with exit code 4 only when a proved
    bound does not hold; left-bound violations are warnings.
    """
    sig = load_signal(signal_path, format=fmt, dt=dt)
    M = build_response_matrix(sig, cfg.bank())
    decomp, res, _ = analyse(M)
    rep = _modal.check_bounds(M, decomp, srs(M).values, res, trials=trials, seed=cfg.seed)
    d = rep.to_dict()
    d.update(signal=sig.label, seed=cfg.seed, alpha=res.alpha)
    path = _outdir(cfg) / f"{sig.label}_verify.json"
    path.write_text(json.dumps(d, indent=2) + "\n", encoding="utf-8")
    gmin, gmed, gmax = rep.gap_stats()
    click.echo(f"trials={rep.trials} trend_failures={rep.trend_failures} "
               f"right_failures={rep.right_failures} identity_failures={rep.identity_failures}")
    click.echo(f"gap |Nx|-ssi.x: min={gmin:.6g} median={gmed:.6g} max={gmax:.6g}")
    if rep.left_violations:
        click.echo(f"warning: left bound violated in {rep.left_violations} of "
                   f"{rep.trials} trials; witnesses in {path}", err=True)
    if not rep.proved_ok:
        raise BoundViolation("a proved bound failed; see " + str(path))


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="shockssi", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ShockError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
