"""Scenario configuration: TOML ingestion and validation.

A scenario file fixes the model parameters, cost weights, time grid, initial
conditions, which solver(s) to run, which control regimes to evaluate, and
per-solver options. Keys are lower_snake_case matching the dataclass field
names. mu_a and eta_a have no default and must be given explicitly; gamma_i
and gamma_v default to 1.0 with a warning, since that normalization is a
calibration choice rather than a measured quantity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from denguevax.direct import DirectOptions
from denguevax.integrate import TimeGrid
from denguevax.model import CostWeights, EpiState, ModelParams
from denguevax.sweep import SweepOptions

FIXED_REGIMES = {"none": 0.0, "full": 1.0}
VALID_METHODS = ("indirect", "direct", "both")


class ParseError(Exception):
    """Config file missing or not parseable."""


class ValidationError(Exception):
    """Config parsed but a field is missing, mistyped, or out of range."""


class DefaultWeightWarning(UserWarning):
    """A cost weight was not specified and fell back to 1.0."""


@dataclass(frozen=True)
class InitialConditions:
    """Initial compartment data.

    infected_humans_0: I_h(0) as a head count.
    m: initial adult (susceptible) mosquitoes per host.
    aquatic_fill: a_m(0) as a fraction of the carrying capacity k.
    """

    infected_humans_0: float
    m: float
    aquatic_fill: float


@dataclass(frozen=True)
class ScenarioConfig:
    params: ModelParams
    weights: CostWeights
    t_f: float
    h: float
    initial: InitialConditions
    method: str
    controls: tuple
    sweep_options: SweepOptions
    direct_options: DirectOptions
    output_dir: str

    def grid(self) -> TimeGrid:
        return TimeGrid(0.0, self.t_f, round(self.t_f / self.h))

    def initial_state(self) -> EpiState:
        i_h = self.initial.infected_humans_0 / self.params.n_h
        return EpiState(
            s_h=1.0 - i_h,
            i_h=i_h,
            r_h=0.0,
            a_m=self.initial.aquatic_fill * self.params.k,
            s_m=self.initial.m,
            i_m=0.0,
        )

    def methods(self) -> tuple[str, ...]:
        return ("indirect", "direct") if self.method == "both" else (self.method,)


def regime_label(regime) -> str:
    """Filename- and column-safe name of a control regime."""
    if isinstance(regime, str):
        return regime
    return f"const_{regime:g}"


def _section(raw: dict, name: str, *, required: bool) -> dict:
    sec = raw.get(name)
    if sec is None:
        if required:
            raise ValidationError(f"missing [{name}] section")
        return {}
    if not isinstance(sec, dict):
        raise ValidationError(f"[{name}] must be a section")
    return sec


def _reject_unknown(sec: dict, allowed: set, name: str) -> None:
    unknown = set(sec) - allowed
    if unknown:
        raise ValidationError(f"unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")


def _number(sec: dict, secname: str, key: str, default=None):
    if key not in sec:
        if default is not None:
            return default
        raise ValidationError(f"{secname}.{key} is required (no default)")
    val = sec[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ValidationError(f"{secname}.{key} must be a number, got {val!r}")
    return float(val)


def _integer(sec: dict, secname: str, key: str, default: int) -> int:
    if key not in sec:
        return default
    val = sec[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ValidationError(f"{secname}.{key} must be an integer, got {val!r}")
    return val


def load_config(path) -> ScenarioConfig:
    """Read and fully validate a scenario file.

    Raises:
        ParseError: unreadable or malformed file.
        ValidationError: well-formed file with a missing or invalid field;
            the message names the offending field.
    """
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"malformed config {path}: {exc}") from exc

    _reject_unknown(
        raw,
        {"t_f", "h", "params", "weights", "initial", "run", "sweep", "direct"},
        "top level",
    )

    psec = _section(raw, "params", required=True)
    param_fields = {
        "n_h", "bite_rate", "beta_mh", "beta_hm", "mu_h", "mu_m", "mu_a",
        "eta_h", "eta_a", "phi", "k", "sigma",
    }
    _reject_unknown(psec, param_fields, "params")
    try:
        params = ModelParams(
            **{f: _number(psec, "params", f) for f in sorted(param_fields)}
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

    wsec = _section(raw, "weights", required=False)
    _reject_unknown(wsec, {"gamma_i", "gamma_v"}, "weights")
    weight_values = {}
    for key in ("gamma_i", "gamma_v"):
        if key in wsec:
            weight_values[key] = _number(wsec, "weights", key)
        else:
            warnings.warn(
                f"weights.{key} not specified; defaulting to 1.0 "
                "(normalization choice, not a measured value)",
                DefaultWeightWarning,
                stacklevel=2,
            )
            weight_values[key] = 1.0
    try:
        weights = CostWeights(**weight_values)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

    t_f = _number(raw, "top level", "t_f")
    h = _number(raw, "top level", "h")
    if t_f <= 0.0:
        raise ValidationError(f"t_f must be positive, got {t_f}")
    if h <= 0.0:
        raise ValidationError(f"h must be positive, got {h}")
    n_steps = round(t_f / h)
    if n_steps < 1 or abs(n_steps * h - t_f) > 1e-9 * t_f:
        raise ValidationError(f"h = {h} does not divide t_f = {t_f} evenly")

    isec = _section(raw, "initial", required=True)
    _reject_unknown(isec, {"infected_humans_0", "m", "aquatic_fill"}, "initial")
    initial = InitialConditions(
        infected_humans_0=_number(isec, "initial", "infected_humans_0"),
        m=_number(isec, "initial", "m"),
        aquatic_fill=_number(isec, "initial", "aquatic_fill", default=1.0),
    )
    if not 0.0 <= initial.infected_humans_0 <= params.n_h:
        raise ValidationError(
            f"initial.infected_humans_0 must lie in [0, n_h], got "
            f"{initial.infected_humans_0}"
        )
    if initial.m < 0.0:
        raise ValidationError(f"initial.m must be >= 0, got {initial.m}")
    if initial.aquatic_fill < 0.0:
        raise ValidationError(
            f"initial.aquatic_fill must be >= 0, got {initial.aquatic_fill}"
        )

    rsec = _section(raw, "run", required=False)
    _reject_unknown(rsec, {"method", "controls", "output_dir"}, "run")
    method = rsec.get("method", "both")
    if method not in VALID_METHODS:
        raise ValidationError(
            f"run.method must be one of {VALID_METHODS}, got {method!r}"
        )
    controls_raw = rsec.get("controls", ["optimal", "none", "full"])
    if not isinstance(controls_raw, list) or not controls_raw:
        raise ValidationError("run.controls must be a non-empty list")
    controls = []
    for entry in controls_raw:
        if isinstance(entry, str):
            if entry != "optimal" and entry not in FIXED_REGIMES:
                raise ValidationError(
                    f"run.controls entry {entry!r} is not one of "
                    "'optimal', 'none', 'full' or a constant in [0, 1]"
                )
            controls.append(entry)
        elif isinstance(entry, (int, float)) and not isinstance(entry, bool):
            if not 0.0 <= float(entry) <= 1.0:
                raise ValidationError(
                    f"run.controls constant {entry} must lie in [0, 1]"
                )
            controls.append(float(entry))
        else:
            raise ValidationError(f"run.controls entry {entry!r} is invalid")
    labels = [regime_label(c) for c in controls]
    if len(set(labels)) != len(labels):
        raise ValidationError("run.controls contains duplicate regimes")
    output_dir = rsec.get("output_dir", "out")
    if not isinstance(output_dir, str) or not output_dir:
        raise ValidationError("run.output_dir must be a non-empty string")

    ssec = _section(raw, "sweep", required=False)
    _reject_unknown(ssec, {"relaxation", "tol", "max_iters"}, "sweep")
    try:
        sweep_options = SweepOptions(
            relaxation=_number(ssec, "sweep", "relaxation", default=0.9),
            tol=_number(ssec, "sweep", "tol", default=1e-4),
            max_iters=_integer(ssec, "sweep", "max_iters", 500),
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

    dsec = _section(raw, "direct", required=False)
    _reject_unknown(dsec, {"n_intervals", "grad_tol", "max_iters", "ls_shrink"}, "direct")
    try:
        direct_options = DirectOptions(
            n_intervals=_integer(dsec, "direct", "n_intervals", 365),
            grad_tol=_number(dsec, "direct", "grad_tol", default=1e-6),
            max_iters=_integer(dsec, "direct", "max_iters", 500),
            ls_shrink=_number(dsec, "direct", "ls_shrink", default=0.5),
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    if n_steps % direct_options.n_intervals:
        raise ValidationError(
            f"direct.n_intervals = {direct_options.n_intervals} does not divide "
            f"the grid's {n_steps} steps"
        )

    return ScenarioConfig(
        params=params,
        weights=weights,
        t_f=t_f,
        h=h,
        initial=initial,
        method=method,
        controls=tuple(controls),
        sweep_options=sweep_options,
        direct_options=direct_options,
        output_dir=output_dir,
    )
