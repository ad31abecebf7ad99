"""Command table: which parameters each command and regime needs, and the
evaluator that turns resolved parameters into a value.

Evaluators return an :class:`Evaluation` that echoes exactly the inputs the
result depends on, defaults included.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Optional

from models.config import RunConfig
from models.errors import ConfigError, DomainError
from models.results import CoefficientResult
from models.specs import BranchVelocities, EmissionSpec, FiniteTimeSpec, QuadratureSpec
from numerics.quadrature import UnitDirection
from physics import bloch_nordsieck as bn
from physics import decoherence_coefficients as dc
from physics.kinematics import build_elastic_cm, superpose
from physics.special_functions import d_weinberg, d_weinberg_deriv


@dataclass
class Evaluation:
    inputs: dict[str, float]
    value: float
    convention_tag: str
    error_estimate: Optional[float] = None
    extras: dict[str, float] = field(default_factory=dict)


Evaluator = Callable[[dict[str, float], QuadratureSpec], Evaluation]


@dataclass(frozen=True)
class Regime:
    required: tuple[str, ...]
    optional: tuple[str, ...]
    evaluate: Evaluator


@dataclass(frozen=True)
class CommandSpec:
    regimes: dict[str, Regime]
    default_regime: Optional[str]


def quadrature_spec(config: RunConfig) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=config.rel_tol,
        abs_tol=config.abs_tol,
        max_subdivisions=config.max_subdivisions,
    )


def _take(params: dict[str, float], keys: tuple[str, ...]) -> dict[str, float]:
    return {k: params[k] for k in keys if k in params}


def _gm2(params: dict[str, float]) -> float:
    """G m^2 from ``gm2`` when given, else from ``G`` and ``m``."""
    if "gm2" in params:
        return params["gm2"]
    return params["G"] * params["m"] ** 2


def _emission_spec(params: dict[str, float]) -> EmissionSpec:
    return EmissionSpec(
        lambda_ir=params["lambda_ir"],
        lambda_uv=params["lambda_uv"],
        newton_g=params["G"],
        m0_squared=params.get("m0_squared", 1.0),
    )


def _coefficient(inputs: dict[str, float], result: CoefficientResult) -> Evaluation:
    return Evaluation(
        inputs=inputs,
        value=result.total,
        convention_tag=result.convention_tag,
        extras={
            "bracket_value": result.bracket_value,
            "log_factor": result.log_factor,
            "prefactor": result.prefactor,
        },
    )


# ---------------------------------------------------------------------------
# Evaluators
# ---------------------------------------------------------------------------


def _dfunc_value(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    return Evaluation(_take(params, ("x",)), d_weinberg(params["x"]), "weinberg-d")


def _dfunc_derivative(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    return Evaluation(_take(params, ("x",)), d_weinberg_deriv(params["x"]), "weinberg-d-derivative")


_EMISSION_KEYS = ("m", "Q", "theta", "lambda_ir", "lambda_uv", "G", "m0_squared")


def _emission(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    kin = build_elastic_cm(params["m"], params["Q"], params["theta"])
    result = dc.emission_log_coefficient(kin, _emission_spec(params))
    return _coefficient(_take(params, _EMISSION_KEYS), result)


_INTERFERENCE_KEYS = ("m", "Q", "theta", "phi", "lambda_ir", "lambda_uv", "G", "m1m2_re")
_MASSLESS_KEYS = ("Q", "theta", "phi", "s", "lambda_ir", "lambda_uv", "G", "m1m2_re")
_MASSLESS_SMALL_KEYS = ("Q", "phi", "lambda_ir", "lambda_uv", "G", "m1m2_re")


def _interference_exact(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    pair = superpose(build_elastic_cm(params["m"], params["Q"], params["theta"]), params["phi"])
    result = dc.interference_coefficient(pair, _emission_spec(params), params["m1m2_re"])
    return _coefficient(_take(params, _INTERFERENCE_KEYS), result)


def _interference_small_angle(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    kin = build_elastic_cm(params["m"], params["Q"], params["theta"])
    result = dc.interference_coefficient_small_angle(
        kin, params["phi"], _emission_spec(params), params["m1m2_re"]
    )
    return _coefficient(_take(params, _INTERFERENCE_KEYS), result)


def _interference_massless(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    pair = superpose(build_elastic_cm(0.0, params["Q"], params["theta"]), params["phi"])
    result = dc.interference_coefficient_massless(
        pair, params.get("s"), _emission_spec(params), params["m1m2_re"]
    )
    inputs = _take(params, _MASSLESS_KEYS)
    inputs.setdefault("s", pair.base.s)
    return _coefficient(inputs, result)


def _interference_massless_small(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    result = dc.interference_coefficient_massless_small_angle(
        params["Q"], params["phi"], _emission_spec(params), params["m1m2_re"]
    )
    return _coefficient(_take(params, _MASSLESS_SMALL_KEYS), result)


def _branches(params: dict[str, float]) -> BranchVelocities:
    return BranchVelocities(speed=params["v"], opening_angle=params["delta"])


def _xi(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    khat = UnitDirection(z=params["z"], azimuth=params["azimuth"])
    if not -1.0 <= khat.z <= 1.0:
        raise DomainError(f"polar cosine z must lie in [-1, 1], got {khat.z}")
    value = bn.xi_density(_branches(params), gm2, 1.0, khat)
    inputs = {**_take(params, ("v", "delta", "z", "azimuth")), "gm2": gm2}
    return Evaluation(inputs, value, "xi-gm2-gamma2-over-pi2")


def _xcoeff_quadrature(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    result = bn.x_coefficient(_branches(params), gm2, 1.0, quad)
    inputs = {**_take(params, ("v", "delta")), "gm2": gm2}
    return Evaluation(inputs, result.value, "x-solid-angle", result.error_estimate)


def _xcoeff_closed_form(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    value = bn.x0_closed_form(params["v"], None, gm2, 1.0)
    return Evaluation({"v": params["v"], "gm2": gm2}, value, "x0-closed-form")


def _nu_relativistic(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    gamma = params["gamma"]
    value = bn.nu_relativistic(gm2 * gamma * gamma, params["delta"], gamma)
    inputs = {"gm2": gm2, "gamma": gamma, "delta": params["delta"]}
    return Evaluation(inputs, value, "nu-relativistic")


def _nu_nonrelativistic(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    value = bn.nu_nonrelativistic(gm2, params["v"], params["delta"])
    inputs = {"gm2": gm2, "v": params["v"], "delta": params["delta"]}
    return Evaluation(inputs, value, "nu-nonrelativistic")


def _nu_quadrature(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    result = bn.nu_from_quadrature(_branches(params), gm2, 1.0, quad)
    inputs = {"gm2": gm2, "v": params["v"], "delta": params["delta"]}
    return Evaluation(inputs, result.value, "nu-x0-minus-x", result.error_estimate)


def _ratio(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    value = bn.interference_ratio(params["t1"], params["t2"], params["nu"])
    return Evaluation(_take(params, ("t1", "t2", "nu")), value, "power-law")


_FINITE_TIME_KEYS = ("v", "delta", "t", "lambda_ir", "lambda_uv", "omega_r")


def _finite_time_spec(params: dict[str, float]) -> FiniteTimeSpec:
    return FiniteTimeSpec(
        time=params["t"],
        ir_cutoff=params["lambda_ir"],
        uv_cutoff=params["lambda_uv"],
        reference_frequency=params["omega_r"],
    )


def _finite_time_factor(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    spec = _finite_time_spec(params)
    result = bn.finite_time_real_factor(_branches(params), gm2, 1.0, spec, quad)
    inputs = {**_take(params, _FINITE_TIME_KEYS), "gm2": gm2}
    return Evaluation(
        inputs,
        result.value,
        "finite-time-real-factor",
        result.error_estimate,
        extras={"log_reference": spec.log_reference},
    )


def _finite_time_slope(params: dict[str, float], quad: QuadratureSpec) -> Evaluation:
    gm2 = _gm2(params)
    spec = _finite_time_spec(params)
    value = bn.finite_time_log_slope(_branches(params), gm2, 1.0, spec, quad)
    inputs = {**_take(params, _FINITE_TIME_KEYS), "gm2": gm2}
    return Evaluation(
        inputs, value, "finite-time-log-slope", extras={"log_reference": spec.log_reference}
    )


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------

_COUPLING = ("gm2", "G", "m")
_ELASTIC = ("Q", "theta", "lambda_ir", "lambda_uv")

COMMANDS: dict[str, CommandSpec] = {
    "dfunc": CommandSpec(
        regimes={
            "value": Regime(("x",), (), _dfunc_value),
            "derivative": Regime(("x",), (), _dfunc_derivative),
        },
        default_regime="value",
    ),
    "emission": CommandSpec(
        regimes={"exact": Regime(_ELASTIC, ("m", "G", "m0_squared"), _emission)},
        default_regime="exact",
    ),
    "interference": CommandSpec(
        regimes={
            "exact": Regime(_ELASTIC + ("phi",), ("m", "G", "m1m2_re"), _interference_exact),
            "small-angle": Regime(
                _ELASTIC + ("phi",), ("m", "G", "m1m2_re"), _interference_small_angle
            ),
            "massless": Regime(
                ("Q", "theta", "phi", "lambda_ir", "lambda_uv"),
                ("s", "G", "m1m2_re"),
                _interference_massless,
            ),
            "massless-small-angle": Regime(
                ("Q", "phi", "lambda_ir", "lambda_uv"),
                ("G", "m1m2_re"),
                _interference_massless_small,
            ),
        },
        default_regime="exact",
    ),
    "xi": CommandSpec(
        regimes={"density": Regime(("v", "z"), ("delta", "azimuth") + _COUPLING, _xi)},
        default_regime="density",
    ),
    "xcoeff": CommandSpec(
        regimes={
            "quadrature": Regime(("v",), ("delta",) + _COUPLING, _xcoeff_quadrature),
            "closed-form": Regime(("v",), _COUPLING, _xcoeff_closed_form),
        },
        default_regime="quadrature",
    ),
    "nu": CommandSpec(
        regimes={
            "rel": Regime(("gamma", "delta"), _COUPLING, _nu_relativistic),
            "nonrel": Regime(("v", "delta"), _COUPLING, _nu_nonrelativistic),
            "quadrature": Regime(("v", "delta"), _COUPLING, _nu_quadrature),
        },
        default_regime=None,
    ),
    "ratio": CommandSpec(
        regimes={"power-law": Regime(("t1", "t2", "nu"), (), _ratio)},
        default_regime="power-law",
    ),
    "finite-time": CommandSpec(
        regimes={
            "factor": Regime(
                ("v", "t", "lambda_ir", "lambda_uv"),
                ("delta", "omega_r") + _COUPLING,
                _finite_time_factor,
            ),
            "slope": Regime(
                ("v", "t", "lambda_ir", "lambda_uv"),
                ("delta", "omega_r") + _COUPLING,
                _finite_time_slope,
            ),
        },
        default_regime="factor",
    ),
}


def resolve_regime(config: RunConfig) -> tuple[str, Regime]:
    """Pick the regime of the evaluated command.

    Raises:
        ConfigError: If no regime is given where one is needed, or it is unknown.
    """
    command = COMMANDS[config.evaluated_command]
    name = config.regime or command.default_regime
    if name is None:
        choices = ", ".join(command.regimes)
        raise ConfigError("regime", f"{config.evaluated_command} needs --regime ({choices})")
    if name not in command.regimes:
        choices = ", ".join(command.regimes)
        raise ConfigError("regime", f"unknown regime {name!r}; choose from {choices}")
    return name, command.regimes[name]


def check_required(config: RunConfig) -> None:
    """Reject a config that cannot be evaluated at all.

    Raises:
        ConfigError: Naming the first missing or unusable key.
    """
    _, regime = resolve_regime(config)
    swept = {axis.name for axis in config.grid}
    allowed = set(regime.required) | set(regime.optional)
    for key in regime.required:
        if key not in config.params and key not in swept:
            raise ConfigError(key, f"missing parameter for {config.evaluated_command}")
    for key in list(config.params) + sorted(swept):
        if key not in allowed:
            raise ConfigError(key, f"not a parameter of {config.evaluated_command}")
    params = config.params
    if "lambda_ir" in params and "lambda_uv" in params and not params["lambda_ir"] < params["lambda_uv"]:
        raise ConfigError("lambda_ir", "lambda_ir must be below lambda_uv")
    if not (math.isfinite(config.rel_tol) and math.isfinite(config.abs_tol)):
        raise ConfigError("rel_tol", "tolerances must be finite")
