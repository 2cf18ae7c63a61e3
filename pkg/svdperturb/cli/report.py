"""JSON report model for the CLI; the pydantic schema is the documented report schema."""

import json
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, Field, field_validator

from svdperturb.linalg import NormKind, ui_norm
from svdperturb.perturb import (
    ComparisonReport,
    CorrectedDecomposition,
    GapReport,
    ImprovedSigmaBounds,
    RotationPair,
)
from svdperturb.sintheta import SinThetaCertificate
from svdperturb.sylvester import BoundCertificate
from svdperturb.utils.helpers import finite_or_none
from svdperturb.verify import PropertyTally


def _real(v: Any) -> float | None:
    return None if v is None else finite_or_none(v)


# Non-finite values (for instance kappa2 when delta_under <= 0) are emitted as null.
Real = Annotated[float | None, BeforeValidator(_real)]


class BoundEntry(BaseModel):
    id: str
    regime: str
    pairing: str
    condition_met: bool
    bound_value: Real
    measured_value: Real
    satisfied: bool

    @classmethod
    def of(cls, c: BoundCertificate) -> "BoundEntry":
        return cls(
            id=c.id,
            regime=c.regime.value,
            pairing=c.pairing.label,
            condition_met=c.condition_met,
            bound_value=c.bound_value,
            measured_value=c.measured_value,
            satisfied=c.satisfied,
        )


class GapSection(BaseModel):
    delta: Real
    delta_under: Real
    epsilon: Real
    g_norm: Real
    kappa2: Real
    c: Real
    separation: str
    pairing: str
    condition_met: bool
    e11_norm: Real
    e22_norm: Real

    @classmethod
    def of(cls, rep: GapReport) -> "GapSection":
        return cls(
            delta=rep.delta,
            delta_under=rep.delta_under,
            epsilon=rep.epsilon,
            g_norm=rep.g_norm,
            kappa2=rep.kappa2,
            c=rep.c,
            separation=rep.separation.value,
            pairing=rep.pairing.label,
            condition_met=rep.condition_met,
            e11_norm=rep.e11_norm,
            e22_norm=rep.e22_norm,
        )


class RotationSection(BaseModel):
    iterations: int
    final_step_norm: Real
    residual_1: Real
    residual_2: Real
    gamma_spectral: Real
    omega_spectral: Real
    guaranteed: bool

    @classmethod
    def of(cls, rot: RotationPair) -> "RotationSection":
        return cls(
            iterations=rot.iterations,
            final_step_norm=rot.final_step_norm,
            residual_1=rot.residual_1,
            residual_2=rot.residual_2,
            gamma_spectral=ui_norm(rot.gamma, NormKind.SPECTRAL),
            omega_spectral=ui_norm(rot.omega, NormKind.SPECTRAL),
            guaranteed=rot.guaranteed,
        )


class CorrectedSection(BaseModel):
    offdiag_residual: Real
    closed_form_deviation: Real
    spectrum_deviation: Real
    rotation_norm: Real
    rotation_bound: Real
    sigma_min_g1: Real
    sigma_min_g1_lower: Real
    sigma_min_g1_upper: Real
    sigma_max_g2: Real
    sigma_max_g2_upper: Real
    u1_dist: Real
    v1_dist: Real
    guaranteed: bool

    @classmethod
    def of(cls, cd: CorrectedDecomposition) -> "CorrectedSection":
        lower, upper = cd.sigma_min_g1_bounds
        return cls(
            offdiag_residual=cd.offdiag_residual,
            closed_form_deviation=cd.closed_form_deviation,
            spectrum_deviation=cd.spectrum_deviation,
            rotation_norm=cd.rotation_norm,
            rotation_bound=cd.bound_pair_norm,
            sigma_min_g1=cd.sigma_min_g1,
            sigma_min_g1_lower=lower,
            sigma_min_g1_upper=upper,
            sigma_max_g2=cd.sigma_max_g2,
            sigma_max_g2_upper=cd.sigma_max_g2_upper,
            u1_dist=cd.u1_dist,
            v1_dist=cd.v1_dist,
            guaranteed=cd.guaranteed,
        )


class CorollaryEntry(BaseModel):
    name: str
    applicable: bool
    condition_met: bool
    kappa: Real
    bound: Real


class ComparisonSection(BaseModel):
    eps_hat: Real
    eps_tilde: Real
    epsilon: Real
    delta_under: Real
    corollaries: list[CorollaryEntry]
    chain_ok: bool
    dominance_ok: bool

    @classmethod
    def of(cls, rep: ComparisonReport) -> "ComparisonSection":
        items = {"stewart": rep.stewart, "naive": rep.naive, **rep.new_bounds}
        return cls(
            eps_hat=rep.eps_hat,
            eps_tilde=rep.eps_tilde,
            epsilon=rep.epsilon,
            delta_under=rep.delta_under,
            corollaries=[
                CorollaryEntry(name=k, applicable=v.applicable, condition_met=v.condition_met, kappa=v.kappa, bound=v.bound)
                for k, v in items.items()
            ],
            chain_ok=rep.chain_ok,
            dominance_ok=rep.dominance_ok,
        )


class ImprovedSigmaSection(BaseModel):
    lower: Real
    upper: Real
    measured: Real
    term: Real
    top_r_match: bool
    per_index_ok: bool
    ok: bool

    @classmethod
    def of(cls, res: ImprovedSigmaBounds) -> "ImprovedSigmaSection":
        return cls(
            lower=res.lower,
            upper=res.upper,
            measured=res.measured,
            term=res.term,
            top_r_match=res.top_r_match,
            per_index_ok=res.per_index_ok,
            ok=res.ok,
        )


class SinThetaSection(BaseModel):
    norm: str
    delta: Real
    constant: Real
    lhs: Real
    bound: Real
    satisfied: bool
    angles_u: list[Real]
    angles_v: list[Real]
    r_norm: Real
    s_norm: Real
    sine_deviation: Real

    @classmethod
    def of(cls, cert: SinThetaCertificate) -> "SinThetaSection":
        return cls(
            norm=cert.kind.value,
            delta=cert.delta,
            constant=cert.constant,
            lhs=cert.lhs,
            bound=cert.bound,
            satisfied=cert.satisfied,
            angles_u=[float(x) for x in np.asarray(cert.angles_u)],
            angles_v=[float(x) for x in np.asarray(cert.angles_v)],
            r_norm=cert.r_norm,
            s_norm=cert.s_norm,
            sine_deviation=cert.sine_deviation,
        )


class PropertySection(BaseModel):
    name: str
    suite: str
    trials: int
    passed: int
    failed: int
    skipped: int
    worst_slack: Real
    first_failure: str = ""

    @classmethod
    def of(cls, t: PropertyTally) -> "PropertySection":
        return cls(
            name=t.name,
            suite=t.suite,
            trials=t.trials,
            passed=t.passed,
            failed=t.failed,
            skipped=t.skipped,
            worst_slack=t.worst_slack,
            first_failure=t.first_failure,
        )


class Report(BaseModel):
    """
    One CLI run. ``timings`` is the only field outside the determinism
    contract: same inputs and flags give identical documents otherwise.
    """

    tool_version: str
    command: str
    inputs: dict[str, str] = Field(default_factory=dict)
    ok: bool = True
    gap_report: GapSection | None = None
    rotation: RotationSection | None = None
    corrected: CorrectedSection | None = None
    comparison: ComparisonSection | None = None
    improved_sigma: ImprovedSigmaSection | None = None
    sintheta: SinThetaSection | None = None
    properties: list[PropertySection] = Field(default_factory=list)
    bounds: list[BoundEntry] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)


def _plain(v: Any) -> Any:
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.ndarray):
        return _plain(v.tolist())
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return finite_or_none(v)
    if isinstance(v, complex):
        return [finite_or_none(v.real), finite_or_none(v.imag)]
    return v if v is None or isinstance(v, str) else str(v)


class ErrorReport(BaseModel):
    tool_version: str
    command: str
    error: dict[str, Any]

    @field_validator("error", mode="before")
    @classmethod
    def _json_safe(cls, v: dict[str, Any]) -> dict[str, Any]:
        return _plain(v)


def dump_json(model: BaseModel, indent: int | None = 2) -> str:
    """Serialize with Python's float repr (shortest round-trip)."""
    return json.dumps(model.model_dump(mode="python"), indent=indent, allow_nan=False)


def report_schema() -> dict[str, Any]:
    return Report.model_json_schema()
