"""Analytical latency/energy/power model for arrays of photonic MVUs.

Architecture, per configuration (v, k, b, V, K):

* V FC units. Each holds a v-element activation vector on one
  wavelength-multiplexed input bank and a v x v weight tile on a splitter-fed
  MR array (one output row per result element, one photodetector + converter
  per row). A (p_a, p_w)-bit tile takes ceil(p_a/b)*ceil(p_w/b) time steps:
  the activation slice stays put while weight slices cycle, and shift-and-add
  is digital.
* K CONV units. Each holds a k-element kernel chunk with all ceil(p_w/b)
  weight slices laid out spatially on parallel waveguides; activation slices
  stream over ceil(p_a/b) steps. Amplifiers with power-of-two gains and
  current summing perform the shift-and-add optically, so one conversion per
  step suffices.

Mapping: FC layers tile into ceil(in/v)*ceil(out/v) units of work, CONV
layers into (output positions x kernel chunks); work units round-robin over
the V or K available units, which divides latency but leaves energy alone.

Energy accounting (each device is charged power x active time):

* DACs hold analog values for the whole step: one per active wavelength lane
  (input bank) plus one per active output row/waveguide (weight side,
  sample-and-hold shared along the row), each at dac_power(resolution) for
  the full step period.
* ADC conversions, photodetector and source events, and amplifier passes are
  charged at their own device latency, once per activation.
* Resonance-shift (tuning transition) energy is charged per imprint event;
  operands that stay put between steps are not re-imprinted.
* Laser power (smallest feasible for the unit's path, from the link budget)
  and thermal trimming (duty-cycled, per MR bank) are charged over the time
  units actually spend occupied.

The step period is the slowest element of the per-step device chain
(pipelined; ``pipelined=False`` sums the chain instead). All reported
energies scale by the configuration's ``energy_scale`` calibration constant.

Everything here is a pure function of (model, config, catalog); reports are
immutable values and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
import json

from . import workload_ir as wir
from .device_catalog import (
    DEFAULT_CATALOG,
    DeviceCatalog,
    aggregate_photoloss,
    dbm_to_mw,
    min_laser_power,
)

_MAX_BITS = 16

#: name used for this architecture in reports and comparison tables
ARCH_NAME = "bitwave"

#: calibration anchor: reported energy of the two-element 8-bit dot-product
#: micro-workload at b=4 on a two-wavelength unit, used to solve energy_scale
MICRO_DOT_ENERGY_ANCHOR_J = 6.0e-3


class ConfigError(ValueError):
    """Invalid architecture configuration."""


class LaserInfeasibleError(RuntimeError):
    """The link budget cannot be closed under the configured laser ceiling."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ArchConfig:
    """Accelerator configuration plus calibration constants."""

    v: int
    k: int
    b: int
    V: int
    K: int
    laser_ceiling_dbm: float = 30.0
    energy_scale: float = 1.0
    pipelined: bool = True
    step_period_ns: float | None = None  # None: derive from the device chain

    def __post_init__(self) -> None:
        for name in ("v", "k"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if not 1 <= self.b <= _MAX_BITS:
            raise ConfigError(f"b must be in [1, {_MAX_BITS}], got {self.b}")
        for name in ("V", "K"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.energy_scale <= 0:
            raise ConfigError(f"energy_scale must be positive, got {self.energy_scale}")
        if self.step_period_ns is not None and self.step_period_ns <= 0:
            raise ConfigError(f"step_period_ns must be positive, got {self.step_period_ns}")


_CONFIG_FIELDS = (
    "v", "k", "b", "V", "K",
    "laser_ceiling_dbm", "energy_scale", "pipelined", "step_period_ns",
)


def arch_config_from_dict(doc: dict) -> ArchConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    unknown = set(doc) - set(_CONFIG_FIELDS)
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    for req in ("v", "k", "b", "V", "K"):
        if req not in doc:
            raise ConfigError(f"config is missing field {req!r}")
    return ArchConfig(**doc)


def load_arch_config(path: str | Path) -> ArchConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return arch_config_from_dict(json.load(fh))


@dataclass(frozen=True)
class BaselineSpec:
    """A fixed-resolution single-step accelerator stand-in."""

    name: str
    weight_bits: int
    act_bits: int
    single_step: bool = True
    device_overrides: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("weight_bits", "act_bits"):
            bits = getattr(self, name)
            if not 1 <= bits <= _MAX_BITS:
                raise ConfigError(f"baseline {self.name!r}: {name} out of [1, {_MAX_BITS}]")


def load_baseline_spec(path: str | Path) -> BaselineSpec:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    known = {"name", "weight_bits", "act_bits", "single_step", "device_overrides"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown baseline fields: {sorted(unknown)}")
    return BaselineSpec(**doc)


# -- step-count laws ----------------------------------------------------------


def _check_bits(name: str, bits: int) -> None:
    if not 1 <= bits <= _MAX_BITS:
        raise ConfigError(f"{name} must be in [1, {_MAX_BITS}], got {bits}")


def fc_time_steps(p_a: int, p_w: int, b: int) -> int:
    """Steps per FC tile: every (activation, weight) slice pair once."""
    _check_bits("p_a", p_a)
    _check_bits("p_w", p_w)
    _check_bits("b", b)
    return _ceil_div(p_a, b) * _ceil_div(p_w, b)


def conv_time_steps(p_a: int, b: int) -> int:
    """Steps per CONV output element and kernel chunk: one per activation slice."""
    _check_bits("p_a", p_a)
    _check_bits("b", b)
    return _ceil_div(p_a, b)


# -- MVU geometry and the link budget -----------------------------------------


@dataclass(frozen=True)
class MvuSpec:
    """Optical structure of one unit: ring counts, path loss, laser need."""

    kind: str
    n_wavelengths: int
    n_rows: int
    n_mr: int
    waveguide_cm: float
    path_loss_db: float
    min_laser_dbm: float
    per_step_devices: dict


def _split_loss_db(n_branches: int, catalog: DeviceCatalog) -> float:
    """Power division plus per-stage excess loss of a 1-to-n splitter tree."""
    if n_branches <= 1:
        return 0.0
    stages = (n_branches - 1).bit_length()
    return 10.0 * math.log10(n_branches) + stages * catalog.losses.splitter_db


def _mvu_spec(kind: str, n_lambda: int, n_rows: int, catalog: DeviceCatalog) -> MvuSpec:
    L = catalog.losses
    wg_cm = catalog.base_waveguide_cm + catalog.mr_pitch_cm * (2 * n_lambda)
    path = [
        ("mr_modulation", 1.0), ("mr_through", float(n_lambda - 1)),  # input bank
        ("mr_modulation", 1.0), ("mr_through", float(n_lambda - 1)),  # weight row
        ("waveguide_cm", wg_cm),
        ("eo_cm", 2 * catalog.eo_section_cm),
    ]
    loss = aggregate_photoloss(path, L) + _split_loss_db(n_rows, catalog)
    laser = min_laser_power(loss, n_lambda, catalog.detector_sensitivity_dbm)
    if kind == wir.FC:
        devices = {
            "dac": n_lambda + n_rows,
            "adc": n_rows,
            "pd": n_rows,
            "vcsel": n_lambda,
            "soa": 0,
        }
    else:
        devices = {
            "dac": n_lambda + n_rows,
            "adc": 1,
            "pd": n_rows,
            "vcsel": n_lambda,
            "soa": n_rows,
        }
    return MvuSpec(
        kind=kind,
        n_wavelengths=n_lambda,
        n_rows=n_rows,
        n_mr=n_lambda + n_lambda * n_rows,
        waveguide_cm=wg_cm,
        path_loss_db=loss,
        min_laser_dbm=laser,
        per_step_devices=devices,
    )


def fc_mvu_spec(cfg: ArchConfig, catalog: DeviceCatalog = DEFAULT_CATALOG) -> MvuSpec:
    return _mvu_spec(wir.FC, cfg.v, cfg.v, catalog)


def conv_mvu_spec(
    cfg: ArchConfig, n_weight_slices: int, catalog: DeviceCatalog = DEFAULT_CATALOG
) -> MvuSpec:
    return _mvu_spec(wir.CONV, cfg.k, n_weight_slices, catalog)


def _require_feasible(spec: MvuSpec, cfg: ArchConfig) -> None:
    if spec.min_laser_dbm > cfg.laser_ceiling_dbm:
        raise LaserInfeasibleError(
            f"{spec.kind} unit path ({spec.n_wavelengths} wavelengths, "
            f"{spec.n_rows} rows, {spec.path_loss_db:.2f} dB loss) needs "
            f"{spec.min_laser_dbm:.2f} dBm laser > ceiling {cfg.laser_ceiling_dbm:.2f} dBm"
        )


# -- mapping -------------------------------------------------------------------


@dataclass(frozen=True)
class MappingPlan:
    """How one layer spreads over the unit array."""

    layer_index: int
    kind: str
    n_units_of_work: int  # FC: weight tiles; CONV: output positions x chunks
    steps_per_unit: int
    passes: int  # sequential rounds over the available units
    mvus_used: int
    seq_steps: int  # total sequential time steps for the layer


def map_layer(layer: wir.LayerSpec, cfg: ArchConfig) -> MappingPlan:
    """Tile a layer onto the configured array (bit-sliced operation)."""
    return _map_layer(layer, cfg, _ceil_div(layer.act_bits, cfg.b), _ceil_div(layer.weight_bits, cfg.b))


def _map_layer(layer: wir.LayerSpec, cfg: ArchConfig, n_a: int, n_w: int) -> MappingPlan:
    if layer.kind == wir.FC:
        if cfg.V < 1:
            raise ConfigError(f"layer {layer.index} is FC but the config has V=0 FC units")
        tiles = _ceil_div(layer.in_features, cfg.v) * _ceil_div(layer.out_features, cfg.v)
        steps = n_a * n_w
        passes = _ceil_div(tiles, cfg.V)
        used = min(cfg.V, tiles)
        return MappingPlan(layer.index, wir.FC, tiles, steps, passes, used, passes * steps)
    if cfg.K < 1:
        raise ConfigError(f"layer {layer.index} is CONV but the config has K=0 CONV units")
    length = layer.kernel_h * layer.kernel_w * layer.in_channels
    chunks = _ceil_div(length, cfg.k)
    oh, ow = wir.layer_out_hw(layer)
    positions = oh * ow * layer.out_channels
    units = positions * chunks
    steps = n_a
    passes = _ceil_div(units, cfg.K)
    used = min(cfg.K, units)
    return MappingPlan(layer.index, wir.CONV, units, steps, passes, used, passes * steps)


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class LayerReport:
    index: int
    kind: str
    time_steps: int
    step_period_ns: float
    latency_s: float
    energy_j: float
    macs: int
    processed_bits: int
    mvus_used: int

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "time_steps": self.time_steps,
            "step_period_ns": self.step_period_ns,
            "latency_s": self.latency_s,
            "energy_j": self.energy_j,
            "macs": self.macs,
            "processed_bits": self.processed_bits,
            "mvus_used": self.mvus_used,
        }


@dataclass(frozen=True)
class SimReport:
    """Roll-up of one workload on one accelerator."""

    model_name: str
    accelerator: str
    total_time_steps: int
    latency_s: float
    energy_j: float
    peak_power_w: float
    total_macs: int
    processed_bits: int
    epb_j_per_bit: float
    gops: float
    gops_per_epb: float
    per_layer: tuple[LayerReport, ...]

    def to_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "accelerator": self.accelerator,
            "total_time_steps": self.total_time_steps,
            "latency_s": self.latency_s,
            "energy_j": self.energy_j,
            "peak_power_w": self.peak_power_w,
            "total_macs": self.total_macs,
            "processed_bits": self.processed_bits,
            "epb_j_per_bit": self.epb_j_per_bit,
            "gops": self.gops,
            "gops_per_epb": self.gops_per_epb,
            "per_layer": [l.to_dict() for l in self.per_layer],
        }


def epb(report: SimReport) -> float:
    """Energy per processed data bit."""
    if report.processed_bits <= 0:
        raise ValueError("report has zero processed bits")
    return report.energy_j / report.processed_bits


def gops_per_epb(report: SimReport) -> float:
    e = epb(report)
    return report.gops / e


# -- core simulation -----------------------------------------------------------


@dataclass(frozen=True)
class _ConverterPlan:
    """Per-layer converter/slicing parameters (differs between architectures)."""

    n_a: int
    n_w: int
    dac_bits_act: int
    dac_bits_w: int
    adc_bits: int
    use_soa: bool


def _step_period_ns(cfg: ArchConfig, catalog: DeviceCatalog, cp: _ConverterPlan) -> float:
    if cfg.step_period_ns is not None:
        return cfg.step_period_ns
    d = catalog.devices
    chain = [
        d.eo_tuning_latency_ns,  # operand imprint settles within the step
        max(catalog.dac_latency(cp.dac_bits_act), catalog.dac_latency(cp.dac_bits_w)),
        d.vcsel_latency_ns,
        d.photodetector_latency_ns,
        catalog.adc_latency(cp.adc_bits),
    ]
    if cp.use_soa:
        chain.append(d.soa_latency_ns)
    return max(chain) if cfg.pipelined else sum(chain)


def _static_power_mw(laser_mw: float, catalog: DeviceCatalog, n_banks: int = 2) -> float:
    to_mw = catalog.devices.to_tuning_power_mw_per_fsr * catalog.to_duty_cycle * n_banks
    return laser_mw + to_mw


def _eo_event_pj(catalog: DeviceCatalog) -> float:
    d = catalog.devices
    return d.eo_tuning_power_mw_per_nm * catalog.eo_shift_nm * d.eo_tuning_latency_ns


def _sim_layer(
    layer: wir.LayerSpec,
    cfg: ArchConfig,
    catalog: DeviceCatalog,
    cp: _ConverterPlan,
    laser_mw: float,
) -> LayerReport:
    d = catalog.devices
    plan = _map_layer(layer, cfg, cp.n_a, cp.n_w)
    period = _step_period_ns(cfg, catalog, cp)
    steps = plan.steps_per_unit

    if layer.kind == wir.FC:
        n_i, n_o = layer.in_features, layer.out_features
        lane_chunks = _ceil_div(n_i, cfg.v)
        row_chunks = _ceil_div(n_o, cfg.v)
        act_dac_holds = row_chunks * n_i * steps
        w_dac_holds = lane_chunks * n_o * steps
        adc_convs = lane_chunks * n_o * steps  # one per output row per step
        pd_events = adc_convs
        soa_events = 0
        vcsel_events = act_dac_holds
        # weight slices cycle every step; the activation slice holds still
        eo_events = n_i * n_o * (steps if cp.n_w > 1 else 1) + row_chunks * n_i * cp.n_a
        busy_slots = plan.n_units_of_work * steps
    else:
        length = layer.kernel_h * layer.kernel_w * layer.in_channels
        chunks = _ceil_div(length, cfg.k)
        positions = plan.n_units_of_work // chunks
        act_dac_holds = positions * length * steps
        w_dac_holds = positions * chunks * cp.n_w * steps  # one per weight-slice lane
        adc_convs = positions * chunks * steps  # current-summed: one conversion
        pd_events = positions * chunks * cp.n_w * steps
        soa_events = pd_events if cp.use_soa else 0
        vcsel_events = act_dac_holds
        # activations re-imprint every step; kernel slices once per position
        eo_events = act_dac_holds + positions * length * cp.n_w
        busy_slots = plan.n_units_of_work * steps

    energy_pj = act_dac_holds * catalog.dac_power(cp.dac_bits_act) * period
    energy_pj += w_dac_holds * catalog.dac_power(cp.dac_bits_w) * period
    energy_pj += adc_convs * catalog.adc_power(cp.adc_bits) * catalog.adc_latency(cp.adc_bits)
    energy_pj += pd_events * d.photodetector_power_mw * d.photodetector_latency_ns
    energy_pj += vcsel_events * d.vcsel_power_mw * d.vcsel_latency_ns
    energy_pj += soa_events * d.soa_power_mw * d.soa_latency_ns
    energy_pj += eo_events * _eo_event_pj(catalog)
    energy_pj += _static_power_mw(laser_mw, catalog) * busy_slots * period

    macs = wir.layer_mac_count(layer)
    return LayerReport(
        index=layer.index,
        kind=layer.kind,
        time_steps=plan.seq_steps,
        step_period_ns=period,
        latency_s=plan.seq_steps * period * 1e-9,
        energy_j=energy_pj * 1e-12 * cfg.energy_scale,
        macs=macs,
        processed_bits=macs * (layer.weight_bits + layer.act_bits),
        mvus_used=plan.mvus_used,
    )


def _unit_active_power_mw(
    spec: MvuSpec, cfg: ArchConfig, catalog: DeviceCatalog, cp: _ConverterPlan
) -> float:
    """Worst-case power of one fully occupied unit (all devices active)."""
    d = catalog.devices
    dev = spec.per_step_devices
    p = spec.n_wavelengths * catalog.dac_power(cp.dac_bits_act)
    p += spec.n_rows * catalog.dac_power(cp.dac_bits_w)
    p += dev["adc"] * catalog.adc_power(cp.adc_bits)
    p += dev["pd"] * d.photodetector_power_mw
    p += dev["vcsel"] * d.vcsel_power_mw
    p += dev["soa"] * d.soa_power_mw
    p += spec.n_mr * d.eo_tuning_power_mw_per_nm * catalog.eo_shift_nm
    p += _static_power_mw(dbm_to_mw(spec.min_laser_dbm), catalog)
    return p


def max_power(cfg: ArchConfig, catalog: DeviceCatalog = DEFAULT_CATALOG) -> float:
    """Worst-case simultaneous power draw (W) with every unit fully active.

    CONV units are sized for the widest supported operand (16-bit weights
    at the configured slice width).
    """
    total_mw = 0.0
    if cfg.V > 0:
        cp = _ConverterPlan(1, 1, cfg.b, cfg.b, cfg.b, False)
        total_mw += cfg.V * _unit_active_power_mw(fc_mvu_spec(cfg, catalog), cfg, catalog, cp)
    if cfg.K > 0:
        n_w = _ceil_div(_MAX_BITS, cfg.b)
        cp = _ConverterPlan(1, n_w, cfg.b, cfg.b, cfg.b, True)
        total_mw += cfg.K * _unit_active_power_mw(conv_mvu_spec(cfg, n_w, catalog), cfg, catalog, cp)
    return total_mw * 1e-3


def _zero_report(model_name: str, accelerator: str) -> SimReport:
    return SimReport(
        model_name=model_name,
        accelerator=accelerator,
        total_time_steps=0,
        latency_s=0.0,
        energy_j=0.0,
        peak_power_w=0.0,
        total_macs=0,
        processed_bits=0,
        epb_j_per_bit=0.0,
        gops=0.0,
        gops_per_epb=0.0,
        per_layer=(),
    )


def _simulate(
    model: wir.WorkloadModel,
    cfg: ArchConfig,
    catalog: DeviceCatalog,
    accelerator: str,
    plan_for_layer,
) -> SimReport:
    if not model.layers:
        return _zero_report(model.name, accelerator)

    fc_spec = fc_mvu_spec(cfg, catalog) if any(l.kind == wir.FC for l in model.layers) else None
    if fc_spec is not None:
        if cfg.V < 1:
            raise ConfigError("model has FC layers but the config has V=0 FC units")
        _require_feasible(fc_spec, cfg)

    conv_specs: dict[int, MvuSpec] = {}
    per_layer: list[LayerReport] = []
    peak_mw = 0.0
    for layer in model.layers:
        cp: _ConverterPlan = plan_for_layer(layer)
        if layer.kind == wir.FC:
            spec = fc_spec
        else:
            if cfg.K < 1:
                raise ConfigError("model has CONV layers but the config has K=0 CONV units")
            spec = conv_specs.get(cp.n_w)
            if spec is None:
                spec = conv_mvu_spec(cfg, cp.n_w, catalog)
                _require_feasible(spec, cfg)
                conv_specs[cp.n_w] = spec
        rep = _sim_layer(layer, cfg, catalog, cp, dbm_to_mw(spec.min_laser_dbm))
        per_layer.append(rep)
        peak_mw = max(peak_mw, rep.mvus_used * _unit_active_power_mw(spec, cfg, catalog, cp))

    latency = sum(r.latency_s for r in per_layer)
    energy = sum(r.energy_j for r in per_layer)
    macs = sum(r.macs for r in per_layer)
    bits = sum(r.processed_bits for r in per_layer)
    epb_val = energy / bits if bits else 0.0
    gops = 2.0 * macs / latency / 1e9 if latency > 0 else 0.0
    return SimReport(
        model_name=model.name,
        accelerator=accelerator,
        total_time_steps=sum(r.time_steps for r in per_layer),
        latency_s=latency,
        energy_j=energy,
        peak_power_w=peak_mw * 1e-3,
        total_macs=macs,
        processed_bits=bits,
        epb_j_per_bit=epb_val,
        gops=gops,
        gops_per_epb=gops / epb_val if epb_val > 0 else 0.0,
        per_layer=tuple(per_layer),
    )


def simulate_inference(
    model: wir.WorkloadModel,
    cfg: ArchConfig,
    catalog: DeviceCatalog = DEFAULT_CATALOG,
) -> SimReport:
    """Run one inference of a quantized model on the bit-sliced architecture."""

    def plan(layer: wir.LayerSpec) -> _ConverterPlan:
        return _ConverterPlan(
            n_a=_ceil_div(layer.act_bits, cfg.b),
            n_w=_ceil_div(layer.weight_bits, cfg.b),
            dac_bits_act=cfg.b,
            dac_bits_w=cfg.b,
            adc_bits=cfg.b,
            use_soa=layer.kind == wir.CONV,
        )

    return _simulate(model, cfg, catalog, ARCH_NAME, plan)


def simulate_baseline(
    model: wir.WorkloadModel,
    spec: BaselineSpec,
    cfg: ArchConfig,
    catalog: DeviceCatalog = DEFAULT_CATALOG,
) -> SimReport:
    """Run the model on a fixed-resolution single-step stand-in accelerator.

    The stand-in reuses the array geometry of ``cfg`` but quantizes every
    layer to the baseline's homogeneous bitwidths, performs full-resolution
    dot products in one step (no slicing, no gain ladder), and sizes its
    converters to those bitwidths.
    """
    from .device_catalog import apply_device_overrides

    homogeneous = wir.with_bits(model, spec.weight_bits, spec.act_bits)
    cat = apply_device_overrides(catalog, spec.device_overrides)

    def plan(layer: wir.LayerSpec) -> _ConverterPlan:
        return _ConverterPlan(
            n_a=1,
            n_w=1,
            dac_bits_act=spec.act_bits,
            dac_bits_w=spec.weight_bits,
            adc_bits=max(spec.act_bits, spec.weight_bits),
            use_soa=False,
        )

    return _simulate(homogeneous, cfg, cat, spec.name, plan)


# -- micro-workload calibration --------------------------------------------------


def micro_dot_workload(p_bits: int, name: str = "micro-dot") -> wir.WorkloadModel:
    """Two-element dot product as a minimal FC workload (one output)."""
    layer = wir.LayerSpec(
        index=0, kind=wir.FC, in_features=2, out_features=1,
        weight_bits=p_bits, act_bits=p_bits,
    )
    return wir.WorkloadModel(name=name, layers=(layer,))


def micro_dot_config(b: int = 4, energy_scale: float = 1.0) -> ArchConfig:
    """Two-wavelength single-unit configuration for the micro-workload."""
    return ArchConfig(v=2, k=1, b=b, V=1, K=1, energy_scale=energy_scale)


def calibrate_energy_scale(
    catalog: DeviceCatalog = DEFAULT_CATALOG,
    anchor_j: float = MICRO_DOT_ENERGY_ANCHOR_J,
) -> float:
    """Solve the global energy_scale from the micro-workload anchor.

    The raw device-level energies are picojoule-scale; reported energies are
    anchored so the 8-bit b=4 micro dot product reads ``anchor_j``. One
    constant, solved once; everything else is parameter-free.
    """
    raw = simulate_inference(micro_dot_workload(8), micro_dot_config(4), catalog).energy_j
    return anchor_j / raw
