"""Bit-accurate simulation of time-multiplexed bit-slice dot products.

A p-bit unsigned operand is decomposed into ceil(p/b) base-2^b digits
("slices", least significant first). A dot product between two sliced
vectors then runs as a sequence of time steps: each step multiplies one
slice of every element pair on its own wavelength lane, sums the lane
products (the photodetector sum), and contributes that sum - shifted by
the slice weights - to the final result.

Two step layouts are supported:

* ``FC``   one (activation-slice, weight-slice) pair per step. The
  activation slice is held stationary while the weight slices cycle,
  and shift-and-add happens digitally after each step.
* ``CONV`` all weight slices sit in parallel lanes simultaneously and
  only the activation slices advance with time; the per-lane sums are
  combined through a gain ladder (one amplifier per weight-slice lane,
  gain 2^(b*i)) before a single conversion.

Everything here is exact unsigned integer arithmetic; signed operands
are a caller-side mapping concern. All functions are pure and every
container immutable, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

FC = "FC"
CONV = "CONV"

_MAX_BITS = 16


class OperandRangeError(ValueError):
    """An operand does not fit its declared bitwidth."""


class LadderSizeError(ValueError):
    """A gain ladder is too short for the trace it must reconstruct."""


def _check_bits(name: str, bits: int) -> None:
    if not 1 <= bits <= _MAX_BITS:
        raise ValueError(f"{name} must be in [1, {_MAX_BITS}], got {bits}")


def _check_mode(mode: str) -> None:
    if mode not in (FC, CONV):
        raise ValueError(f"mode must be {FC!r} or {CONV!r}, got {mode!r}")


def n_slices(p: int, b: int) -> int:
    """Number of b-bit slices covering a p-bit value."""
    return -(-p // b)


def slice_value(value: int, p: int, b: int) -> list[int]:
    """Decompose ``value`` into ceil(p/b) base-2^b digits, LSB first."""
    _check_bits("p", p)
    _check_bits("b", b)
    if not 0 <= value < (1 << p):
        raise OperandRangeError(f"value {value} out of range for {p}-bit operand")
    mask = (1 << b) - 1
    return [(value >> (b * i)) & mask for i in range(n_slices(p, b))]


def recompose(slices: Sequence[int], b: int) -> int:
    """Inverse of :func:`slice_value`."""
    _check_bits("b", b)
    return sum(s << (b * i) for i, s in enumerate(slices))


@dataclass(frozen=True)
class BitSliceVector:
    """A vector of p-bit values with their b-bit slice decompositions."""

    original_values: tuple[int, ...]
    p: int
    b: int
    slices: tuple[tuple[int, ...], ...]  # slices[j][i] = slice i of element j


def bit_slice_vector(values: Iterable[int], p: int, b: int) -> BitSliceVector:
    vals = tuple(values)
    return BitSliceVector(
        original_values=vals,
        p=p,
        b=b,
        slices=tuple(tuple(slice_value(x, p, b)) for x in vals),
    )


@dataclass(frozen=True)
class TdmSchedule:
    """Ordered time steps of one sliced dot product.

    Each step is (activation_slice_index, weight_slice_index, shift_bits).
    In CONV mode the weight index is None: every weight slice is present
    in a parallel lane within the step, and only the activation part of
    the shift appears here.
    """

    mode: str
    steps: tuple[tuple[int, int | None, int], ...]

    @property
    def n_steps(self) -> int:
        return len(self.steps)


def build_schedule(p_a: int, p_w: int, b: int, mode: str = FC) -> TdmSchedule:
    """Step schedule for a (p_a, p_w)-bit dot product with b-bit slices.

    FC ordering keeps the activation slice stationary across consecutive
    weight slices: (0,0), (0,1), ..., (1,0), (1,1), ...
    """
    _check_bits("p_a", p_a)
    _check_bits("p_w", p_w)
    _check_bits("b", b)
    _check_mode(mode)
    na, nw = n_slices(p_a, b), n_slices(p_w, b)
    if mode == FC:
        steps = tuple(
            (ai, wi, b * (ai + wi)) for ai in range(na) for wi in range(nw)
        )
    else:
        steps = tuple((ai, None, b * ai) for ai in range(na))
    return TdmSchedule(mode=mode, steps=steps)


@dataclass(frozen=True)
class StepTrace:
    """What one time step produced.

    ``lane_partials`` are the per-lane contributions whose sum is
    ``step_sum``: per-wavelength products in FC mode, per-weight-slice
    lane sums (after the lane's power-of-two gain) in CONV mode.
    ``step_sum`` is the summed value before the step shift is applied.
    """

    step_index: int
    a_slice_index: int
    w_slice_index: int | None
    lane_partials: tuple[int, ...]
    step_sum: int
    shift_bits: int


@dataclass(frozen=True)
class SoaGainLadder:
    """Amplifier gains realizing analog shift-and-add: gains[i] == 2^(b*i)."""

    b: int
    gains: tuple[float, ...]


def soa_gain_ladder(b: int, count: int) -> SoaGainLadder:
    _check_bits("b", b)
    if count < 1:
        raise ValueError(f"ladder needs at least one gain, got {count}")
    return SoaGainLadder(b=b, gains=tuple(float(1 << (b * i)) for i in range(count)))


def execute_dot(
    a: Sequence[int],
    w: Sequence[int],
    p_a: int,
    p_w: int,
    b: int,
    mode: str = FC,
) -> tuple[int, list[StepTrace]]:
    """Run one sliced dot product and return (result, per-step trace).

    The result is the exact integer dot product a dot w; the trace
    reconstructs it as sum(step_sum << shift_bits).
    """
    if len(a) != len(w):
        raise ValueError(f"vector lengths differ: {len(a)} vs {len(w)}")
    av = bit_slice_vector(a, p_a, b)
    wv = bit_slice_vector(w, p_w, b)
    schedule = build_schedule(p_a, p_w, b, mode)
    n = len(av.original_values)
    nw = n_slices(p_w, b)

    trace: list[StepTrace] = []
    result = 0
    for idx, (ai, wi, shift) in enumerate(schedule.steps):
        if mode == FC:
            lanes = tuple(av.slices[j][ai] * wv.slices[j][wi] for j in range(n))
        else:
            # one lane per weight slice: photodetector sum times ladder gain
            lanes = tuple(
                sum(av.slices[j][ai] * wv.slices[j][k] for j in range(n)) << (b * k)
                for k in range(nw)
            )
        step_sum = sum(lanes)
        trace.append(
            StepTrace(
                step_index=idx,
                a_slice_index=ai,
                w_slice_index=wi,
                lane_partials=lanes,
                step_sum=step_sum,
                shift_bits=shift,
            )
        )
        result += step_sum << shift
    return result, trace


def reconstruct(trace: Sequence[StepTrace], ladder: SoaGainLadder | None = None) -> int:
    """Recombine a step trace into the dot-product value.

    With no ladder the digital path is used: sum(step_sum << shift_bits).
    With a ladder the analog path multiplies each step sum by the gain at
    index shift_bits // b and rounds; for exact power-of-two gains the two
    paths agree exactly.
    """
    if not trace:
        return 0
    if ladder is None:
        return sum(st.step_sum << st.shift_bits for st in trace)
    need = max(st.shift_bits // ladder.b for st in trace)
    if need >= len(ladder.gains):
        raise LadderSizeError(
            f"ladder has {len(ladder.gains)} gains but the trace needs index {need}"
        )
    return round(sum(st.step_sum * ladder.gains[st.shift_bits // ladder.b] for st in trace))


def trace_csv_rows(trace: Sequence[StepTrace]) -> list[tuple[int, int, int]]:
    """Trace dump rows: (step_index, shift_bits, step_sum)."""
    return [(st.step_index, st.shift_bits, st.step_sum) for st in trace]
