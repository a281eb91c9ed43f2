"""Scale resolution: data domains plus declared ranges become value mappers.

Every scaled channel has hard limits baked into the grammar (pitch [0, 2],
rate [0.1, 10], voice IDs non-negative integers); resolved scales clamp into
them no matter what the declared range says.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .data import ColumnType, Dataset
from .diagnostics import (
    E_ALL_NULL,
    E_DOMAIN_DUPLICATE,
    E_DOMAIN_MISS,
    E_DOMAIN_TYPE,
    E_RANGE_ARITY,
    E_RANGE_TOO_SHORT,
    PipelineError,
    error,
)
from .model import Channel, ChannelDef, DataType, DataValue


@dataclass(frozen=True)
class ChannelLimits:
    channel: Channel
    hard_min: float
    hard_max: float
    default_value: float
    integral: bool = False

    def clamp(self, v: float) -> float:
        return min(max(v, self.hard_min), self.hard_max)


LIMITS = {
    Channel.PITCH: ChannelLimits(Channel.PITCH, 0.0, 2.0, 1.0),
    Channel.SPEED: ChannelLimits(Channel.SPEED, 0.1, 10.0, 1.0),
    Channel.VOICE: ChannelLimits(Channel.VOICE, 0.0, math.inf, 0.0, integral=True),
}


@dataclass(frozen=True)
class NumericDomain:
    lo: float
    hi: float


@dataclass(frozen=True)
class CategoryDomain:
    categories: tuple[DataValue, ...]


Domain = NumericDomain | CategoryDomain


@dataclass(frozen=True)
class LinearScale:
    domain_min: float
    domain_max: float
    range_min: float
    range_max: float
    limits: ChannelLimits


@dataclass(frozen=True)
class OrdinalScale:
    categories: tuple[DataValue, ...]
    range_values: tuple[float, ...]
    limits: ChannelLimits


ResolvedScale = LinearScale | OrdinalScale


def _wants_categories(channel: ChannelDef, ctype: ColumnType) -> bool:
    if channel.data_type in (DataType.QUANTITATIVE, DataType.TEMPORAL):
        return False
    if channel.data_type in (DataType.NOMINAL, DataType.ORDINAL):
        return True
    return ctype is not ColumnType.NUMBER


def infer_domain(ds: Dataset, channel: ChannelDef, field: str | None = None) -> Domain:
    """Compute the data domain a channel's scale maps from.

    Quantitative channels get [min, max] over non-null values; nominal ones
    get distinct values in first-appearance order. An explicit scale domain
    overrides both order and membership.
    """
    name = field if field is not None else channel.field
    assert name is not None, "domain inference needs a field-bound channel"
    idx = ds.index_of(name)
    ctype = ds.columns[idx].ctype
    explicit = channel.scale.domain if channel.scale is not None else None

    if _wants_categories(channel, ctype):
        if explicit is not None:
            if len(set(explicit)) != len(explicit):
                raise PipelineError(error(E_DOMAIN_DUPLICATE, f"domain for {name!r} repeats a category"))
            return CategoryDomain(categories=explicit)
        seen: list[DataValue] = []
        for row in ds.rows:
            v = row[idx]
            if v is not None and v not in seen:
                seen.append(v)
        if not seen:
            raise PipelineError(error(E_ALL_NULL, f"column {name!r} has no non-null values"))
        return CategoryDomain(categories=tuple(seen))

    if explicit is not None:
        nums = [v for v in explicit if isinstance(v, float)]
        if len(nums) != len(explicit) or not nums:
            raise PipelineError(error(E_DOMAIN_TYPE, f"quantitative domain for {name!r} must be numeric"))
        return NumericDomain(lo=min(nums), hi=max(nums))
    vals = [row[idx] for row in ds.rows if row[idx] is not None]
    if not vals:
        raise PipelineError(error(E_ALL_NULL, f"column {name!r} has no non-null values"))
    if ctype is not ColumnType.NUMBER:
        raise PipelineError(error(E_DOMAIN_TYPE, f"column {name!r} is not numeric"))
    return NumericDomain(lo=min(vals), hi=max(vals))


def resolve_scale(channel: ChannelDef, domain: Domain, limits: ChannelLimits) -> ResolvedScale:
    """Pair a declared scale with a concrete domain.

    Without a scale declaration every value maps to the channel default.
    Declared range values are clamped into the hard limits here; validation
    already warned about them.
    """
    scale = channel.scale
    if isinstance(domain, CategoryDomain):
        n = len(domain.categories)
        if scale is None:
            return OrdinalScale(domain.categories, (limits.default_value,) * n, limits)
        if len(scale.range) < n:
            raise PipelineError(
                error(E_RANGE_TOO_SHORT, f"{n} categories but only {len(scale.range)} range values")
            )
        return OrdinalScale(domain.categories, tuple(limits.clamp(v) for v in scale.range), limits)

    if scale is None:
        return LinearScale(domain.lo, domain.hi, limits.default_value, limits.default_value, limits)
    if len(scale.range) != 2:
        raise PipelineError(
            error(E_RANGE_ARITY, f"a quantitative scale needs exactly 2 range endpoints, got {len(scale.range)}")
        )
    return LinearScale(domain.lo, domain.hi, limits.clamp(scale.range[0]), limits.clamp(scale.range[1]), limits)


def apply_scale(scale: ResolvedScale, v: DataValue) -> float:
    """Map one data value through a resolved scale.

    Linear scales interpolate (a degenerate domain maps everything to the
    range midpoint); ordinal scales look the value up positionally. Results
    are clamped into the hard limits, and voice results round to the nearest
    integer.
    """
    if isinstance(scale, LinearScale):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise PipelineError(error(E_DOMAIN_TYPE, f"linear scale applied to non-number {v!r}"))
        if scale.domain_min == scale.domain_max:
            out = (scale.range_min + scale.range_max) / 2.0
        else:
            t = (v - scale.domain_min) / (scale.domain_max - scale.domain_min)
            out = scale.range_min + t * (scale.range_max - scale.range_min)
            # interpolation over astronomically wide inputs can overflow;
            # results must stay finite so the clamp below can bound them
            if math.isnan(out):
                out = (scale.range_min + scale.range_max) / 2.0
            elif math.isinf(out):
                out = math.copysign(1e308, out)
    else:
        try:
            i = scale.categories.index(v)
        except ValueError:
            raise PipelineError(error(E_DOMAIN_MISS, f"value {v!r} is not in the scale domain")) from None
        out = scale.range_values[i]
    out = scale.limits.clamp(out)
    if scale.limits.integral:
        out = float(math.floor(out + 0.5))
    return out
