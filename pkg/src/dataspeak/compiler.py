"""Turn a validated spec plus data into an ordered speech schedule.

The pipeline is: filters, aggregation (when any channel aggregates), null
time-value drop, scale resolution, time ordering, per-row utterance build,
and finally the optional mapping-announcement prelude. Everything is pure,
so identical inputs always yield an identical schedule.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .data import ColumnType, Dataset, aggregate_column, apply_aggregation, apply_filter, group_fields
from .diagnostics import Diagnostic, W_NULL_CHANNEL, W_NULL_TEXT, W_NULL_TIME, warning
from .model import (
    Aggregate,
    Channel,
    ChannelDef,
    DataType,
    DataValue,
    SCALED_CHANNELS,
    SpecDocument,
    spec_to_dict,
)
from .scales import LIMITS, LinearScale, OrdinalScale, ResolvedScale, apply_scale, infer_domain, resolve_scale

GENERATOR = "dataspeak/0.1.0"


@dataclass(frozen=True)
class Utterance:
    """One scheduled piece of speech with its resolved attributes."""

    index: int
    text: str
    pitch: float
    rate: float
    voice_id: int


@dataclass(frozen=True)
class ScheduleMetadata:
    spec_hash: str
    row_count: int
    generator: str


@dataclass(frozen=True)
class SpeechSchedule:
    prelude: tuple[Utterance, ...]
    body: tuple[Utterance, ...]
    metadata: ScheduleMetadata


@dataclass(frozen=True)
class CompileResult:
    schedule: SpeechSchedule
    diagnostics: tuple[Diagnostic, ...]


def speech_number(v: float) -> str:
    """Render a number the way it should be spoken.

    Integral values drop the decimal point; everything else keeps at most
    two decimals with trailing zeros trimmed.
    """
    if v == int(v):
        return str(int(v))
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return text


def render_value(v: DataValue) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return speech_number(v)
    return str(v)


def spec_hash(spec: SpecDocument) -> str:
    canonical = json.dumps(spec_to_dict(spec), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _is_quantitative(time_channel: ChannelDef, ctype: ColumnType) -> bool:
    if time_channel.data_type in (DataType.QUANTITATIVE, DataType.TEMPORAL):
        return True
    if time_channel.data_type in (DataType.NOMINAL, DataType.ORDINAL):
        return False
    return ctype is ColumnType.NUMBER


def order_rows(ds: Dataset, time_channel: ChannelDef) -> tuple[tuple[DataValue, ...], ...]:
    """Order rows along the time channel.

    Quantitative and temporal fields sort ascending (stable, so ties keep
    dataset order); nominal fields keep dataset order as-is.
    """
    assert time_channel.field is not None
    idx = ds.index_of(time_channel.field)
    if _is_quantitative(time_channel, ds.columns[idx].ctype):
        return tuple(sorted(ds.rows, key=lambda row: row[idx]))
    return ds.rows


def resolve_text(channel: ChannelDef, row: tuple[DataValue, ...], ds: Dataset) -> str | None:
    """Resolve the spoken text for one row.

    A value that names a column (case-sensitive) vocalizes that row's cell;
    anything else is read verbatim. Returns None when the matched cell is
    null, which drops the utterance upstream.
    """
    assert channel.value is not None
    if ds.has_column(channel.value):
        cell = row[ds.index_of(channel.value)]
        if cell is None:
            return None
        return render_value(cell)
    return channel.value


_CHANNEL_SPOKEN_NAMES = {
    Channel.PITCH: "Pitch",
    Channel.SPEED: "Speed",
    Channel.VOICE: "Voice",
}


def _channel_description(channel: ChannelDef, groups: tuple[str, ...]) -> str:
    if channel.aggregate is None:
        assert channel.field is not None
        return channel.field
    per = f" per {' and '.join(groups)}" if groups else ""
    if channel.aggregate is Aggregate.COUNT:
        return f"count of records{per}"
    return f"{channel.aggregate.value} of {channel.field}{per}"


def generate_prelude(
    spec: SpecDocument,
    scales: dict[Channel, ResolvedScale],
    groups: tuple[str, ...] = (),
) -> tuple[Utterance, ...]:
    """Announce each scaled channel's mapping, spoken at channel defaults."""
    out: list[Utterance] = []
    for name in SCALED_CHANNELS:
        channel = spec.encoding.get(name)
        scale = scales.get(name)
        if channel is None or scale is None:
            continue
        desc = _channel_description(channel, groups)
        attr = _CHANNEL_SPOKEN_NAMES[name]
        if isinstance(scale, LinearScale):
            text = (
                f"{attr} represents {desc}, "
                f"from {speech_number(scale.range_min)} for {speech_number(scale.domain_min)} "
                f"to {speech_number(scale.range_max)} for {speech_number(scale.domain_max)}."
            )
        else:
            cats = ", ".join(render_value(c) for c in scale.categories)
            text = f"{attr} represents {desc}: {cats}."
        out.append(Utterance(index=len(out), text=text, pitch=1.0, rate=1.0, voice_id=0))
    return tuple(out)


def compile_schedule(spec: SpecDocument, ds: Dataset) -> CompileResult:
    """Compile a validated spec against a dataset.

    Raises a pipeline error on unresolvable inputs (unknown fields, domain
    misses); recoverable conditions such as dropped null rows come back as
    warning diagnostics next to the schedule.
    """
    diags: list[Diagnostic] = []
    input_rows = len(ds.rows)

    for f in spec.transforms:
        ds = apply_filter(ds, f)

    has_agg = any(ch.aggregate is not None for ch in spec.encoding.values())
    groups: tuple[str, ...] = ()
    effective_fields: dict[Channel, str] = {}
    for name, ch in spec.encoding.items():
        if ch.field is not None:
            effective_fields[name] = ch.field
    if has_agg:
        groups = tuple(group_fields(spec, ds))
        ds = apply_aggregation(ds, spec)
        for name, ch in spec.encoding.items():
            if ch.aggregate is not None:
                effective_fields[name] = aggregate_column(name)

    time_channel = spec.encoding[Channel.TIME]
    tidx = ds.index_of(effective_fields[Channel.TIME])
    kept = []
    for i, row in enumerate(ds.rows):
        if row[tidx] is None:
            diags.append(warning(W_NULL_TIME, f"row {i} has a null time value and was dropped", "encoding.time"))
        else:
            kept.append(row)
    ds = Dataset(columns=ds.columns, rows=tuple(kept))

    scales: dict[Channel, ResolvedScale] = {}
    for name in SCALED_CHANNELS:
        ch = spec.encoding.get(name)
        if ch is None:
            continue
        domain = infer_domain(ds, ch, field=effective_fields[name])
        scales[name] = resolve_scale(ch, domain, LIMITS[name])

    ordered = order_rows(ds, time_channel)

    text_channel = spec.encoding.get(Channel.TEXT)
    body: list[Utterance] = []
    for row in ordered:
        if text_channel is not None:
            text = resolve_text(text_channel, row, ds)
            if text is None:
                diags.append(
                    warning(W_NULL_TEXT, "utterance skipped: null text value", f"encoding.{Channel.TEXT.value}")
                )
                continue
        else:
            text = render_value(row[ds.index_of(effective_fields[Channel.TIME])])

        attrs: dict[Channel, float] = {}
        for name in SCALED_CHANNELS:
            limits = LIMITS[name]
            scale = scales.get(name)
            if scale is None:
                attrs[name] = limits.default_value
                continue
            cell = row[ds.index_of(effective_fields[name])]
            if cell is None:
                diags.append(
                    warning(W_NULL_CHANNEL, "null value spoken at channel default", f"encoding.{name.value}")
                )
                attrs[name] = limits.default_value
            else:
                attrs[name] = apply_scale(scale, cell)

        body.append(
            Utterance(
                index=len(body),
                text=text,
                pitch=attrs[Channel.PITCH],
                rate=attrs[Channel.SPEED],
                voice_id=int(attrs[Channel.VOICE]),
            )
        )

    prelude = generate_prelude(spec, scales, groups) if spec.prelude_enabled else ()
    metadata = ScheduleMetadata(spec_hash=spec_hash(spec), row_count=input_rows, generator=GENERATOR)
    schedule = SpeechSchedule(prelude=prelude, body=tuple(body), metadata=metadata)
    return CompileResult(schedule=schedule, diagnostics=tuple(diags))
