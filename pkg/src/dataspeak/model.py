"""Spec document model: types, JSON parsing, and grammar validation.

A spec is a JSON object with top-level keys ``data``, ``tone``, ``transform``,
``encoding``, and the optional ``prelude`` flag. Channel names are
case-sensitive; besides ``time`` the speech channels are ``SpeechTonePitch``,
``SpeechToneSpeed``, ``SpeechToneVoice``, and ``SpeechToneText``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping

from .diagnostics import (
    Diagnostic,
    E_BAD_TYPE,
    E_CHANNEL_CONFLICT,
    E_CHANNEL_EMPTY,
    E_CHANNEL_UNIMPLEMENTED,
    E_CHANNEL_UNKNOWN,
    E_DATA_SOURCE,
    E_DURATION_SPEED_CONFLICT,
    E_MISSING_TIME_CHANNEL,
    E_MISSING_TONE,
    E_AGG_FIELD_REQUIRED,
    E_PARSE,
    E_RANGE_ARITY,
    E_RANGE_EMPTY,
    E_RANGE_TOO_SHORT,
    E_TEXT_VALUE_ONLY,
    E_TIME_FIELD_REQUIRED,
    E_TONE_CONTINUED,
    E_TONE_TYPE,
    E_TRANSFORM_UNKNOWN,
    W_RANGE_CLAMPED,
    W_SCALE_IGNORED,
    W_UNKNOWN_KEY,
    error,
    has_errors,
    warning,
)

#: JSON scalar as it appears in a dataset cell or scale domain.
DataValue = None | bool | float | str


class Channel(str, Enum):
    """Encoding channels accepted in a spec's ``encoding`` block."""

    TIME = "time"
    PITCH = "SpeechTonePitch"
    SPEED = "SpeechToneSpeed"
    VOICE = "SpeechToneVoice"
    TEXT = "SpeechToneText"


#: Channels whose values are numeric speech attributes resolved through scales.
SCALED_CHANNELS = (Channel.PITCH, Channel.SPEED, Channel.VOICE)

#: Recognized channel names that are not implemented; using one is an error,
#: but a dedicated one so authors learn the name was understood.
RESERVED_CHANNELS = ("SpeechToneLoudness", "SpeechToneDuration")


class DataType(str, Enum):
    NOMINAL = "nominal"
    ORDINAL = "ordinal"
    QUANTITATIVE = "quantitative"
    TEMPORAL = "temporal"


class Aggregate(str, Enum):
    COUNT = "count"
    SUM = "sum"
    MEAN = "mean"
    MIN = "min"
    MAX = "max"


class FilterOp(str, Enum):
    EQ = "eq"
    NEQ = "neq"
    LT = "lt"
    LTE = "lte"
    GT = "gt"
    GTE = "gte"


@dataclass(frozen=True)
class Filter:
    """Row predicate: keep rows where ``field <op> value`` holds."""

    field: str
    op: FilterOp
    value: DataValue


@dataclass(frozen=True)
class DataSourceRef:
    """Tabular data source: a file path (CSV or JSON array) or inline rows."""

    url: str | None = None
    values: tuple[Mapping[str, Any], ...] | None = None


@dataclass(frozen=True)
class ToneDef:
    tone_type: str = "speechtone"
    continued: bool = False


@dataclass(frozen=True)
class ScaleDef:
    """Declared scale: optional explicit domain plus a numeric range.

    The range holds 2 endpoints for a quantitative channel and one value per
    category for a nominal one.
    """

    range: tuple[float, ...]
    domain: tuple[DataValue, ...] | None = None


@dataclass(frozen=True)
class ChannelDef:
    """One channel binding.

    Exactly one of three shapes drives a channel: a data field, a literal
    ``value`` (text channel only), or an aggregate (``count`` needs no field,
    the others aggregate over ``field``).
    """

    field: str | None = None
    value: str | None = None
    data_type: DataType | None = None
    aggregate: Aggregate | None = None
    scale: ScaleDef | None = None


@dataclass(frozen=True)
class SpecDocument:
    """A parsed sonification spec, immutable and safe to share."""

    tone: ToneDef
    encoding: Mapping[Channel, ChannelDef]
    data_source: DataSourceRef | None = None
    transforms: tuple[Filter, ...] = ()
    prelude_enabled: bool = False


@dataclass(frozen=True)
class ParseResult:
    """Outcome of :func:`parse_spec`: a document unless any error occurred."""

    document: SpecDocument | None
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return self.document is not None


# Hard channel limits; scale outputs are clamped into these.
HARD_LIMITS = {
    Channel.PITCH: (0.0, 2.0),
    Channel.SPEED: (0.1, 10.0),
    Channel.VOICE: (0.0, math.inf),
}

_TOP_LEVEL_KEYS = ("data", "tone", "transform", "encoding", "prelude")


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _scalar(v: Any) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def _parse_data(raw: Any, diags: list[Diagnostic]) -> DataSourceRef | None:
    if not isinstance(raw, dict):
        diags.append(error(E_BAD_TYPE, "data must be an object", "data"))
        return None
    url = raw.get("url")
    values = raw.get("values")
    if (url is None) == (values is None):
        diags.append(error(E_DATA_SOURCE, "data needs exactly one of url or values", "data"))
        return None
    if url is not None:
        if not isinstance(url, str):
            diags.append(error(E_BAD_TYPE, "data.url must be a string", "data.url"))
            return None
        return DataSourceRef(url=url)
    if not isinstance(values, list) or not all(isinstance(r, dict) for r in values):
        diags.append(error(E_BAD_TYPE, "data.values must be an array of objects", "data.values"))
        return None
    return DataSourceRef(values=tuple(values))


def _parse_tone(raw: Any, diags: list[Diagnostic]) -> ToneDef | None:
    if not isinstance(raw, dict):
        diags.append(error(E_BAD_TYPE, "tone must be an object", "tone"))
        return None
    tone_type = raw.get("type")
    if tone_type != "speechtone":
        diags.append(error(E_TONE_TYPE, f"unsupported tone type {tone_type!r}", "tone.type"))
        return None
    continued = raw.get("continued", False)
    if not isinstance(continued, bool):
        diags.append(error(E_BAD_TYPE, "tone.continued must be a boolean", "tone.continued"))
        return None
    if continued:
        diags.append(
            error(E_TONE_CONTINUED, "speech tones are discrete; continued must be false", "tone.continued")
        )
        return None
    return ToneDef()


def _parse_transforms(raw: Any, diags: list[Diagnostic]) -> tuple[Filter, ...]:
    if not isinstance(raw, list):
        diags.append(error(E_BAD_TYPE, "transform must be an array", "transform"))
        return ()
    out: list[Filter] = []
    for i, entry in enumerate(raw):
        path = f"transform[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"filter"}:
            diags.append(error(E_TRANSFORM_UNKNOWN, "only filter transforms are supported", path))
            continue
        f = entry["filter"]
        path += ".filter"
        if not isinstance(f, dict):
            diags.append(error(E_BAD_TYPE, "filter must be an object", path))
            continue
        fname = f.get("field")
        op = f.get("op")
        if not isinstance(fname, str) or not fname:
            diags.append(error(E_BAD_TYPE, "filter.field must be a non-empty string", path + ".field"))
            continue
        try:
            fop = FilterOp(op)
        except ValueError:
            diags.append(error(E_BAD_TYPE, f"unknown filter op {op!r}", path + ".op"))
            continue
        if "value" not in f:
            diags.append(error(E_BAD_TYPE, "filter.value is required", path + ".value"))
            continue
        literal = f["value"]
        if not _scalar(literal):
            diags.append(error(E_BAD_TYPE, "filter.value must be a scalar", path + ".value"))
            continue
        if _is_number(literal):
            literal = float(literal)
        out.append(Filter(field=fname, op=fop, value=literal))
    return tuple(out)


def _parse_scale(raw: Any, path: str, diags: list[Diagnostic]) -> ScaleDef | None:
    if not isinstance(raw, dict):
        diags.append(error(E_BAD_TYPE, "scale must be an object", path))
        return None
    rng = raw.get("range")
    if rng is None:
        diags.append(error(E_RANGE_EMPTY, "scale needs a non-empty range", path))
        return None
    if not isinstance(rng, list) or not all(_is_number(v) for v in rng):
        diags.append(error(E_BAD_TYPE, "scale.range must be an array of numbers", path + ".range"))
        return None
    if not rng:
        diags.append(error(E_RANGE_EMPTY, "scale.range must not be empty", path + ".range"))
        return None
    domain = raw.get("domain")
    dom: tuple[DataValue, ...] | None = None
    if domain is not None:
        if not isinstance(domain, list) or not all(_scalar(v) for v in domain):
            diags.append(error(E_BAD_TYPE, "scale.domain must be an array of scalars", path + ".domain"))
            return None
        dom = tuple(float(v) if _is_number(v) else v for v in domain)
    return ScaleDef(range=tuple(float(v) for v in rng), domain=dom)


def _parse_channel(name: Channel, raw: Any, diags: list[Diagnostic]) -> ChannelDef | None:
    path = f"encoding.{name.value}"
    if not isinstance(raw, dict):
        diags.append(error(E_BAD_TYPE, "channel must be an object", path))
        return None

    fname = raw.get("field")
    if fname is not None and not isinstance(fname, str):
        diags.append(error(E_BAD_TYPE, "field must be a string", path + ".field"))
        return None
    value = raw.get("value")
    if value is not None and not isinstance(value, str):
        diags.append(error(E_BAD_TYPE, "value must be a string", path + ".value"))
        return None

    data_type: DataType | None = None
    if "type" in raw:
        try:
            data_type = DataType(raw["type"])
        except ValueError:
            diags.append(error(E_BAD_TYPE, f"unknown type {raw['type']!r}", path + ".type"))
            return None

    aggregate: Aggregate | None = None
    if "aggregate" in raw:
        try:
            aggregate = Aggregate(raw["aggregate"])
        except ValueError:
            diags.append(error(E_BAD_TYPE, f"unknown aggregate {raw['aggregate']!r}", path + ".aggregate"))
            return None

    scale: ScaleDef | None = None
    if "scale" in raw:
        scale = _parse_scale(raw["scale"], path + ".scale", diags)
        if scale is None:
            return None

    # Exactly one driver: literal value, plain field, or aggregate.
    if value is not None and (fname is not None or aggregate is not None):
        diags.append(error(E_CHANNEL_CONFLICT, "value cannot be combined with field or aggregate", path))
        return None
    if value is None and fname is None and aggregate is None:
        diags.append(error(E_CHANNEL_EMPTY, "channel needs a field, a value, or an aggregate", path))
        return None
    if aggregate is not None and aggregate is not Aggregate.COUNT and fname is None:
        diags.append(
            error(E_AGG_FIELD_REQUIRED, f"aggregate {aggregate.value!r} needs a field", path + ".aggregate")
        )
        return None

    if name is Channel.TEXT:
        if fname is not None or aggregate is not None:
            diags.append(
                error(E_TEXT_VALUE_ONLY, "the text channel is driven by value only", path)
            )
            return None
        if scale is not None:
            diags.append(warning(W_SCALE_IGNORED, "scales have no effect on the text channel", path + ".scale"))
            scale = None
    if name is Channel.TIME:
        if fname is None or value is not None or aggregate is not None:
            diags.append(error(E_TIME_FIELD_REQUIRED, "the time channel must bind a plain field", path))
            return None
        if scale is not None:
            diags.append(warning(W_SCALE_IGNORED, "scales have no effect on the time channel", path + ".scale"))
            scale = None

    return ChannelDef(field=fname, value=value, data_type=data_type, aggregate=aggregate, scale=scale)


def _parse_encoding(raw: Any, diags: list[Diagnostic]) -> dict[Channel, ChannelDef]:
    encoding: dict[Channel, ChannelDef] = {}
    if not isinstance(raw, dict):
        diags.append(error(E_BAD_TYPE, "encoding must be an object", "encoding"))
        return encoding

    # Duration and speed are interdependent, so this conflict is reported
    # before the per-channel diagnostics.
    if "SpeechToneDuration" in raw and "SpeechToneSpeed" in raw:
        diags.append(
            error(
                E_DURATION_SPEED_CONFLICT,
                "SpeechToneDuration and SpeechToneSpeed cannot be mapped at the same time",
                "encoding",
            )
        )

    for key, value in raw.items():
        path = f"encoding.{key}"
        if key in RESERVED_CHANNELS:
            diags.append(error(E_CHANNEL_UNIMPLEMENTED, f"channel {key!r} is reserved but not implemented", path))
            continue
        try:
            name = Channel(key)
        except ValueError:
            diags.append(error(E_CHANNEL_UNKNOWN, f"unknown channel {key!r}", path))
            continue
        parsed = _parse_channel(name, value, diags)
        if parsed is not None:
            encoding[name] = parsed

    if "time" not in raw:
        diags.append(error(E_MISSING_TIME_CHANNEL, "encoding must bind the time channel", "encoding"))
    return encoding


def _reject_constant(name: str) -> float:
    raise ValueError(f"{name} is not valid JSON")


def parse_spec(raw: str) -> ParseResult:
    """Parse spec text into a typed document.

    Never raises on malformed input; every problem is reported as a
    diagnostic. The document is returned only when no error-severity
    diagnostic was produced (warnings alone do not block).
    """
    diags: list[Diagnostic] = []
    try:
        # parse_constant fires for NaN/Infinity spellings, which are not
        # JSON and would smuggle non-finite numbers past validation.
        doc = json.loads(raw, parse_constant=_reject_constant)
    except (ValueError, RecursionError) as exc:
        diags.append(error(E_PARSE, f"malformed JSON: {exc}"))
        return ParseResult(None, tuple(diags))
    if not isinstance(doc, dict):
        diags.append(error(E_BAD_TYPE, "spec root must be an object"))
        return ParseResult(None, tuple(diags))

    for key in doc:
        if key not in _TOP_LEVEL_KEYS:
            diags.append(warning(W_UNKNOWN_KEY, f"unknown top-level key {key!r}", key))

    data_source = None
    if "data" in doc:
        data_source = _parse_data(doc["data"], diags)

    if "tone" not in doc:
        diags.append(error(E_MISSING_TONE, "spec needs a tone declaration", "tone"))
        tone = None
    else:
        tone = _parse_tone(doc["tone"], diags)

    transforms = _parse_transforms(doc["transform"], diags) if "transform" in doc else ()

    encoding = _parse_encoding(doc.get("encoding", {}), diags)

    prelude = doc.get("prelude", False)
    if not isinstance(prelude, bool):
        diags.append(error(E_BAD_TYPE, "prelude must be a boolean", "prelude"))
        prelude = False

    if has_errors(diags) or tone is None:
        return ParseResult(None, tuple(diags))
    document = SpecDocument(
        tone=tone,
        encoding=encoding,
        data_source=data_source,
        transforms=transforms,
        prelude_enabled=prelude,
    )
    return ParseResult(document, tuple(diags))


def _check_scale_limits(name: Channel, scale: ScaleDef, diags: list[Diagnostic]) -> None:
    lo, hi = HARD_LIMITS[name]
    if any(v < lo or v > hi for v in scale.range):
        diags.append(
            warning(
                W_RANGE_CLAMPED,
                f"range endpoints outside [{lo}, {hi}] are clamped",
                f"encoding.{name.value}.scale.range",
            )
        )


def validate_spec(spec: SpecDocument) -> list[Diagnostic]:
    """Check a parsed document against the grammar rules.

    Returns every diagnostic found; an empty list means the spec is
    compilable. Out-of-limit scale ranges warn rather than error because
    they are clamped at resolution time.
    """
    diags: list[Diagnostic] = []
    if Channel.TIME not in spec.encoding:
        diags.append(error(E_MISSING_TIME_CHANNEL, "encoding must bind the time channel", "encoding"))

    for name in SCALED_CHANNELS:
        ch = spec.encoding.get(name)
        if ch is None or ch.scale is None:
            continue
        path = f"encoding.{name.value}.scale"
        _check_scale_limits(name, ch.scale, diags)
        if ch.data_type in (DataType.QUANTITATIVE, DataType.TEMPORAL) and len(ch.scale.range) != 2:
            diags.append(
                error(E_RANGE_ARITY, "a quantitative scale needs exactly 2 range endpoints", path + ".range")
            )
        if ch.scale.domain is not None and len(ch.scale.domain) > len(ch.scale.range):
            diags.append(
                error(
                    E_RANGE_TOO_SHORT,
                    f"domain has {len(ch.scale.domain)} entries but range only {len(ch.scale.range)}",
                    path,
                )
            )
    return diags


def spec_to_dict(spec: SpecDocument) -> dict[str, Any]:
    """Rebuild the external JSON shape of a document (used for hashing)."""
    out: dict[str, Any] = {}
    if spec.data_source is not None:
        if spec.data_source.url is not None:
            out["data"] = {"url": spec.data_source.url}
        else:
            out["data"] = {"values": [dict(r) for r in spec.data_source.values or ()]}
    out["tone"] = {"continued": spec.tone.continued, "type": spec.tone.tone_type}
    if spec.transforms:
        out["transform"] = [
            {"filter": {"field": f.field, "op": f.op.value, "value": f.value}} for f in spec.transforms
        ]
    enc: dict[str, Any] = {}
    for name, ch in spec.encoding.items():
        entry: dict[str, Any] = {}
        if ch.field is not None:
            entry["field"] = ch.field
        if ch.value is not None:
            entry["value"] = ch.value
        if ch.data_type is not None:
            entry["type"] = ch.data_type.value
        if ch.aggregate is not None:
            entry["aggregate"] = ch.aggregate.value
        if ch.scale is not None:
            s: dict[str, Any] = {"range": list(ch.scale.range)}
            if ch.scale.domain is not None:
                s["domain"] = list(ch.scale.domain)
            entry["scale"] = s
        enc[name.value] = entry
    out["encoding"] = enc
    if spec.prelude_enabled:
        out["prelude"] = True
    return out
