"""Speech-based data sonification: compile declarative specs into speech schedules."""

from .compiler import (
    CompileResult,
    ScheduleMetadata,
    SpeechSchedule,
    Utterance,
    compile_schedule,
    generate_prelude,
    order_rows,
    resolve_text,
    speech_number,
)
from .data import (
    Column,
    ColumnType,
    Dataset,
    apply_aggregation,
    apply_filter,
    ingest_records,
    load_dataset,
)
from .diagnostics import Diagnostic, PipelineError, Severity, has_errors
from .emitters import (
    SCHEDULE_VERSION,
    VoiceMap,
    emit_schedule_json,
    emit_ssml,
    emit_trace,
    parse_schedule_json,
    schedule_to_dict,
)
from .model import (
    Aggregate,
    Channel,
    ChannelDef,
    DataSourceRef,
    DataType,
    Filter,
    FilterOp,
    ParseResult,
    ScaleDef,
    SpecDocument,
    ToneDef,
    parse_spec,
    validate_spec,
)
from .scales import (
    CategoryDomain,
    ChannelLimits,
    LIMITS,
    LinearScale,
    NumericDomain,
    OrdinalScale,
    apply_scale,
    infer_domain,
    resolve_scale,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregate",
    "CategoryDomain",
    "Channel",
    "ChannelDef",
    "ChannelLimits",
    "Column",
    "ColumnType",
    "CompileResult",
    "DataSourceRef",
    "DataType",
    "Dataset",
    "Diagnostic",
    "Filter",
    "FilterOp",
    "LIMITS",
    "LinearScale",
    "NumericDomain",
    "OrdinalScale",
    "ParseResult",
    "PipelineError",
    "SCHEDULE_VERSION",
    "ScaleDef",
    "ScheduleMetadata",
    "Severity",
    "SpecDocument",
    "SpeechSchedule",
    "ToneDef",
    "Utterance",
    "VoiceMap",
    "apply_aggregation",
    "apply_filter",
    "apply_scale",
    "compile_schedule",
    "emit_schedule_json",
    "emit_ssml",
    "emit_trace",
    "generate_prelude",
    "has_errors",
    "infer_domain",
    "ingest_records",
    "load_dataset",
    "order_rows",
    "parse_schedule_json",
    "parse_spec",
    "resolve_scale",
    "resolve_text",
    "schedule_to_dict",
    "speech_number",
    "validate_spec",
]
