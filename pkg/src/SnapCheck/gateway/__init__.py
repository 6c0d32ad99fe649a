"""Trace and report file formats."""

from .trace_gateway import (
    TraceSyntaxError,
    format_event,
    load_trace,
    parse_trace,
    save_trace,
    serialize_trace,
)

__all__ = [
    "TraceSyntaxError",
    "format_event",
    "load_trace",
    "parse_trace",
    "save_trace",
    "serialize_trace",
]
