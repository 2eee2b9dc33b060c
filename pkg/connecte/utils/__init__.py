from .json_utils import (
    canonical_json,
    dump_json,
    file_sha256,
    json_sha256,
    load_json,
    parse_key_values,
)
from .logger_mixin import LoggerMixin
from .random import rng_streams

__all__ = [
    "LoggerMixin",
    "canonical_json",
    "dump_json",
    "file_sha256",
    "json_sha256",
    "load_json",
    "parse_key_values",
    "rng_streams",
]
