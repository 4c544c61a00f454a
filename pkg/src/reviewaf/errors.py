"""Exception hierarchy shared by all reviewaf modules."""

from __future__ import annotations


class ReviewAFError(Exception):
    """Base class for every error raised by this package."""


class UnknownArgumentError(ReviewAFError, ValueError):
    def __init__(self, key: str):
        super().__init__(f"unknown argument key: {key!r}")
        self.key = key


class FrameworkError(ReviewAFError, ValueError):
    """A framework was constructed with inconsistent arguments or attacks."""


class SizeLimitError(ReviewAFError, ValueError):
    def __init__(self, size: int, bound: int):
        super().__init__(
            f"framework has {size} arguments; brute-force enumeration is capped at max_args={bound}"
        )
        self.size = size
        self.bound = bound


class PartitionError(ReviewAFError, ValueError):
    def __init__(self, duplicated: list[str], unknown: list[str], missing: list[str]):
        parts = []
        if duplicated:
            parts.append(f"in several blocks: {duplicated}")
        if unknown:
            parts.append(f"not in the framework: {unknown}")
        if missing:
            parts.append(f"not covered: {missing}")
        super().__init__("not a partition of the arguments; " + "; ".join(parts))
        self.duplicated = duplicated
        self.unknown = unknown
        self.missing = missing


class IdParseError(ReviewAFError, ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"bad argument id {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position
        self.reason = reason


class ReviewParseError(ReviewAFError, ValueError):
    """The review JSON document could not be turned into a ReviewFramework."""


class ValidationGateError(ReviewAFError):
    """An operation that requires a valid framework received an invalid one."""

    def __init__(self, report):
        codes = sorted({f.code for f in report.errors})
        super().__init__(f"framework failed validation: {', '.join(codes)}")
        self.report = report


class IccmaParseError(ReviewAFError, ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class ParameterError(ReviewAFError, ValueError):
    """Invalid synthetic-generator parameters."""


class ConsistencyError(ReviewAFError, ValueError):
    """A Resolution does not belong to the ReviewFramework it was paired with."""
