"""Exception hierarchy. Every error carries a stable string ``code`` used by the CLI."""

from __future__ import annotations


class KnotHomError(Exception):
    code = "internal_error"
    exit_status = 1

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class MalformedSpec(KnotHomError, ValueError):
    code = "malformed_spec"
    exit_status = 10


class NotAGroup(KnotHomError, ValueError):
    code = "not_a_group"
    exit_status = 11

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["witness"] = list(self.witness) if self.witness is not None else None
        return d


class ParamOutOfRange(KnotHomError, ValueError):
    code = "param_out_of_range"
    exit_status = 12


class EmptySeeds(KnotHomError, ValueError):
    code = "empty_seeds"
    exit_status = 13


class NotNormal(KnotHomError, ValueError):
    code = "not_normal"
    exit_status = 14


class NegativeParameter(KnotHomError, ValueError):
    code = "negative_parameter"
    exit_status = 15


class StrandMismatch(KnotHomError, ValueError):
    code = "strand_mismatch"
    exit_status = 16


class IndexOutOfRange(KnotHomError, IndexError):
    code = "index_out_of_range"
    exit_status = 17


class LengthMismatch(KnotHomError, ValueError):
    code = "length_mismatch"
    exit_status = 18


class NotAKnot(KnotHomError, ValueError):
    code = "not_a_knot"
    exit_status = 19


class StateSpaceTooLarge(KnotHomError, RuntimeError):
    code = "state_space_too_large"
    exit_status = 20


class TooManyCrossings(KnotHomError, ValueError):
    code = "too_many_crossings"
    exit_status = 21


class TooShort(KnotHomError, ValueError):
    code = "too_short"
    exit_status = 22


class UnsupportedParameter(KnotHomError, ValueError):
    code = "unsupported_parameter"
    exit_status = 23


class ConfigError(KnotHomError, ValueError):
    code = "config_error"
    exit_status = 24


class UnsupportedFormat(KnotHomError, ValueError):
    code = "unsupported_format"
    exit_status = 25


class MethodDisagreement(KnotHomError, AssertionError):
    """Two counting routes returned different values for the same knot."""

    code = "method_disagreement"
    exit_status = 26
