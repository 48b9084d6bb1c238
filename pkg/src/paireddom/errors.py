"""Exception hierarchy.

Input problems (``InputError`` subclasses) map to CLI exit code 1.
``ThresholdViolation`` and ``ProofGap`` mean the rule cascade produced
something the potential argument says is impossible; they carry a state
dump and map to exit code 2.
"""

from __future__ import annotations

from typing import Any


class PairedDomError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PairedDomError):
    """The caller handed us something we refuse to work with."""


class MalformedInput(InputError):
    pass


class SelfLoop(MalformedInput):
    pass


class VertexOutOfRange(MalformedInput):
    pass


class InfeasibleParams(InputError):
    pass


class MinDegreeViolation(InputError):
    pass


class TooLarge(InputError):
    pass


class NoPDSet(InputError):
    """Paired domination is undefined for graphs with isolated vertices."""


class InvalidPairing(PairedDomError):
    pass


class CertificateError(PairedDomError):
    """Base for failures of the potential-function certificate."""

    def __init__(self, message: str, dump: dict[str, Any] | None = None):
        super().__init__(message)
        self.dump = dump or {}


class ThresholdViolation(CertificateError):
    pass


class ProofGap(CertificateError):
    pass
