"""Exception hierarchy shared by all waveset modules."""

from __future__ import annotations


class WavesetError(Exception):
    """Base class for every error raised by the package."""


class ParseError(WavesetError, ValueError):
    """Malformed scalar, set expression, or JSON payload."""


class RingSplitError(WavesetError):
    """An interval cannot be split into finitely many dilation rings.

    ``kind`` is ``"straddles_zero"`` when the interval contains 0 and
    ``"unbounded_split"`` when it accumulates at 0 or needs more rings than
    the configured bound.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class CongruenceError(WavesetError):
    """A translation or dilation congruence check failed.

    Attributes
    ----------
    kind : str
        One of ``measure``, ``overlap``, ``gap``, ``straddles_zero``,
        ``unbounded_split``.
    side : str
        ``"translation"`` or ``"dilation"``.
    region : IntervalSet or None
        Offending region expressed in the target window coordinates.
    """

    def __init__(self, kind: str, side: str, message: str, region=None):
        super().__init__(message)
        self.kind = kind
        self.side = side
        self.region = region


class NotAWaveletSet(WavesetError):
    """Raised by :func:`waveset.congruence.is_wavelet_set`; carries every failure found."""

    def __init__(self, failures: list[CongruenceError]):
        self.failures = list(failures)
        text = "; ".join(f"{f.side} congruence failed ({f.kind}): {f}" for f in self.failures)
        super().__init__(text)


class MapError(WavesetError):
    """Interpolation-map construction or manipulation failed."""


class CriterionError(WavesetError):
    """Coefficient Criterion inputs are inconsistent or the criterion failed."""
