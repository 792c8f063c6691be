"""Exception hierarchy shared by the codecs, the detector and the harness."""


class WatermarkError(Exception):
    """Base class for every error raised by unistego."""


class NonOctetLength(WatermarkError, ValueError):
    pass


class PayloadTooLarge(WatermarkError, ValueError):
    pass


class UnknownScheme(WatermarkError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown scheme"


class InsufficientCapacity(WatermarkError):
    pass


class NoInsertionPoint(InsufficientCapacity):
    """The cover has no position where the carrier may be inserted."""


class NoWatermarkFound(WatermarkError):
    pass


class CorruptFrame(WatermarkError):
    pass


class TruncatedFrame(CorruptFrame):
    """Fewer payload bits remain than the frame header declares."""


class ConfigMismatch(CorruptFrame):
    """Stego text does not match the layout parameters used for extraction."""


class NotWatermarked(WatermarkError):
    pass


class TableError(WatermarkError):
    """A bundled data table violates its size or distinctness invariants."""
