from ..errors import WatermarkError


class HarnessError(WatermarkError):
    pass


class ConfigError(HarnessError, ValueError):
    pass


class TransportError(HarnessError):
    pass


class OversizePrompt(HarnessError):
    """Prompt exceeds the model's input limit; the cell is skipped, not sent."""


class EmptySource(HarnessError, ValueError):
    pass


class MixedExperiments(HarnessError, ValueError):
    pass
