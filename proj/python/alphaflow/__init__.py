from ._core import (
    Channel,
    ChannelConfig,
    ConfigError,
    NumericalError,
    fit_rate,
    gd_check,
    __version__,
)

__all__ = [
    "Channel",
    "ChannelConfig",
    "ConfigError",
    "NumericalError",
    "fit_rate",
    "gd_check",
    "__version__",
]
