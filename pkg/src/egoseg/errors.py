"""Exception types the CLI maps to exit codes."""


class ConfigError(ValueError):
    """Malformed configuration or usage (CLI exit 2)."""


class RasterIOError(IOError):
    """Unreadable raster file or unusable input directory (CLI exit 3)."""


class RasterFormatError(RasterIOError):
    """File decodes but has the wrong channel layout or bit depth for the
    requested use; the CLI treats this as a usage error (exit 2)."""


class EmptyBackgroundPoolError(RuntimeError):
    """No admissible background image was found (CLI exit 4)."""
