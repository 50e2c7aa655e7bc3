class ConfigurationError(ValueError):
    """Raised for invalid parameters, concept ids or config files."""


class InvalidSliceError(ValueError):
    """Raised when a slice is off the attribute grid or outside its support."""


class CalibrationError(ValueError):
    """Raised when a calibration split lacks one of the two polarities."""
