class FormatError(ValueError):
    """Malformed input document. The message names the offending line."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(RuntimeError):
    """A configured size guard would be exceeded."""
