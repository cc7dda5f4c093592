"""Exception hierarchy shared by all stages."""


class WeakLabelError(Exception):
    pass


class ValidationError(WeakLabelError, ValueError):
    """Input data violates a documented invariant."""


class ParseError(WeakLabelError, ValueError):
    """A file could not be parsed in its declared format."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class ConfigError(WeakLabelError):
    """Run configuration is inconsistent or references missing resources."""


class UndefinedSimilarity(WeakLabelError, ValueError):
    """Cosine similarity requested for a zero-norm vector."""


class UndefinedKappa(WeakLabelError, ValueError):
    """Chance agreement is 1, so kappa has no value."""
