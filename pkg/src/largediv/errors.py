"""Exception hierarchy shared by every module."""


class LargedivError(Exception):
    """Base class for all package errors."""


class InputError(LargedivError):
    """Malformed user input; the CLI maps these to exit code 2."""


class ArityError(InputError):
    pass


class UnknownGeneratorError(InputError):
    pass


class ConfigError(InputError):
    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class InconsistentConfig(InputError):
    pass


class MalformedFiltration(InputError):
    pass


class HypothesisViolation(LargedivError):
    """A lemma was invoked outside its hypotheses."""


class DomainError(LargedivError, ValueError):
    pass


class IndeterminateSign(LargedivError):
    """Interval enclosure still contains zero at the maximum precision."""


class PreconditionError(LargedivError):
    pass


class ConclusionFailure(LargedivError):
    pass


class RationalizationOverflow(LargedivError):
    pass
