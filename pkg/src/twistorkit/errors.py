"""Exception hierarchy shared by the library and the command line front end."""


class TwistorError(Exception):
    """Base class for all library errors."""


class InputError(TwistorError, ValueError):
    """Malformed or contract-violating input (CLI exit code 2)."""


class FieldError(InputError):
    """Operation needs the Gaussian field but got rational-only data."""


class TheoremViolation(TwistorError, AssertionError):
    """An internal check that a proven statement holds has failed (CLI exit code 3).

    Raised, for example, when image and coimage of an MTS morphism differ.
    Carries an optional ``dump`` with diagnostic data.
    """

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}
