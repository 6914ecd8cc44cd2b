"""Exception taxonomy shared across the package."""


class MistforgeError(Exception):
    """Base class for all package errors."""


class InputError(MistforgeError):
    """Malformed caller input (bad spans, bad file contents, ...)."""


class ConfigurationError(MistforgeError):
    """Missing grammar, unresolvable model spec, invalid config values."""


class PreconditionError(MistforgeError):
    """An operation was called outside its contract."""


class TransformFailed(MistforgeError):
    """A structure transformation produced an invalid candidate; the
    caller discards it."""


class AttackStepSkipped(MistforgeError):
    """An attack step could not produce a valid candidate (e.g. no
    admissible rename); the individual is left unchanged."""


class TransportError(MistforgeError):
    """A remote model/provider endpoint could not be reached."""


class ProtocolError(MistforgeError):
    """A remote endpoint answered outside the wire contract."""
