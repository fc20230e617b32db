"""Exception types shared across the engine."""


class SolowinError(Exception):
    """Base class for every error raised by the engine."""


class NotFound(SolowinError):
    """A document or resource does not exist."""


class OutsideRoot(SolowinError):
    """A path escapes the project root after normalization."""


class MalformedConfig(SolowinError):
    """A config or store file exists but fails schema validation."""


class IoFailure(SolowinError):
    """An on-disk store could not be read or written."""


class NoErrors(SolowinError):
    """Error cycling was requested but the diagnostic list has no errors."""


class CommandNotFound(SolowinError):
    """The build (or provider) executable is missing, as opposed to failing."""


class SpawnFailure(SolowinError):
    """The child process could not be started for a non-lookup reason."""


class AlreadyFinished(SolowinError):
    """Cancel was requested after the build session completed."""


class UnsupportedLanguage(SolowinError):
    """The symbol indexer does not understand this document's language."""


class NodeNotFound(SolowinError):
    """A navigation tree does not contain the requested node."""


class NoLocation(SolowinError):
    """A navigation target has neither a payload location nor children."""


class ProviderFailure(SolowinError):
    """An external status provider (e.g. VCS) command failed."""


class UnknownBreakpoint(SolowinError):
    """No breakpoint with the given id exists."""


class MalformedTrace(SolowinError):
    """A debug trace file violates the trace schema."""


class SessionExhausted(SolowinError):
    """The debug session has no pending trace events left."""


class NoWarningHere(SolowinError):
    """Warning expansion was requested at a line without a live warning."""
