"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class UnsupportedFormat(EngineError):
    """Input bytes are a valid image container we do not accept (not PNG/JPEG)."""


class CorruptStream(EngineError):
    """Input bytes are not a decodable image stream."""


class HeightMismatch(EngineError):
    """Juxtaposition requires equal heights (equal widths for top-bottom)."""


class DimsMismatch(EngineError):
    """Image dimensions do not match the session's canonical dimensions."""


class DegenerateImage(EngineError):
    """Image too small for a meaningful self-similarity baseline."""


class EmptySession(EngineError):
    """Operation requires at least one stored entry."""


class IoFailure(EngineError):
    """Session or corpus file could not be read or written."""


class ManifestVersionMismatch(EngineError):
    """Manifest declares a version this build does not understand."""


class LengthMismatch(EngineError):
    """Corpus image list and truth-label list have incompatible lengths."""
