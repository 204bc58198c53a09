"""Exception types shared across the package."""


class EvideskError(Exception):
    """Base class for all package-specific failures."""


class EmptyDocument(EvideskError):
    """Document body contains no content."""


class InvalidChunkConfig(EvideskError):
    """Window size / overlap combination is unusable."""


class UnlinkedDocument(EvideskError):
    """No molecule in the registry matches the document."""


class RegistryError(EvideskError):
    """Molecule registry is malformed (duplicate or colliding aliases)."""


class EmptyQuery(EvideskError):
    """Query text tokenizes to nothing."""


class DimensionMismatch(EvideskError):
    """Vector dimensionality differs from the index."""


class IndexCorruption(EvideskError):
    """Persisted index bytes fail structural validation."""


class ProviderUnavailable(EvideskError):
    """Model provider could not be reached after retries."""


class ParseFailure(EvideskError):
    """Model response did not satisfy the expected grammar."""


class EmptyInput(EvideskError):
    """Provider input carries no usable tokens."""


class EmptyCounts(EvideskError):
    """Confusion counts sum to zero; metrics are undefined."""


class DuplicateRecord(EvideskError):
    """A uniqueness key appears more than once."""


class UnitMismatch(EvideskError):
    """Quantities being compared carry different units."""


class InvalidNoael(EvideskError):
    """A no-observed-adverse-effect level must be positive."""


class NoOverlap(EvideskError):
    """Two outcome sets share no molecules."""


class InvalidAdjudication(EvideskError):
    """Adjudication record violates a field constraint."""


class NotFound(EvideskError):
    """Referenced entity does not exist."""


class NotReady(EvideskError):
    """Operation requires state that has not been prepared yet."""
