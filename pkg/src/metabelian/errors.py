class MetabelianError(Exception):
    """Base class for library errors."""


class UnsupportedModuleError(MetabelianError):
    """The requested computation is not decidable for this module class."""


class IllDefinedMapError(MetabelianError):
    """A matrix does not carry relations of the source into relations of the target."""


class MalformedInputError(MetabelianError, ValueError):
    """Input data (JSON or arguments) does not describe a valid object."""


class NotInSError(MetabelianError, ValueError):
    """A Laurent polynomial was expected to have augmentation 1."""
