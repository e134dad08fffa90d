"""Exception hierarchy shared across the package."""


class AqceError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AqceError):
    """Instance text violates the grammar. Carries the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class MalformedHeaderError(ParseError):
    """Instance text does not begin with a decimal qubit count."""


class RangeError(ParseError):
    """An integer field of a substring is outside its allowed range."""


class FileFormatError(AqceError):
    """A circuit, dictionary, or report file is malformed. Carries the line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class DealiasError(AqceError):
    """An instance cannot be resolved against the given dictionary."""


class UnknownAliasError(DealiasError):
    """A substring references a dictionary index larger than the dictionary."""


class ArityError(DealiasError):
    """A substring's argument count does not match the referenced gate's arity."""


class ResourceLimitError(AqceError):
    """Requested computation exceeds a hard size cap."""


class IndistinguishablePhasesError(AqceError):
    """Two phases agree in every inspected bit of their binary expansions."""


class UnsafePhasesError(AqceError):
    """A phase pair violates one of the safety margins required by the demo."""
