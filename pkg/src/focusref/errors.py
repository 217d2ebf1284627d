"""Exception types shared across the package."""


class FocusrefError(Exception):
    """Base class for all errors raised by focusref."""


class OntologyError(FocusrefError):
    """Raised for ontology file problems and unknown type names."""


class DocumentValidationError(FocusrefError):
    """A document violates one of the documented well-formedness rules.

    Carries the offending document id when known so batch runs can report
    which record failed.
    """

    def __init__(self, message, doc_id=None):
        if doc_id is not None:
            message = f"document {doc_id!r}: {message}"
        super().__init__(message)
        self.doc_id = doc_id


class CorpusParseError(FocusrefError):
    """A corpus, chain, or priorities file failed to parse.

    Includes the source path and 1-based line number in the message.
    """

    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = str(path)
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.line = line


class IntegrityError(FocusrefError):
    """A mention id referenced by a register, resolution, or chain does not
    exist in the document."""


class MarkupError(FocusrefError):
    """Raised when coreference markup cannot be emitted or parsed."""


class ScoringError(FocusrefError):
    """Raised for ill-formed chain sets or mismatched scoring inputs."""
