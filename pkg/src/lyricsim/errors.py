"""Exception hierarchy.

Three families map onto the CLI exit codes: usage problems exit 1 (handled
by the CLI layer), :class:`DataError` subclasses exit 2, and
:class:`NumericError` subclasses exit 3.  Every message is prefixed with the
class name by ``__str__`` so the failing contract is always named.
"""


class LyricsimError(Exception):
    def __str__(self) -> str:
        return f"{type(self).__name__}: {super().__str__()}"


class DataError(LyricsimError):
    """Input data violates a documented contract (exit code 2)."""


class NumericError(LyricsimError):
    """A numeric procedure failed to produce a valid result (exit code 3)."""


# -- corpus ----------------------------------------------------------------

class MalformedLexiconLine(DataError):
    pass


class DuplicateTrackId(DataError):
    pass


class MalformedRecord(DataError):
    pass


# -- phonetics --------------------------------------------------------------

class UnknownPhoneme(DataError):
    pass


class EmptyHistogram(DataError):
    pass


class TooShort(DataError):
    """Phoneme sequence has no bigram (length < 2)."""


class InsufficientData(DataError):
    pass


class ConvergenceFailure(NumericError):
    pass


# -- topics -----------------------------------------------------------------

class EmptyVocabulary(DataError):
    pass


class TooFewDocuments(DataError):
    pass


class NoKnownTokens(DataError):
    pass


# -- embeddings ---------------------------------------------------------------

class DimensionMismatch(DataError):
    pass


class DuplicateId(DataError):
    pass


class MissingVector(DataError):
    pass


class ZeroVector(DataError):
    pass


# -- study --------------------------------------------------------------------

class NotEnoughPairs(DataError):
    pass


class DegenerateDistribution(DataError):
    pass


class UnresolvedRange(DataError):
    pass


class DegenerateInput(DataError):
    pass


class InsufficientSamples(DataError):
    pass


class MissingProvider(DataError):
    pass


class MissingObjective(DataError):
    pass
