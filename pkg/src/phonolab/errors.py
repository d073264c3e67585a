"""Domain exceptions shared across the package.

Every error type carries a stable machine-readable ``code`` so transport
layers (HTTP, CLI) can map failures without matching message strings.
"""


class AppError(Exception):
    """Base class for all domain errors."""

    code = "error"


# --- audio codec / container ---

class MalformedBlock(AppError):
    code = "malformed_block"


class MalformedWav(AppError):
    code = "malformed_wav"


class UnsupportedFormat(AppError):
    code = "unsupported_format"


# --- markers / segmentation ---

class UnsupportedRate(AppError):
    code = "unsupported_rate"


class MarkerPairingError(AppError):
    code = "marker_pairing"


class UnpairedEndMarker(MarkerPairingError):
    code = "unpaired_end_marker"


# --- fuzzy engine ---

class FclError(AppError):
    code = "fcl_error"


class FclSyntaxError(FclError):
    """Lexical or grammatical error; pinpoints the offending position."""

    code = "fcl_syntax"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class FclSemanticError(FclError):
    code = "fcl_semantic"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownVariable(FclSemanticError):
    code = "unknown_variable"


class UnknownTerm(FclSemanticError):
    code = "unknown_term"


class NonMonotonePoints(FclSemanticError):
    code = "non_monotone_points"


class MissingInput(FclError):
    code = "missing_input"


class NonFiniteInput(FclError):
    code = "non_finite_input"


# --- therapy logic ---

class EmptyScores(AppError):
    code = "empty_scores"


class ScoreOutOfRange(AppError):
    code = "score_out_of_range"


class InputOutOfRange(AppError):
    code = "input_out_of_range"


class StaleSuggestion(AppError):
    code = "stale_suggestion"


# --- datastore ---

class InvalidEnum(AppError):
    code = "invalid_enum"


class UnknownChild(AppError):
    code = "unknown_child"


class UnknownSession(AppError):
    code = "unknown_session"


class UnknownSegment(AppError):
    code = "unknown_segment"


class UnknownExercise(AppError):
    code = "unknown_exercise"


class UnknownSuggestion(AppError):
    code = "unknown_suggestion"


class NoEvaluations(AppError):
    code = "no_evaluations"


class CorruptSnapshot(AppError):
    code = "corrupt_snapshot"
