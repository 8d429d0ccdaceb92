"""Exception types. Each carries a short ``code`` used in CLI messages."""


class MultiDedupError(ValueError):
    code = "error"

    def __init__(self, message: str | None = None):
        super().__init__(message or self.code)


class EmptySequenceError(MultiDedupError):
    code = "empty-sequence"


class OutOfSpaceError(MultiDedupError):
    code = "out-of-space"


class CenterNotInSpaceError(MultiDedupError):
    code = "center-not-in-space"


class NotASubmsetError(MultiDedupError):
    code = "not-a-submset"


class SpaceTooLargeError(MultiDedupError):
    code = "space-too-large"


class IdCollisionError(MultiDedupError):
    code = "id-collision"


class AttributeOutsideUniverseError(MultiDedupError):
    code = "attribute-outside-universe"


class ZeroWindowError(MultiDedupError):
    code = "zero-window"


class InvalidCountError(MultiDedupError):
    code = "invalid-count"


class EpsilonMustBePositiveError(MultiDedupError):
    code = "epsilon-must-be-positive"


class ParseError(MultiDedupError):
    code = "parse-error"
