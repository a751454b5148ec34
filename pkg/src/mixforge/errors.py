"""Exception types shared across the package."""


class MixforgeError(Exception):
    pass


class InvalidCharacter(MixforgeError, ValueError):
    def __init__(self, position, char, n):
        self.position = position
        self.char = char
        super().__init__(f"invalid character {char!r} at position {position} for n={n}")


class ResourceBound(MixforgeError):
    """Raised when a request would exceed the configured enumeration cap."""


class NotInOn(MixforgeError, ValueError):
    def __init__(self, word, n):
        self.word = word
        self.n = n
        super().__init__(f"{word!r} is not in O_{n}")


class OddLength(MixforgeError, ValueError):
    pass


class ZeroVector(MixforgeError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"zero vector at index {index}")


class NotClosed(MixforgeError, ValueError):
    pass


class AmbiguousTurn(MixforgeError, ValueError):
    """Two consecutive vectors are antiparallel, so the turn direction is undefined."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"antiparallel consecutive vectors at index {index}")


class AntiparallelTangents(MixforgeError, ValueError):
    pass


class NotEmbedded(MixforgeError, ValueError):
    pass


class UnsupportedDimension(MixforgeError, ValueError):
    pass


class ArityMismatch(MixforgeError, ValueError):
    pass


class DimensionMismatch(MixforgeError, ValueError):
    pass


class NotACycle(MixforgeError, ValueError):
    pass


class AmbiguousCyclicOrder(MixforgeError):
    pass


class OutOfDomain(MixforgeError, ValueError):
    pass


class Incompleteness(MixforgeError):
    """find_split came back empty on a word of length >= 4.

    For O_2 this would contradict the decomposition theorem, so it is never
    swallowed by the derivation code.
    """

    def __init__(self, parts, searched):
        self.parts = tuple(parts)
        self.searched = searched
        super().__init__(f"no split for {self.parts!r} after scanning {searched} candidates")
