"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InputError`` -> 3, ``ResourceCapError`` -> 4.
"""


class CylforgeError(Exception):
    """Base class for all errors raised by the package."""


class InputError(CylforgeError, ValueError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            pointer = " " * position + "^"
            message = f"{message} at position {position}\n  {text}\n  {pointer}"
        super().__init__(message)


class AmbientMismatchError(InputError):
    """Two polynomials from different rings were combined."""


class NonHomogeneousError(InputError):
    def __init__(self, relation, degrees):
        self.relation = relation
        self.degrees = tuple(degrees)
        super().__init__(
            f"relation {relation} is not weighted-homogeneous "
            f"(term degrees {self.degrees[0]} and {self.degrees[1]})"
        )


class DerivationError(InputError):
    """A derivation does not descend to the quotient ring."""

    def __init__(self, relation, image):
        self.relation = relation
        self.image = image
        super().__init__(f"derivation does not preserve the relation ideal: "
                         f"D({relation}) reduces to {image} != 0")


class ResourceCapError(CylforgeError):
    """A configured step cap or search bound was exhausted."""


class ConstructionError(CylforgeError):
    """A construction could not be completed on the given input (e.g. reducible fiber)."""


class InconsistencyError(CylforgeError):
    """Two independent computations disagree; indicates a bug or a bound that is too small."""
