"""Exception taxonomy shared across the package."""


class HoveyForgeError(Exception):
    """Base class for all package errors."""


class SpecError(HoveyForgeError):
    """A textual algebra / run specification failed to parse or validate."""


class InvalidModuleError(HoveyForgeError):
    """Proposed action matrices violate a defining relation of the algebra."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class ExactnessError(HoveyForgeError):
    """A mono/epi pair failed one of the named short-exact-sequence checks."""

    def __init__(self, check, message):
        super().__init__(f"{check}: {message}")
        self.check = check


class PreconditionError(HoveyForgeError):
    """An operation was called outside its contract (usage error)."""


class UndecidedError(HoveyForgeError):
    """An isomorphism or splitting search exhausted its budget.

    This is an explicit "don't know", never a silent negative answer.
    """


class ObstructionError(HoveyForgeError):
    """A required lift does not exist; carries the obstructing Ext class."""

    def __init__(self, message, ext_class):
        super().__init__(message)
        self.ext_class = ext_class


class DescriptionMismatchError(HoveyForgeError):
    """The two membership descriptions of the trivial class disagreed.

    Either a search bound was too small to produce one of the witnesses, or
    there is an implementation bug; the error distinguishes the two by
    carrying the bound that was in force.
    """

    def __init__(self, message, object_id, bound):
        super().__init__(message)
        self.object_id = object_id
        self.bound = bound
