"""Exception taxonomy.  The CLI maps each class onto a fixed exit status."""


class NewtonError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(NewtonError):
    """A geometric kernel was called outside its contract (caller bug)."""


class MalformedInput(NewtonError, ValueError):
    pass


class EmptySupport(MalformedInput):
    pass


class NotLattice(MalformedInput):
    """A point has a negative or non-integral coordinate."""


class NotConvenient(NewtonError):
    """The Newton polyhedron misses a coordinate axis, so its Newton number is undefined."""


class PointInPolyhedron(NewtonError):
    """The point to add already lies in the Newton polyhedron."""


class TheoremViolation(NewtonError, AssertionError):
    """A numeric check disagreed with the geometric criterion.

    Raised only on an implementation bug; the criterion is a theorem.
    """
