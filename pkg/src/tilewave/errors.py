"""Exception hierarchy shared by all tilewave modules."""


class TilewaveError(Exception):
    """Base class for every error raised by tilewave."""


class GeometryError(TilewaveError, ValueError):
    pass


class DegeneratePolygon(GeometryError):
    """Polygon with fewer than three distinct vertices or zero area."""


class NonSimplePolygon(GeometryError):
    pass


class SingularMatrix(GeometryError):
    pass


class IrrationalData(TilewaveError, TypeError):
    """A float reached an exact code path.

    Exact verifiers only accept ``int``, ``Fraction`` or ``"p/q"`` strings;
    irrational problems must be rescaled to rational coordinates first.
    """


class BoundaryPoint(TilewaveError, ValueError):
    """The query point lies on a measure-zero exceptional set."""


class OverlapDetected(TilewaveError):
    """Shifted pieces overlap; carries the offending cells."""

    def __init__(self, message, cells=(), overlap_cells=()):
        super().__init__(message)
        self.cells = list(cells)
        self.overlap_cells = list(overlap_cells)


class ShiftCollision(TilewaveError, ValueError):
    """Two translation shifts coincide modulo the dual lattice."""


class NotHermitian(TilewaveError, ValueError):
    pass


class UnverifiedDescriptor(TilewaveError):
    pass
