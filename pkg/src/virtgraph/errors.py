"""Exception hierarchy shared by every module."""


class VirtgraphError(Exception):
    """Base class for all errors raised by the package."""


class DiagramError(VirtgraphError):
    """Malformed diagram data (dangling slots, bad arity, incoherent strands)."""


class VGDParseError(DiagramError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class NotALinkDiagram(DiagramError):
    pass


class NotClassical(DiagramError):
    pass


class OrientationMismatch(DiagramError):
    pass


class ComponentOutOfRange(VirtgraphError, IndexError):
    pass


class CyclesNotDisjoint(VirtgraphError):
    pass


class EdgeNotInDiagram(VirtgraphError):
    pass


class DiagramGraphMismatch(VirtgraphError):
    pass


class HasVirtualCrossings(VirtgraphError):
    pass


class NonIntegerPowers(VirtgraphError, ValueError):
    pass


class NotPlusMinusOne(VirtgraphError, ValueError):
    pass


class GraphError(VirtgraphError):
    pass


class NotATriangle(GraphError):
    pass


class NotAYVertex(GraphError):
    pass


class CapExceeded(VirtgraphError):
    """A configured work cap would be exceeded; the computation is refused."""


class TooManyCrossings(CapExceeded):
    pass


class TooLarge(CapExceeded):
    pass


class SweepTooLarge(CapExceeded):
    pass
