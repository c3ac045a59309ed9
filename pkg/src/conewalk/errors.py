"""Exception hierarchy shared by all conewalk modules."""


class ConewalkError(Exception):
    """Base class for every domain error raised by conewalk."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# complex construction
class ComplexError(ConewalkError):
    pass


class OpenComplex(ComplexError):
    pass


class DoubleGluing(ComplexError):
    pass


class SelfGluedFace(ComplexError):
    pass


class CorrespondenceNotDihedral(ComplexError):
    pass


class SizeMismatch(ComplexError):
    pass


class UnsupportedTemplate(ConewalkError):
    pass


# diagonal assignment
class AssignmentError(ConewalkError):
    pass


class NotTriangleFaced(AssignmentError):
    pass


class PatternViolation(AssignmentError):
    pass


class RestrictionViolation(AssignmentError):
    pass


class DanglingBFace(AssignmentError):
    pass


class PropagationStalled(AssignmentError):
    pass


class FoldedEdge(AssignmentError):
    """An ambiguous edge is identified with itself reversed, so it has one end."""


# coning / assembly
class NoLemmaVertex(ConewalkError):
    pass


class IncompatibleDiagonals(ConewalkError):
    pass


# oracle
class BudgetExceeded(ConewalkError):
    def __init__(self, nodes):
        self.nodes = nodes
        super().__init__(f"search budget exceeded after {nodes} nodes")


# geometry
class DegenerateTuple(ConewalkError):
    pass


class FlatTetrahedron(ConewalkError):
    def __init__(self, offenders):
        self.offenders = offenders
        super().__init__(f"{len(offenders)} flat tetrahedra: {offenders[:5]}")


# documents
class ParseError(ConewalkError):
    def __init__(self, message, line=None, column=None):
        self.column = column
        if column is not None and line is not None:
            message = f"column {column}: {message}"
        super().__init__(message, line=line)


class UnknownExample(ConewalkError):
    pass
