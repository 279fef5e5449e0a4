class GraphError(Exception):
    """Base class for all graphtrav errors."""


class DuplicateId(GraphError):
    pass


class DanglingEndpoint(GraphError):
    pass


class InvalidProperty(GraphError):
    pass


class KindMismatch(GraphError):
    """A step received a frontier of the wrong element kind."""


class TypeMismatch(GraphError):
    """An inequality comparator was given a non-numeric operand."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class NameNotFound(GraphError):
    pass


class MissingName(GraphError):
    pass


class DuplicateName(GraphError):
    pass


class PointOutOfWorld(GraphError):
    pass
