"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operand widths disagree, or a width is out of the supported range."""


class InvalidObservableError(ValueError):
    """A measured observable is not a Hermitian Pauli operator."""


class InvalidGateError(ValueError):
    """Gate arguments are malformed (e.g. control equals target)."""


class InvalidPreparationError(ValueError):
    """Preparation generators are not Hermitian, commuting and independent."""


class PauliParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at index {position})")
        self.position = position


class CircuitParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
