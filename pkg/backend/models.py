import enum


class EquivalenceMode(str, enum.Enum):
    LITERAL = "literal"  # B = B'
    PERMUTED = "permuted"  # B' = σ B σ⁻¹


class ExportFormat(str, enum.Enum):
    DOT = "dot"
    JSON = "json"


class TableFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"


class EqualityStatus(str, enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNKNOWN = "unknown"


class PositivityStatus(str, enum.Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not_positive"
    UNKNOWN = "unknown"


class FiniteTypeStatus(str, enum.Enum):
    FINITE = "finite"
    EXCEEDED_BUDGET = "exceeded_budget"


class BasisFamily(str, enum.Enum):
    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"
