"""Exception hierarchy."""


class HerbrandFIError(Exception):
    """Base class for every error raised by this package."""


# kernel

class TypingError(HerbrandFIError):
    def __init__(self, location, expected, found):
        self.location = location
        self.expected = expected
        self.found = found
        super().__init__(f"type error at {location or '<root>'}: "
                         f"expected {expected}, found {found}")


class UnboundVariable(HerbrandFIError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class StepBudgetExceeded(HerbrandFIError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"normalization exceeded {budget} steps")


# logic / calculus

class SignatureError(HerbrandFIError):
    pass


class RuleMismatch(HerbrandFIError):
    def __init__(self, path, detail):
        self.path = path
        self.detail = detail
        super().__init__(f"rule mismatch at {path}: {detail}")


class EigenvariableViolation(HerbrandFIError):
    def __init__(self, path, name):
        self.path = path
        self.name = name
        super().__init__(f"eigenvariable {name!r} occurs in the conclusion at {path}")


class RegularityViolation(HerbrandFIError):
    def __init__(self, name, detail="introduced more than once"):
        self.name = name
        super().__init__(f"eigenvariable {name!r} {detail}")


class CaptureRisk(HerbrandFIError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"substitution would capture eigenvariable {name!r}")


# interpretation

class IndexOutOfRange(HerbrandFIError):
    def __init__(self, index, size):
        self.index = index
        self.size = size
        super().__init__(f"occurrence index {index} outside 1..{size}")


# verifier / herbrand

class NonClosedTerm(HerbrandFIError):
    def __init__(self, names):
        self.names = sorted(names)
        super().__init__(f"term is not closed (free: {', '.join(self.names)})")


class MalformedNormalForm(HerbrandFIError):
    def __init__(self, shape):
        self.shape = shape
        super().__init__(f"unexpected normal-form shape: {shape}")


class NotHerbrandGoal(HerbrandFIError):
    pass


# input

class ParseError(HerbrandFIError):
    def __init__(self, line, col, expected):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"{line}:{col}: expected {expected}")
