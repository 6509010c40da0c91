"""Exception hierarchy shared by every solver module."""


class DenseCSPError(Exception):
    """Base class for all errors raised by densecsp."""


class InvalidInstanceError(DenseCSPError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid instance")


class InvalidAssignmentError(DenseCSPError):
    pass


class KindError(DenseCSPError):
    """The instance kind does not match what the operation requires."""


class BudgetExceededError(DenseCSPError):
    def __init__(self, required, budget, what="work"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} {required:.4g} exceeds budget {budget:.4g}")


class UnsatisfiableRestrictionError(DenseCSPError):
    """Some candidate set became empty; ``vertex`` is the first one that did."""

    def __init__(self, vertex):
        self.vertex = int(vertex)
        super().__init__(f"candidate set of vertex {self.vertex} became empty")


class PartitionRetryError(DenseCSPError):
    pass
