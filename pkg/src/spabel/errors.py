class HypothesisError(ValueError):
    """Raised when a computation is requested outside the hypotheses it needs
    (for example an even level where the odd-level argument is used)."""


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed the configured element budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} elements, budget is {budget}")
