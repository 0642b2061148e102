"""Exception types shared by the kernels and the public modules."""


class CollatzError(ValueError):
    """Base class for invalid inputs to the Collatz routines."""


class BudgetExceeded(RuntimeError):
    """Raised when a single input runs past its loop-iteration budget.

    A Collatz sequence that never reaches 1 would loop forever; the budget
    turns that hypothetical case into an incident the caller can record.
    """

    def __init__(self, n: int, budget: int):
        super().__init__(f"step budget of {budget} loop iterations exhausted")
        self.n = n
        self.budget = budget

    def __reduce__(self):
        return (type(self), (self.n, self.budget))
