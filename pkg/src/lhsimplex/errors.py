"""Exception types shared across modules. The CLI maps them to exit codes."""


class DomainError(ValueError):
    """Input outside the documented domain of an operation (exit code 4)."""


class CapExceededError(DomainError):
    """An enumeration would exceed the configured cap (exit code 2)."""

    def __init__(self, size: int, cap: int, what: str = "inversion sequences"):
        super().__init__(f"{what}: {size} exceeds the cap {cap}")
        self.size = size
        self.cap = cap


class NotCoverableError(DomainError):
    """The sequence admits no split of the supported form (exit code 5)."""

    def __init__(self, s, index: int):
        super().__init__(f"s={tuple(s)} is not coverable by the chimney/pyramid construction; first failing index {index}")
        self.s = tuple(s)
        self.index = index
