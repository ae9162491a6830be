# Licensed under the MIT License.


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class CapExceededError(RuntimeError):
    """A configured computational cap would be exceeded."""

    def __init__(self, what: str, value: int, cap: int, hint: str = ""):
        message = f"{what} = {value} exceeds the configured cap of {cap}"
        if hint:
            message = f"{message}; {hint}"
        super().__init__(message)
        self.what = what
        self.value = value
        self.cap = cap
