"""Exception hierarchy shared by every module."""


class PermGammaError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidParameters(PermGammaError, ValueError):
    """Inputs violate a basic precondition (non-prime p, negative n, ...)."""


class PrimeTooLarge(InvalidParameters):
    """p exceeds n, so p does not divide |S_n| and the theory does not apply."""

    def __init__(self, p: int, n: int):
        super().__init__(f"PrimeTooLarge: p={p} exceeds n={n}")
        self.p = p
        self.n = n


class InstanceTooLarge(PermGammaError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"InstanceTooLarge: {what} needs {size} items, budget is {budget}")
        self.size = size
        self.budget = budget


class UnknownIdentity(PermGammaError, KeyError):
    def __str__(self) -> str:
        return f"UnknownIdentity: {self.args[0]!r}"


class ParamsOutOfDomain(InvalidParameters):
    """Identity parameters violate that identity's hypotheses."""


class NonIntegralMultiplicity(PermGammaError, ArithmeticError):
    """A tabloid count was not divisible by the orbit size; indicates a bug."""
