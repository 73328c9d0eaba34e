"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ContractError(ValueError):
    """A documented precondition was violated (CLI exit code 2)."""


class AlphabetMismatch(ContractError):
    pass


class ResourceError(RuntimeError):
    """A registry or configured cap is too small for the request (exit code 3)."""


class RegistryTooSmall(ResourceError):
    pass


class NotStabilized(ContractError):
    """Operator interpolation did not stabilize at the requested degree bound."""
