"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract caller input."""


class SizeGuardError(RuntimeError):
    """An exhaustive routine was asked to search beyond its configured budget."""


class NoJunctionTreeError(RuntimeError):
    """The family does not admit a junction tree; extended rewrites still apply."""


class DisconnectedPartitionError(InputError):
    """The partition's dual graph is disconnected."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class RedundantFamilyWarning(UserWarning):
    """A member set is contained in another; formulations remain valid."""
