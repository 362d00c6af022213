"""Exception taxonomy shared by the whole package.

Three failure modes are kept apart because callers (the CLI in particular)
react differently to each:

* ``InputError``: the caller handed us data that is malformed or
  inconsistent before any mathematics happens.  Wrong types, duplicate
  vertices in a facet, a relation that is not antisymmetric.
* ``InvariantError``: the data parsed fine but a mathematical law failed,
  e.g. a boundary that does not square to zero, or a cosimplicial identity
  violated by the provided structure maps.
* ``PreconditionError``: the requested operation is only defined under a
  hypothesis the input does not satisfy (fence condition, truncation range,
  levelwise quasi-isomorphism).  The data itself may be perfectly valid.
"""


class InputError(ValueError):
    """Malformed or ill-typed input data."""


class InvariantError(ValueError):
    """A mathematical invariant that should hold was violated."""


class PreconditionError(ValueError):
    """The operation's hypothesis is not met by the given input."""
