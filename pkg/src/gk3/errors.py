"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A mathematical precondition or domain invariant failed.

    The command line maps this to exit code 1.
    """


class SchemaError(ValueError):
    """An input document violates the JSON schema.

    The command line maps this to exit code 2.
    """
