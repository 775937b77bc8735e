"""Exception types shared across the package.

The CLI maps these onto exit codes, so the split matters:

* ``FormatError``   -- input data is malformed (bad JSON shape, missing field).
* ``AxiomError``    -- input is well-formed but violates a structural axiom
  (composition table inconsistent, face identities fail, ...).  Carries a
  report listing every violation found.
* ``InvariantError`` -- an internal consistency check failed; indicates a bug
  or an unsupported identification, not bad user input.
"""


class FormatError(ValueError):
    """Malformed input: wrong JSON shape, missing or ill-typed field."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{message} (field: {field})"
        super().__init__(message)


class AxiomError(ValueError):
    """Well-formed input that violates a required axiom."""

    def __init__(self, message, report=None):
        self.report = list(report) if report else [message]
        super().__init__(message)


class InvariantError(RuntimeError):
    """An internal invariant failed."""
