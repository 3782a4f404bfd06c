"""Exception taxonomy shared by every module.

The CLI maps these onto distinct exit codes: invalid input (2),
unsupported or out-of-scope query (3), internal assertion failure (4).
"""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition or invariant."""


class DegenerateFormError(InvalidInputError):
    """A nondegenerate bilinear form was required but det = 0."""


class UnsupportedQueryError(LookupError):
    """The request is outside the tabulated / supported range.

    Raised instead of guessing: absent table keys, knot-table pairs we
    do not cover, spaces or degrees outside the spectral-sequence
    window, torsion coefficients we deliberately do not model.
    """
