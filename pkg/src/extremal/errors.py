"""Exception types shared across the package."""


class ExtremalError(Exception):
    """Base class for package-specific errors."""


class FormatError(ExtremalError):
    """Malformed HGR/JSON input or experiment config."""


class BudgetError(ExtremalError):
    """An enumeration or search would exceed its configured budget."""


class SoundnessError(ExtremalError):
    """A runtime check of an invariant that theory guarantees has failed.

    Raised instead of silently proceeding; carries enough context to turn the
    failure into a reportable counterexample.
    """
