"""Exception types shared across the toolkit."""


class ResonetError(Exception):
    """Base class for all toolkit errors."""


class InvalidSpecError(ResonetError):
    """A design specification or argument violates its constraints."""


class ParseError(ResonetError):
    """A config, design, or response file could not be parsed."""


class SingularFrequencyError(ResonetError):
    """The filter matrix is numerically singular at the requested frequency."""


class BelowCutoffError(ResonetError):
    """The requested frequency does not propagate in the waveguide."""


class UnknownPresetError(ResonetError):
    """An unknown preset name was requested."""

    def __init__(self, name: str, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown preset {name!r}; available: {', '.join(self.available)}"
        )


class InsufficientPeaksError(ResonetError):
    """Fewer resonance peaks were found than the operation requires."""

    def __init__(self, found: int, needed: int):
        self.found = found
        self.needed = needed
        super().__init__(f"found {found} peak(s), need {needed}")


class InsufficientSpanError(ResonetError):
    """The sampled frequency span does not bracket the 3 dB points."""


class NoPassbandError(ResonetError):
    """No region of the response stays below the requested reflection level."""


class NumericalError(ResonetError):
    """An eigenvalue solve or optimization step failed numerically."""
