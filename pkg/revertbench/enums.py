"""Enums for magic strings used throughout the codebase."""

from enum import Enum, IntEnum


class StrEnum(str, Enum):
    """String enum base class (compatible with Python < 3.11)."""

    def __str__(self) -> str:
        return self.value


class StrategyKind(StrEnum):
    """The eight portfolio selection strategies."""

    BAH_U = "BAH_U"
    CRP_U = "CRP_U"
    SMR = "SMR"
    SMAR = "SMAR"
    PAMR = "PAMR"
    OLMAR = "OLMAR"
    TCO1 = "TCO1"
    TCO2 = "TCO2"

    @property
    def label(self) -> str:
        """Column heading used in summary tables."""
        return {StrategyKind.TCO1: "TCO-1", StrategyKind.TCO2: "TCO-2"}.get(
            self, self.value
        )


class InputKind(StrEnum):
    """What the numbers in a data file mean."""

    PRICES = "prices"
    RELATIVES = "relatives"


class TableFormat(StrEnum):
    """Output format for summary tables."""

    CSV = "csv"
    MARKDOWN = "markdown"

    @property
    def suffix(self) -> str:
        return ".md" if self is TableFormat.MARKDOWN else ".csv"


class MarketProcess(StrEnum):
    """Price processes available to the synthetic market generator."""

    ALTERNATING = "deterministic-alternating"
    RANDOM_WALK = "geometric-random-walk"
    MEAN_REVERTING = "mean-reverting"


class ExitCode(IntEnum):
    """Process exit codes for the command line."""

    OK = 0
    VALIDATION = 1
    DATA = 2
