"""revertbench - mean-reversion portfolio strategies and their backtests."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("revertbench")
except PackageNotFoundError:
    __version__ = "0.0.0"
