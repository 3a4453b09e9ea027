from pathlib import Path
from typing import Iterable, Optional


class LrmiptError(Exception):
    """Base class for every error raised by lrmipt."""


class DomainError(LrmiptError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class CollapseError(LrmiptError, ValueError):
    """Scaling-collapse input that cannot produce a quality value."""


class FitError(LrmiptError, ValueError):
    """Not enough usable points for a fit."""


class ConvergenceError(LrmiptError, RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class DegenerateOverlapError(LrmiptError, ArithmeticError):
    """The reference-state overlap vanishes, so the Renyi ratio is undefined."""


class TableauInvariantError(LrmiptError, AssertionError):
    """A stabilizer tableau no longer describes a valid state."""


class PlanError(LrmiptError, ValueError):
    def __init__(self, offenders: Iterable[str]):
        self.offenders = list(offenders)
        super().__init__("invalid experiment plan: " + "; ".join(self.offenders))


class CsvFormatError(LrmiptError, ValueError):
    def __init__(self, path: Path | str, line: Optional[int], message: str):
        self.path = Path(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else str(self.path)
        super().__init__(f"{where}: {message}")
