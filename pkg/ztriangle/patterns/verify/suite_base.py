import logging
from abc import abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator, Optional

from ztriangle.resources.errors import UsageError
from ztriangle.ztriangle_core import ZTriangleCore

_logger = logging.getLogger(__name__)


class SuiteStatus(Enum):
    STARTED = "checking"
    PASSED = "pass"
    FAILED = "fail"


@dataclass(frozen=True)
class SuiteReport:
    name: str
    bound: int
    checked: int
    status: SuiteStatus
    counterexample: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status == SuiteStatus.PASSED

    def line(self) -> str:
        text = f"suite={self.name} bound={self.bound} checked={self.checked} status={self.status.value}"
        if self.counterexample is not None:
            text += f" counterexample={self.counterexample}"
        return text


class InvariantSuite:
    """
    One executable invariant. Subclasses yield (case, holds) pairs from cases(); the first case that
    does not hold becomes the counterexample.
    """
    name: str
    default_bound: int
    min_bound: int = 1
    max_bound: Optional[int] = None

    def __init__(self, core: ZTriangleCore, bound: Optional[int] = None) -> None:
        self.core = core
        self.bound = self.default_bound if bound is None else bound
        if self.bound < self.min_bound or (self.max_bound is not None and self.bound > self.max_bound):
            raise UsageError(f'Bound {self.bound} is outside the range {self.min_bound}..{self.max_bound} '
                             f'of suite "{self.name}".')
        self.status = SuiteStatus.STARTED
        self.checked = 0

    def run(self) -> SuiteReport:
        _logger.info("Running suite %s (bound=%d)...", self.name, self.bound)
        for case, holds in self.cases():
            self.checked += 1
            if not holds:
                self.status = SuiteStatus.FAILED
                _logger.info("Running suite %s (bound=%d)...failed at %s", self.name, self.bound, case)
                return SuiteReport(self.name, self.bound, self.checked, self.status, case)
        self.status = SuiteStatus.PASSED
        _logger.info("Running suite %s (bound=%d)...success (%d cases)", self.name, self.bound, self.checked)
        return SuiteReport(self.name, self.bound, self.checked, self.status)

    @abstractmethod
    def cases(self) -> Iterator[tuple[Any, bool]]:
        """
        Yields every checked case together with whether the invariant holds for it. Has to be
        overridden.
        """
        pass
