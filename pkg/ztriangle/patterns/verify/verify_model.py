import logging
from enum import Enum
from typing import Optional, Type

from ztriangle.patterns.verify.suite_base import InvariantSuite, SuiteReport
from ztriangle.patterns.verify.suites import (ClosedFormSuite, CycleSuite, DeltaSuite, LeftEdgeOmegaSuite,
                                              OmegaSumSuite, ParitySuite, RowOmegaSuite, ShiftSuite, SliceSuite,
                                              SupportSizeSuite)
from ztriangle.resources.errors import UsageError, VerificationFailure
from ztriangle.ztriangle_core import ZTriangleCore

_logger = logging.getLogger(__name__)

SUITES: dict[str, Type[InvariantSuite]] = {suite.name: suite for suite in (LeftEdgeOmegaSuite,
                                                                           RowOmegaSuite,
                                                                           CycleSuite,
                                                                           ShiftSuite,
                                                                           ParitySuite,
                                                                           SupportSizeSuite,
                                                                           ClosedFormSuite,
                                                                           DeltaSuite,
                                                                           SliceSuite,
                                                                           OmegaSumSuite)}


class _ERROR_MESSAGES(Enum):
    UNKNOWN_SUITE = 'Unknown suite "{suite}" (expected "all" or one of: {known}).'
    BOUND_WITH_ALL = 'Suite "all" runs every suite at its default bound; --bound is not accepted with it.'


class VerifyModel:
    core: ZTriangleCore

    def __init__(self,
                 core: ZTriangleCore,
                 suite: str = 'all',
                 bound: Optional[int] = None) -> None:
        self.core = core
        self.suites = self._resolve(suite, bound)
        self.reports: list[SuiteReport] = []

    def _resolve(self, suite: str, bound: Optional[int]) -> list[InvariantSuite]:
        if suite == 'all':
            if bound is not None:
                raise UsageError(_ERROR_MESSAGES.BOUND_WITH_ALL.value)
            return [suite_class(self.core) for suite_class in SUITES.values()]
        if suite not in SUITES:
            raise UsageError(_ERROR_MESSAGES.UNKNOWN_SUITE.value.format(suite=suite, known=', '.join(SUITES)))
        return [SUITES[suite](self.core, bound)]

    def run(self) -> list[SuiteReport]:
        """
        Runs every selected suite in order, collecting one report each
        :return: the reports
        """
        self.reports = []
        for suite in self.suites:
            self.reports.append(suite.run())
        failed = [report.name for report in self.reports if not report.passed]
        _logger.info("Verification finished (%d suites, %d failed)", len(self.reports), len(failed))
        return self.reports

    def raise_on_failure(self) -> None:
        for report in self.reports:
            if not report.passed:
                raise VerificationFailure(report.name, report.counterexample)
