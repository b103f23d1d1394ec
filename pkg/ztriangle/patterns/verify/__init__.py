from ztriangle.patterns.verify.verify_model import VerifyModel, SUITES
from ztriangle.patterns.verify.suite_base import InvariantSuite, SuiteReport, SuiteStatus
