from enum import Enum
from typing import Any, Optional


class _ERROR_MESSAGES(Enum):
    EMPTY_ROW = 'A row needs at least two entries to produce a successor (received length {length}).'
    SHORT_START = 'Start row of length {length} cannot produce a triangle of depth {depth}.'
    ZERO_IN_START = 'Start rows must contain positive integers only (received {value} at position {position}).'
    PRIME_RANGE = 'Prime index {index} lies beyond the table limit {limit} and table extension is disabled.'
    PRIME_CEILING = 'Requested {count} primes, but the configured ceiling is {ceiling}.'
    UNFACTORABLE = 'Cannot factor {value}: the prime table (largest prime {largest}) does not cover its factors.'
    ORDER_TOO_LARGE = 'Order {order} is outside the supported range {low}..{high}.'
    CYCLE_BUDGET = 'No return to the start sequence within {budget} iterations.'
    VERIFICATION = 'Suite "{suite}" failed: {counterexample}'


class ZTriangleError(Exception):
    exit_code = 1


class UsageError(ZTriangleError, ValueError):
    exit_code = 1


class ConfigurationError(UsageError):
    pass


class EmptyRowError(UsageError):
    def __init__(self, length: int) -> None:
        super().__init__(_ERROR_MESSAGES.EMPTY_ROW.value.format(length=length))


class InsufficientStartError(UsageError):
    def __init__(self, length: int, depth: int) -> None:
        super().__init__(_ERROR_MESSAGES.SHORT_START.value.format(length=length, depth=depth))


class ZeroInStartError(UsageError):
    def __init__(self, value: int, position: int) -> None:
        super().__init__(_ERROR_MESSAGES.ZERO_IN_START.value.format(value=value, position=position))


class RangeLimitError(ZTriangleError):
    exit_code = 3


class PrimeRangeError(RangeLimitError):
    pass


class PrimeCeilingError(RangeLimitError):
    def __init__(self, count: int, ceiling: int) -> None:
        super().__init__(_ERROR_MESSAGES.PRIME_CEILING.value.format(count=count, ceiling=ceiling))


class OrderTooLargeError(RangeLimitError):
    def __init__(self, order: int, low: int, high: int) -> None:
        super().__init__(_ERROR_MESSAGES.ORDER_TOO_LARGE.value.format(order=order, low=low, high=high))


class CycleBudgetExhausted(RangeLimitError):
    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(_ERROR_MESSAGES.CYCLE_BUDGET.value.format(budget=budget))


class VerificationFailure(ZTriangleError):
    exit_code = 2

    def __init__(self, suite: str, counterexample: Optional[Any] = None) -> None:
        self.suite = suite
        self.counterexample = counterexample
        super().__init__(_ERROR_MESSAGES.VERIFICATION.value.format(suite=suite, counterexample=counterexample))


def prime_range_error(index: int, limit: int) -> PrimeRangeError:
    return PrimeRangeError(_ERROR_MESSAGES.PRIME_RANGE.value.format(index=index, limit=limit))


def unfactorable_error(value: int, largest: int) -> PrimeRangeError:
    return PrimeRangeError(_ERROR_MESSAGES.UNFACTORABLE.value.format(value=value, largest=largest))
