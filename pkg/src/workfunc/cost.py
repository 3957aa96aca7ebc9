"""Cost accumulation and budgets.

A computation step that keeps I bytes of machinery busy costs I bytes.
The total cost of a run is the plain sum of its step costs, so meters and
budgets are value objects: every operation returns a new instance and the
ledger identity initial - remaining == sum(charges) holds exactly as long
as the charges themselves are exactly representable.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CostMeter:
    accumulated_cost: float = 0.0
    step_count: int = 0


def record_step(meter: CostMeter, step_information: float) -> CostMeter:
    """Charge one step of the given information size onto the meter."""
    if step_information < 0:
        raise ValueError("step_information must be non-negative")
    return CostMeter(meter.accumulated_cost + step_information, meter.step_count + 1)


@dataclass(frozen=True)
class Budget:
    initial: float
    remaining: float

    def __post_init__(self):
        if self.initial < 0:
            raise ValueError("initial must be non-negative")
        if not 0 <= self.remaining <= self.initial:
            raise ValueError("remaining must stay within [0, initial]")

    @classmethod
    def fresh(cls, initial: float) -> "Budget":
        return cls(initial, initial)


@dataclass(frozen=True)
class Depleted:
    """Result of a charge that exceeded the remaining budget.

    Not a fault: depletion is an ordinary outcome.  The wrapped budget has
    remaining forced to zero.
    """

    budget: Budget


def charge(budget: Budget, cost: float) -> Budget | Depleted:
    """Deduct cost.  Exact exhaustion stays solvent; overdraft is Depleted."""
    if cost < 0:
        raise ValueError("cost must be non-negative")
    if cost > budget.remaining:
        return Depleted(Budget(budget.initial, 0.0))
    return Budget(budget.initial, budget.remaining - cost)


def keyspace_budget(cost_per_key: float, key_bits: int) -> float:
    """Worst-case budget to try every key: cost_per_key * 2**key_bits."""
    if key_bits < 0:
        raise ValueError("key_bits must be non-negative")
    if cost_per_key < 0:
        raise ValueError("cost_per_key must be non-negative")
    try:
        total = cost_per_key * 2.0**key_bits
    except OverflowError:
        raise OverflowError(f"keyspace budget overflows a float at k={key_bits}") from None
    if total == float("inf"):
        raise OverflowError(f"keyspace budget overflows a float at k={key_bits}")
    return total
