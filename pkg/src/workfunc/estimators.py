"""Closed-form attack cost estimators.

All costs are byte-steps: one byte of machinery held for one step costs
one byte.  The exhaustive-search baseline prices one key test at
bytes_per_key_bit * key_bits (120 bytes per key bit for a DES-scale
check; one extra encryption layer triples it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .devices import Fleet, fleet_rate

DEFAULT_BYTES_PER_KEY_BIT = 120.0
TRIPLE_BYTES_PER_KEY_BIT = 360.0

# Hardware progress: 2.6 dB/year, i.e. about a factor 1.82 each year.
HARDWARE_PROGRESS_PER_YEAR = 1.82

SECONDS_PER_HOUR = 3600.0
SECONDS_PER_DAY = 86400.0
SECONDS_PER_MONTH = 30.5 * SECONDS_PER_DAY
SECONDS_PER_YEAR = 365.0 * SECONDS_PER_DAY

# Quoted rental market figures (2007 dollars), reported as-is: a botnet of
# around 3 million machines at about $15 per machine.
BOTNET_MACHINES = 3_000_000
BOTNET_DOLLARS_PER_MACHINE = 15.0

FleetLike = Union[Fleet, Iterable[Fleet], float]


def _rate_of(fleet: FleetLike) -> float:
    if isinstance(fleet, (int, float)):
        rate = float(fleet)
        if rate <= 0:
            raise ValueError("aggregate rate must be positive")
        return rate
    return fleet_rate(fleet)


@dataclass(frozen=True)
class BruteForceModel:
    key_bits: int
    bytes_per_key_bit: float = DEFAULT_BYTES_PER_KEY_BIT

    def __post_init__(self):
        if self.key_bits < 1:
            raise ValueError("key_bits must be at least 1")
        if self.bytes_per_key_bit <= 0:
            raise ValueError("bytes_per_key_bit must be positive")


def brute_force_cost(model: BruteForceModel) -> float:
    """Average exhaustive-search cost: b * k * 2**(k-1) bytes.

    Half the keyspace is searched on average; the worst case doubles it.
    """
    return model.bytes_per_key_bit * model.key_bits * 2.0 ** (model.key_bits - 1)


def triple_des_cost(key_bits: int) -> float:
    """Average cost with a tripled per-bit check (360 bytes per key bit)."""
    return brute_force_cost(BruteForceModel(key_bits, TRIPLE_BYTES_PER_KEY_BIT))


@dataclass(frozen=True)
class AttackEstimate:
    total_cost: float
    fleet_rate: float
    expected_seconds: float
    worst_case_seconds: float


def break_time(cost: float, fleet: FleetLike) -> AttackEstimate:
    """Time to spend `cost` bytes on a fleet; worst case is twice the mean."""
    if cost <= 0:
        raise ValueError("cost must be positive")
    rate = _rate_of(fleet)
    expected = cost / rate
    return AttackEstimate(
        total_cost=cost,
        fleet_rate=rate,
        expected_seconds=expected,
        worst_case_seconds=2.0 * expected,
    )


def progress_years(speedup: float, annual_factor: float = HARDWARE_PROGRESS_PER_YEAR) -> float:
    """Years of hardware progress needed for a given speedup factor."""
    if speedup < 1:
        raise ValueError("speedup must be at least 1")
    if annual_factor <= 1:
        raise ValueError("annual_factor must exceed 1")
    return math.log(speedup) / math.log(annual_factor)


@dataclass(frozen=True)
class DictionaryModel:
    """Precomputed-dictionary attack sizing.

    The dictionary holds 2**(key_bits - epsilon) entries; each entry stores
    plaintext_blocks blocks of ciphertext plus the key, so entry_bits is
    (plaintext_blocks + 1) * key_bits.  A lookup walks key_bits - epsilon
    comparisons (binary search depth, the conservative count); the
    upper_bound flag switches to the 3k(k - epsilon) bit-comparison bound.
    """

    key_bits: int
    epsilon: int
    plaintext_blocks: int = 3
    steps_per_comparison: int = 2
    upper_bound: bool = False

    def __post_init__(self):
        if self.key_bits < 1:
            raise ValueError("key_bits must be at least 1")
        if not 0 <= self.epsilon < self.key_bits:
            raise ValueError("epsilon must be in [0, key_bits)")
        if self.plaintext_blocks < 1:
            raise ValueError("plaintext_blocks must be at least 1")
        if self.steps_per_comparison < 1:
            raise ValueError("steps_per_comparison must be at least 1")


@dataclass(frozen=True)
class DictionaryStats:
    entries: float
    entry_bits: int
    dictionary_bits: float
    dictionary_bytes: float
    expected_comparisons: int
    steps_per_lookup: int
    lookup_cost: float
    per_key_cost: float
    construction_cost: float
    construction_is_search_bound: bool = True


def dictionary_stats(model: DictionaryModel) -> DictionaryStats:
    """Size and cost figures for the dictionary attack.

    The lookup is priced under a lease model: every step of the lookup
    keeps the whole dictionary allocated, so one lookup costs
    steps_per_lookup * dictionary_bytes.  Construction is reported as the
    exhaustive-search average (a search bound, not a tight dictionary
    build cost), flagged by construction_is_search_bound.
    """
    k = model.key_bits
    entries = 2.0 ** (k - model.epsilon)
    entry_bits = (model.plaintext_blocks + 1) * k
    dictionary_bits = entry_bits * entries
    dictionary_bytes = dictionary_bits / 8.0
    if model.upper_bound:
        comparisons = model.plaintext_blocks * k * (k - model.epsilon)
    else:
        comparisons = k - model.epsilon
    steps = model.steps_per_comparison * comparisons
    lookup_cost = steps * dictionary_bytes
    per_key_cost = 2.0**model.epsilon * lookup_cost
    construction = brute_force_cost(BruteForceModel(k))
    return DictionaryStats(
        entries=entries,
        entry_bits=entry_bits,
        dictionary_bits=dictionary_bits,
        dictionary_bytes=dictionary_bytes,
        expected_comparisons=comparisons,
        steps_per_lookup=steps,
        lookup_cost=lookup_cost,
        per_key_cost=per_key_cost,
        construction_cost=construction,
    )


@dataclass(frozen=True)
class Tf1Model:
    """Word-based stream generator with a 4w-bit state.

    The design intends 2w bits of strength but state recovery needs only
    about 2**(1.5w) candidate states once a zero output word has been
    observed, so the effective strength is 1.5w bits.  Finding the zero
    word first takes an expected 2**(w-1) scanned words (the published
    convention; the geometric mean from a random start is 2**w).
    """

    word_bits: int
    bytes_per_strength_bit: float = DEFAULT_BYTES_PER_KEY_BIT
    checker_ops: int = 16
    scan_words_per_second: float = 1e9

    def __post_init__(self):
        if self.word_bits < 1:
            raise ValueError("word_bits must be at least 1")
        if self.bytes_per_strength_bit <= 0:
            raise ValueError("bytes_per_strength_bit must be positive")
        if self.checker_ops < 1:
            raise ValueError("checker_ops must be at least 1")
        if self.scan_words_per_second <= 0:
            raise ValueError("scan rate must be positive")


@dataclass(frozen=True)
class Tf1Estimate:
    word_bits: int
    intended_strength_bits: int
    effective_strength_bits: float
    state_search_cost: float
    fleet_rate: float
    expected_seconds: float
    worst_case_seconds: float
    expected_scan_words: float
    scan_seconds: float


def tf1_estimate(model: Tf1Model, fleet: FleetLike) -> Tf1Estimate:
    """State-search cost and zero-word scan wait for the generator."""
    w = model.word_bits
    strength = 1.5 * w
    cost = model.bytes_per_strength_bit * strength * 2.0 ** (strength - 1)
    rate = _rate_of(fleet)
    expected = cost / rate
    scan_words = 2.0 ** (w - 1)
    return Tf1Estimate(
        word_bits=w,
        intended_strength_bits=2 * w,
        effective_strength_bits=strength,
        state_search_cost=cost,
        fleet_rate=rate,
        expected_seconds=expected,
        worst_case_seconds=2.0 * expected,
        expected_scan_words=scan_words,
        scan_seconds=scan_words / model.scan_words_per_second,
    )
