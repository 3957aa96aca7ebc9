"""Attack cost calculus: device-priced computation, budgeted games,
closed-form break estimators, and desk-scale toy validations."""

from .cost import Budget, CostMeter, Depleted, charge, keyspace_budget, record_step
from .devices import (
    BITS_PER_TRANSISTOR,
    CatalogError,
    DeviceSpec,
    Fleet,
    ThroughputRecord,
    cost_per_bit,
    default_catalog,
    find_device,
    fleet_rate,
    i_dev_bytes,
    load_catalog,
    resource_rate,
)
from .estimators import (
    AttackEstimate,
    BruteForceModel,
    DictionaryModel,
    DictionaryStats,
    Tf1Estimate,
    Tf1Model,
    break_time,
    brute_force_cost,
    dictionary_stats,
    progress_years,
    tf1_estimate,
    triple_des_cost,
)
from .game import (
    Actor,
    EmitMove,
    GameConfig,
    GameOutcome,
    GameResult,
    GameTranscript,
    Halt,
    LocalStep,
    MachineContext,
    MachineSpec,
    Move,
    MoveClass,
    ProtocolFault,
    RunTape,
    Spawn,
    SpawnBatch,
    export_transcript,
    play,
    wins_challenge,
)
from .otp import OtpDistinguisher, OtpEnvironment, monobit_deviation, run_otp_challenge
from .toycrypto import (
    KeystreamGen,
    ScanLimitError,
    StandInPrng,
    ToyCipher,
    brute_force_search,
    scan_for_zero,
    state_search,
)

__version__ = "0.1.0"

__all__ = [
    "Actor",
    "AttackEstimate",
    "BITS_PER_TRANSISTOR",
    "Budget",
    "BruteForceModel",
    "CatalogError",
    "CostMeter",
    "Depleted",
    "DeviceSpec",
    "DictionaryModel",
    "DictionaryStats",
    "EmitMove",
    "Fleet",
    "GameConfig",
    "GameOutcome",
    "GameResult",
    "GameTranscript",
    "Halt",
    "KeystreamGen",
    "LocalStep",
    "MachineContext",
    "MachineSpec",
    "Move",
    "MoveClass",
    "OtpDistinguisher",
    "OtpEnvironment",
    "ProtocolFault",
    "RunTape",
    "ScanLimitError",
    "Spawn",
    "SpawnBatch",
    "StandInPrng",
    "Tf1Estimate",
    "Tf1Model",
    "ThroughputRecord",
    "ToyCipher",
    "break_time",
    "brute_force_cost",
    "brute_force_search",
    "charge",
    "cost_per_bit",
    "default_catalog",
    "dictionary_stats",
    "export_transcript",
    "find_device",
    "fleet_rate",
    "i_dev_bytes",
    "keyspace_budget",
    "load_catalog",
    "monobit_deviation",
    "play",
    "progress_years",
    "record_step",
    "resource_rate",
    "run_otp_challenge",
    "scan_for_zero",
    "state_search",
    "tf1_estimate",
    "triple_des_cost",
    "wins_challenge",
    "__version__",
]
