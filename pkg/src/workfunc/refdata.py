"""Published figures reproduced by the report commands.

Everything here is input data quoted from the source analysis: device
tables, benchmark throughputs, and the printed cost/time figures the tool
recomputes.  Locations name where the figure appears in that source.
"""

from __future__ import annotations

from dataclasses import dataclass

from .devices import DeviceSpec, Fleet, ThroughputRecord
from .estimators import SECONDS_PER_DAY, SECONDS_PER_MONTH, SECONDS_PER_YEAR

# --- device survey (Table 1) -----------------------------------------------

# printed Bytes/s per catalog device, in catalog order
TABLE1_PRINTED = {
    "ati-radeon-5870": 18.3e17,
    "intel-core-duo": 7.57e17,
    "virtex-5-xc5vfx70t-2-249mhz": 2.74e17,
    "virtex-5-xc5vlx30-3": 2.76e17,
    "virtex-5-xc5vfx70t-2-277mhz": 3.04e17,
}
TABLE1_LOCATION = "Table 1"
TABLE1_TOLERANCE = 0.005

# --- encryption workload pricing (Table 2) ----------------------------------

# Benchmarked throughputs feeding Table 2.  CPU figures come from cycle
# counts on one 2.6 GHz Core Duo; the per-core figures (RSA, AES) carry
# core_fraction 0.5.  FPGA figures are whole-device, the MQQ encryptor
# spanning four chips.
THROUGHPUTS = [
    ThroughputRecord("intel-core-duo", "mqq-160", "encrypt", 5.19e6),
    ThroughputRecord("intel-core-duo", "mqq-160", "decrypt", 67.0e6),
    ThroughputRecord("intel-core-duo", "rsa-1024", "encrypt", 1.39e6, core_fraction=0.5),
    ThroughputRecord("intel-core-duo", "rsa-1024", "decrypt", 56.4e3, core_fraction=0.5),
    ThroughputRecord("intel-core-duo", "aes-128", "combined", 1e9, core_fraction=0.5),
    ThroughputRecord("virtex-5-xc5vfx70t-2-277mhz", "mqq-160", "encrypt", 44.27e9),
    ThroughputRecord("virtex-5-xc5vfx70t-2-249mhz", "mqq-160", "decrypt", 399.04e6),
    ThroughputRecord("virtex-5-xc5vlx30-3", "rsa-1024", "combined", 40e3),
    ThroughputRecord("virtex-5-xc5vlx30-3", "aes-128", "combined", 4.1e9),
]


@dataclass(frozen=True)
class Table2Cell:
    row: str  # platform label
    algorithm: str
    operation: str
    device_name: str
    unit_count: int
    printed_bytes_per_bit: float
    note: str = ""


TABLE2_CELLS = [
    Table2Cell("Core Duo", "mqq-160", "encrypt", "intel-core-duo", 1, 146e9),
    Table2Cell("Core Duo", "mqq-160", "decrypt", "intel-core-duo", 1, 11.3e9),
    Table2Cell("Core Duo", "rsa-1024", "encrypt", "intel-core-duo", 1, 272e9, "per core"),
    Table2Cell("Core Duo", "rsa-1024", "decrypt", "intel-core-duo", 1, 6.71e12, "per core"),
    Table2Cell("Core Duo", "aes-128", "combined", "intel-core-duo", 1, 379e6, "per core"),
    Table2Cell("Virtex-5", "mqq-160", "encrypt", "virtex-5-xc5vfx70t-2-277mhz", 4, 27.5e6, "4 chips"),
    Table2Cell("Virtex-5", "mqq-160", "decrypt", "virtex-5-xc5vfx70t-2-249mhz", 1, 687e6),
    Table2Cell("Virtex-5", "rsa-1024", "combined", "virtex-5-xc5vlx30-3", 1, 6.9e12),
    Table2Cell("Virtex-5", "aes-128", "combined", "virtex-5-xc5vlx30-3", 1, 67.3e6),
]
TABLE2_LOCATION = "Table 2"
TABLE2_TOLERANCE = 0.015


def throughput_for(cell: Table2Cell) -> ThroughputRecord:
    for record in THROUGHPUTS:
        if (
            record.device_name == cell.device_name
            and record.algorithm == cell.algorithm
            and record.operation == cell.operation
        ):
            return record
    raise KeyError(f"no throughput record for {cell}")


# --- exhaustive search reproduction (survey narrative) -----------------------

# (key_bits, fleet units of the reference GPU, printed expectation, display)
BREAK_SUITE_LOCATION = "2.3.2"

# one Tianhe-1 cluster: printed aggregate rate
TIANHE_PRINTED_RATE = 1.3e22
TIANHE_COMPOSITION = [
    Fleet(DeviceSpec("intel-xeon-e5540", int(7.3e8), 2.5e9, 4), 4096),
    Fleet(DeviceSpec("intel-xeon-e5450", int(8.2e8), 3.0e9, 4), 1024),
    Fleet(DeviceSpec("ati-radeon-hd-4870", int(9.6e8), 650e6, 800), 5120),
]

# --- word generator table (Table 3) ------------------------------------------


@dataclass(frozen=True)
class Table3Row:
    word_bits: int
    cluster_units: int  # reference GPUs working the state search
    printed_values: float  # words scanned to the zero (2**(w-1) convention)
    printed_time: str
    expected_seconds: float  # the table's own arithmetic, unrounded


TABLE3_ROWS = [
    Table3Row(32, 1, 2.1e9, "0.5 sec", 0.443583),
    Table3Row(48, 1, 1.4e14, "4.2 months", 4.23616109 * SECONDS_PER_MONTH),
    Table3Row(56, 65536, 3.6e16, "9.4 days", 9.42104576 * SECONDS_PER_DAY),
    Table3Row(60, 65536, 5.8e17, "1.8 year", 1.76990292 * SECONDS_PER_YEAR),
    Table3Row(64, 65536, 9.2e18, "120 years", 120.825373 * SECONDS_PER_YEAR),
]
TABLE3_LOCATION = "Table 3"
TABLE3_TIME_TOLERANCE = 0.01

# Zero-word scan waits quoted alongside Table 3, at 1e9 words/s.
SCAN_WAITS = [
    (48, 40 * 3600.0, "40 hours"),
    (56, 14 * SECONDS_PER_MONTH, "14 months"),
]
SCAN_WAIT_TOLERANCE = 0.05

# --- dictionary attack figures (storage-for-work trade) ----------------------

DICTIONARY_LOCATION = "3.2"
DICTIONARY_PRINTED = {
    "dictionary_bytes": 3.1e16,
    "expected_comparisons": 50,
    "lookup_cost": 3.1e18,
    "per_key_cost": 2e20,
}
