"""Device model: a processor priced as frozen information times a clock.

A device is reduced to its transistor count.  Every transistor carries one
byte of description (one state bit plus seven bits locating it in the
wiring), so a device holding T transistors contributes T bytes per clock
tick to the running cost of whatever it computes.  The only two numbers
that matter for pricing are therefore the transistor count and the clock.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, TextIO, Union

BITS_PER_TRANSISTOR = 8.0

CATALOG_HEADER = "name,transistor_count,clock_hz,component_count,bits_per_transistor"


def normalize_name(name: str) -> str:
    """Canonical device name: lowercase, whitespace runs become hyphens."""
    return "-".join(name.strip().lower().split())


@dataclass(frozen=True)
class DeviceSpec:
    """One device model.

    component_count is informational (cores, shader processors, slices);
    the cost model reads only transistor_count, bits_per_transistor and
    clock_hz.
    """

    name: str
    transistor_count: int
    clock_hz: float
    component_count: int = 1
    bits_per_transistor: float = BITS_PER_TRANSISTOR

    def __post_init__(self):
        if self.transistor_count <= 0:
            raise ValueError(f"{self.name}: transistor_count must be positive")
        if self.clock_hz <= 0:
            raise ValueError(f"{self.name}: clock_hz must be positive")
        if self.component_count <= 0:
            raise ValueError(f"{self.name}: component_count must be positive")
        if self.bits_per_transistor <= 0:
            raise ValueError(f"{self.name}: bits_per_transistor must be positive")


@dataclass(frozen=True)
class Fleet:
    """unit_count copies of one device running in parallel."""

    device: DeviceSpec
    unit_count: int = 1

    def __post_init__(self):
        if self.unit_count < 1:
            raise ValueError("unit_count must be at least 1")


@dataclass(frozen=True)
class ThroughputRecord:
    """Published throughput of an algorithm on a named device.

    core_fraction scales the device rate when the figure was measured on a
    fraction of the device (0.5 for one core of a dual-core part).
    """

    device_name: str
    algorithm: str
    operation: str  # "encrypt" | "decrypt" | "combined"
    throughput_bits_per_s: float
    core_fraction: float = 1.0

    def __post_init__(self):
        if self.throughput_bits_per_s <= 0:
            raise ValueError("throughput must be positive")
        if not 0 < self.core_fraction <= 1:
            raise ValueError("core_fraction must be in (0, 1]")


def i_dev_bytes(spec: DeviceSpec) -> float:
    """Description size of the device in bytes."""
    return spec.transistor_count * spec.bits_per_transistor / 8.0


def resource_rate(spec: DeviceSpec) -> float:
    """Bytes of computation the device prices per second: i_dev * clock."""
    return i_dev_bytes(spec) * spec.clock_hz


def fleet_rate(fleet: Union[Fleet, Iterable[Fleet]]) -> float:
    """Aggregate rate of a fleet, or of a list of fleets (rates sum)."""
    if isinstance(fleet, Fleet):
        return fleet.unit_count * resource_rate(fleet.device)
    total = 0.0
    for part in fleet:
        total += part.unit_count * resource_rate(part.device)
    return total


def cost_per_bit(device: Union[DeviceSpec, Fleet], record: ThroughputRecord) -> float:
    """Bytes charged per bit of throughput for `record` on `device`.

    The device name must match the record; a fleet prices multi-chip
    figures with the summed rate.
    """
    if isinstance(device, Fleet):
        spec = device.device
        rate = fleet_rate(device)
    else:
        spec = device
        rate = resource_rate(device)
    if normalize_name(spec.name) != normalize_name(record.device_name):
        raise ValueError(
            f"device {spec.name!r} does not match record for {record.device_name!r}"
        )
    return record.core_fraction * rate / record.throughput_bits_per_s


class CatalogError(ValueError):
    """Malformed catalog input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_CATALOG_FIELDS = CATALOG_HEADER.split(",")


def _parse_count(text: str, line_no: int, column: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise CatalogError(line_no, f"column {column!r}: not a number: {text!r}") from None
    if value != int(value):
        raise CatalogError(line_no, f"column {column!r}: not an integer: {text!r}")
    return int(value)


def load_catalog(source: Union[str, TextIO]) -> list[DeviceSpec]:
    """Parse a device catalog CSV.

    Header must be exactly CATALOG_HEADER.  Lines starting with '#' are
    comments.  Scientific notation is accepted for the numeric columns.
    component_count and bits_per_transistor may be left empty (defaults 1
    and 8).  Duplicate normalized names are rejected.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    specs: list[DeviceSpec] = []
    seen: set[str] = set()
    header_seen = False
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != CATALOG_HEADER:
                raise CatalogError(line_no, f"expected header {CATALOG_HEADER!r}")
            header_seen = True
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(_CATALOG_FIELDS):
            raise CatalogError(
                line_no, f"expected {len(_CATALOG_FIELDS)} columns, got {len(cells)}"
            )
        name = normalize_name(cells[0])
        if not name:
            raise CatalogError(line_no, "column 'name': empty")
        if name in seen:
            raise CatalogError(line_no, f"duplicate device name {name!r}")
        transistors = _parse_count(cells[1], line_no, "transistor_count")
        try:
            clock = float(cells[2])
        except ValueError:
            raise CatalogError(
                line_no, f"column 'clock_hz': not a number: {cells[2]!r}"
            ) from None
        components = _parse_count(cells[3], line_no, "component_count") if cells[3] else 1
        bits = float(cells[4]) if cells[4] else BITS_PER_TRANSISTOR
        try:
            spec = DeviceSpec(
                name=name,
                transistor_count=transistors,
                clock_hz=clock,
                component_count=components,
                bits_per_transistor=bits,
            )
        except ValueError as exc:
            raise CatalogError(line_no, f"invariant violation: {exc}") from None
        seen.add(name)
        specs.append(spec)
    if not header_seen:
        raise CatalogError(1, "missing header")
    return specs


# Published survey devices.  Clocks are the integer-MHz figures of the
# source table; the two XC5VFX70T-2 entries are the same part benchmarked
# at two clocks, so they carry the clock in the name.
DEFAULT_CATALOG_CSV = """\
name,transistor_count,clock_hz,component_count,bits_per_transistor
ati-radeon-5870,2.15e9,850e6,1712,8
intel-core-duo,291e6,2.6e9,2,8
virtex-5-xc5vfx70t-2-249mhz,1.1e9,249e6,11200,8
virtex-5-xc5vlx30-3,1.1e9,251e6,4800,8
virtex-5-xc5vfx70t-2-277mhz,1.1e9,277e6,11200,8
"""


def default_catalog() -> list[DeviceSpec]:
    return load_catalog(DEFAULT_CATALOG_CSV)


def catalog_index(specs: Iterable[DeviceSpec]) -> dict[str, DeviceSpec]:
    return {spec.name: spec for spec in specs}


def find_device(name: str, specs: Iterable[DeviceSpec]) -> DeviceSpec:
    wanted = normalize_name(name)
    for spec in specs:
        if spec.name == wanted:
            return spec
    raise KeyError(f"unknown device {name!r}")
