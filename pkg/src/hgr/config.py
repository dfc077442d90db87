from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional

HYBRID = "hybrid"
STAIRCASE_ONLY = "staircase-only"

H, V = "H", "V"


def layer_direction(layer: int) -> str:
    """Preferred wire direction: horizontal on odd layers, vertical on even."""
    return H if layer % 2 else V


@dataclass(frozen=True)
class RunConfig:
    max_layers: int = 8
    split: int = 2  # M_j: layers 1..split route through the staircases
    epe: bool = False
    mode: str = HYBRID
    pitch: int = 100
    via_penalty: Optional[float] = None  # None -> half a bin side
    net_order: str = "asc"
    grid_cap_mode: str = "replicate"
    bbox_restrict: bool = False
    max_retries: int = 8
    capacities: Optional[Path] = None
    timing: bool = False

    def __post_init__(self) -> None:
        if self.max_layers % 2:
            raise ValueError("max_layers must be even")
        if not 2 <= self.split <= self.max_layers:
            raise ValueError("split must satisfy 2 <= split <= max_layers")
        if self.pitch <= 0:
            raise ValueError("pitch must be positive")
        if self.mode not in (HYBRID, STAIRCASE_ONLY):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.net_order not in ("asc", "desc"):
            raise ValueError(f"unknown net order {self.net_order!r}")
        if self.grid_cap_mode not in ("replicate", "divide"):
            raise ValueError(f"unknown grid capacity mode {self.grid_cap_mode!r}")

    @property
    def effective_split(self) -> int:
        # staircase-only routing is the hybrid model with no over-the-block layers
        return self.max_layers if self.mode == STAIRCASE_ONLY else self.split

    @property
    def demand_increment(self) -> float:
        return 1.5 if self.epe else 1.0

    def staircase_layers(self) -> list[int]:
        return list(range(1, self.effective_split + 1))

    def grid_layers(self) -> list[int]:
        return list(range(self.effective_split + 1, self.max_layers + 1))

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["capacities"] = str(self.capacities) if self.capacities else None
        return d
