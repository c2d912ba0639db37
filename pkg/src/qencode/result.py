from __future__ import annotations

import json
from dataclasses import dataclass, field

from .circuit import Circuit
from .statevec import StateVector


@dataclass(frozen=True)
class EncodingResult:
    """An encoded state plus the metadata decoders need.

    ``meta`` always carries ``"method"``; image encoders add the pixel grid
    shape and bit depth, sum types the variant layouts.
    """

    state: StateVector
    circuit: Circuit | None = None
    meta: dict = field(default_factory=dict)

    @property
    def layout(self):
        return self.state.layout

    def to_dict(self) -> dict:
        d = self.state.to_dict()
        d["layout"] = dict(self.meta)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "EncodingResult":
        return cls(StateVector.from_dict(data), None, dict(data.get("layout", {})))

    @classmethod
    def from_json(cls, text: str) -> "EncodingResult":
        return cls.from_dict(json.loads(text))
