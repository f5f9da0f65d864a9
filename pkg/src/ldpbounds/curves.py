"""Sampled bound curves, the unit of CSV/JSON output."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Tuple

from .errors import ValidationError


@dataclass(frozen=True)
class BoundCurve:
    """A labelled (x, y) series with the parameters that produced it."""

    label: str
    params: Mapping[str, float]
    points: Tuple[Tuple[float, float], ...] = field(default=())

    def __init__(
        self,
        label: str,
        params: Mapping[str, float],
        points: Sequence[Tuple[float, float]],
    ) -> None:
        pts = tuple((float(x), float(y)) for x, y in points)
        for (x1, _), (x2, _) in zip(pts, pts[1:]):
            if not x2 > x1:
                raise ValidationError(f"curve x values must be strictly increasing: {x1!r} !< {x2!r}")
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValidationError(f"curve points must be finite, got ({x!r}, {y!r})")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "params", dict(params))
        object.__setattr__(self, "points", pts)

    @property
    def xs(self) -> Tuple[float, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def ys(self) -> Tuple[float, ...]:
        return tuple(y for _, y in self.points)
