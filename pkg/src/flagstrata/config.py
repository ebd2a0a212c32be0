"""Enumeration caps, overridable from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .exactfield import CharacteristicTwoError, FieldError, factor_prime_power


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    enumeration: int = 49  # flags, lines, SO(3) elements
    orbit: int = 13  # orbit refinement and stabilizers

    @classmethod
    def from_env(cls) -> "Caps":
        """FLAGSTRATA_CAP overrides the enumeration cap, FLAGSTRATA_ORBIT_CAP the orbit cap."""
        base = cls()
        enum = os.environ.get("FLAGSTRATA_CAP")
        orbit = os.environ.get("FLAGSTRATA_ORBIT_CAP")
        return cls(
            enumeration=int(enum) if enum else base.enumeration,
            orbit=int(orbit) if orbit else base.orbit,
        )


def check_q(q: int, cap: int) -> None:
    if q % 2 == 0:
        raise CharacteristicTwoError(f"q={q} is even; 2 must be invertible")
    factor_prime_power(q)
    if q > cap:
        raise CapExceeded(f"q={q} exceeds the enumeration cap {cap}")


def resolve_cap(cap: int | None, kind: str = "enumeration") -> int:
    if cap is not None:
        return cap
    return getattr(Caps.from_env(), kind)


__all__ = ["Caps", "CapExceeded", "check_q", "resolve_cap", "FieldError"]
