"""One parameter set wired up: ambient field, characters, orbit tables, cached sums."""

from __future__ import annotations

from dataclasses import dataclass

from .char_sums import DEFAULT_ENUM_CAP, GaussSumValue, JacobiSumValue, orbit_gauss, orbit_jacobi
from .characters import CharacterSystem
from .cyclo_ring import CycloInt
from .errors import CapExceeded, ValidationError
from .ff_core import DEFAULT_AMBIENT_CAP, FiniteField
from .orbit_space import NOrbit, Orbit, OrbitSpace, TwistParams


@dataclass(frozen=True)
class Choices:
    """The non-canonical choices every character value depends on."""

    generator_rank: int = 0
    zeta_p_power: int = 1


class TwistContext:
    def __init__(self, params: TwistParams, choices: Choices = Choices(), *,
                 ambient_cap: int = DEFAULT_AMBIENT_CAP, enum_cap: int = DEFAULT_ENUM_CAP):
        if ambient_cap <= 0 or enum_cap <= 0:
            raise ValidationError("caps must be positive")
        self.params = params
        self.choices = choices
        self.enum_cap = enum_cap
        M = params.ambient_degree()
        size = params.p**M
        if size > ambient_cap:
            raise CapExceeded(f"ambient field F_{params.p}^{M}", size, ambient_cap)
        if size > enum_cap:
            raise CapExceeded("orbit field enumeration", size, enum_cap)
        self.ambient = FiniteField(params.p, M, generator_rank=choices.generator_rank,
                                   cap=ambient_cap, table_cap=enum_cap)
        self.system = CharacterSystem(self.ambient, choices.zeta_p_power)
        self.ring = self.system.ring
        self.space = OrbitSpace(params, self.ambient)
        self._gauss: dict[tuple, GaussSumValue] = {}
        self._jacobi: dict[tuple, JacobiSumValue] = {}

    def orbits(self, n: int = 6) -> list[Orbit]:
        return self.space.orbits(n)

    def gauss(self, o: Orbit) -> CycloInt:
        """G(o), cached per orbit."""
        if o.key not in self._gauss:
            self._gauss[o.key] = orbit_gauss(self.system, self.params, o, self.enum_cap)
        return self._gauss[o.key].value

    def jacobi(self, no: NOrbit, i: int | None = None) -> CycloInt:
        key = (no.elements, no.i if i is None else i)
        if key not in self._jacobi:
            self._jacobi[key] = orbit_jacobi(self.system, self.params, no, i, self.enum_cap)
        return self._jacobi[key].value
