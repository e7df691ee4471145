from .potential_interface import PotentialInterface, _scalar


class HellmannPotential(PotentialInterface):
    """V(r) = -a/r + (b/r) e^{-βr}, Coulomb plus Yukawa."""

    kind = "hellmann"

    def exact(self, r):
        r, decay, _ = self._screening(r)
        return _scalar((-self.a + self.b * decay) / r)

    def approx(self, r):
        _, decay, z = self._screening(r)
        return _scalar((-self.a + self.b * decay) * self.beta / z)

    def tail(self) -> float:
        # Coulomb 項近似後留下常數 -aβ
        return -self.a * self.beta

    def exact_tail(self) -> float:
        return 0.0

    def short_range(self, r):
        _, decay, z = self._screening(r)
        return _scalar((self.b - self.a) * self.beta * decay / z)

    def coupling(self, g: float):
        return g * (self.a - self.b) / self.beta, 0.0

    def is_degenerate(self) -> bool:
        return self.a == 0.0 and self.b == 0.0
