from .potential_interface import PotentialInterface, _scalar


class VarshniPotential(PotentialInterface):
    """V(r) = a [1 - (b/r) e^{-βr}]"""

    kind = "varshni"

    def exact(self, r):
        r, decay, _ = self._screening(r)
        return _scalar(self.a * (1.0 - self.b * decay / r))

    def approx(self, r):
        return _scalar(self.tail() + self.short_range(r))

    def tail(self) -> float:
        return self.a

    def exact_tail(self) -> float:
        return self.a

    def short_range(self, r):
        _, decay, z = self._screening(r)
        return _scalar(-self.a * self.b * self.beta * decay / z)

    def coupling(self, g: float):
        return g * self.a * self.b / self.beta, 0.0

    def is_degenerate(self) -> bool:
        return self.a == 0.0 or self.b == 0.0
