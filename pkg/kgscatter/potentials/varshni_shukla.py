from .potential_interface import PotentialInterface, _scalar


class VarshniShuklaPotential(PotentialInterface):
    """
    V(r) = (b/r²) e^{-r/ρ} with ρ = 1/β.

    The strength ``a`` does not appear in this potential and must be zero.
    """

    kind = "varshni-shukla"

    def exact(self, r):
        r, decay, _ = self._screening(r)
        return _scalar(self.b * decay / (r * r))

    def approx(self, r):
        return self.short_range(r)

    def tail(self) -> float:
        return 0.0

    def exact_tail(self) -> float:
        return 0.0

    def short_range(self, r):
        _, decay, z = self._screening(r)
        return _scalar(self.b * self.beta**2 * decay / (z * z))

    def coupling(self, g: float):
        # 1/z² 部分併入離心項，改變指標 λ
        return g * self.b, -g * self.b

    def is_degenerate(self) -> bool:
        return self.b == 0.0
