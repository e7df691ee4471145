import numpy as np


class PotentialInterface:
    """
    One screened potential V(r) with strengths ``a``, ``b`` and screening ``beta``.

    ``approx`` is V with every 1/r replaced by β/(1 - e^{-βr}) (and 1/r² by its
    square); the analytic channel formulas are exact for that form. All
    r-dependent methods accept scalars or numpy arrays.
    """

    kind = None

    def __init__(self, a: float, b: float, beta: float):
        self.a = float(a)
        self.b = float(b)
        self.beta = float(beta)

    def exact(self, r):
        """The literal potential."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def approx(self, r):
        """The potential under the 1/r ≈ β/(1 - e^{-βr}) substitution."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def tail(self) -> float:
        """lim_{r→∞} approx(r)."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def exact_tail(self) -> float:
        """lim_{r→∞} exact(r)."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def short_range(self, r):
        """approx(r) - tail(), written so it decays without cancellation."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def coupling(self, g: float):
        """
        Coefficients of the transformed hypergeometric equation.

        :param g: E + M (relativistic) or 2μ/ħ² (non-relativistic)
        :return: (Q, extra) where R = -l(l+1) + extra
        """
        raise NotImplementedError("This method should be implemented by subclasses.")

    def is_degenerate(self) -> bool:
        """True when the potential reduces to a constant (plus the centrifugal term)."""
        raise NotImplementedError("This method should be implemented by subclasses.")

    def _screening(self, r):
        r = np.asarray(r, dtype=np.float64)
        decay = np.exp(-self.beta * r)
        z = -np.expm1(-self.beta * r)
        return r, decay, z

    def __repr__(self):
        return f"{type(self).__name__}(a={self.a}, b={self.b}, beta={self.beta})"


def _scalar(value):
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value
