from .hellmann import HellmannPotential
from .potential_factory import PotentialFactory
from .potential_interface import PotentialInterface
from .varshni import VarshniPotential
from .varshni_shukla import VarshniShuklaPotential

__all__ = [
    "HellmannPotential",
    "PotentialFactory",
    "PotentialInterface",
    "VarshniPotential",
    "VarshniShuklaPotential",
]
