import logging

from .hellmann import HellmannPotential
from .varshni import VarshniPotential
from .varshni_shukla import VarshniShuklaPotential

logger = logging.getLogger(__name__)

_REGISTRY = {
    VarshniPotential.kind: VarshniPotential,
    HellmannPotential.kind: HellmannPotential,
    VarshniShuklaPotential.kind: VarshniShuklaPotential,
}


class PotentialFactory:
    """
    Factory for creating potential instances.
    """

    @staticmethod
    def supported_types():
        return tuple(_REGISTRY)

    @staticmethod
    def create_potential(type, **kwargs):
        """
        Creates a potential of the specified type.

        Args:
            type (str): 'varshni', 'hellmann' or 'varshni-shukla'.
            kwargs: a, b, beta.

        Returns:
            PotentialInterface: An instance of a class that implements PotentialInterface.
        """
        key = getattr(type, "value", type)
        logger.debug(f"正在創建位能，類型: {key}，參數: {kwargs}")

        potential_cls = _REGISTRY.get(key)
        if potential_cls is None:
            supported = "、".join(f"'{name}'" for name in _REGISTRY)
            error_msg = f"不支援的位能類型: {key}。目前只支援 {supported}"
            logger.error(f"❌ {error_msg}")
            raise ValueError(error_msg)
        return potential_cls(**kwargs)
