import os
from pathlib import Path
from typing import Literal, Optional

from ztriangle.resources.errors import ConfigurationError

CACHE_DIR_ENV = 'ZTRIANGLE_CACHE_DIR'


class EngineConfig:

    def __init__(self,
                 prime_ceiling: int = 2_000_000,
                 auto_extend: bool = True,
                 threads: int = 1,
                 cycle_budget: int = 2 ** 16,
                 palette_seed: int = 0x5EED,
                 verify_seed: int = 2013,
                 cell_size: int = 6,
                 geometry: Literal['offset', 'square'] = 'offset') -> None:
        # environment variables
        cache_dir = os.getenv(CACHE_DIR_ENV)
        self.cache_dir: Optional[Path] = Path(cache_dir) if cache_dir else None

        # engine limits
        self.prime_ceiling = prime_ceiling
        self.auto_extend = auto_extend
        self.threads = threads
        self.cycle_budget = cycle_budget

        # reproducibility
        self.palette_seed = palette_seed
        self.verify_seed = verify_seed

        # rendering
        self.cell_size = cell_size
        self.geometry = geometry

    @property
    def prime_cache_path(self) -> Optional[Path]:
        if self.cache_dir is None:
            return None
        return self.cache_dir / 'primes.bin'

    def set_palette_seed(self, seed: int) -> None:
        self.palette_seed = seed

    def validate(self) -> 'EngineConfig':
        """
        Checks every knob before dispatch.
        :return: the config itself
        """
        if self.prime_ceiling < 100:
            raise ConfigurationError(f"prime_ceiling must be at least 100 (received {self.prime_ceiling}).")
        if self.threads < 1:
            raise ConfigurationError(f"threads must be positive (received {self.threads}).")
        if self.cycle_budget < 1:
            raise ConfigurationError(f"cycle_budget must be positive (received {self.cycle_budget}).")
        if not 0 <= self.palette_seed < 2 ** 64:
            raise ConfigurationError(f"palette_seed must fit in 64 bits (received {self.palette_seed}).")
        if self.cell_size < 2 or self.cell_size % 2:
            raise ConfigurationError(f"cell_size must be an even number >= 2 (received {self.cell_size}).")
        if self.geometry not in ('offset', 'square'):
            raise ConfigurationError(f"geometry must be 'offset' or 'square' (received {self.geometry!r}).")
        return self
