"""Size caps, overridable through environment variables.

==========================  ===============================  =======
variable                    meaning                          default
==========================  ===============================  =======
EWENSWALK_PARTITION_MAX     largest n for full enumeration   60
EWENSWALK_TABLE_MAX         largest n for character tables   25
EWENSWALK_EXACT_MAX         largest n for exact eigenvalues  20
EWENSWALK_RATIONAL_MAX      largest n for rational TV        12
EWENSWALK_ORACLE_MAX        largest n for brute force        7
==========================  ===============================  =======
"""

from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Caps:
    partition_max: int = 60
    character_table_max: int = 25
    exact_mode_max: int = 20
    rational_tv_max: int = 12
    oracle_max: int = 7

    @classmethod
    def from_env(cls) -> "Caps":
        return cls(
            partition_max=_env_int("EWENSWALK_PARTITION_MAX", cls.partition_max),
            character_table_max=_env_int("EWENSWALK_TABLE_MAX", cls.character_table_max),
            exact_mode_max=_env_int("EWENSWALK_EXACT_MAX", cls.exact_mode_max),
            rational_tv_max=_env_int("EWENSWALK_RATIONAL_MAX", cls.rational_tv_max),
            oracle_max=_env_int("EWENSWALK_ORACLE_MAX", cls.oracle_max),
        )


def caps() -> Caps:
    """Current caps; re-read from the environment on every call."""
    return Caps.from_env()
