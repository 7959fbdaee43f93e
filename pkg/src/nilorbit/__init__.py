"""Maximum nilpotent Jordan types commuting with a nilpotent matrix."""

from .oblak import candidates, hat_of, omega1, q_all_choices, q_of, select_step
from .partitions import Partition, dominance_compare, parse_partition

__all__ = [
    "Partition",
    "candidates",
    "dominance_compare",
    "hat_of",
    "omega1",
    "parse_partition",
    "q_all_choices",
    "q_of",
    "select_step",
]
