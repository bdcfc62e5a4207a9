"""f-pyramidal Steiner triple systems from relative difference families."""

from .abelian_group import AbelianGroup, Subgroup
from .diff_family import DifferenceFamily, SpreadType, verify_relative_df
from .diff_matrix import DifferenceMatrix, dm_build, verify_dm
from .pyramidal import (
    Construction,
    PyramidalCertificate,
    TripleSystem,
    admissible,
    admissible_pairs,
    build,
    build_df,
    construct,
    develop,
    verify_pyramidal,
)
from .sequences import LangfordSequence, find_extended_langford

__all__ = [
    "AbelianGroup",
    "Construction",
    "DifferenceFamily",
    "DifferenceMatrix",
    "LangfordSequence",
    "PyramidalCertificate",
    "SpreadType",
    "Subgroup",
    "TripleSystem",
    "admissible",
    "admissible_pairs",
    "build",
    "build_df",
    "construct",
    "develop",
    "dm_build",
    "find_extended_langford",
    "verify_dm",
    "verify_pyramidal",
    "verify_relative_df",
]
__version__ = "0.1.0"
