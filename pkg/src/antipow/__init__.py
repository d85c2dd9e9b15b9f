"""Anti-powers in binary uniform-morphic words: generation, classification,
detection (the gamma function), and the constructive witness builders."""

from ._kernels import get_backend, set_backend
from .antipower import AntiPowerWitness, gamma, is_k_anti_power, verify_witness
from .construct import (
    FiveAntiPowerResult,
    FrameParameters,
    OccurrencePattern,
    RecurrenceConstant,
    SpacedFactor,
    build_five_anti_power,
    build_morphic_anti_power,
    default_gamma_cap,
    find_occurrence_pattern,
    find_spaced_factor,
    five_anti_power,
    recurrence_constant,
)
from .errors import (
    AntipowError,
    CapExceededError,
    HorizonExceededError,
    TheoremViolationError,
    UnsupportedClassError,
    UsageError,
)
from .morphism import (
    Classification,
    FactorSet,
    MorphicStream,
    UniformMorphism,
    apply,
    classify,
    factor_set,
    fixed_point,
    letter_at,
    parse_morphism,
    power,
)
from .verify import (
    ScanReport,
    check_corollary7,
    check_lemma5,
    check_prop3_battery,
    gamma_ratio_table,
)
from .word import (
    DEFAULT_HORIZON,
    FiniteWord,
    OccurrenceList,
    WordStream,
    eventually_periodic_probe,
    factor,
    find_occurrence,
    is_unbordered,
    occurrences,
    swap_letters,
)

__version__ = "0.1.0"

__all__ = [
    "AntiPowerWitness",
    "AntipowError",
    "CapExceededError",
    "Classification",
    "DEFAULT_HORIZON",
    "FactorSet",
    "FiniteWord",
    "FiveAntiPowerResult",
    "FrameParameters",
    "HorizonExceededError",
    "MorphicStream",
    "OccurrenceList",
    "OccurrencePattern",
    "RecurrenceConstant",
    "ScanReport",
    "SpacedFactor",
    "TheoremViolationError",
    "UniformMorphism",
    "UnsupportedClassError",
    "UsageError",
    "WordStream",
    "apply",
    "build_five_anti_power",
    "build_morphic_anti_power",
    "check_corollary7",
    "check_lemma5",
    "check_prop3_battery",
    "classify",
    "default_gamma_cap",
    "eventually_periodic_probe",
    "factor",
    "factor_set",
    "find_occurrence",
    "find_occurrence_pattern",
    "find_spaced_factor",
    "five_anti_power",
    "fixed_point",
    "gamma",
    "gamma_ratio_table",
    "get_backend",
    "is_k_anti_power",
    "is_unbordered",
    "letter_at",
    "occurrences",
    "parse_morphism",
    "power",
    "recurrence_constant",
    "set_backend",
    "swap_letters",
    "verify_witness",
]
