"""Factor complexity, spectrum posets, and negligible patterns of
right-infinite words, with a verified corpus of classical examples."""

from .checks import (
    CRITERIA,
    VerificationReport,
    build_bundle,
    collect_artifacts,
    run_verification,
)
from .corpus import Corpus, CorpusError, WordEntry, load_corpus
from .factors import CapExceeded, FactorIndex
from .radical import (
    ComplementSet,
    RadicalVerdict,
    classify_radical,
    radical_complement,
    saturated_assembly_bound,
)
from .spectrum import (
    BoundsReport,
    Poset,
    RecurrenceFlags,
    SpectrumClass,
    bounds_report,
    build_poset,
    class_from_index,
    class_from_root,
    class_leq,
    longest_chain,
    minimal_and_maximal,
    periodic_spectrum,
    poset_to_dot,
    proper_union_check,
    recurrence_flags,
)
from .topology import (
    ClosedSpec,
    axiom_check,
    closed_set,
    closure_and_points,
    principal_open,
    up_set,
)
from .words import (
    Horizon,
    PrecisionError,
    SpecError,
    generate_prefix,
    horizon_for,
    parse_word_spec,
    validate_spec,
)

__version__ = "0.1.0"

__all__ = [
    "CRITERIA",
    "CapExceeded",
    "ClosedSpec",
    "ComplementSet",
    "Corpus",
    "CorpusError",
    "BoundsReport",
    "FactorIndex",
    "Horizon",
    "Poset",
    "PrecisionError",
    "RadicalVerdict",
    "RecurrenceFlags",
    "SpecError",
    "SpectrumClass",
    "VerificationReport",
    "WordEntry",
    "axiom_check",
    "bounds_report",
    "build_bundle",
    "build_poset",
    "class_from_index",
    "class_from_root",
    "class_leq",
    "classify_radical",
    "closed_set",
    "closure_and_points",
    "collect_artifacts",
    "generate_prefix",
    "horizon_for",
    "load_corpus",
    "longest_chain",
    "minimal_and_maximal",
    "parse_word_spec",
    "periodic_spectrum",
    "poset_to_dot",
    "principal_open",
    "proper_union_check",
    "radical_complement",
    "recurrence_flags",
    "run_verification",
    "saturated_assembly_bound",
    "up_set",
    "validate_spec",
    "__version__",
]
