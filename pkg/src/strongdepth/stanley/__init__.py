from .decomposition import (
    StanleyDecomposition,
    StanleySpace,
    UnverifiedWitness,
    Verification,
    partition_to_decomposition,
    verify_decomposition,
)
from .explicit import okazaki_bound, paper_decomposition_C2, paper_decomposition_C3
from .poset import CharPoset, ModuleDescriptor, char_poset, ideal_module, pair_module, quotient_module
from .search import (
    Interval,
    PartitionWitness,
    SdepthResult,
    check_witness,
    decide_partition,
    sdepth_at_least,
    sdepth_exact,
)
