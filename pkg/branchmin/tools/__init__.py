"""LTS file I/O, preprocessing, generators and the reference minimiser."""
from .aut import parse_aut, set_internal, write_aut
from .generators import (
    gen_appendix_a,
    gen_random,
    gen_splitting_example,
    gen_tau_cycle,
)
from .oracle import oracle_minimize, signature_round
from .preprocess import (
    contract_tau_sccs,
    initial_partition,
    preprocess,
    prune_unreachable,
)


__all__ = [
    "parse_aut",
    "set_internal",
    "write_aut",
    "gen_appendix_a",
    "gen_random",
    "gen_splitting_example",
    "gen_tau_cycle",
    "oracle_minimize",
    "signature_round",
    "contract_tau_sccs",
    "initial_partition",
    "preprocess",
    "prune_unreachable",
]
