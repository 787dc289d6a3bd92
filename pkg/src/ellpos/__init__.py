"""Subgroup counting and the Mobius-type function S on finite abelian l-groups."""

from .cohen_lenstra import cohen_lenstra_measure, moment, nu, total_mass
from .counting import aut_count, chain_weight, inj_count, lambda_count, sub_count, surj_count
from .errors import DomainError, FormulaError, ResourceGuardError
from .mobius import s_chain, s_conv, theorem_temp_factor, verify_theorems
from .poset import (
    Chain,
    GroupClass,
    Interval,
    add_elementary,
    elementary_cokernel_embeddable,
    embeds,
    enumerate_chains,
    enumerate_classes,
    enumerate_interval,
    mod_power_quotient,
    parse_partition,
    rank_prefix,
)

__version__ = "0.1.0"
