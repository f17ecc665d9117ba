import logging

from branchmin.entities.lts import Lts
from branchmin.entities.report import LtsStatistics
from branchmin.minimizer import minimize

logger = logging.getLogger(__name__)


def lts_statistics(lts: Lts, reduce: bool = False) -> LtsStatistics:
    """
    Size figures of an LTS.

    Args:
        lts (Lts): The system to describe.
        reduce (bool): Also minimise it and report the quotient's size.

    Returns:
        LtsStatistics: states, transitions, tau transitions and the number
        of distinct actions (all internal labels count as one).
    """
    keys = set(lts.actions.action_keys())
    stats = LtsStatistics(
        n=lts.n, m=lts.m, m_tau=lts.tau_count(), action_count=len(keys)
    )
    if reduce:
        quotient = minimize(lts).quotient
        stats.min_n, stats.min_m = quotient.n, quotient.m
    return stats
