"""Shipped abstract domains."""

from .interval import ALL_Z, INTERVALS, Interval, IntervalDomain, above, below, between
from .parity import EVEN, ODD, PTOP, Parity, ParityDomain

DOMAINS = {"parity": ParityDomain, "interval": IntervalDomain}


def make_domain(name: str, widen_iters=None, approx_budget=None):
    """Instantiate a shipped domain, optionally overriding its iteration counts."""
    cls = DOMAINS[name]
    kwargs = {}
    if widen_iters is not None:
        kwargs["widen_iters"] = widen_iters
    if approx_budget is not None:
        kwargs["approx_budget"] = approx_budget
    return cls(**kwargs)


__all__ = [
    "ALL_Z", "DOMAINS", "EVEN", "INTERVALS", "Interval", "IntervalDomain", "ODD", "PTOP",
    "Parity", "ParityDomain", "above", "below", "between", "make_domain",
]
