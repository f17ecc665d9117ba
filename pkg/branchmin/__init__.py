"""Branching bisimulation minimisation of labelled transition systems."""
from .minimizer import equivalent, minimize, stabilize

__all__ = ["equivalent", "minimize", "stabilize"]
