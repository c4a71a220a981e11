"""Deterministic dual-modular-redundancy safety runtime simulator."""

try:
    from ._dmrsim import Predicate, compile_rules, profile, run
except ImportError:  # extension built out-of-tree (plain CMake builds)
    from _dmrsim import Predicate, compile_rules, profile, run

__all__ = ["Predicate", "compile_rules", "profile", "run"]
