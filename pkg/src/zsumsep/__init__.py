"""Zero-sum sequences and separating Noether numbers of finite abelian groups."""

from .config import Budgets, Config
from .errors import BudgetExceeded, ParseError, PreconditionViolated, Unreachable, ZsumError
from .group import AbelianGroup, GroupElement, dstar, parse_group, render_group
from .kernels import BACKEND
from .seqmonoid import SeqVec, Support, davenport_brute, enumerate_atoms, is_atom
from .septest import beta_sep_brute, is_separating_atom
from .theorems import beta_sep_formula, verify_catalog

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "GroupElement", "parse_group", "render_group", "dstar",
    "Support", "SeqVec", "enumerate_atoms", "is_atom", "davenport_brute",
    "beta_sep_brute", "is_separating_atom", "beta_sep_formula", "verify_catalog",
    "Budgets", "Config", "BACKEND",
    "ZsumError", "ParseError", "BudgetExceeded", "Unreachable", "PreconditionViolated",
]
