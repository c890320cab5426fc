"""Exact verification of nonabelian embedding tensors between Lie triple systems."""

from .actions import ActionTensor, hemisemidirect, verify_coherent_action, verify_representation
from .algebras import (
    BiBracket,
    LieAlgebra,
    LieTripleSystem,
    ThreeLeibnizAlgebra,
    TriBracket,
    verify_3leibniz,
    verify_lie,
    verify_lts,
)
from .embedding import Net, NetContext, descendent, graph_subalgebra_check, net_check
from .exact import InputError, Matrix
from .verdict import InternalConsistencyError, Verdict, VerificationError

__version__ = "0.1.0"

__all__ = [
    "ActionTensor",
    "BiBracket",
    "InputError",
    "InternalConsistencyError",
    "LieAlgebra",
    "LieTripleSystem",
    "Matrix",
    "Net",
    "NetContext",
    "ThreeLeibnizAlgebra",
    "TriBracket",
    "Verdict",
    "VerificationError",
    "descendent",
    "graph_subalgebra_check",
    "hemisemidirect",
    "net_check",
    "verify_3leibniz",
    "verify_coherent_action",
    "verify_lie",
    "verify_lts",
    "verify_representation",
]
