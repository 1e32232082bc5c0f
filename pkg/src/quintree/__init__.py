"""Quartet and quintet systems of phylogenetic trees.

Check a quintet system against the thin/transitive/saturated (TTS) axioms,
rebuild the tree it comes from, or get a certificate naming the failed
axiom instance.  Five-leaf trees covering every 5-subset of their taxa can
be amalgamated into a supertree the same way.
"""
from .enumeration import count_trees, enumerate_trees
from .errors import (
    ConflictError,
    FormatError,
    IncompleteCoverageError,
    InvariantViolation,
    NewickError,
    PreconditionError,
    QuintreeError,
)
from .oracle import OracleReport, exhaustive_theorem_check, realizable_by_tree
from .pipeline import AmalgamationResult, amalgamate_trees, is_treelike, quintet_system_from_trees
from .quartets import (
    check_tts_q4,
    is_saturated_q4,
    is_thin_q4,
    is_transitive_q4,
    reconstruct_from_quartets,
)
from .quintets import (
    check_exists_iff_forall,
    check_tts,
    derived_quartet_system,
    derived_quintet_system,
    expand_overline,
    is_saturated_q5,
    is_thin_q5,
    is_transitive_q5,
    is_tts,
    lemma_violations,
)
from .rules import RULES, Certificate
from .systems import Quartet, QuartetSystem, Quintet, QuintetSystem, all_quartets, all_quintets
from .tree import (
    PhyloTree,
    Split,
    complete_cherries,
    parse_newick,
    quartet_of,
    quartet_system_of,
    quintet_of,
    quintet_system_of,
    read_newick_trees,
    restrict,
    same_topology,
    splits_of,
    to_newick,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
