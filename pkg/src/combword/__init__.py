"""Word problems decided through short combings of groups.

Only the oracle-free core is re-exported here; builders, validators and
oracles live in :mod:`combword.combing` and :mod:`combword.oracle`.
"""

from .fsa import PAD, Fsa, TwoTapeAutomaton, accepts, accepts_pair, enumerate_accepted
from .structure import Combing, StructureInvariantError
from .words import Alphabet, Word, invert_word, shortlex_compare, shortlex_successor
from .wordproblem import (
    SpaceMeter,
    SubgroupEmbedding,
    next_normal_form_enumerative,
    next_normal_form_fast,
    normal_form,
    solve_enumerative,
    solve_fast,
    solve_subgroup,
    substitute,
)

__version__ = "0.1.0"
