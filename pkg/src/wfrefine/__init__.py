"""Generalized workflow nets, substitution, and bounded soundness checking."""

from .andor import (
    BASE_CLASSES,
    BaseClassReport,
    RefinementError,
    RefinementTree,
    classify_base,
    decompose_11tand,
    expand,
    is_and_net,
    is_free_choice,
    is_or_net,
)
from .marking import EMPTY, BagUnderflowError, Marking
from .net import InvalidWorkflowNet, Kind, NetError, PetriNet, UnknownNodeError, WorkflowNet, workflow
from .reach import DEFAULT_CAP, NotEnabledError, Reach, ReachabilityGraph, can_reach, enabled, explore, fire
from .refine import (
    PairRemovalError,
    SubstitutionError,
    place_completion,
    remove_place_transition_pair,
    remove_transition_place_pair,
    rename,
    structurally_equal,
    substitute,
    substitute_place,
    substitute_transition,
    transition_completion,
)
from .soundness import (
    DEFAULT_BOUND,
    Outcome,
    SoundnessVerdict,
    Witness,
    aggregate,
    check_k_sound,
    check_star_sound_bounded,
    check_sub_sound_bounded,
)

__version__ = "0.1.0"
