"""Pushdown Shannon graphs: languages, structural hypotheses and separation."""

from .builders import (
    asymmetric_pair,
    build_beal_heller,
    build_combined,
    build_dyck,
    build_example_84,
    build_markov_dyck,
    build_product,
    clone_controls,
    duplicate_labels,
    golden_mean_graph,
)
from .engine import (
    PdaState,
    acceptance_set,
    count_words,
    directly_accessible_controls,
    enumerate_language,
    member,
    pop_summaries,
    step,
    strongly_connected,
)
from .graph import DirectedGraph, Edge, LabelledGraph, export_dot, trim_biinfinite
from .model import AutomatonSpec, SpecError, load_spec, save_spec, validate
from .recode import export_finite_type_dyck, resolving_radius
from .semigroup import semigroup_admissible, semigroup_reduce
from .separation import brute_force_separable, decide_forward_separated
from .sofic import build_y_presentation, test_projection_hypothesis, visibility_constants

__version__ = "0.1.0"
