"""Near-synonym lexical choice over an interlingual representation."""

from .analysis import AnalysisRequest, analyze
from .choice import (ChoiceResult, ScoreBreakdown, Weights, activate, choose, explain,
                     load_weights, satisfaction, score_entry)
from .errors import (AnalysisError, LexChoiceError, NoActivationError, ParseError, Report,
                     ValidationError)
from .fixtures import fixture_dir, fixture_path
from .graph import Atom, ConceptInstance, InstanceGraph, Ref, TNode, Var, unify, validate_graph
from .ir import IR, AttitudeExpr, Possibility, StylePref, parse_ir, serialize_ir, validate_ir
from .lexicon import (Cluster, Distinction, Entry, Lexicon, clusters_for_lemma, load_lexicon,
                      parse_lexicon, serialize_lexicon, validate_lexicon)
from .ontology import Ontology, load_ontology, parse_ontology, subsumes, validate_ontology

__version__ = "0.1.0"
