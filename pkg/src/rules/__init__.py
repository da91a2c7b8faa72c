# relipoly/src/rules/__init__.py
from .rule_spec import RULE_KINDS, DamageModel, RuleSpec, accepts, parse_alpha
from .coherence import CoherenceReport, is_coherent_witness, is_monotone_exhaustive
