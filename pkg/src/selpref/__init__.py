"""Selectional preference learning over a concept taxonomy.

The package learns which semantic classes of nouns a verb (or a verb sense,
or a whole class of verbs) prefers as its subject or object, from a corpus of
sense-tagged dependency triples.  Preferences can be pruned down to their most
informative classes, exported as relation edges overlaid on the taxonomy, and
evaluated on a noun word-sense disambiguation task.
"""

from selpref.taxonomy import NOUN, VERB, Concept, Taxonomy, TaxonomyError, load_taxonomy, dump_taxonomy
from selpref.corpus import REL_OBJ, REL_SUBJ, RELATIONS, CountTable, TripleRecord, TriplesError, load_triples, tally
from selpref.estimator import Estimator
from selpref.models import Conditioner, PreferenceTable, word_to_class, sense_to_class, class_to_class
from selpref.pruner import PrunedPairSet, PrunedTable, prune_classes, prune_pairs
from selpref.integrator import RelationEdge, build_edges, export_edges, load_edges
from selpref.wsd import Decision, TrainedModel, WsdInstance, WsdReport, disambiguate, evaluate

__version__ = "0.1.0"
