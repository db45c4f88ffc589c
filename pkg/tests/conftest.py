import io

import pytest

from selpref.corpus import load_triples, tally
from selpref.estimator import Estimator
from selpref.taxonomy import load_taxonomy

# Shared toy fixture: a tiny food/person noun hierarchy ("chicken" is ambiguous
# between the food and the coward reading) and an ingestion verb hierarchy.
TOY_TAXONOMY = """\
n_entity\tnoun\t\t
n_food\tnoun\tn_entity\t
n_person\tnoun\tn_entity\t
n_apple\tnoun\tn_food\tapple#1
n_chicken_food\tnoun\tn_food\tchicken#1
n_wimp\tnoun\tn_person\tchicken#3,wimp#1
v_consume\tverb\t\tconsume#1
v_eat\tverb\tv_consume\teat#1
v_devour\tverb\tv_consume\tdevour#1
"""

TOY_TRIPLES = """\
eat\tv_eat\tobj\tapple\tn_apple
eat\tv_eat\tobj\tapple\tn_apple
eat\tv_eat\tobj\tapple\tn_apple
eat\tv_eat\tobj\tchicken\tn_chicken_food
devour\tv_devour\tobj\tchicken\tn_chicken_food
"""


def toy_taxonomy():
    return load_taxonomy(io.StringIO(TOY_TAXONOMY))


@pytest.fixture(name="toy_taxonomy")
def toy_taxonomy_fixture():
    return toy_taxonomy()


@pytest.fixture
def toy_records(toy_taxonomy):
    return load_triples(io.StringIO(TOY_TRIPLES), toy_taxonomy)


@pytest.fixture
def toy_counts(toy_records):
    return tally(toy_records)


@pytest.fixture
def toy_estimator(toy_taxonomy, toy_counts):
    return Estimator(toy_taxonomy, toy_counts)
