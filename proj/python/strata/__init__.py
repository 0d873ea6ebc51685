"""Exact classification of plane sheaf resolutions.

Thin dict-level wrapper over the compiled core; every function takes and
returns plain Python objects mirroring the JSON file formats of the
strata-lab CLI.
"""

import json

from . import _core

__version__ = _core.__version__


def classify(morphism):
    return json.loads(_core.classify_json(json.dumps(morphism)))


def cohomology(morphism, twist):
    return json.loads(_core.cohomology_json(json.dumps(morphism), twist))


def dimension_table():
    return json.loads(_core.dimension_table_json())


def sample(label, prime=101, count=1, seed=0):
    return json.loads(_core.sample_json(label, prime, count, seed))


def construct_x6(point, prime=101, seed=0):
    return json.loads(_core.construct_x6_json(prime, json.dumps([point]), seed))


def construct_x4(points, prime=101, seed=0):
    return json.loads(_core.construct_x4_json(prime, json.dumps(points), seed))
