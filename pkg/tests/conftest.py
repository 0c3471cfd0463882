import functools
import random

import pytest

from graphcurves.config import config
from graphcurves.graph_kernel import load_bundled, planar_embed
from graphcurves.schoen import build_schoen, dual_complex, stanley_reisner_generators
from graphcurves.transformations import cubic_census
from graphcurves.tropical_geometry import build_arrangement, tropicalize_line

VALID_GRAPHS = ("k4", "prism", "sliced_prism", "cube")


@functools.lru_cache(maxsize=None)
def census_graphs(max_vertices):
    """ The census graphs up to max_vertices, flattened; cached across test modules """
    return tuple(g for graphs in cubic_census(max_vertices).values() for g in graphs)


@pytest.fixture
def k4():
    return planar_embed(load_bundled("k4"))


@pytest.fixture
def prism():
    return planar_embed(load_bundled("prism"))


@pytest.fixture
def sliced_prism():
    return planar_embed(load_bundled("sliced_prism"))


@pytest.fixture
def cube():
    return planar_embed(load_bundled("cube"))


@pytest.fixture
def embed():
    """ Embed a bundled graph by name """
    def _embed(name, outer_hint=None):
        return planar_embed(load_bundled(name), outer_hint)
    return _embed


@pytest.fixture
def arrangement():
    """ The tropical complex of a bundled graph's schön embedding """
    def _arrangement(embedding):
        return build_arrangement([tropicalize_line(line) for line in build_schoen(embedding)])
    return _arrangement


@pytest.fixture
def generators():
    def _generators(embedding):
        return stanley_reisner_generators(dual_complex(embedding))
    return _generators


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def restore_config():
    """ Undo changes a test makes to the shared config object """
    saved = dict(vars(config))
    yield config
    for key in list(vars(config)):
        if key not in saved:
            delattr(config, key)
    for key, value in saved.items():
        setattr(config, key, value)
