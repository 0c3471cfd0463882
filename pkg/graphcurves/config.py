import os

from graphcurves.exceptions import ConfigurationException


def _int_setting(name, default):
    value = os.getenv(name, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigurationException(f"{name} must be an integer, got {value!r}")


class Config:
    LOG_LEVEL = os.getenv('GRAPHCURVES_LOG_LEVEL', 'WARNING')
    """ Log level used by the command line front end. Default is WARNING. The library itself never configures handlers """

    LAYOUT_SEED = _int_setting('GRAPHCURVES_LAYOUT_SEED', '7')
    """ Seed for the force layout used when rendering tropical complexes to SVG. Default is 7 """

    SVG_HASHSALT = os.getenv('GRAPHCURVES_SVG_HASHSALT', 'graphcurves')
    """ Salt handed to matplotlib so the ids it writes into SVG files are stable between runs """

    JSON_INDENT = _int_setting('GRAPHCURVES_JSON_INDENT', '2')
    """ Indentation of JSON output. Default is 2 """

    EDGE_CONNECTIVITY_METHOD = os.getenv('GRAPHCURVES_EDGE_CONNECTIVITY', 'flow')
    """ How edge connectivity is computed. 'flow' uses networkx max-flow, 'brute' deletes every set of at most two edges. Default is flow """

    SELECTION_STATE_LIMIT = _int_setting('GRAPHCURVES_SELECTION_LIMIT', '200000')
    """ The maximum number of distinct factor selections the tropical basis check may explore before giving up. Default is 200000 """

    CENSUS_MAX_VERTICES = _int_setting('GRAPHCURVES_CENSUS_MAX_VERTICES', '12')
    """ Largest vertex count generated by the census subcommand. Default is 12 """

    def validate(self):
        """ Raise ConfigurationException if a setting holds a value the library cannot use """
        if self.EDGE_CONNECTIVITY_METHOD not in ('flow', 'brute'):
            raise ConfigurationException(f"EDGE_CONNECTIVITY_METHOD must be 'flow' or 'brute', not {self.EDGE_CONNECTIVITY_METHOD!r}")
        if self.SELECTION_STATE_LIMIT <= 0:
            raise ConfigurationException("SELECTION_STATE_LIMIT must be positive")
        if self.CENSUS_MAX_VERTICES < 4 or self.CENSUS_MAX_VERTICES % 2:
            raise ConfigurationException("CENSUS_MAX_VERTICES must be an even integer >= 4")


config = Config()
