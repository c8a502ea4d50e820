"""Shared model fixtures, built once per session."""
from functools import lru_cache

from quadprop.characteristic import characteristic_pair
from quadprop.hamiltonians import CATALOG, catalog_model
from quadprop.propagator import model_state_fn

MODELS = tuple(CATALOG)


@lru_cache(maxsize=None)
def model(name, **params):
    cs = catalog_model(name, params or None)
    pair = characteristic_pair(cs)
    return cs, pair, model_state_fn(cs, pair)
