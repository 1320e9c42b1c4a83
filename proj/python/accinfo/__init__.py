"""Accessible information, optimality certificates and entropy inequalities."""

import json as _json

from . import _accinfo

__all__ = [
    "pyramid_ensemble",
    "solve_pyramid",
    "tau_obtuse",
    "tau_acute",
    "verify_pyramid",
    "verify",
    "maximize_info",
    "gap",
    "sample_gap",
    "two_value_scan",
    "minimize_gap",
    "lemma_checks",
    "run_cli",
]

tau_obtuse = _accinfo.tau_obtuse
tau_acute = _accinfo.tau_acute
gap = _accinfo.gap
run_cli = _accinfo.run_cli


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def pyramid_ensemble(m, r0=None, p=None, orientation="acute"):
    return _json.loads(_accinfo.pyramid_ensemble(m, r0, p, orientation))


def solve_pyramid(m, r0=None, p=None, orientation="acute"):
    return _json.loads(_accinfo.solve_pyramid(m, r0, p, orientation))


def verify_pyramid(m, r0, samples=200000, seed=1):
    return _json.loads(_accinfo.verify_pyramid(m, r0, samples, seed))


def verify(ensemble, observable=None, samples=200000, seed=1):
    """Ensemble and observable use the JSON schema of the command-line tool."""
    obs = None if observable is None else _text(observable)
    return _json.loads(_accinfo.verify(_text(ensemble), obs, samples, seed))


def maximize_info(ensemble, restarts=32, max_iters=2000, seed=1, threads=1):
    return _json.loads(_accinfo.maximize_info(_text(ensemble), restarts, max_iters, seed, threads))


def sample_gap(id, params=None, samples=100000, seed=1):
    return _json.loads(_accinfo.sample_gap(id, params or {}, samples, seed))


def two_value_scan(id, params, grid=2000):
    return _json.loads(_accinfo.two_value_scan(id, params, grid))


def minimize_gap(id, params=None):
    return _json.loads(_accinfo.minimize_gap(id, params or {}))


def lemma_checks(m_max=12, points_per_unit=512):
    return _json.loads(_accinfo.lemma_checks(m_max, points_per_unit))
