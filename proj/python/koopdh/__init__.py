"""Koopman lifting and spectral analysis of the Diffie-Hellman map x -> m*x mod p."""

import json

from ._koopdh import (
    ConsistencyError,
    DataError,
    DhParams,
    all_primitive_roots,
    berlekamp_massey,
    canonical_alpha,
    companion_matrix,
    dh_exchange,
    discrete_log_bruteforce,
    edmd_fit,
    eigenvalues,
    euler_criterion,
    find_primitive_root,
    index_lookup_attack,
    is_prime,
    is_primitive_root,
    lfsr_generate,
    lift_ciphertext,
    lift_complex,
    minimal_lifting_dimension,
    mod_pow,
    recover_exponent,
    shared_secret_intersection,
    simulate,
    verify_closing,
)
from . import _koopdh

__version__ = "0.1.0"


def run_experiment(config, threads=0):
    """Run an experiment config (dict or JSON text) and return the report dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_koopdh._run_experiment(text, threads))


def verify_theorem_report(first, last, all_generators=False):
    return json.loads(_koopdh._verify_theorem_report(first, last, all_generators))


def recover_report(params, c=None, e=None, parity_only=False):
    return json.loads(_koopdh._recover_report(params, c, e, parity_only))


def complexity_report(params):
    return json.loads(_koopdh._complexity_report(params))


def edmd_report(params, q, n):
    return json.loads(_koopdh._edmd_report(params, q, n))
