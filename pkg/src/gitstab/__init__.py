"""Exact GIT semistability toolkit: Hilbert-Mumford weights, Kempf optima,
weighted filtrations of decorated sheaves and weighted-projective homogenisation."""
from .errors import CertificateError, GitStabError, InputError, ZeroTensorError
from .lattice import (
    GL,
    SL,
    Character,
    OnePS,
    WeightedFlag,
    adapting_permutation,
    dual_flag,
    gamma_vector,
    norm_sq,
    ops_from_flag,
    pairing,
    weighted_flag_of,
)
from .tensor import DecType, SparseTensor, act, mu, mu_filtration_tensor, state_set, weight_of_term

from .kempf import instability_character, kempf_search, min_norm_point, torus_instability, torus_polystable
from .homogenize import choose_omega, nu_filtration, sign_equiv_check
from .sheafcalc import AmbientSpace, DecoratedObject, SheafData, WeightedFiltration, check_decorated, implication_report

__version__ = "0.1.0"
