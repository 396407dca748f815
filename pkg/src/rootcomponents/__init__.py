"""Exact combinatorics for untwisted affine Kac-Moody algebras.

Root data, weight arithmetic, truncated characters, tensor product
multiplicities, coset Virasoro scalars and harnesses that check root-component
statements on finite windows.
"""

from .charmult import MultTable, dominant_weights_below, freudenthal_mults
from .gko import SeriesKind, SeriesPrediction, central_charge, l0_scalar, predict_series, wahl_positivity
from .rootdata import (
    AffineType,
    CartanData,
    Root,
    RootClass,
    build_cartan,
    classify_root,
    exceptional_roots,
    f_set,
    lemma_root_scan,
    parse_root,
    parse_type,
    rho_beta,
)
from .tensor import (
    DecompositionReport,
    WindowError,
    additivity_check,
    racah_mult,
    tensor_mults,
    tensor_mults_oracle,
)
from .verify import (
    VerificationReport,
    classify_wahl_case,
    delta_series_report,
    hom_dim_prediction,
    verify_prv,
    verify_exceptional_table,
    verify_theorem_main,
)
from .weights import (
    Weight,
    apply_word,
    enumerate_wahl_triples,
    inv_form,
    is_s_regular,
    is_wahl_triple,
    pairing,
    parse_weight,
    reflect,
)

__version__ = "0.1.0"

__all__ = [
    "AffineType",
    "CartanData",
    "DecompositionReport",
    "MultTable",
    "Root",
    "RootClass",
    "SeriesKind",
    "SeriesPrediction",
    "VerificationReport",
    "Weight",
    "WindowError",
    "additivity_check",
    "apply_word",
    "build_cartan",
    "central_charge",
    "classify_root",
    "classify_wahl_case",
    "delta_series_report",
    "dominant_weights_below",
    "enumerate_wahl_triples",
    "exceptional_roots",
    "f_set",
    "freudenthal_mults",
    "hom_dim_prediction",
    "inv_form",
    "is_s_regular",
    "is_wahl_triple",
    "l0_scalar",
    "lemma_root_scan",
    "pairing",
    "parse_root",
    "parse_type",
    "parse_weight",
    "predict_series",
    "racah_mult",
    "reflect",
    "rho_beta",
    "tensor_mults",
    "tensor_mults_oracle",
    "verify_prv",
    "verify_exceptional_table",
    "verify_theorem_main",
    "wahl_positivity",
]
