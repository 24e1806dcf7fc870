from spf_deconv.model.dictionary import Dictionary, Peaked, gen_dictionary, gen_sparse_signal
from spf_deconv.model.flatness import FlatnessSummary, flatness_stats
from spf_deconv.model.rng import keyed_rng, make_rng
from spf_deconv.model.signals import (
    FlatnessLevel,
    ModelParams,
    SparseVec,
    densify,
    dft,
    idft,
    in_flatness_cone,
    sparsify,
    spectral_flatness,
)

__all__ = [
    "Dictionary",
    "FlatnessLevel",
    "FlatnessSummary",
    "ModelParams",
    "Peaked",
    "SparseVec",
    "densify",
    "dft",
    "flatness_stats",
    "gen_dictionary",
    "gen_sparse_signal",
    "idft",
    "in_flatness_cone",
    "keyed_rng",
    "make_rng",
    "sparsify",
    "spectral_flatness",
]
