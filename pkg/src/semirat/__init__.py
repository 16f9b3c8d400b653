"""Exact word-map distributions on small finite groups and semi-rationality tests."""

from ._accel import BACKEND
from .autos import AutSet, absolute_center, amit_vishne_check, automorphism_group, ori_condition_check
from .characters import (
    CharacterTable,
    FourierDecomp,
    character_table,
    fourier,
    frobenius_commutator_check,
    integer_character_certificate,
)
from .cyclotomic import Cyclotomic, CyclotomicInt
from .groups import (
    GroupSpec,
    GroupTable,
    build,
    center,
    conjugacy_classes,
    element_order,
    exponent,
    generator_partition,
    normal_closure,
    quotient,
    subgroup_generated,
)
from .semirational import SrVerdict, repro_paper, sr_certificates, test_word, witness_search
from .wordmap import ClassFunction, distribution, naive_distribution, quotient_identity_check
from .words import Word, canonical_form, cyclic_reduce, enumerate_words, invert, parse

__all__ = [
    "BACKEND", "AutSet", "CharacterTable", "ClassFunction", "Cyclotomic", "CyclotomicInt",
    "FourierDecomp", "GroupSpec", "GroupTable", "SrVerdict", "Word", "absolute_center",
    "amit_vishne_check", "automorphism_group", "build", "canonical_form", "center",
    "character_table", "conjugacy_classes", "cyclic_reduce", "distribution", "element_order",
    "enumerate_words", "exponent", "fourier", "frobenius_commutator_check", "generator_partition",
    "integer_character_certificate", "invert", "naive_distribution", "normal_closure",
    "ori_condition_check", "parse", "quotient", "quotient_identity_check", "repro_paper",
    "sr_certificates", "subgroup_generated", "test_word", "witness_search",
]
