"""hankelab: exact evaluation and verification of Hankel determinants of
binomial polynomial sequences, their product / almost-product formulas,
ODEs, and identity machinery."""

from .rat import Rat, binom, double_factorial, format_rat, parse_rat, rat
from .poly import InexactDivision, Poly
from .series import SeriesYX
from .sequences import (
    ALL_FAMILIES,
    F21,
    F30,
    F31,
    F32,
    F3K2M,
    FAEX,
    FSHIFT22,
    FSHIFT31,
    FamilyId,
    GfForm,
    a_poly,
    conv_poly,
    f_series,
    family_from_name,
    gf_form_equiv,
    t_series,
    tau_series,
)

__all__ = [
    "Rat",
    "binom",
    "double_factorial",
    "format_rat",
    "parse_rat",
    "rat",
    "InexactDivision",
    "Poly",
    "SeriesYX",
    "FamilyId",
    "GfForm",
    "ALL_FAMILIES",
    "F31",
    "F21",
    "F30",
    "F32",
    "F3K2M",
    "FAEX",
    "FSHIFT31",
    "FSHIFT22",
    "a_poly",
    "conv_poly",
    "f_series",
    "family_from_name",
    "gf_form_equiv",
    "t_series",
    "tau_series",
]
