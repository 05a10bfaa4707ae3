"""Exact arithmetic: scalars with conjugation, Laurent polynomials, binary forms, Smith form."""
from .forms import LAMBDA, MU, BinaryForm, form_gcd, forms_gcd
from .poly import LAURENT, ONE, POLY_S, POLY_T, ZERO, Laurent, Ring, mono
from .scalars import Gaussian, I, conj, gauss
from .smith import SmithForm, smith_normal_form

__all__ = [
    "BinaryForm", "form_gcd", "forms_gcd", "LAMBDA", "MU",
    "Laurent", "Ring", "mono", "ONE", "ZERO", "POLY_T", "POLY_S", "LAURENT",
    "Gaussian", "I", "conj", "gauss",
    "SmithForm", "smith_normal_form",
]
