"""Exact construction and verification of cyclotomic p-adic L-functions of
modular forms, including the extremal measure attached to a double U_p root."""

__version__ = "0.1.0"

from .padic import (PAdicNumber, QuadraticField, QuadraticExtElement, half_power_field,
                    iwasawa_log, padic_exp, teichmuller, valuation)
from .cyclotomic import (CycloElement, DirichletCharacter, LocallyConstantFn, UnitSubgroup,
                         characters, gauss_sum, integral_additive, integral_additive_closed,
                         integral_mult_char, integral_mult_char_closed, primitive_characters,
                         psi_value, quadratic_character)
from .modsym import (ManinSymbolSpace, ModularSymbol, ResourceBoundError,
                     hecke_polynomial_roots, p_stabilize)
from .kirillov import (EXTREMAL, PRINCIPAL, SPECIAL, KirillovFunction, LocalCharacter,
                       PsiTemplate, euler_factor_closed, euler_factor_oracle, verify_keyprop)
from .measures import (EXTENDED, FROM_SYMBOL, SYNTHETIC_EXTREMAL, ExtremalSeed,
                       InsufficientPrecisionError, MomentTable, admissibility_check,
                       amice_velu_extend, extend_table, extremal_measure, integrate_character,
                       jordan_pair_check, lp_eval, measure_from_symbol,
                       synthetic_extremal_seed)

__all__ = [
    "PAdicNumber",
    "QuadraticField",
    "QuadraticExtElement",
    "half_power_field",
    "iwasawa_log",
    "padic_exp",
    "teichmuller",
    "valuation",
    "CycloElement",
    "DirichletCharacter",
    "LocallyConstantFn",
    "UnitSubgroup",
    "characters",
    "gauss_sum",
    "integral_additive",
    "integral_additive_closed",
    "integral_mult_char",
    "integral_mult_char_closed",
    "primitive_characters",
    "psi_value",
    "quadratic_character",
    "ManinSymbolSpace",
    "ModularSymbol",
    "ResourceBoundError",
    "hecke_polynomial_roots",
    "p_stabilize",
    "EXTREMAL",
    "PRINCIPAL",
    "SPECIAL",
    "KirillovFunction",
    "LocalCharacter",
    "PsiTemplate",
    "euler_factor_closed",
    "euler_factor_oracle",
    "verify_keyprop",
    "EXTENDED",
    "FROM_SYMBOL",
    "SYNTHETIC_EXTREMAL",
    "ExtremalSeed",
    "InsufficientPrecisionError",
    "MomentTable",
    "admissibility_check",
    "amice_velu_extend",
    "extend_table",
    "extremal_measure",
    "integrate_character",
    "jordan_pair_check",
    "lp_eval",
    "measure_from_symbol",
    "synthetic_extremal_seed",
]
