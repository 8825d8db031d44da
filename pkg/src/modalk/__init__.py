"""Parameterized satisfiability for the modal logic K."""

from .formula import (
    BOT, TOP, And, Bot, Box, Dia, Formula, Not, Or, ParseError, Top, Var,
    desugar_diamonds, parse, print_formula, to_nnf, variables,
)
from .kernels import BACKEND
from .kripke import KripkeModel, load_model, model_check, save_model
from .measures import (
    MeasureReport, box_dimension, diamond_dimension, f_v, level_sets,
    measure_all, modal_width, modality_depth, prop_translate, tow,
)
from .solvers import (
    Budget, SatResult, Verdict, sat_brute, sat_depth, sat_diamond, sat_width,
    solve, valid,
)

__version__ = "0.1.0"
