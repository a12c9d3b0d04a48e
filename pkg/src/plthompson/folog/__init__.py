"""First-order formulas, finite structures and interpretations between them."""

from .interpretation import (InterpretationData, Template, admissibility_failure, admissible,
                             compose_interpretations, instantiate_parameters, quotient,
                             quotient_with_classes, reduce, reduce_in_two_steps, translate)
from .relational import relationalize, relationalize_sentence, relationalize_structure
from .structures import (EvaluationError, FiniteStructure, PoolStructure, Signature, evaluate,
                         format_structure, parse_structure, satisfying)
from .syntax import (And, Elem, Eq, Exists, Forall, Formula, FormulaSyntaxError, Func, Iff,
                     Implies, Not, Or, Rel, Truth, Var, alpha_equivalent, free_vars, parse,
                     parse_term, render, substitute)

__all__ = [
    "And", "Elem", "Eq", "EvaluationError", "Exists", "FiniteStructure", "Forall", "Formula",
    "FormulaSyntaxError", "Func", "Iff", "Implies", "InterpretationData", "Not", "Or",
    "PoolStructure", "Rel", "Signature", "Template", "Truth", "Var", "admissibility_failure",
    "admissible", "alpha_equivalent", "compose_interpretations", "evaluate", "format_structure",
    "free_vars", "instantiate_parameters", "parse", "parse_structure", "parse_term", "quotient",
    "quotient_with_classes", "reduce", "reduce_in_two_steps", "relationalize", "relationalize_sentence",
    "relationalize_structure", "render", "satisfying", "substitute", "translate",
]
