from .compiler import CompileError, CompileOptions, compile_term
from .parser import ParseError, parse, parse_with_labels
from .terms import (
    Nil,
    Par,
    Prefix,
    Rec,
    Restrict,
    Sum,
    Term,
    Var,
    free_vars,
    guardedness_check,
    is_terminated,
    substitute,
    to_text,
    unfold,
)

__all__ = [
    "CompileError", "CompileOptions", "compile_term", "ParseError", "parse", "parse_with_labels",
    "Nil", "Par", "Prefix", "Rec", "Restrict", "Sum", "Term", "Var", "free_vars",
    "guardedness_check", "is_terminated", "substitute", "to_text", "unfold",
]
