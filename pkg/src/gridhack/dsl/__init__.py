"""des-file language: lexer, parser, AST, printer."""

from . import ast
from .lexer import Token, TokType, tokenize
from .parser import parse_document
from .printer import to_des

__all__ = ["ast", "Token", "TokType", "tokenize", "parse_document", "to_des"]
