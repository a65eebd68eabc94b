"""C-subset frontend: lexer, parser, AST and fidelity printer."""
from . import ast
from .lexer import LexError, Span, Token, TokenKind, TokenStream, lex
from .parser import ParseError, ParseFailure, parse, parse_partial, parse_source
from .printer import format_node, print_unit
from .source import Edit, RewriteConflict, SourceUnit, Stage, apply_edits

__all__ = [
    "ast", "LexError", "Span", "Token", "TokenKind", "TokenStream", "lex",
    "ParseError", "ParseFailure", "parse", "parse_partial", "parse_source",
    "format_node", "print_unit", "Edit", "RewriteConflict", "SourceUnit", "Stage",
    "apply_edits",
]
