"""
Concrete grammar of .pig models and well-formedness checking.

    free(c, d) restr(A)
    *[ priv(a) bind(x)  c!<a>.d?(x).[a=x].tau.0 ]   # comment

Names carry no sigils in sources; their kind comes from the declaring
list.  Keywords (free, restr, priv, bind, tau, sum, par) are reserved.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Set

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from pigraph.errors import ParseError, WellFormednessError
from pigraph.syntax.ast import (
    GraphAst, Input, IteratorAst, Match, Output, Par, ProcessAst, Silent, Span, Sum,
)

log = logging.getLogger(__name__)

RESERVED = frozenset({"free", "restr", "priv", "bind", "tau", "sum", "par"})

GRAMMAR = r"""
start: free_decl restr_decl iterator+

free_decl: "free" "(" [name_list] ")"
restr_decl: "restr" "(" [name_list] ")"
name_list: IDENT ("," IDENT)*

iterator: "*" "[" "priv" "(" [name_list] ")" "bind" "(" [name_list] ")" process "]"

process: (prefix ".")* ZERO

prefix: "tau"                                -> silent
      | IDENT "!" "<" IDENT ">"              -> output
      | IDENT "?" "(" IDENT ")"              -> input
      | "[" IDENT "=" IDENT "]"              -> match
      | "sum" "{" process ("+" process)* "}"  -> sum
      | "par" "{" process ("||" process)* "}" -> par

ZERO: "0"
IDENT: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


def _span(meta) -> Span:
    return Span(getattr(meta, "line", 0) or 0, getattr(meta, "column", 0) or 0)


def _pos(value) -> int:
    return value if isinstance(value, int) and value > 0 else 0


def _tok_span(tok: Token) -> Span:
    return Span(tok.line or 0, tok.column or 0)


@v_args(meta=True)
class _AstBuilder(Transformer):
    def start(self, meta, children):
        free, restr, *iterators = children
        return GraphAst(tuple(free), tuple(restr), tuple(iterators), _span(meta))

    def free_decl(self, meta, children):
        return children[0] or []

    def restr_decl(self, meta, children):
        return children[0] or []

    def name_list(self, meta, children):
        for t in children:
            if str(t) in RESERVED:
                raise ParseError(f"reserved word {str(t)!r} cannot be declared as a name",
                                 _pos(t.line), _pos(t.column))
        return [str(t) for t in children]

    def iterator(self, meta, children):
        privs, binders, body = children
        return IteratorAst(tuple(privs or []), tuple(binders or []), body, _span(meta))

    def process(self, meta, children):
        prefixes = tuple(c for c in children if not isinstance(c, Token))
        return ProcessAst(prefixes, _span(meta))

    def silent(self, meta, children):
        return Silent(_span(meta))

    def output(self, meta, children):
        chan, datum = children
        return Output(str(chan), str(datum), _tok_span(chan))

    def input(self, meta, children):
        chan, binder = children
        return Input(str(chan), str(binder), _tok_span(chan))

    def match(self, meta, children):
        left, right = children
        return Match(str(left), str(right), _span(meta))

    def sum(self, meta, children):
        return Sum(tuple(children), _span(meta))

    def par(self, meta, children):
        return Par(tuple(children), _span(meta))


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=True)


def _pretty_expected(names: Iterable[str]) -> List[str]:
    out = []
    for name in names:
        try:
            pattern = _parser().get_terminal(name).pattern
            out.append(pattern.value if pattern.type == "str" else name)
        except KeyError:
            out.append(name)
    return sorted(set(out))


def parse(source: str) -> GraphAst:
    """Parse and validate a model; raises ParseError or WellFormednessError."""
    try:
        tree = _parser().parse(source)
    except UnexpectedToken as e:
        found = "end of input" if e.token.type == "$END" else repr(str(e.token))
        raise ParseError(f"unexpected {found}", _pos(e.line), _pos(e.column),
                         _pretty_expected(e.expected)) from None
    except UnexpectedCharacters as e:
        raise ParseError(f"unexpected character {getattr(e, 'char', '')!r}",
                         _pos(e.line), _pos(e.column), _pretty_expected(e.allowed or [])) from None
    except UnexpectedInput as e:
        raise ParseError("unexpected end of input", _pos(e.line), _pos(e.column)) from None
    try:
        ast = _AstBuilder().transform(tree)
    except VisitError as e:
        raise e.orig_exc from None
    validate(ast)
    log.debug(f"parsed model: {len(ast.iterators)} iterators")
    return ast


def _check_process(proc: ProcessAst, visible: Set[str], binders: Set[str]) -> None:
    if proc.prefixes and isinstance(proc.prefixes[-1], Match):
        m = proc.prefixes[-1]
        raise WellFormednessError(
            "match-before-end", f"match [{m.left}={m.right}] cannot directly precede 0",
            m.span.line, m.span.column,
        )
    for p in proc.prefixes:
        refs: List[str] = []
        if isinstance(p, Output):
            refs = [p.chan, p.datum]
        elif isinstance(p, Input):
            refs = [p.chan]
            if p.binder not in binders:
                rule = "binder-not-declared"
                what = "declared but is not a binder of this iterator" if p.binder in visible else "undeclared"
                raise WellFormednessError(rule, f"input binder {p.binder!r} is {what}",
                                          p.span.line, p.span.column)
        elif isinstance(p, Match):
            refs = [p.left, p.right]
        elif isinstance(p, (Sum, Par)):
            if len(p.branches) < 2:
                kind = "sum" if isinstance(p, Sum) else "par"
                raise WellFormednessError("too-few-branches", f"{kind} needs at least two branches",
                                          p.span.line, p.span.column)
            for branch in p.branches:
                _check_process(branch, visible, binders)
        for ref in refs:
            if ref not in visible:
                raise WellFormednessError("undeclared-name", f"name {ref!r} is not declared",
                                          p.span.line, p.span.column)


def validate(ast: GraphAst) -> None:
    if not ast.iterators:
        raise WellFormednessError("no-iterator", "a graph needs at least one iterator")
    declared: Dict[str, str] = {}

    def declare(names: Iterable[str], where: str, span: Optional[Span] = None) -> None:
        for n in names:
            if n in declared:
                s = span or ast.span
                raise WellFormednessError("duplicate-name",
                                          f"{n!r} declared as {where} and as {declared[n]}",
                                          s.line, s.column)
            declared[n] = where

    declare(ast.free_names, "free name")
    declare(ast.restrictions, "restriction")
    for it in ast.iterators:
        declare(it.privates, "private name", it.span)
        declare(it.binders, "binder", it.span)

    glob = set(ast.free_names) | set(ast.restrictions)
    for it in ast.iterators:
        visible = glob | set(it.privates) | set(it.binders)
        _check_process(it.body, visible, set(it.binders))


def parse_file(path: str) -> GraphAst:
    with open(path, "r", encoding="utf-8") as f:
        return parse(f.read())
