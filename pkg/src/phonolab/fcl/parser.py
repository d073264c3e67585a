"""Parser for the textual fuzzy-control language subset.

Accepted constructs: one FUNCTION_BLOCK with REAL VAR_INPUT/VAR_OUTPUT
declarations, FUZZIFY/DEFUZZIFY blocks holding piecewise or singleton
TERMs, METHOD/DEFAULT/RANGE output options, and RULEBLOCKs with AND/ACT
operator choices, MAX accumulation and weighted IF/THEN rules.  Comments
are ``//`` to end of line and ``(* ... *)``.

Keywords are case-insensitive; identifiers are case-sensitive.  OR is not
a configurable operator: it is always the De Morgan dual of the block's
AND (MIN pairs with MAX, PROD with probabilistic sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import (
    FclSemanticError,
    FclSyntaxError,
    NonMonotonePoints,
    UnknownTerm,
    UnknownVariable,
)
from .model import (
    ACT_OPS,
    AND_OPS,
    METHODS,
    BoolExpr,
    Condition,
    Consequent,
    FuzzySystem,
    InputVariable,
    OutputVariable,
    Rule,
    RuleBlock,
    Term,
)

KEYWORDS = {
    "FUNCTION_BLOCK", "END_FUNCTION_BLOCK",
    "VAR_INPUT", "VAR_OUTPUT", "END_VAR",
    "FUZZIFY", "END_FUZZIFY", "DEFUZZIFY", "END_DEFUZZIFY",
    "TERM", "METHOD", "DEFAULT", "RANGE",
    "RULEBLOCK", "END_RULEBLOCK", "RULE",
    "IF", "THEN", "IS", "NOT", "AND", "OR", "WITH",
    "REAL", "ACT", "ACCU",
    "MIN", "PROD", "MAX", "COG", "COGS", "MOM",
}

_SYMBOLS = {
    ":=": "ASSIGN",
    "..": "DOTDOT",
    ":": "COLON",
    ";": "SEMI",
    ",": "COMMA",
    "(": "LPAREN",
    ")": "RPAREN",
    "-": "MINUS",
    "+": "PLUS",
}


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)

    def advance(count: int):
        nonlocal i, line, col
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("(*", i):
            start_line, start_col = line, col
            advance(2)
            while i < n and not text.startswith("*)", i):
                advance(1)
            if i >= n:
                raise FclSyntaxError("unterminated comment", start_line, start_col)
            advance(2)
            continue
        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                advance(1)
            word = text[start:i]
            upper = word.upper()
            if upper in KEYWORDS:
                tokens.append(Token(upper, word, line, start_col))
            else:
                tokens.append(Token("IDENT", word, line, start_col))
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            start_col = col
            while i < n and text[i].isdigit():
                advance(1)
            # a single '.' only if it is not the start of '..'
            if i < n and text[i] == "." and not text.startswith("..", i):
                advance(1)
                while i < n and text[i].isdigit():
                    advance(1)
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    advance(j - i)
                    while i < n and text[i].isdigit():
                        advance(1)
            tokens.append(Token("NUMBER", text[start:i], line, start_col))
            continue
        matched = False
        for sym in (":=", ".."):
            if text.startswith(sym, i):
                tokens.append(Token(_SYMBOLS[sym], sym, line, col))
                advance(2)
                matched = True
                break
        if matched:
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, line, col))
            advance(1)
            continue
        raise FclSyntaxError(f"unexpected character {ch!r}", line, col)

    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        # declaration lines, for semantic error reporting
        self.rule_lines: dict[tuple[str, int], int] = {}
        self.fuzzify_lines: dict[str, int] = {}
        self.defuzzify_lines: dict[str, int] = {}

    # -- cursor helpers -------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, ttype: str) -> Token | None:
        if self.peek().type == ttype:
            return self.next()
        return None

    def expect(self, ttype: str, what: str | None = None) -> Token:
        token = self.peek()
        if token.type != ttype:
            want = what or ttype
            found = token.value or token.type
            raise FclSyntaxError(f"expected {want}, found {found!r}",
                                 token.line, token.column)
        return self.next()

    def fail(self, message: str) -> FclSyntaxError:
        token = self.peek()
        return FclSyntaxError(message, token.line, token.column)

    # -- grammar --------------------------------------------------------

    def parse(self) -> FuzzySystem:
        self.expect("FUNCTION_BLOCK")
        name = self.expect("IDENT", "function block name").value
        system = FuzzySystem(name=name)
        while True:
            token = self.peek()
            if token.type == "END_FUNCTION_BLOCK":
                self.next()
                break
            elif token.type == "VAR_INPUT":
                self._parse_var_section(system, is_input=True)
            elif token.type == "VAR_OUTPUT":
                self._parse_var_section(system, is_input=False)
            elif token.type == "FUZZIFY":
                self._parse_fuzzify(system)
            elif token.type == "DEFUZZIFY":
                self._parse_defuzzify(system)
            elif token.type == "RULEBLOCK":
                self._parse_ruleblock(system)
            elif token.type == "EOF":
                raise self.fail("unterminated FUNCTION_BLOCK")
            else:
                raise self.fail(f"unexpected {token.value!r} at block level")
        trailing = self.peek()
        if trailing.type != "EOF":
            raise FclSyntaxError("content after END_FUNCTION_BLOCK",
                                 trailing.line, trailing.column)
        _validate(system, self)
        return system

    def _parse_var_section(self, system: FuzzySystem, is_input: bool):
        self.next()
        while not self.accept("END_VAR"):
            token = self.peek()
            if token.type == "EOF":
                raise self.fail("unterminated VAR section")
            name_tok = self.expect("IDENT", "variable name")
            self.expect("COLON")
            self.expect("REAL", "REAL (the only supported variable type)")
            self.expect("SEMI")
            name = name_tok.value
            if name in system.inputs or name in system.outputs:
                raise FclSemanticError(f"variable {name!r} declared twice",
                                       name_tok.line)
            if is_input:
                system.inputs[name] = InputVariable(name)
            else:
                system.outputs[name] = OutputVariable(name)

    def _parse_term(self) -> tuple[Term, int]:
        line = self.peek().line
        self.expect("TERM")
        name = self.expect("IDENT", "term name").value
        self.expect("ASSIGN", "':='")
        if self.peek().type == "LPAREN":
            points = []
            while self.peek().type == "LPAREN":
                self.next()
                x = self._parse_number()
                self.expect("COMMA")
                y = self._parse_number()
                self.expect("RPAREN")
                points.append((x, y))
            term = Term(name, points=tuple(points))
        else:
            term = Term(name, singleton=self._parse_number())
        self.expect("SEMI")
        return term, line

    def _parse_number(self) -> float:
        sign = 1.0
        if self.accept("MINUS"):
            sign = -1.0
        elif self.accept("PLUS"):
            pass
        token = self.expect("NUMBER")
        return sign * float(token.value)

    def _parse_fuzzify(self, system: FuzzySystem):
        self.next()
        var_tok = self.expect("IDENT", "input variable name")
        name = var_tok.value
        if name in self.fuzzify_lines:
            raise FclSemanticError(f"duplicate FUZZIFY block for {name!r}",
                                   var_tok.line)
        self.fuzzify_lines[name] = var_tok.line
        terms: dict[str, Term] = {}
        while not self.accept("END_FUZZIFY"):
            if self.peek().type == "EOF":
                raise self.fail("unterminated FUZZIFY block")
            term, line = self._parse_term()
            if term.name in terms:
                raise FclSemanticError(
                    f"duplicate term {term.name!r} for {name!r}", line)
            _check_term_shape(term, line)
            terms[term.name] = term
        if name not in system.inputs:
            raise UnknownVariable(
                f"FUZZIFY references undeclared input {name!r}", var_tok.line)
        system.inputs[name].terms = terms

    def _parse_defuzzify(self, system: FuzzySystem):
        self.next()
        var_tok = self.expect("IDENT", "output variable name")
        name = var_tok.value
        if name in self.defuzzify_lines:
            raise FclSemanticError(f"duplicate DEFUZZIFY block for {name!r}",
                                   var_tok.line)
        self.defuzzify_lines[name] = var_tok.line
        terms: dict[str, Term] = {}
        method = None
        default = None
        rng = None
        while not self.accept("END_DEFUZZIFY"):
            token = self.peek()
            if token.type == "TERM":
                term, line = self._parse_term()
                if term.name in terms:
                    raise FclSemanticError(
                        f"duplicate term {term.name!r} for {name!r}", line)
                _check_term_shape(term, line)
                terms[term.name] = term
            elif token.type == "METHOD":
                self.next()
                self.expect("COLON")
                m = self.next()
                if m.type not in METHODS:
                    raise FclSyntaxError(
                        f"expected one of {', '.join(METHODS)}, found {m.value!r}",
                        m.line, m.column)
                method = m.type
                self.expect("SEMI")
            elif token.type == "DEFAULT":
                self.next()
                self.expect("ASSIGN", "':='")
                default = self._parse_number()
                self.expect("SEMI")
            elif token.type == "RANGE":
                self.next()
                self.expect("ASSIGN", "':='")
                self.expect("LPAREN")
                lo = self._parse_number()
                self.expect("DOTDOT", "'..'")
                hi = self._parse_number()
                self.expect("RPAREN")
                self.expect("SEMI")
                if not lo < hi:
                    raise FclSemanticError(
                        f"empty RANGE ({lo} .. {hi}) for {name!r}", token.line)
                rng = (lo, hi)
            elif token.type == "EOF":
                raise self.fail("unterminated DEFUZZIFY block")
            else:
                raise self.fail(f"unexpected {token.value!r} in DEFUZZIFY")
        if name not in system.outputs:
            raise UnknownVariable(
                f"DEFUZZIFY references undeclared output {name!r}", var_tok.line)
        if method is None:
            raise FclSemanticError(f"output {name!r} lacks a METHOD", var_tok.line)
        if default is None:
            raise FclSemanticError(f"output {name!r} lacks a DEFAULT", var_tok.line)
        out = system.outputs[name]
        out.terms = terms
        out.method = method
        out.default = default
        out.range = rng

    def _parse_ruleblock(self, system: FuzzySystem):
        self.next()
        name = self.expect("IDENT", "rule block name").value
        block = RuleBlock(name)
        seen_ids = set()
        while not self.accept("END_RULEBLOCK"):
            token = self.peek()
            if token.type == "AND":
                self.next()
                self.expect("COLON")
                op = self.next()
                if op.type not in AND_OPS:
                    raise FclSyntaxError(f"AND must be MIN or PROD, found {op.value!r}",
                                         op.line, op.column)
                block.and_op = op.type
                self.expect("SEMI")
            elif token.type == "ACT":
                self.next()
                self.expect("COLON")
                op = self.next()
                if op.type not in ACT_OPS:
                    raise FclSyntaxError(f"ACT must be MIN or PROD, found {op.value!r}",
                                         op.line, op.column)
                block.act_op = op.type
                self.expect("SEMI")
            elif token.type == "ACCU":
                self.next()
                self.expect("COLON")
                op = self.next()
                if op.type != "MAX":
                    raise FclSemanticError(
                        f"only MAX accumulation is supported, found {op.value!r}",
                        op.line)
                self.expect("SEMI")
            elif token.type == "OR":
                raise FclSemanticError(
                    "OR is derived from AND and cannot be configured", token.line)
            elif token.type == "RULE":
                rule, line = self._parse_rule()
                if rule.id in seen_ids:
                    raise FclSemanticError(
                        f"duplicate rule id {rule.id} in block {name!r}", line)
                seen_ids.add(rule.id)
                self.rule_lines[(name, rule.id)] = line
                block.rules.append(rule)
            elif token.type == "EOF":
                raise self.fail("unterminated RULEBLOCK")
            else:
                raise self.fail(f"unexpected {token.value!r} in RULEBLOCK")
        system.rule_blocks.append(block)

    def _parse_rule(self) -> tuple[Rule, int]:
        line = self.peek().line
        self.expect("RULE")
        id_tok = self.expect("NUMBER", "rule number")
        try:
            rule_id = int(id_tok.value)
        except ValueError:
            raise FclSyntaxError("rule number must be an integer",
                                 id_tok.line, id_tok.column) from None
        self.expect("COLON")
        self.expect("IF")
        antecedent = self._parse_or()
        self.expect("THEN")
        consequents = [self._parse_consequent()]
        while self.accept("COMMA"):
            consequents.append(self._parse_consequent())
        weight = 1.0
        if self.accept("WITH"):
            weight = self._parse_number()
            if not 0.0 <= weight <= 1.0:
                raise FclSemanticError(
                    f"rule weight {weight} outside [0, 1]", line)
        self.expect("SEMI")
        return Rule(rule_id, antecedent, consequents, weight), line

    def _parse_or(self):
        node = self._parse_and()
        while self.accept("OR"):
            node = BoolExpr("OR", node, self._parse_and())
        return node

    def _parse_and(self):
        node = self._parse_atom()
        while self.accept("AND"):
            node = BoolExpr("AND", node, self._parse_atom())
        return node

    def _parse_atom(self):
        if self.accept("LPAREN"):
            node = self._parse_or()
            self.expect("RPAREN")
            return node
        var = self.expect("IDENT", "variable name").value
        self.expect("IS")
        negated = bool(self.accept("NOT"))
        term = self.expect("IDENT", "term name").value
        return Condition(var, term, negated)

    def _parse_consequent(self) -> Consequent:
        var = self.expect("IDENT", "output variable name").value
        self.expect("IS")
        term = self.expect("IDENT", "term name").value
        return Consequent(var, term)


def _check_term_shape(term: Term, line: int):
    if term.is_singleton:
        if not math.isfinite(term.singleton):
            raise FclSemanticError(f"term {term.name!r} is not finite", line)
        return
    if not term.points:
        raise FclSemanticError(f"term {term.name!r} has no points", line)
    xs = [p[0] for p in term.points]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise NonMonotonePoints(
            f"term {term.name!r} has non-increasing x coordinates", line)
    for x, y in term.points:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise FclSemanticError(f"term {term.name!r} has a non-finite point", line)
        if not 0.0 <= y <= 1.0:
            raise FclSemanticError(
                f"term {term.name!r} membership {y} outside [0, 1]", line)


def _validate(system: FuzzySystem, parser: _Parser):
    for name, out in system.outputs.items():
        line = parser.defuzzify_lines.get(name)
        if name not in parser.defuzzify_lines:
            raise FclSemanticError(f"output {name!r} has no DEFUZZIFY block")
        if out.method in ("COG", "MOM"):
            if out.range is None:
                raise FclSemanticError(
                    f"output {name!r} needs a RANGE for METHOD {out.method}", line)
            bad = [t.name for t in out.terms.values() if t.is_singleton]
            if bad:
                raise FclSemanticError(
                    f"METHOD {out.method} on {name!r} cannot use singleton "
                    f"terms: {', '.join(bad)}", line)
        else:  # COGS
            bad = [t.name for t in out.terms.values() if not t.is_singleton]
            if bad:
                raise FclSemanticError(
                    f"METHOD COGS on {name!r} requires singleton terms, got "
                    f"piecewise: {', '.join(bad)}", line)

    for block, rule in system.iter_rules():
        line = parser.rule_lines.get((block.name, rule.id))
        for condition in _conditions(rule.antecedent):
            var = system.inputs.get(condition.variable)
            if var is None:
                raise UnknownVariable(
                    f"rule {rule.id} tests unknown input "
                    f"{condition.variable!r}", line)
            if condition.term not in var.terms:
                raise UnknownTerm(
                    f"rule {rule.id} references undeclared term "
                    f"{condition.term!r} of {condition.variable!r}", line)
        for consequent in rule.consequents:
            out = system.outputs.get(consequent.variable)
            if out is None:
                raise UnknownVariable(
                    f"rule {rule.id} drives unknown output "
                    f"{consequent.variable!r}", line)
            if consequent.term not in out.terms:
                raise UnknownTerm(
                    f"rule {rule.id} references undeclared term "
                    f"{consequent.term!r} of {consequent.variable!r}", line)


def _conditions(node):
    if isinstance(node, Condition):
        yield node
    else:
        yield from _conditions(node.left)
        yield from _conditions(node.right)


def parse_fcl(text: str) -> FuzzySystem:
    """Parse FCL text into a validated :class:`FuzzySystem`."""
    return _Parser(_tokenize(text)).parse()
