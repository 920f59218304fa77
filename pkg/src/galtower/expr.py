"""Expression grammar shared by the tower file reader and element parsing.

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" ["-"] INT)?
    atom  := INT | NAME | "(" expr ")"

Expressions are parsed into small tuple trees and evaluated against any
domain exposing ``add/sub/mul/div/neg/pow/from_int``.
"""

import re

from galtower.errors import ParseError, UnknownName

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text, line=None):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, line=None):
        self.tokens = tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def expect_op(self, ch):
        tok = self.take()
        if tok[0] != "op" or tok[1] != ch:
            self.fail(f"expected {ch!r}", tok)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            exp = self.take()
            if exp[0] != "int":
                self.fail("exponent must be an integer literal", exp)
            return ("pow", base, sign * exp[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, col = tok
        if kind == "int":
            return ("int", value)
        if kind == "name":
            return ("name", value, col)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail("expected a number, name or '('", tok)


def parse_expr(text, line=None):
    return _Parser(text, line).parse()


def names_in(node):
    """Names referenced by a parsed expression, with their columns."""
    kind = node[0]
    if kind == "name":
        return [(node[1], node[2])]
    if kind == "int":
        return []
    if kind in ("neg",):
        return names_in(node[1])
    if kind == "pow":
        return names_in(node[1])
    return names_in(node[1]) + names_in(node[2])


def evaluate(node, domain, env, line=None):
    kind = node[0]
    if kind == "int":
        return domain.from_int(node[1])
    if kind == "name":
        try:
            return env[node[1]]
        except KeyError:
            raise UnknownName(f"unknown name {node[1]!r}", line, node[2]) from None
    if kind == "neg":
        return domain.neg(evaluate(node[1], domain, env, line))
    if kind == "pow":
        return domain.pow(evaluate(node[1], domain, env, line), node[2])
    a = evaluate(node[1], domain, env, line)
    b = evaluate(node[2], domain, env, line)
    if kind == "add":
        return domain.add(a, b)
    if kind == "sub":
        return domain.sub(a, b)
    if kind == "mul":
        return domain.mul(a, b)
    return domain.div(a, b)


def base_env(K):
    """Names available in the base field: its variables and ``a`` for F_q, d > 1."""
    env = dict(zip(K.variables, K.gens()))
    ff = K.ff
    if ff.d > 1:
        env["a"] = K.embed_from(ff, ff.generator()) if K.depth else ff.generator()
    return env


def parse_element(K, text, env=None, line=None):
    """Parse text into an element of ``K`` (a base field or a tower)."""
    return evaluate(parse_expr(text, line), K, env if env is not None else base_env(K), line)
