"""Tower files: a small line-based description of K and the binomial tower.

    # comments start with '#'
    field 3                      # p, optionally: field 2 modulus a^2+a+1
    vars x y
    gen u^3 = y
    gen v^2 = x
    subfield Lpi = u             # named subfields, generator expressions
    subfield M = u, v
    designate F = u              # optional F inside the normal tower L
"""

import re
from dataclasses import dataclass, field

from galtower.errors import ForwardReference, ParseError, UnknownName
from galtower.exactfield import BaseFieldDesc, FiniteFieldDesc
from galtower.exactfield.finite import FiniteField
from galtower.exactfield.ratfunc import RationalFunctionField
from galtower.expr import evaluate, names_in, parse_expr
from galtower.tower import GeneratorSpec, TowerSpec

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_GEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\^\s*(\d+)\s*=\s*(.+)$")


@dataclass(frozen=True)
class TowerFile:
    spec: TowerSpec
    subfields: tuple = ()  # (name, (expr, ...))
    designated: tuple = field(default=None)  # (name, (expr, ...)) or None

    def subfield_exprs(self, name):
        for key, exprs in self.subfields:
            if key == name:
                return exprs
        if self.designated and self.designated[0] == name:
            return self.designated[1]
        return None


def _modulus_from_text(p, text, line):
    F = FiniteField(p)
    R = RationalFunctionField(F, "a")
    node = parse_expr(text, line)
    value = evaluate(node, R, {"a": R.gen()}, line)
    if not R.is_polynomial(value):
        raise ParseError("modulus must be a polynomial in a", line, 1)
    coeffs = tuple(value[0])
    if not coeffs or coeffs[-1] != 1:
        raise ParseError("modulus must be monic", line, 1)
    return coeffs


def _modulus_to_text(modulus):
    terms = []
    for i in range(len(modulus) - 1, -1, -1):
        c = modulus[i]
        if not c:
            continue
        mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms)


def _check_names(node, known, later, line, offset):
    for name, col in names_in(node):
        if name in known:
            continue
        if name in later:
            raise ForwardReference(f"{name!r} is defined later in the file", line, offset + col)
        raise UnknownName(f"unknown name {name!r}", line, offset + col)


def parse_tower_text(text):
    p = None
    modulus = None
    variables = ()
    gens = []
    subfields = []
    designated = None
    lines = text.splitlines()
    gen_lines = []
    for lineno, raw in enumerate(lines, 1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        head, _, rest = content.strip().partition(" ")
        offset = raw.index(head) + len(head) + 2
        if head == "field":
            parts = rest.split(None, 2)
            if not parts or not parts[0].isdigit():
                raise ParseError("expected 'field <p> [modulus <poly>]'", lineno, offset)
            p = int(parts[0])
            if len(parts) > 1:
                if parts[1] != "modulus" or len(parts) < 3:
                    raise ParseError("expected 'modulus <poly>'", lineno, offset)
                modulus = _modulus_from_text(p, parts[2], lineno)
        elif head == "vars":
            variables = tuple(rest.split())
            for v in variables:
                if not _NAME.match(v):
                    raise ParseError(f"bad variable name {v!r}", lineno, offset)
        elif head == "gen":
            m = _GEN.match(rest)
            if not m:
                raise ParseError("expected 'gen <name>^<m> = <expr>'", lineno, offset)
            gen_lines.append((lineno, offset + m.start(3), m.group(1), int(m.group(2)), m.group(3).strip()))
        elif head in ("subfield", "designate"):
            name, eq, exprs = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME.match(name):
                raise ParseError(f"expected '{head} <name> = <expr>, ...'", lineno, offset)
            items = tuple(e.strip() for e in exprs.split(",") if e.strip())
            entry = (name, items, lineno, offset + len(name) + 3)
            if head == "designate":
                designated = entry
            else:
                subfields.append(entry)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)
    if p is None:
        raise ParseError("missing 'field' line", 1, 1)
    known = set(variables)
    if modulus is not None:
        known.add("a")
    all_gens = [g[2] for g in gen_lines]
    for idx, (lineno, col, name, m, value) in enumerate(gen_lines):
        node = parse_expr(value, lineno)
        _check_names(node, known, set(all_gens[idx:]), lineno, col)
        known.add(name)
        gens.append(GeneratorSpec(name, m, _canonical_expr(value)))
    out_sub = []
    for name, items, lineno, col in subfields + ([designated] if designated else []):
        for item in items:
            _check_names(parse_expr(item, lineno), known, set(), lineno, col)
    for name, items, _, _ in subfields:
        out_sub.append((name, tuple(_canonical_expr(i) for i in items)))
    desig = None
    if designated:
        desig = (designated[0], tuple(_canonical_expr(i) for i in designated[1]))
    try:
        spec = TowerSpec(BaseFieldDesc(FiniteFieldDesc(p, modulus), variables), tuple(gens))
    except ValueError as exc:
        raise ParseError(str(exc), None, None) from exc
    return TowerFile(spec, tuple(out_sub), desig)


def _canonical_expr(text):
    return re.sub(r"\s+", "", text)


def parse_tower(path):
    with open(path, encoding="utf-8") as fh:
        return parse_tower_text(fh.read())


def spec_to_text(spec):
    ff = spec.base.ff
    lines = [f"field {ff.p}" + (f" modulus {_modulus_to_text(ff.modulus)}" if ff.modulus else "")]
    if spec.base.variables:
        lines.append("vars " + " ".join(spec.base.variables))
    for g in spec.generators:
        lines.append(f"gen {g.name}^{g.m} = {g.value}")
    return "\n".join(lines) + "\n"


def serialize(tf):
    text = spec_to_text(tf.spec)
    for name, items in tf.subfields:
        text += f"subfield {name} = {', '.join(items)}\n"
    if tf.designated:
        text += f"designate {tf.designated[0]} = {', '.join(tf.designated[1])}\n"
    return text
