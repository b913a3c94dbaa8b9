"""Text syntax for pp formulas.

::

    formula := ["E" var+ "."] eq ("&" eq)*
    eq      := lin "=" lin
    lin     := ["-"] term (("+" | "-") term)* | "0"
    term    := [scalar "*"] [basis "*"] var        (left formulas)
             | [scalar "*"] var ["*" basis]        (right formulas)
    var     := "x" [digits] | "y" [digits]

``x1 .. xn`` are free and the declared ``y``'s are bound, in declaration
order; a bare ``x`` or ``y`` means ``x1`` or ``y1``.  Basis names are the
algebra's basis labels; a coefficient written on the wrong side of its
variable is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, AlgebraError
from .exactlin import zeros
from .modules import LEFT, RIGHT
from .pp import PpFormula

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[+\-*=&.()]|∃))")
_VAR = re.compile(r"^[xy](?:[1-9]\d*)?$")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = mt.lastgroup
        value = mt.group(kind)
        out.append(_Tok(kind, value, mt.start(kind)))
        pos = mt.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, algebra: Algebra, side: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.alg = algebra
        self.side = side
        self.p = algebra.p
        self.bound: dict[str, int] = {}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.text)

    def accept(self, value: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")

    def var_name(self) -> str:
        name = self.tok.value
        return name + "1" if len(name) == 1 else name

    def formula(self):
        if (self.tok.kind == "name" and self.tok.value == "E") or (self.tok.kind == "op" and self.tok.value == "∃"):
            self.i += 1
            while self.tok.kind == "name" and _VAR.match(self.tok.value):
                name = self.var_name()
                if name[0] != "y":
                    self.error(f"bound variables must be y's, got {name}")
                if name in self.bound:
                    self.error(f"bound variable {name} declared twice")
                self.bound[name] = len(self.bound)
                self.i += 1
            if not self.bound:
                self.error("expected a bound variable after the quantifier")
            self.expect(".")
        eqs = [self.equation()]
        while self.accept("&"):
            eqs.append(self.equation())
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.value!r}")
        return eqs

    def equation(self):
        lhs = self.lin()
        self.expect("=")
        rhs = self.lin()
        return lhs, rhs

    def lin(self) -> dict[str, np.ndarray]:
        terms: dict[str, np.ndarray] = {}
        if self.tok.kind == "num" and self.tok.value == "0" and not self._followed_by("*"):
            self.i += 1
            return terms
        sign = -1 if self.accept("-") else 1
        while True:
            var, coeff = self.term()
            terms[var] = (terms.get(var, zeros(1, self.alg.dim)[0]) + sign * coeff) % self.p
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return terms

    def _followed_by(self, value: str) -> bool:
        nxt = self.toks[self.i + 1]
        return nxt.kind == "op" and nxt.value == value

    def term(self) -> tuple[str, np.ndarray]:
        scalar = 1
        if self.tok.kind == "num":
            scalar = int(self.tok.value)
            self.i += 1
            self.expect("*")
        coeff = None
        if self.tok.kind == "name" and not _VAR.match(self.tok.value):
            basis_tok = self.tok
            coeff = self.basis(basis_tok)
            self.i += 1
            self.expect("*")
            if self.side == RIGHT and not np.array_equal(coeff, self.alg.unit):
                self.error("right-module coefficients are written after the variable", basis_tok)
        if self.tok.kind != "name" or not _VAR.match(self.tok.value):
            self.error(f"expected a variable, found {self.tok.value or 'end of input'!r}")
        var_tok = self.tok
        var = self.var_name()
        if var[0] == "y" and var not in self.bound:
            self.error(f"bound variable {var} is not declared", var_tok)
        self.i += 1
        if self.tok.kind == "op" and self.tok.value == "*":
            self.i += 1
            if coeff is not None:
                self.error("coefficient on both sides of a variable")
            if self.tok.kind != "name" or _VAR.match(self.tok.value):
                self.error("expected a basis name after '*'")
            coeff = self.basis(self.tok)
            if self.side == LEFT and not np.array_equal(coeff, self.alg.unit):
                self.error("left-module coefficients are written before the variable")
            self.i += 1
        if coeff is None:
            coeff = self.alg.unit
        return var, (scalar * coeff) % self.p

    def basis(self, tok: _Tok) -> np.ndarray:
        try:
            return self.alg.basis_element(self.alg.label_index(tok.value))
        except AlgebraError as exc:
            raise ParseError(str(exc), tok.pos, self.text) from None


def parse_pp(text: str, algebra: Algebra, side: str = LEFT, n: int | None = None) -> PpFormula:
    """Parse the text syntax into matrix normal form.

    ``n`` fixes the number of free variables; by default it is the largest
    ``x`` index used.  Equations with all coefficients zero are dropped.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    parser = _Parser(text, algebra, side)
    eqs = parser.formula()
    used = [int(v[1:]) for lhs, rhs in eqs for v in list(lhs) + list(rhs) if v[0] == "x"]
    top = max(used, default=0)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"x{top} used but the formula has arity {n}", 0, text)
    m = len(parser.bound)
    d = algebra.dim
    rows_a, rows_b = [], []
    for lhs, rhs in eqs:
        a = zeros(n, d)
        b = zeros(max(m, 0), d)
        for var, c in lhs.items():
            if var[0] == "x":
                a[int(var[1:]) - 1] += c
            else:
                b[parser.bound[var]] -= c
        for var, c in rhs.items():
            if var[0] == "x":
                a[int(var[1:]) - 1] -= c
            else:
                b[parser.bound[var]] += c
        a %= algebra.p
        b %= algebra.p
        if np.any(a) or np.any(b):
            rows_a.append(a)
            rows_b.append(b)
    A = np.array(rows_a, dtype=np.int64).reshape(len(rows_a), n, d)
    B = np.array(rows_b, dtype=np.int64).reshape(len(rows_b), m, d)
    return PpFormula(algebra, side, A, B)


def _terms(alg: Algebra, side: str, coeff: np.ndarray, var: str) -> list[str]:
    if not np.any(coeff):
        return []
    if np.array_equal(coeff, alg.unit):
        return [var]
    out = []
    for t in np.flatnonzero(coeff):
        c = int(coeff[t])
        prefix = "" if c == 1 else f"{c}*"
        if np.array_equal(alg.basis_element(t), alg.unit):
            out.append(f"{prefix}{var}")
        elif side == LEFT:
            out.append(f"{prefix}{alg.labels[t]}*{var}")
        else:
            out.append(f"{prefix}{var}*{alg.labels[t]}")
    return out


def unparse(phi: PpFormula) -> str:
    """Text for ``phi``; ``parse_pp(unparse(phi), ..., n=phi.n)`` gives ``phi.normalized()``."""
    alg = phi.algebra
    eqs = []
    for i in range(phi.l):
        lhs = [t for j in range(phi.n) for t in _terms(alg, phi.side, phi.A[i, j], f"x{j + 1}")]
        rhs = [t for k in range(phi.m) for t in _terms(alg, phi.side, phi.B[i, k], f"y{k + 1}")]
        eqs.append(f"{' + '.join(lhs) or '0'} = {' + '.join(rhs) or '0'}")
    if not eqs:
        eqs = [f"x{phi.n} = x{phi.n}"] if phi.n else ["0 = 0"]
    body = " & ".join(eqs)
    if phi.m:
        return "E " + " ".join(f"y{k + 1}" for k in range(phi.m)) + ". " + body
    return body
