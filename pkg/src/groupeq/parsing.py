"""The input language: group declarations, variables, equations.

Example::

    group G = finite { table = [[0, 1], [1, 0]]; labels = [e, a] }
    vars x;
    eq: x^2 a = 1;

Words are juxtaposed items, ``ITEM ::= ATOM ('^' INT)?`` and
``ATOM ::= IDENT | NAME '[' INT ']' | '1' | '(' WORD ')' | '[' WORD ',' WORD ']'``.
``[u, v]`` means ``u⁻¹ v⁻¹ u v``.  An identifier that is not declared but
splits into declared names (``axby``) is read as that product, with any
exponent binding to the last piece, so displays like ``a x b y z^5`` can be
typed without spaces.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .groups import FINITE, FREE, PRESENTED, FactorSpec, FiniteGroup, FreeProductSpec, \
    GroupAxiomError, Presentation, from_permutations, validate_table
from .mixedwords import Const, EquationSystem, MixedWord, Var, inverse, normalize
from .solver import Embedding, EmbeddingError
from .theorems import FLAGS, Assertions
from .words import Alphabet, Word, reduce

KINDS = ("finite", "perms", "free", "presented")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, source_line: str = ""):
        self.message, self.line, self.col = message, line, col
        text = f"line {line}, column {col}: {message}"
        if source_line:
            text += f"\n  {source_line}\n  {' ' * (col - 1)}^"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, op, eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<op>->|[-=\{\}\[\]\(\),;:\^<>|.])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            lines = text.splitlines()
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1,
                             lines[line - 1] if line <= len(lines) else "")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# Word syntax trees: ("name", tok) | ("index", tok, group, i) | ("one",) |
# ("seq", [items]) | ("pow", node, k) | ("comm", u, v)


@dataclass(frozen=True, eq=False)
class GroupDecl:
    name: str
    kind: str
    group: FiniteGroup | Alphabet | Presentation
    generators: tuple[tuple[str | None, tuple[tuple[int, ...], ...]], ...] = ()
    degree: int = 0
    overgroup: bool = False

    def __eq__(self, other):
        if not isinstance(other, GroupDecl):
            return NotImplemented
        return (self.name, self.kind, self.generators, self.overgroup) == \
            (other.name, other.kind, other.generators, other.overgroup) and self.group == other.group

    def __hash__(self):
        return hash((self.name, self.kind))

    @property
    def factor(self) -> FactorSpec:
        kind = {"finite": FINITE, "perms": FINITE, "free": FREE, "presented": PRESENTED}[self.kind]
        return FactorSpec(self.name, kind, self.group)

    def element_names(self) -> dict[str, object]:
        if self.kind == "free":
            return {g.name: self.group.gen(g.name) for g in self.group}
        if self.kind == "presented":
            return {g.name: None for g in self.group.alphabet}
        names = {}
        if self.kind == "perms":
            names = {n: self.group.perms.index(_perm_images(cycles, self.degree))
                     for n, cycles in self.generators if n}
        elif self.group.labels:
            names = {lab: i for i, lab in enumerate(self.group.labels)}
        return names


@dataclass(frozen=True)
class SubgroupDecl:
    name: str
    group: str
    generators: tuple[int, ...]
    elements: frozenset[int]


@dataclass(frozen=True)
class EmbedDecl:
    name: str
    source: str
    target: str
    images: tuple[tuple[str, int], ...]
    embedding: Embedding = field(compare=False, repr=False)


@dataclass(eq=True)
class Document:
    groups: tuple[GroupDecl, ...]
    variables: Alphabet
    equations: tuple[MixedWord, ...]
    assertions: tuple[tuple[str, str], ...]
    subgroups: tuple[SubgroupDecl, ...]
    embeddings: tuple[EmbedDecl, ...]
    spec: FreeProductSpec = field(compare=False)

    @property
    def system(self) -> EquationSystem:
        return EquationSystem(self.spec, self.equations)

    def group(self, name: str) -> GroupDecl:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(f"no group named {name!r}")

    def subgroup(self, name: str) -> SubgroupDecl:
        for s in self.subgroups:
            if s.name == name:
                return s
        raise KeyError(f"no subgroup named {name!r}")

    @property
    def factors(self) -> list[GroupDecl]:
        return [g for g in self.groups if not g.overgroup]

    def assertion_flags(self) -> Assertions:
        flags: dict[str, set[str]] = {}
        for name, flag in self.assertions:
            flags.setdefault(name, set()).add(flag)
        return Assertions(self.spec, flags)

    def registered(self, source: str) -> list[Embedding]:
        return [e.embedding for e in self.embeddings if e.source == source]


def _perm_images(cycles: Iterable[tuple[int, ...]], degree: int) -> tuple[int, ...]:
    """Product of 1-based cycles, applied left to right, as 0-based images."""
    img = list(range(degree))
    for cyc in cycles:
        step = list(range(degree))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a - 1] = b - 1
        img = [step[i] for i in img]
    return tuple(img)


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.lines = text.splitlines()
        self.toks = tokenize(text)
        self.i = 0
        self.groups: list[GroupDecl] = []
        self.names: dict[str, tuple] = {}  # word-scope names
        self.declared: set[str] = set()
        self.variables: list[str] = []
        self.var_alph = Alphabet([])
        self.eq_asts: list[tuple] = []
        self.assertions: list[tuple[str, str]] = []
        self.subgroup_asts: list[tuple] = []
        self.embed_asts: list[tuple] = []

    # token helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        src = self.lines[tok.line - 1] if 0 < tok.line <= len(self.lines) else ""
        return ParseError(msg, tok.line, tok.col, src)

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "ident") and t.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            t = self.peek()
            raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def ident(self) -> Token:
        t = self.peek()
        if t.kind != "ident":
            raise self.error(f"expected a name, found {t.text or 'end of input'!r}")
        return self.next()

    def integer(self) -> int:
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        t = self.peek()
        if t.kind != "int":
            raise self.error(f"expected an integer, found {t.text or 'end of input'!r}")
        self.next()
        return -int(t.text) if neg else int(t.text)

    def optional(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def declare(self, tok: Token) -> None:
        if tok.text in self.declared:
            raise self.error(f"duplicate declaration of {tok.text!r}", tok)
        self.declared.add(tok.text)

    # statements
    def document(self) -> Document:
        while self.peek().kind != "eof":
            t = self.peek()
            if self.optional(";"):
                continue
            if t.text == "group" or t.text == "overgroup":
                self.group_decl()
            elif t.text == "vars":
                self.vars_decl()
            elif t.text == "eq":
                self.eq_decl()
            elif t.text == "assert":
                self.assert_decl()
            elif t.text == "subgroup":
                self.subgroup_decl()
            elif t.text == "embed":
                self.embed_decl()
            else:
                raise self.error(f"expected a declaration, found {t.text!r}")
        return self.build()

    def group_decl(self) -> None:
        over = self.next().text == "overgroup"
        name = self.ident()
        self.declare(name)
        self.expect("=")
        kind = self.ident()
        if kind.text not in KINDS:
            raise self.error(f"unknown group kind {kind.text!r}; expected one of {', '.join(KINDS)}",
                             kind)
        if over and kind.text not in ("finite", "perms"):
            raise self.error("overgroups must be finite", kind)
        decl = getattr(self, "_" + kind.text)(name)
        decl = GroupDecl(decl.name, decl.kind, decl.group, decl.generators, decl.degree, over)
        self.groups.append(decl)
        if not over:
            for n, elem in decl.element_names().items():
                if n in self.names:
                    raise self.error(f"element name {n!r} is already declared", name)
                if n in self.declared and n != name.text:
                    raise self.error(f"element name {n!r} clashes with a declaration", name)
                self.names[n] = ("const", decl.name, elem)
        self.optional(";")

    def _finite(self, name: Token) -> GroupDecl:
        self.expect("{")
        table, labels = None, None
        while not self.at("}"):
            key = self.ident()
            self.expect("=")
            if key.text == "table":
                table = self.int_matrix()
            elif key.text == "labels":
                self.expect("[")
                labels = []
                while not self.at("]"):
                    labels.append(self.ident().text)
                    if not self.optional(","):
                        break
                self.expect("]")
            else:
                raise self.error(f"unknown field {key.text!r} (expected table or labels)", key)
            if not (self.optional(";") or self.optional(",")):
                break
        self.expect("}")
        if table is None:
            raise self.error("finite group needs a table", name)
        if labels is not None and len(set(labels)) != len(labels):
            raise self.error("duplicate labels", name)
        try:
            g = validate_table(table, labels, name.text)
        except GroupAxiomError as exc:
            raise self.error(f"group {name.text}: {exc}", name) from None
        return GroupDecl(name.text, "finite", g)

    def int_matrix(self) -> list[list[int]]:
        self.expect("[")
        rows = []
        while not self.at("]"):
            self.expect("[")
            row = []
            while not self.at("]"):
                row.append(self.integer())
                if not self.optional(","):
                    break
            self.expect("]")
            rows.append(row)
            if not self.optional(","):
                break
        self.expect("]")
        return rows

    def _perms(self, name: Token) -> GroupDecl:
        self.expect("{")
        gens: list[tuple[str | None, tuple[tuple[int, ...], ...]]] = []
        while not self.at("}"):
            gname = None
            if self.peek().kind == "ident":
                gt = self.ident()
                self.expect("=")
                gname = gt.text
            cycles = []
            start = self.peek()
            while self.at("("):
                self.next()
                cyc = []
                while not self.at(")"):
                    p = self.peek()
                    k = self.integer()
                    if k < 1:
                        raise self.error("permutation points start at 1", p)
                    cyc.append(k)
                self.next()
                if len(set(cyc)) != len(cyc):
                    raise self.error("a cycle repeats a point", start)
                cycles.append(tuple(cyc))
            if not cycles:
                raise self.error("expected a permutation in cycle notation")
            gens.append((gname, tuple(cycles)))
            if not self.optional(","):
                break
        self.expect("}")
        names = [n for n, _ in gens if n]
        if len(set(names)) != len(names):
            raise self.error("duplicate generator names", name)
        degree = max((p for _, cs in gens for c in cs for p in c), default=0)
        images = [_perm_images(cs, degree) for _, cs in gens]
        labels = {k: n for k, (n, _) in enumerate(gens) if n}
        try:
            g = from_permutations(images, degree, labels=labels or None, name=name.text)
        except ValueError as exc:
            raise self.error(f"group {name.text}: {exc}", name) from None
        if labels and len({images[k] for k in labels}) != len(labels):
            raise self.error("two named generators are the same permutation", name)
        return GroupDecl(name.text, "perms", g, tuple(gens), degree)

    def name_list(self, close: str) -> list[Token]:
        out = []
        while not self.at(close):
            out.append(self.ident())
            if not self.optional(","):
                break
        return out

    def _free(self, name: Token) -> GroupDecl:
        self.expect("{")
        gens = self.name_list("}")
        self.expect("}")
        return GroupDecl(name.text, "free", self._alphabet(gens))

    def _alphabet(self, toks: list[Token]) -> Alphabet:
        seen = set()
        for t in toks:
            if t.text in seen:
                raise self.error(f"duplicate generator {t.text!r}", t)
            seen.add(t.text)
        return Alphabet(t.text for t in toks)

    def _presented(self, name: Token) -> GroupDecl:
        self.expect("<")
        alph = self._alphabet(self.name_list("|"))
        self.expect("|")
        scope = {g.name: ("gen", g) for g in alph}
        rels = []
        while not self.at(">"):
            rels.append(self.word_in(scope, _plain_word(alph)))
            if not self.optional(","):
                break
        self.expect(">")
        return GroupDecl(name.text, "presented", Presentation(alph, tuple(rels)))

    def vars_decl(self) -> None:
        self.next()
        toks = self.name_list(";")
        if not toks:
            raise self.error("expected variable names")
        for t in toks:
            self.declare(t)
            if t.text in self.names:
                raise self.error(f"{t.text!r} is already an element name", t)
            self.variables.append(t.text)
        self.var_alph = Alphabet(self.variables)
        for t in toks:
            self.names[t.text] = ("var", t.text)
        self.optional(";")

    def eq_decl(self) -> None:
        self.next()
        self.expect(":")
        start = self.peek()
        ast = self.word()
        self.expect("=")
        one = self.peek()
        if one.text != "1":
            raise self.error("equations have the form WORD = 1", one)
        self.next()
        self.optional(";")
        self.eq_asts.append((ast, start))

    def assert_decl(self) -> None:
        self.next()
        name = self.ident()
        flag = self.ident()
        if flag.text not in FLAGS:
            raise self.error(f"unknown property {flag.text!r}; expected one of {', '.join(FLAGS)}",
                             flag)
        self.assertions.append((name, flag))
        self.optional(";")

    def subgroup_decl(self) -> None:
        self.next()
        name = self.ident()
        self.declare(name)
        self.expect("=")
        group = self.ident()
        self.expect("<")
        words = []
        while not self.at(">"):
            words.append(self.word())
            if not self.optional(","):
                break
        self.expect(">")
        self.optional(";")
        self.subgroup_asts.append((name, group, words))

    def embed_decl(self) -> None:
        self.next()
        name = self.ident()
        self.declare(name)
        self.expect(":")
        src = self.ident()
        self.expect("->")
        dst = self.ident()
        self.expect("{")
        images = []
        while not self.at("}"):
            gen = self.ident()
            self.expect("=")
            images.append((gen, self.word()))
            if not (self.optional(",") or self.optional(";")):
                break
        self.expect("}")
        self.optional(";")
        self.embed_asts.append((name, src, dst, images))

    # words
    def word(self) -> tuple:
        items = []
        while True:
            t = self.peek()
            if t.kind == "ident" or (t.kind == "int" and t.text == "1") or t.text in ("(", "["):
                items.append(self.item())
            else:
                break
        if not items:
            raise self.error(f"expected a word, found {self.peek().text or 'end of input'!r}")
        return ("seq", items)

    def item(self) -> tuple:
        atom = self.atom()
        if self.optional("^"):
            if self.optional("{"):
                k = self.integer()
                self.expect("}")
            else:
                k = self.integer()
            atom = ("pow", atom, k)
        return atom

    def atom(self) -> tuple:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return ("one",)
        if self.optional("("):
            w = self.word()
            self.expect(")")
            return w
        if self.optional("["):
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return ("comm", u, v)
        tok = self.ident()
        if self.at("[") and self.peek(1).kind == "int" and self.peek(2).text == "]" \
                and any(g.name == tok.text for g in self.groups):
            self.next()
            k = self.integer()
            self.expect("]")
            return ("index", tok, k)
        return ("name", tok)

    def word_in(self, scope: dict, algebra: "Algebra"):
        return _evaluate(self.word(), scope, algebra, self)

    # resolution
    def build(self) -> Document:
        factors = tuple(g.factor for g in self.groups if not g.overgroup)
        try:
            spec = FreeProductSpec(factors, self.var_alph)
        except ValueError as exc:
            raise self.error(str(exc), self.toks[0]) from None
        groups = {g.name: g for g in self.groups}
        alg = _mixed(spec, groups)
        scope = dict(self.names)
        eqs = tuple(_evaluate(ast, scope, alg, self) for ast, _ in self.eq_asts)
        facs = {f.name for f in factors}
        for name, flag in self.assertions:
            if name.text not in facs:
                raise self.error(f"assert: {name.text!r} is not a declared factor", name)
        subs = []
        for name, gtok, words in self.subgroup_asts:
            g = self._finite_group(gtok, groups)
            gens = tuple(_evaluate(w, _group_scope(g), _element(g.group, gtok.text), self)
                         for w in words)
            subs.append(SubgroupDecl(name.text, gtok.text, gens, g.group.subgroup(gens)))
        embs = []
        for name, s, d, images in self.embed_asts:
            src = self._finite_group(s, groups)
            dst = self._finite_group(d, groups)
            names = src.element_names()
            img = []
            for gen, w in images:
                if gen.text not in names:
                    raise self.error(f"{gen.text!r} is not a named element of {s.text}", gen)
                img.append((gen.text, _evaluate(w, _group_scope(dst), _element(dst.group, d.text),
                                                self)))
            try:
                emb = _extend(src.group, dst.group, {names[n]: v for n, v in img}, name.text)
            except (EmbeddingError, ValueError) as exc:
                raise self.error(f"embed {name.text}: {exc}", name) from None
            embs.append(EmbedDecl(name.text, s.text, d.text, tuple(img), emb))
        return Document(tuple(self.groups), self.var_alph, eqs,
                        tuple((n.text, f.text) for n, f in self.assertions),
                        tuple(subs), tuple(embs), spec)

    def _finite_group(self, tok: Token, groups: dict) -> GroupDecl:
        g = groups.get(tok.text)
        if g is None:
            raise self.error(f"unknown group {tok.text!r}", tok)
        if g.kind not in ("finite", "perms"):
            raise self.error(f"{tok.text} is not a finite group", tok)
        return g


def _group_scope(g: GroupDecl) -> dict:
    return {n: ("const", g.name, e) for n, e in g.element_names().items()}


def _extend(src: FiniteGroup, dst: FiniteGroup, images: dict[int, int], name: str) -> Embedding:
    """Extend generator images to a homomorphism by breadth-first search."""
    m = {src.identity: dst.identity}
    queue = [src.identity]
    for a in queue:
        for g, v in images.items():
            b = src.mul(a, g)
            val = dst.mul(m[a], v)
            if b not in m:
                m[b] = val
                queue.append(b)
            elif m[b] != val:
                raise ValueError("the images do not define a homomorphism")
    if len(m) != src.order:
        raise ValueError("the named elements do not generate the source group")
    return Embedding(src, dst, tuple(m[a] for a in range(src.order)), name)


@dataclass
class Algebra:
    """How word syntax evaluates: unit, product, inverse, and the leaves."""

    one: Callable
    mul: Callable
    inv: Callable
    leaf: Callable  # (kind, payload) -> value
    prod: Callable | None = None  # product of a list in one pass

    def product(self, xs: list):
        if self.prod is not None:
            return self.prod(xs)
        r = self.one()
        for x in xs:
            r = self.mul(r, x)
        return r


def _power(alg: Algebra, x, k: int):
    if k < 0:
        x, k = alg.inv(x), -k
    result, base = alg.one(), x
    while k:
        if k & 1:
            result = alg.mul(result, base)
        k >>= 1
        if k:
            base = alg.mul(base, base)
    return result


def _plain_word(alph: Alphabet) -> Algebra:
    def leaf(kind, payload):
        if kind != "gen":
            raise ValueError("only generators may appear here")
        return Word(((payload, 1),), alph)
    return Algebra(alph.identity, lambda a, b: a * b, lambda a: ~a, leaf,
                   lambda ws: reduce(itertools.chain.from_iterable(w.syllables for w in ws), alph))


def _mixed(spec: FreeProductSpec, groups: dict[str, GroupDecl]) -> Algebra:
    def leaf(kind, payload):
        if kind == "var":
            return normalize([Var(spec.variables[payload], 1)], spec)
        fname, elem = payload
        if groups[fname].kind == "presented":
            raise ValueError(f"{fname} is a presented group; its elements cannot appear in equations")
        return normalize([Const(fname, elem)], spec)
    return Algebra(lambda: MixedWord((), spec), lambda a, b: a * b, inverse, leaf,
                   lambda ws: normalize(itertools.chain.from_iterable(w.syllables for w in ws),
                                        spec, trusted=True))


def _element(g: FiniteGroup, name: str) -> Algebra:
    def leaf(kind, payload):
        if kind != "const" or payload[0] != name:
            raise ValueError(f"not an element of {name}")
        return payload[1]
    return Algebra(lambda: g.identity, g.mul, g.inv, leaf)


def _split(name: str, scope: dict) -> list[str] | None:
    """Segment ``name`` into declared names, preferring longer pieces first."""
    lengths = sorted({len(n) for n in scope}, reverse=True)

    def go(i: int) -> list[str] | None:
        if i == len(name):
            return []
        for L in lengths:
            piece = name[i:i + L]
            if len(piece) == L and piece in scope:
                rest = go(i + L)
                if rest is not None:
                    return [piece] + rest
        return None

    return go(0)


def _evaluate(ast: tuple, scope: dict, alg: Algebra, parser: Parser):
    kind = ast[0]
    try:
        if kind == "seq":
            return alg.product([_evaluate(item, scope, alg, parser) for item in ast[1]])
        if kind == "one":
            return alg.one()
        if kind == "comm":
            u = _evaluate(ast[1], scope, alg, parser)
            v = _evaluate(ast[2], scope, alg, parser)
            return alg.mul(alg.mul(alg.inv(u), alg.inv(v)), alg.mul(u, v))
        if kind == "pow":
            inner = ast[1]
            if inner[0] == "name" and inner[1].text not in scope:
                pieces = _pieces(inner[1], scope, parser)
                return alg.product([_leaf(p, scope, alg) for p in pieces[:-1]]
                                   + [_power(alg, _leaf(pieces[-1], scope, alg), ast[2])])
            return _power(alg, _evaluate(inner, scope, alg, parser), ast[2])
        if kind == "name":
            return alg.product([_leaf(p, scope, alg) for p in _pieces(ast[1], scope, parser)])
        if kind == "index":
            tok, k = ast[1], ast[2]
            decl = next((g for g in parser.groups if g.name == tok.text), None)
            if decl is None or decl.kind not in ("finite", "perms"):
                raise parser.error(f"{tok.text!r} is not a finite group", tok)
            if not 0 <= k < decl.group.order:
                raise parser.error(f"{tok.text} has no element {k}", tok)
            return alg.leaf("const", (decl.name, k))
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        tok = _first_token(ast) or parser.peek()
        raise parser.error(str(exc), tok) from None
    raise AssertionError(kind)


def _first_token(ast: tuple) -> Token | None:
    if ast[0] in ("name", "index"):
        return ast[1]
    for part in ast[1:]:
        if isinstance(part, tuple):
            t = _first_token(part)
            if t:
                return t
        if isinstance(part, list):
            for p in part:
                t = _first_token(p)
                if t:
                    return t
    return None


def _pieces(tok: Token, scope: dict, parser: Parser) -> list[str]:
    if tok.text in scope:
        return [tok.text]
    pieces = _split(tok.text, scope)
    if pieces is None:
        raise parser.error(f"unresolved identifier {tok.text!r}", tok)
    return pieces


def _leaf(name: str, scope: dict, alg: Algebra):
    entry = scope[name]
    if entry[0] == "var":
        return alg.leaf("var", entry[1])
    if entry[0] == "gen":
        return alg.leaf("gen", entry[1])
    return alg.leaf("const", (entry[1], entry[2]))


def parse(text: str) -> Document:
    return Parser(text).document()


def parse_file(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _format_cycles(cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def format_element(decl: GroupDecl, e: int) -> str:
    g = decl.group
    if g.labels and g.labels[e]:
        return g.labels[e]
    return f"{decl.name}[{e}]"


def format_document(doc: Document) -> str:
    """Canonical text; :func:`parse` reads it back to an equal document."""
    out = []
    for g in doc.groups:
        head = f"{'overgroup' if g.overgroup else 'group'} {g.name} = {g.kind}"
        if g.kind == "finite":
            rows = ", ".join("[" + ", ".join(map(str, r)) + "]" for r in g.group.table.tolist())
            body = f"table = [{rows}]"
            if g.group.labels:
                body += f"; labels = [{', '.join(g.group.labels)}]"
            out.append(f"{head} {{ {body} }}")
        elif g.kind == "perms":
            gens = ", ".join((f"{n} = " if n else "") + _format_cycles(cs) for n, cs in g.generators)
            out.append(f"{head} {{ {gens} }}")
        elif g.kind == "free":
            out.append(f"{head} {{ {', '.join(g.group.names)} }}")
        else:
            p = g.group
            out.append(f"{head} < {', '.join(p.alphabet.names)} | "
                       f"{', '.join(str(r) for r in p.relators)} >")
    for name, flag in doc.assertions:
        out.append(f"assert {name} {flag}")
    if len(doc.variables):
        out.append(f"vars {', '.join(doc.variables.names)};")
    for w in doc.equations:
        out.append(f"eq: {w} = 1;")
    for s in doc.subgroups:
        decl = doc.group(s.group)
        gens = ", ".join(format_element(decl, e) for e in s.generators)
        out.append(f"subgroup {s.name} = {s.group} < {gens} >;")
    for e in doc.embeddings:
        dst = doc.group(e.target)
        imgs = ", ".join(f"{n} = {format_element(dst, v)}" for n, v in e.images)
        out.append(f"embed {e.name}: {e.source} -> {e.target} {{ {imgs} }}")
    return "\n".join(out) + "\n"
