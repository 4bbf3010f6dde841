"""Finite Kripke models: satisfaction, frame conditions, enumeration,
brute-force validity, and the line-oriented model text format.

Model text format, one directive per line (``#`` starts a comment)::

    worlds: w1 w2 w3
    access: w1->w2 w2->w2
    time: w1<w2<w3
    domain: a b
    val: p q @ w1
    ext: F @ w1 = {a, b}
    rel: R @ w2 = {(a,b), (b,b)}
    pos: G NE

``val`` lists the atoms true at a world (all others are false). ``ext``
gives a unary property's extension at a world (default empty), ``rel``
an n-ary predicate's. ``pos`` lists the named properties whose
extensions are positive; without it ``Pos(...)`` is uninterpreted.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

from . import evalcore
from .formula import (
    And,
    Apply,
    Atom,
    Box,
    Dia,
    Ess,
    Formula,
    Iff,
    Implies,
    Ind,
    IQuant,
    Mode,
    NegProp,
    Not,
    Or,
    Pos,
    PQuant,
    Prop,
    Signature,
    Tag,
    Temporal,
    subformulas,
    substitute,
)


class EvalError(ValueError):
    pass


class MissingTimeOrder(EvalError):
    pass


class BoundExceeded(EvalError):
    pass


class Uninterpreted(EvalError):
    pass


class BoundError(ValueError):
    """Enumeration request beyond the state-space guard."""


class FrameClass(str, Enum):
    K = "all"
    T = "reflexive"
    S4 = "preorder"
    S5 = "equivalence"

    @classmethod
    def for_system(cls, name: str) -> "FrameClass":
        return {"K": cls.K, "T": cls.T, "S4": cls.S4, "S5": cls.S5}[name]


MAX_ENUM_WORLDS = 4


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple
    access: frozenset = frozenset()
    time: tuple | None = None
    domain: tuple = ()
    valuation: frozenset = frozenset()  # (world, atom) pairs that are true
    ext: frozenset = frozenset()  # (world, property, individual)
    rel: frozenset = frozenset()  # (world, predicate, args tuple)
    positive: frozenset | None = None  # named properties with positive extension
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        ws = set(self.worlds)
        if len(ws) != len(self.worlds) or not self.worlds:
            raise ValueError("worlds must be a nonempty list of distinct ids")
        for a, b in self.access:
            if a not in ws or b not in ws:
                raise ValueError(f"access pair {a}->{b} mentions an unknown world")
        if self.time is not None and sorted(self.time) != sorted(self.worlds):
            raise ValueError("time order must list every world exactly once")
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.worlds)})

    # relation helpers
    def successors(self, w) -> list:
        return [v for v in self.worlds if (w, v) in self.access]

    def true_at(self, w, atom) -> bool:
        return (w, atom) in self.valuation

    def extension(self, name) -> tuple:
        """Per-world extension of a unary property, aligned with worlds."""
        return tuple(
            frozenset(d for (w2, n, d) in self.ext if w2 == w and n == name) for w in self.worlds
        )

    def has_extension(self, name) -> bool:
        return any(n == name for (_, n, _) in self.ext)

    def masks(self):
        """(succ, past, fut) bitmask lists for the evaluation kernel."""
        ix = self._index
        succ = [0] * len(self.worlds)
        for a, b in self.access:
            succ[ix[a]] |= 1 << ix[b]
        past = [0] * len(self.worlds)
        fut = [0] * len(self.worlds)
        if self.time is not None:
            pos = {w: i for i, w in enumerate(self.time)}
            for a in self.worlds:
                for b in self.worlds:
                    if pos[b] < pos[a]:
                        past[ix[a]] |= 1 << ix[b]
                    elif pos[b] > pos[a]:
                        fut[ix[a]] |= 1 << ix[b]
        return succ, past, fut


# ----------------------------------------------------------- satisfaction


def eval(m: KripkeModel, w, f: Formula, env: Mapping | None = None, prop_bound: int = 6) -> bool:
    """Kripke satisfaction of ``f`` at world ``w``.

    ``env`` maps individual variable names to domain elements and property
    variable names to per-world extensions (tuples aligned with
    ``m.worlds``). Free individual names that are domain elements denote
    themselves. Property quantifiers range over every world-indexed
    extension and require ``len(domain) * len(worlds) <= prop_bound``.
    """
    if w not in m._index:
        raise EvalError(f"unknown world {w!r}")
    norm = {}
    for k, v in (env or {}).items():
        if isinstance(k, str):
            k = ("prop", k) if isinstance(v, tuple) else ("ind", k)
        norm[k] = v
    return _Evaluator(m, prop_bound).sat(w, f, norm)


satisfies = eval


class _Evaluator:
    def __init__(self, m: KripkeModel, prop_bound: int):
        self.m = m
        self.bound = prop_bound
        self._all_ext = None

    def ind(self, t: Ind, env):
        v = env.get(("ind", t.name))
        if v is not None:
            return v
        if t.name in self.m.domain:
            return t.name
        raise Uninterpreted(f"individual {t.name!r} has no value")

    def ext_of(self, p, env) -> tuple:
        if isinstance(p, NegProp):
            base = self.ext_of(p.base, env)
            dom = frozenset(self.m.domain)
            return tuple(dom - e for e in base)
        if not p.named:
            v = env.get(("prop", p.name))
            if v is not None:
                return v
        if self.m.has_extension(p.name):
            return self.m.extension(p.name)
        if p.named and p.name in ("G", "NE"):
            from .definitions import DEFINITIONS

            d = DEFINITIONS["DEF-" + p.name]
            return tuple(
                frozenset(
                    a
                    for a in self.m.domain
                    if self.sat(w, d.definiens, {**env, ("ind", d.params[0][1]): a})
                )
                for w in self.m.worlds
            )
        if not p.named:
            raise Uninterpreted(f"property variable {p.name!r} has no value")
        return tuple(frozenset() for _ in self.m.worlds)

    def all_extensions(self):
        if self._all_ext is None:
            n = len(self.m.domain) * len(self.m.worlds)
            if n > self.bound:
                raise BoundExceeded(
                    f"property quantification needs domain*worlds <= {self.bound}, got {n}"
                )
            subsets = [
                frozenset(c)
                for r in range(len(self.m.domain) + 1)
                for c in itertools.combinations(self.m.domain, r)
            ]
            self._all_ext = list(itertools.product(subsets, repeat=len(self.m.worlds)))
        return self._all_ext

    def sat(self, w, f, env) -> bool:
        m = self.m
        if isinstance(f, Atom):
            if not f.args:
                return m.true_at(w, f.name)
            args = tuple(self.ind(a, env) for a in f.args)
            return (w, f.name, args) in m.rel
        if isinstance(f, Apply):
            return self.ind(f.arg, env) in self.ext_of(f.prop, env)[m._index[w]]
        if isinstance(f, Pos):
            if m.positive is None:
                raise Uninterpreted("positivity predicate has no interpretation in this model")
            target = self.ext_of(f.prop, env)
            return any(self.ext_of(Prop(n, True), env) == target for n in m.positive)
        if isinstance(f, Ess):
            from .definitions import DEFINITIONS

            d = DEFINITIONS["DEF-ESS"]
            (_, pv), (_, xv) = d.params
            ext = self.ext_of(f.prop, env)
            fresh = "__ess_prop"
            body = substitute(d.definiens, {("prop", pv): Prop(fresh)})
            return self.sat(w, body, {**env, ("prop", fresh): ext, ("ind", xv): self.ind(f.arg, env)})
        if isinstance(f, Not):
            return not self.sat(w, f.body, env)
        if isinstance(f, And):
            return self.sat(w, f.left, env) and self.sat(w, f.right, env)
        if isinstance(f, Or):
            return self.sat(w, f.left, env) or self.sat(w, f.right, env)
        if isinstance(f, Implies):
            return (not self.sat(w, f.left, env)) or self.sat(w, f.right, env)
        if isinstance(f, Iff):
            return self.sat(w, f.left, env) == self.sat(w, f.right, env)
        if isinstance(f, Box):
            return all(self.sat(v, f.body, env) for v in m.successors(w))
        if isinstance(f, Dia):
            return any(self.sat(v, f.body, env) for v in m.successors(w))
        if isinstance(f, Temporal):
            if m.time is None:
                raise MissingTimeOrder("temporal operator evaluated in a model without a time order")
            i = m.time.index(w)
            span = m.time[:i] if f.tag == Tag.PAST else m.time[i + 1 :]
            q = all if f.mode == Mode.ALL else any
            return q(self.sat(v, f.body, env) for v in span)
        if isinstance(f, IQuant):
            q = all if f.mode == Mode.ALL else any
            return q(self.sat(w, f.body, {**env, ("ind", f.var): a}) for a in m.domain)
        if isinstance(f, PQuant):
            q = all if f.mode == Mode.ALL else any
            return q(self.sat(w, f.body, {**env, ("prop", f.var): e}) for e in self.all_extensions())
        raise TypeError(f"not a formula: {f!r}")


def eval_all(m: KripkeModel, f: Formula) -> frozenset:
    """Worlds where a propositional modal/temporal formula holds (kernel path)."""
    atoms = sorted({g.name for g in subformulas(f) if isinstance(g, Atom) and not g.args})
    prog = evalcore.compile_formula(f, {a: i for i, a in enumerate(atoms)})
    succ, past, fut = m.masks()
    if any(isinstance(g, Temporal) for g in subformulas(f)) and m.time is None:
        raise MissingTimeOrder("temporal operator evaluated in a model without a time order")
    amask = []
    for a in atoms:
        mask = 0
        for i, w in enumerate(m.worlds):
            if m.true_at(w, a):
                mask |= 1 << i
        amask.append(mask)
    out = evalcore.eval_mask(prog, len(m.worlds), succ, past, fut, amask)
    return frozenset(w for i, w in enumerate(m.worlds) if out >> i & 1)


# -------------------------------------------------------- frame classes


def relation_flags(n: int, succ) -> set:
    pairs = {(a, b) for a in range(n) for b in range(n) if succ[a] >> b & 1}
    r = all((a, a) in pairs for a in range(n))
    s = all((b, a) in pairs for a, b in pairs)
    t = all((a, c) in pairs for a, b in pairs for b2, c in pairs if b == b2)
    ser = all(succ[a] for a in range(n))
    e = all((b, c) in pairs for a, b in pairs for a2, c in pairs if a == a2)
    flags = set()
    for name, ok in (("reflexive", r), ("symmetric", s), ("transitive", t), ("serial", ser), ("euclidean", e)):
        if ok:
            flags.add(name)
    if r and s and t:
        flags.add("equivalence")
    return flags


def check_frame_class(m: KripkeModel) -> set:
    """Frame conditions that hold for the model's accessibility relation,
    plus ``linear-time-valid`` when it carries a valid time order."""
    succ, _, _ = m.masks()
    flags = relation_flags(len(m.worlds), succ)
    if m.time is not None:
        flags.add("linear-time-valid")
    return flags


def in_class(n: int, succ, fc: FrameClass) -> bool:
    if fc == FrameClass.K:
        return True
    flags = relation_flags(n, succ)
    if fc == FrameClass.T:
        return "reflexive" in flags
    if fc == FrameClass.S4:
        return {"reflexive", "transitive"} <= flags
    return "equivalence" in flags


def enumerate_frames(n: int, fc: FrameClass = FrameClass.K, up_to_iso: bool = False) -> Iterator[list]:
    """Successor-mask lists of every relation on ``n`` worlds in ``fc``,
    in increasing order of the ``n*n``-bit encoding."""
    if n > MAX_ENUM_WORLDS:
        raise BoundError(f"at most {MAX_ENUM_WORLDS} worlds may be enumerated")
    full = (1 << n) - 1
    seen = set()
    perms = list(itertools.permutations(range(n))) if up_to_iso else None
    for code in range(1 << (n * n)):
        succ = [(code >> (a * n)) & full for a in range(n)]
        if not in_class(n, succ, fc):
            continue
        if up_to_iso:
            canon = min(_perm_code(succ, p, n) for p in perms)
            if canon in seen:
                continue
            seen.add(canon)
        yield succ


def _perm_code(succ, perm, n) -> int:
    out = 0
    for a in range(n):
        row = 0
        for b in range(n):
            if succ[a] >> b & 1:
                row |= 1 << perm[b]
        out |= row << (perm[a] * n)
    return out


def _world_names(n):
    return tuple(f"w{i + 1}" for i in range(n))


def model_from_masks(n, succ, atoms=(), atom_masks=(), **kw) -> KripkeModel:
    ws = _world_names(n)
    access = frozenset((ws[a], ws[b]) for a in range(n) for b in range(n) if succ[a] >> b & 1)
    val = frozenset((ws[i], atom) for atom, mask in zip(atoms, atom_masks) for i in range(n) if mask >> i & 1)
    return KripkeModel(ws, access, valuation=val, **kw)


def enumerate_models(
    sig: Signature, max_worlds: int, max_domain: int = 0, fc: FrameClass = FrameClass.K
) -> Iterator[KripkeModel]:
    """Every model over canonical names ``w1..wn`` / ``d1..dk`` whose frame is
    in ``fc``, one representative per world-renaming class, deterministic
    order. Atoms and predicates of ``sig`` are interpreted; the domain is
    nonempty only if ``sig`` has predicates."""
    if max_worlds > MAX_ENUM_WORLDS:
        raise BoundError(f"maxWorlds must be <= {MAX_ENUM_WORLDS}")
    atoms = sorted(sig.atoms)
    preds = sorted(sig.predicates)
    dom_sizes = range(1, max_domain + 1) if preds else [0]
    for n in range(1, max_worlds + 1):
        ws = _world_names(n)
        perms = list(itertools.permutations(range(n)))
        for k in dom_sizes:
            dom = tuple(f"d{i + 1}" for i in range(k))
            cells = [(name, args) for name, ar in preds for args in itertools.product(dom, repeat=ar)]
            for succ in enumerate_frames(n, fc):
                for val_code in range(1 << (len(atoms) * n)):
                    for rel_code in range(1 << (len(cells) * n)):
                        enc = _model_code(succ, val_code, rel_code, n, len(atoms), len(cells), None)
                        if any(
                            _model_code(succ, val_code, rel_code, n, len(atoms), len(cells), p) < enc
                            for p in perms
                        ):
                            continue
                        yield _decode(ws, dom, succ, atoms, cells, val_code, rel_code)


def _model_code(succ, val_code, rel_code, n, na, nc, perm):
    """Integer encoding of a model; ``perm`` renames worlds."""
    p = perm or tuple(range(n))
    full = (1 << n) - 1
    frame = _perm_code(succ, p, n)

    def permute_block(code, count):
        out = 0
        for j in range(count):
            mask = (code >> (j * n)) & full
            pm = 0
            for i in range(n):
                if mask >> i & 1:
                    pm |= 1 << p[i]
            out |= pm << (j * n)
        return out

    v = permute_block(val_code, na)
    r = permute_block(rel_code, nc)
    return (frame << (n * (na + nc))) | (v << (n * nc)) | r


def _decode(ws, dom, succ, atoms, cells, val_code, rel_code) -> KripkeModel:
    n = len(ws)
    full = (1 << n) - 1
    access = frozenset((ws[a], ws[b]) for a in range(n) for b in range(n) if succ[a] >> b & 1)
    val = set()
    for j, a in enumerate(atoms):
        mask = (val_code >> (j * n)) & full
        val.update((ws[i], a) for i in range(n) if mask >> i & 1)
    ext, rel = set(), set()
    for j, (name, args) in enumerate(cells):
        mask = (rel_code >> (j * n)) & full
        for i in range(n):
            if mask >> i & 1:
                if len(args) == 1:
                    ext.add((ws[i], name, args[0]))
                else:
                    rel.add((ws[i], name, args))
    return KripkeModel(ws, access, domain=dom, valuation=frozenset(val), ext=frozenset(ext), rel=frozenset(rel))


# ---------------------------------------------------- brute-force validity


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: str

    def __bool__(self):
        return False


def propositional_atoms(f: Formula) -> list:
    return sorted({g.name for g in subformulas(f) if isinstance(g, Atom) and not g.args})


def bruteforce_validity(f: Formula, fc: FrameClass, max_worlds: int = 3):
    """Check ``f`` at every world of every model with at most ``max_worlds``
    worlds over frames in ``fc``. Frames are taken up to isomorphism;
    valuations exhaustively. Returns :class:`Valid` or the first
    :class:`Countermodel` in enumeration order."""
    if max_worlds > MAX_ENUM_WORLDS:
        raise BoundError(f"maxWorlds must be <= {MAX_ENUM_WORLDS}")
    atoms = propositional_atoms(f)
    prog = evalcore.compile_formula(f, {a: i for i, a in enumerate(atoms)})
    for n in range(1, max_worlds + 1):
        zero = [0] * n
        for succ in enumerate_frames(n, fc, up_to_iso=True):
            v = evalcore.scan_valuations(prog, n, succ, zero, zero, len(atoms), False)
            if v >= 0:
                full = (1 << n) - 1
                masks = [(v >> (i * n)) & full for i in range(len(atoms))]
                model = model_from_masks(n, succ, atoms, masks)
                holds = evalcore.eval_mask(prog, n, succ, zero, zero, masks)
                bad = next(i for i in range(n) if not holds >> i & 1)
                return Countermodel(model, model.worlds[bad])
    return Valid()


# ----------------------------------------------------------- text format

_WORLD = r"[A-Za-z_][A-Za-z0-9_]*"


class ModelFormatError(ValueError):
    def __init__(self, msg, line):
        self.line = line
        super().__init__(f"line {line}: {msg}")


def parse_model(text: str) -> KripkeModel:
    worlds = access = time = domain = None
    val, ext, rel = set(), set(), set()
    positive = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ModelFormatError(f"expected 'key: value', got {line!r}", ln)
        k, rest = (s.strip() for s in line.split(":", 1))
        try:
            if k == "worlds":
                worlds = tuple(rest.split())
            elif k == "access":
                access = set()
                for item in rest.split():
                    a, b = item.split("->")
                    access.add((a, b))
            elif k == "time":
                time = tuple(s.strip() for s in rest.split("<")) if rest else ()
            elif k == "domain":
                domain = tuple(rest.split())
            elif k == "val":
                atoms, w = (s.strip() for s in rest.rsplit("@", 1))
                val.update((w, a) for a in atoms.split())
            elif k in ("ext", "rel"):
                mm = re.fullmatch(rf"({_WORLD})\s*@\s*({_WORLD})\s*=\s*\{{(.*)\}}", rest)
                if not mm:
                    raise ValueError("expected 'NAME @ WORLD = {...}'")
                name, w, body = mm.groups()
                if k == "ext":
                    for d in filter(None, (s.strip() for s in body.split(","))):
                        ext.add((w, name, d))
                else:
                    for tup in re.findall(r"\(([^)]*)\)", body):
                        rel.add((w, name, tuple(s.strip() for s in tup.split(","))))
            elif k == "pos":
                positive = frozenset(rest.split())
            else:
                raise ValueError(f"unknown key {k!r}")
        except ValueError as e:
            raise ModelFormatError(str(e), ln) from None
    if worlds is None:
        raise ModelFormatError("missing 'worlds:' line", 0)
    try:
        return KripkeModel(
            worlds,
            frozenset(access or ()),
            time if time else None,
            domain or (),
            frozenset(val),
            frozenset(ext),
            frozenset(rel),
            positive,
        )
    except ValueError as e:
        raise ModelFormatError(str(e), 0) from None


def format_model(m: KripkeModel) -> str:
    ix = m._index
    lines = ["worlds: " + " ".join(m.worlds)]
    acc = sorted(m.access, key=lambda p: (ix[p[0]], ix[p[1]]))
    lines.append("access: " + " ".join(f"{a}->{b}" for a, b in acc))
    if m.time is not None:
        lines.append("time: " + "<".join(m.time))
    if m.domain:
        lines.append("domain: " + " ".join(m.domain))
    for w in m.worlds:
        atoms = sorted(a for (w2, a) in m.valuation if w2 == w)
        if atoms:
            lines.append(f"val: {' '.join(atoms)} @ {w}")
    for name in sorted({n for (_, n, _) in m.ext}):
        for w in m.worlds:
            ds = sorted(d for (w2, n, d) in m.ext if w2 == w and n == name)
            lines.append(f"ext: {name} @ {w} = {{{', '.join(ds)}}}")
    for name in sorted({n for (_, n, _) in m.rel}):
        for w in m.worlds:
            ts = sorted(a for (w2, n, a) in m.rel if w2 == w and n == name)
            lines.append(f"rel: {name} @ {w} = {{{', '.join('(' + ','.join(t) + ')' for t in ts)}}}")
    if m.positive is not None:
        lines.append("pos: " + " ".join(sorted(m.positive)))
    return "\n".join(lines) + "\n"
