"""Symbolic Cech cocycles for the Fock-space gerbe over ``T x M``.

Words are products of letters:

* ``H(edge, a, b)``  the operator ``h_e^(a N + b)`` (``a = 0`` is a scalar),
* ``Sh(eps)``        the shift ``S^eps``,
* ``C(edge, order, arc, p)``  the projective cocycle ``c(h_e, e^{i theta})^p``
  (``order="h,t"``) or ``c(e^{i theta}, h_e)^p`` (``order="t,h"``),
* ``E(p)``           multiplication by ``e^{i p theta}`` on the one-particle space.

A ``Rewriter`` normalizes words with local rules: shift cancellation,
moving shifts to the right through ``S h^(aN+b) = h^(a(N-1)+b) S``,
commuting and merging scalar-type letters, orienting edges, eliminating
dependent edges with the local cocycle relations of ``h``, and rewriting
``c`` symbols.  The normal form is the sorted product of merged letters
followed by ``S^m``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "H", "Sh", "C", "E",
    "Rewriter", "Cover", "CechCochain", "CocycleFault",
    "word_inverse", "format_word",
    "cover_preset", "hilbert_cocycle", "lifted_cocycle", "coboundary_class",
    "coboundary", "expected_cocycle", "projective_cochain", "verify_equivalence",
    "dd_class_report", "derived_c_values",
]


class H(NamedTuple):
    edge: tuple[int, int]
    a: Fraction
    b: Fraction


class Sh(NamedTuple):
    eps: int


class C(NamedTuple):
    edge: tuple[int, int]
    order: str  # "h,t" or "t,h"
    arc: int
    p: int


class E(NamedTuple):
    p: int


def h(i, j, a=0, b=1) -> H:
    return H((i, j), Fraction(a), Fraction(b))


class CocycleFault(RuntimeError):
    """A computed cochain fails a condition it must satisfy by construction."""


# -- letters ------------------------------------------------------------------

_KIND = {H: 0, C: 1, E: 2}


def _key(x):
    if isinstance(x, H):
        return (0, x.edge)
    if isinstance(x, C):
        return (1, x.edge, x.order, x.arc)
    return (2,)


def _inverse(x):
    if isinstance(x, Sh):
        return Sh(-x.eps)
    if isinstance(x, H):
        return H(x.edge, -x.a, -x.b)
    if isinstance(x, C):
        return C(x.edge, x.order, x.arc, -x.p)
    return E(-x.p)


def word_inverse(word: Sequence) -> tuple:
    return tuple(_inverse(x) for x in reversed(word))


def _is_identity_letter(x) -> bool:
    if isinstance(x, H):
        return x.a == 0 and x.b == 0
    if isinstance(x, C):
        return x.p == 0
    if isinstance(x, E):
        return x.p == 0
    return False


def _frac(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_letter(x) -> str:
    if isinstance(x, Sh):
        return "S" if x.eps == 1 else "S^-1"
    if isinstance(x, H):
        i, j = x.edge
        if x.a == 0:
            exp = _frac(x.b)
        elif x.b == 0:
            exp = ("N" if x.a == 1 else f"{_frac(x.a)}N")
        else:
            exp = ("N" if x.a == 1 else f"{_frac(x.a)}N") + ("+" if x.b > 0 else "-") + _frac(abs(x.b))
        return f"h{i}{j}" if exp == "1" else f"h{i}{j}^({exp})"
    if isinstance(x, C):
        i, j = x.edge
        inner = f"h{i}{j},e^it" if x.order == "h,t" else f"e^it,h{i}{j}"
        tag = f"[{x.arc:+d}]"
        return f"c({inner}){tag}" + ("" if x.p == 1 else f"^{x.p}")
    return "e^it" if x.p == 1 else f"e^({x.p}it)"


def format_word(word: Sequence) -> str:
    return " ".join(format_letter(x) for x in word) if word else "1"


# -- rewriting ----------------------------------------------------------------

class Rewriter:
    """Local rewrite rules in the context of one simplex.

    ``vertices`` are the indices of the M-patches whose common intersection
    carries the word; the cocycle relation ``h_uv = h_{wu}^-1 h_{wv}`` with
    ``w = min(vertices)`` is applied there.  With ``trivial=True`` the line
    bundle is trivialized (``h = 1``).
    """

    RULES = ("cancel", "conjugate", "orient", "cocycle", "c_value", "sort", "merge", "drop", "trivial")

    def __init__(self, vertices: Iterable[int] = (), trivial: bool = False, c_values: bool = True):
        self.vertices = frozenset(vertices)
        self.root = min(self.vertices) if self.vertices else None
        self.trivial = trivial
        self.c_values = c_values

    # each finder yields positions where the rule applies
    def _find(self, rule: str, w: tuple) -> list[int]:
        n = len(w)
        if rule == "cancel":
            return [i for i in range(n - 1) if isinstance(w[i], Sh) and isinstance(w[i + 1], Sh)
                    and w[i].eps == -w[i + 1].eps]
        if rule == "conjugate":
            return [i for i in range(n - 1) if isinstance(w[i], Sh) and not isinstance(w[i + 1], Sh)]
        if rule == "orient":
            return [i for i, x in enumerate(w) if isinstance(x, H) and x.edge[0] >= x.edge[1]]
        if rule == "cocycle":
            return [i for i, x in enumerate(w) if isinstance(x, H) and self._dependent(x.edge)]
        if rule == "c_value":
            return [i for i, x in enumerate(w) if isinstance(x, C)] if self.c_values else []
        if rule == "sort":
            return [i for i in range(n - 1) if not isinstance(w[i], Sh) and not isinstance(w[i + 1], Sh)
                    and _key(w[i]) > _key(w[i + 1])]
        if rule == "merge":
            return [i for i in range(n - 1) if not isinstance(w[i], Sh) and not isinstance(w[i + 1], Sh)
                    and _key(w[i]) == _key(w[i + 1])]
        if rule == "drop":
            return [i for i, x in enumerate(w) if _is_identity_letter(x)]
        if rule == "trivial":
            return [i for i, x in enumerate(w) if isinstance(x, (H, C))] if self.trivial else []
        raise KeyError(rule)

    def _dependent(self, edge) -> bool:
        u, v = edge
        return (u < v and self.root is not None and u != self.root
                and u in self.vertices and v in self.vertices)

    def _apply(self, rule: str, w: tuple, i: int) -> tuple:
        x = w[i]
        if rule == "cancel":
            return w[:i] + w[i + 2:]
        if rule == "conjugate":
            y = w[i + 1]
            if isinstance(y, H):
                y = H(y.edge, y.a, y.b - x.eps * y.a)
            return w[:i] + (y, x) + w[i + 2:]
        if rule == "orient":
            u, v = x.edge
            rep = () if u == v else (H((v, u), -x.a, -x.b),)
            return w[:i] + rep + w[i + 1:]
        if rule == "cocycle":
            u, v = x.edge
            r = self.root
            return w[:i] + (H((r, u), -x.a, -x.b), H((r, v), x.a, x.b)) + w[i + 1:]
        if rule == "c_value":
            half = Fraction(x.p, 2)
            return w[:i] + (H(x.edge, Fraction(0), half if x.order == "h,t" else -half),) + w[i + 1:]
        if rule == "sort":
            return w[:i] + (w[i + 1], x) + w[i + 2:]
        if rule == "merge":
            y = w[i + 1]
            if isinstance(x, H):
                m = H(x.edge, x.a + y.a, x.b + y.b)
            elif isinstance(x, C):
                m = C(x.edge, x.order, x.arc, x.p + y.p)
            else:
                m = E(x.p + y.p)
            return w[:i] + (m,) + w[i + 2:]
        if rule in ("drop", "trivial"):
            return w[:i] + w[i + 1:]
        raise KeyError(rule)

    def redexes(self, w: tuple) -> list[tuple[str, int]]:
        return [(r, i) for r in self.RULES for i in self._find(r, w)]

    def normalize(self, word: Sequence, rng: random.Random | None = None,
                  order: Sequence[str] | None = None, max_steps: int = 100_000) -> tuple:
        """Rewrite until no rule applies.

        Without ``rng`` the first rule in ``order`` (default ``RULES``) at its
        leftmost position fires; with ``rng`` a uniformly random redex fires.
        """
        w = tuple(word)
        rules = tuple(order) if order is not None else self.RULES
        for _ in range(max_steps):
            if rng is None:
                for r in rules:
                    pos = self._find(r, w)
                    if pos:
                        w = self._apply(r, w, pos[0])
                        break
                else:
                    return w
            else:
                red = [(r, i) for r in rules for i in self._find(r, w)]
                if not red:
                    return w
                r, i = rng.choice(red)
                w = self._apply(r, w, i)
        raise CocycleFault("rewriting did not terminate")

    @staticmethod
    def is_scalar(nf: Sequence) -> bool:
        return all(isinstance(x, (H, C)) and (not isinstance(x, H) or x.a == 0) for x in nf)


def derived_c_values() -> dict:
    """Values of ``c`` forced by combining the shift rule with the projective relation.

    The two ways of moving ``S`` out of ``h^(N/2) S h^(N/2)`` must agree:
    via the shift rule it equals ``h^(N-1/2) S``; via the projective relation
    it equals ``h^N S c(h, e^it)^-1`` and ``S h^N c(e^it, h)^-1``.
    Solving with opaque ``c`` gives the two exponents returned here.
    """
    rw = Rewriter(c_values=False)
    sym = rw.normalize((h(1, 2, Fraction(1, 2), 0), Sh(1), h(1, 2, Fraction(1, 2), 0)))
    right = rw.normalize((h(1, 2, 1, 0), Sh(1)))
    left = rw.normalize((Sh(1), h(1, 2, 1, 0)))
    # sym = right * c(h,t)^-1  ->  c(h,t) = right * sym^-1 (all scalars after cancelling S)
    c_ht = rw.normalize(right + word_inverse(sym))
    c_th = rw.normalize(left + word_inverse(sym))
    return {"c(h,e^it)": c_ht, "c(e^it,h)": c_th,
            "c(h,e^it) exponent": c_ht[0].b if c_ht else Fraction(0),
            "c(e^it,h) exponent": c_th[0].b if c_th else Fraction(0)}


# -- covers and cochains --------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    """Cover ``V_1..V_n`` of ``M`` by its nerve; patches ``1..2n`` of ``T x M``.

    Patch ``a <= n`` is ``T_+ x V_a`` and patch ``a > n`` is ``T_- x V_{a-n}``.
    ``windings`` marks edges of the nerve with the winding number of ``h``
    along a 1-cycle through that overlap.
    """

    n_patches: int
    nerve: frozenset
    windings: tuple = ()
    name: str = "custom"

    @classmethod
    def build(cls, n_patches: int, nerve: Iterable[Iterable[int]],
              windings: dict | None = None, name: str = "custom") -> "Cover":
        simplices = frozenset(frozenset(s) for s in nerve)
        cov = cls(n_patches, simplices, tuple(sorted((tuple(sorted(e)), int(w))
                                                     for e, w in (windings or {}).items())), name)
        cov.validate()
        return cov

    def violations(self) -> list[str]:
        bad = []
        n = self.n_patches
        if n < 1:
            bad.append("n_patches must be positive")
        for s in self.nerve:
            if not s or any(not (1 <= i <= n) for i in s):
                bad.append(f"nerve simplex {sorted(s)} has indices outside 1..{n}")
                continue
            for r in range(1, len(s)):
                for sub in itertools.combinations(sorted(s), r):
                    if frozenset(sub) not in self.nerve:
                        bad.append(f"nerve not closed under subsets: {sorted(s)} lacks {list(sub)}")
        for i in range(1, n + 1):
            if frozenset([i]) not in self.nerve:
                bad.append(f"patch {i} missing from the nerve")
        for e, _ in self.windings:
            if frozenset(e) not in self.nerve or len(set(e)) != 2:
                bad.append(f"winding marked on {e}, which is not an edge of the nerve")
        return bad

    def validate(self) -> "Cover":
        bad = self.violations()
        if bad:
            raise ValueError("invalid cover: " + "; ".join(bad))
        return self

    @property
    def patches(self) -> range:
        return range(1, 2 * self.n_patches + 1)

    def m_index(self, a: int) -> int:
        return a if a <= self.n_patches else a - self.n_patches

    def side(self, a: int) -> int:
        return +1 if a <= self.n_patches else -1

    def m_set(self, simplex: Sequence[int]) -> frozenset:
        return frozenset(self.m_index(a) for a in simplex)

    def is_mixed(self, simplex: Sequence[int]) -> bool:
        return len({self.side(a) for a in simplex}) == 2

    def arcs(self, simplex: Sequence[int]) -> tuple[int, ...]:
        return (-1, 1) if self.is_mixed(simplex) else (0,)

    def simplices(self, size: int) -> list[tuple[int, ...]]:
        """Ordered tuples of distinct patches with nonempty common overlap."""
        return [s for s in itertools.permutations(self.patches, size) if self.m_set(s) in self.nerve]

    def rewriter(self, simplex: Sequence[int], trivial: bool = False) -> Rewriter:
        return Rewriter(self.m_set(simplex), trivial)

    @property
    def total_winding(self) -> int:
        return sum(w for _, w in self.windings)

    def to_json(self) -> dict:
        return {"name": self.name, "n_patches": self.n_patches,
                "nerve": sorted(sorted(s) for s in self.nerve),
                "windings": [[list(e), w] for e, w in self.windings]}


def cover_preset(name: str, k: int = 1) -> Cover:
    """``"S2"``: two caps with the winding ``k`` on the equator overlap.
    ``"tetra"``: four patches with all pairs and triples overlapping."""
    key = name.lower()
    if key == "s2":
        return Cover.build(2, [[1], [2], [1, 2]], {(1, 2): k}, "S2")
    if key in ("tetra", "tetrahedral", "4-patch"):
        nerve = [c for r in (1, 2, 3) for c in itertools.combinations(range(1, 5), r)]
        return Cover.build(4, nerve, {(1, 2): k}, "tetra")
    raise ValueError(f"unknown cover preset {name!r}")


@dataclass
class CechCochain:
    """Components keyed by ``(ordered patch tuple, arc)``; arc is 0 on unsplit overlaps."""

    cover: Cover
    degree: int
    components: dict = field(default_factory=dict)
    name: str = ""
    trivial: bool = False

    def get(self, simplex: Sequence[int], arc: int) -> tuple:
        s = tuple(simplex)
        if len(s) != self.degree + 1:
            raise ValueError(f"degree-{self.degree} cochain evaluated on {s}")
        if len(set(s)) < len(s):
            return ()
        arc = arc if self.cover.is_mixed(s) else 0
        return self.components.get((s, arc), ())

    def normal_form(self, simplex, arc) -> tuple:
        return self.cover.rewriter(simplex, self.trivial).normalize(self.get(simplex, arc))

    def nontrivial(self) -> dict:
        out = {}
        for (s, arc), w in sorted(self.components.items()):
            nf = self.cover.rewriter(s, self.trivial).normalize(w)
            if nf:
                out[(s, arc)] = nf
        return out

    def to_json(self) -> list[dict]:
        return [{"simplex": list(s), "arc": arc, "word": format_word(w)}
                for (s, arc), w in sorted(self.components.items())]


def _pairs(cover: Cover):
    for s in cover.simplices(2):
        for arc in cover.arcs(s):
            yield s, arc


def _degree1(cover: Cover, mixed_plus, name: str, trivial=False, mixed_minus=None,
             pure=lambda i, j: (h(i, j),)) -> CechCochain:
    """Fill a degree-1 cochain from its values on ``(i, j)``, ``(i+n, j+n)`` and ``(i, j+n)``."""
    n = cover.n_patches
    comps = {}
    for (a, b), arc in _pairs(cover):
        if cover.side(a) == cover.side(b):
            w = pure(cover.m_index(a), cover.m_index(b))
        else:
            flip = a > n  # (j+n, i) is the inverse of (i, j+n)
            i, j = (b, a - n) if flip else (a, b - n)
            fn = mixed_plus if arc == 1 else (mixed_minus or pure)
            w = fn(i, j)
            if flip:
                w = word_inverse(w)
        comps[((a, b), arc)] = tuple(w)
    return CechCochain(cover, 1, comps, name, trivial)


def hilbert_cocycle(cover: Cover, check: bool = True) -> CechCochain:
    """Transition data of the Hilbert bundle: ``h_ij`` except ``e^{i theta} h_ij`` on arc +1."""
    g = _degree1(cover, lambda i, j: (E(1), h(i, j)), "g")
    if check:
        bad = []
        for s in cover.simplices(3):
            for arc in cover.arcs(s):
                a, b, c = s
                w = g.get((a, b), arc) + g.get((b, c), arc) + word_inverse(g.get((a, c), arc))
                nf = cover.rewriter(s).normalize(w)
                if nf:
                    bad.append((s, arc, format_word(nf)))
        if bad:
            raise CocycleFault(f"1-cocycle condition fails on {bad[:5]}")
    return g


_HALF = Fraction(1, 2)


def lifted_cocycle(cover: Cover, form: str = "symmetric", trivial: bool = False) -> CechCochain:
    """Operator-valued lift ``g^`` of the transition data to the Fock space.

    ``form`` selects the lift of ``e^{i theta} h_ij`` on arc +1:
    ``"symmetric"``: ``h^(N/2) S h^(N/2)``; ``"right"``: ``h^N S``;
    ``"left"``: ``S h^N``.  All other components are ``h^N``.
    """
    forms = {
        "symmetric": lambda i, j: (h(i, j, _HALF, 0), Sh(1), h(i, j, _HALF, 0)),
        "right": lambda i, j: (h(i, j, 1, 0), Sh(1)),
        "left": lambda i, j: (Sh(1), h(i, j, 1, 0)),
    }
    if form not in forms:
        raise ValueError(f"unknown lift form {form!r}")
    return _degree1(cover, forms[form], f"g^[{form}]", trivial,
                    pure=lambda i, j: (h(i, j, 1, 0),))


def coboundary(cochain: CechCochain, require_scalar: bool = False) -> CechCochain:
    """``(d b)_{a0..ap+1} = prod_k b(face_k)^{(-1)^k}``, normalized per simplex."""
    cover, p = cochain.cover, cochain.degree
    comps = {}
    faults = []
    for s in cover.simplices(p + 2):
        rw = cover.rewriter(s, cochain.trivial)
        for arc in cover.arcs(s):
            if p == 1:
                a, b, c = s
                w = cochain.get((a, b), arc) + cochain.get((b, c), arc) \
                    + word_inverse(cochain.get((a, c), arc))
            else:
                w = ()
                for k in range(len(s)):
                    face = cochain.get(s[:k] + s[k + 1:], arc)
                    w = w + (face if k % 2 == 0 else word_inverse(face))
            nf = rw.normalize(w)
            if require_scalar and not Rewriter.is_scalar(nf):
                faults.append((s, arc, format_word(nf)))
            comps[(s, arc)] = nf
    if faults:
        raise CocycleFault(f"non-scalar coboundary components (missing rewrite rule?): {faults[:5]}")
    return CechCochain(cover, p + 1, comps, f"d({cochain.name})", cochain.trivial)


def coboundary_class(g_hat: CechCochain) -> CechCochain:
    """``f_abc = g^_ab g^_bc g^_ac^-1``; every component must normalize to a scalar."""
    if g_hat.degree != 1:
        raise ValueError("coboundary_class expects a degree-1 cochain")
    out = coboundary(g_hat, require_scalar=True)
    out.name = f"f from {g_hat.name}"
    return out


def expected_cocycle(cover: Cover, name: str) -> CechCochain:
    """The scalar cocycles in closed form.

    ``"f"``: ``h_ij`` on ``(i, j, k+n)``; ``"f_prime"``: ``h_ij^(1/2)`` on
    ``(i, j, k+n)`` and ``h_jk^(-1/2)`` on ``(i, j+n, k+n)``;
    ``"f_double_prime"``: ``h_jk^-1`` on ``(i, j+n, k+n)``.  All on arc +1,
    extended by total antisymmetry.
    """
    n = cover.n_patches
    table = {
        "f": (lambda i, j, k: (h(i, j),), lambda i, j, k: ()),
        "f_prime": (lambda i, j, k: (h(i, j, 0, _HALF),), lambda i, j, k: (h(j, k, 0, -_HALF),)),
        "f_double_prime": (lambda i, j, k: (), lambda i, j, k: (h(j, k, 0, -1),)),
    }
    if name not in table:
        raise ValueError(f"unknown cocycle {name!r}")
    two_plus, one_plus = table[name]
    comps = {}
    for s in cover.simplices(3):
        for arc in cover.arcs(s):
            w = ()
            if arc == 1:
                plus = [a for a in s if a <= n]
                minus = [a for a in s if a > n]
                canon = tuple(plus + minus)
                perm = [s.index(a) for a in canon]
                odd = sum(1 for x, y in itertools.combinations(perm, 2) if x > y) % 2
                i = canon[0]
                if len(plus) == 2:
                    w = two_plus(canon[0], canon[1], canon[2] - n)
                else:
                    w = one_plus(i, canon[1] - n, canon[2] - n)
                if odd:
                    w = word_inverse(w)
            comps[(s, arc)] = tuple(w)
    return CechCochain(cover, 2, comps, name)


def projective_cochain(cover: Cover, side: str = "right") -> CechCochain:
    """Degree-1 scalar cochains built from ``c``.

    ``"right"``: ``c(h_ij, e^it)^-1`` on ``(i, j+n)``, arc +1.
    ``"left"``: ``c(e^it, h_ij)^-1`` on ``(i, j+n)``, arc +1.
    """
    order = {"right": "h,t", "left": "t,h"}[side]
    return _degree1(cover, lambda i, j: (C((i, j), order, 1, -1),) if i != j else (),
                    f"c^-1[{side}]", pure=lambda i, j: ())


def verify_equivalence(f1: CechCochain, f2: CechCochain, b: CechCochain) -> dict:
    """Certify ``f2 = (d b) f1`` componentwise.

    Returns ``{"equal": bool, "certificates": [...], "failing": [...]}`` with
    one certificate per (simplex, arc).
    """
    if not (f1.cover == f2.cover == b.cover):
        raise ValueError("cochains live on different covers")
    if f1.degree != 2 or f2.degree != 2 or b.degree != 1:
        raise ValueError("expected two degree-2 cochains and a degree-1 cochain")
    db = coboundary(b)
    certs, failing = [], []
    cover = f1.cover
    for s in cover.simplices(3):
        rw = cover.rewriter(s)
        for arc in cover.arcs(s):
            lhs = rw.normalize(f2.get(s, arc))
            rhs = rw.normalize(db.get(s, arc) + f1.get(s, arc))
            ok = lhs == rhs
            certs.append({"simplex": list(s), "arc": arc, "lhs_normal_form": format_word(lhs),
                          "rhs_normal_form": format_word(rhs), "equal": ok})
            if not ok:
                failing.append((s, arc))
    return {"equal": not failing, "certificates": certs, "failing": failing}


def is_cocycle(f: CechCochain) -> bool:
    return all(not w for w in coboundary(f).components.values())


def antisymmetry_violations(f: CechCochain) -> list:
    """Components whose odd permutations fail to give the inverse word."""
    bad = []
    cover = f.cover
    for s in cover.simplices(f.degree + 1):
        rw = cover.rewriter(s, f.trivial)
        for arc in cover.arcs(s):
            base = rw.normalize(f.get(s, arc))
            for perm in itertools.permutations(range(len(s))):
                t = tuple(s[i] for i in perm)
                odd = sum(1 for x, y in itertools.combinations(perm, 2) if x > y) % 2
                want = rw.normalize(word_inverse(base)) if odd else base
                if rw.normalize(f.get(t, arc)) != want:
                    bad.append((t, arc))
    return bad


def dd_class_report(cover: Cover, k: int) -> dict:
    """Cech data of the gerbe next to the degree-3 part of the index character.

    The Cech integer is the total winding of ``h`` over the marked overlaps;
    the de Rham integer is the coefficient of ``dphi/2pi ^ F_b/2pi i`` in the
    index character.  With ``k = 0`` the bundle is trivialized and every
    component of ``f`` must reduce to 1.
    """
    from .forms import index_character

    trivial = k == 0
    f = coboundary_class(lifted_cocycle(cover, "left", trivial=trivial))
    comps = f.nontrivial()
    cech_k = cover.total_winding
    char = index_character(k)
    de_rham_k = char.coefficient(("dphi/2pi", "F_b/2pi i"))
    return {
        "cover": cover.to_json(),
        "k": k,
        "cech_components": [{"simplex": list(s), "arc": arc, "word": format_word(w)}
                            for (s, arc), w in comps.items()],
        "cech_degree": cech_k,
        "de_rham_degree3": str(de_rham_k),
        "consistent": Fraction(cech_k) == de_rham_k,
        "all_trivial": not comps,
    }
