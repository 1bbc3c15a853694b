"""Root systems of semisimple Lie algebras in simple-root coordinates.

Roots are integer tuples over the simple roots, weights are tuples of
``Fraction``.  The bilinear form is the symmetrized Cartan form, scaled so
that short roots of every simple component have squared length 2.
Simple roots follow Bourbaki numbering (B_n: alpha_n short, C_n: alpha_n
long, G2: alpha_1 short, F4: alpha_1, alpha_2 long).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Root = tuple[int, ...]
Weight = tuple[Fraction, ...]
Matrix = tuple[tuple[int, ...], ...]

RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

# classical positive-root counts, used only as a sanity check in tests
def classical_count(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1) // 2
    if family in "BC":
        return n * n
    if family == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[family, n]


class TypeSpecError(ValueError):
    """Malformed or unsupported Cartan type."""


@dataclass(frozen=True)
class TypeSpec:
    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise TypeSpecError("at least one simple component is required")
        for family, rank in self.components:
            if family not in RANK_BOUNDS:
                raise TypeSpecError(f"unknown family {family!r}")
            lo, hi = RANK_BOUNDS[family]
            if not isinstance(rank, int) or rank < lo or (hi is not None and rank > hi):
                raise TypeSpecError(f"invalid rank {rank} for family {family}")

    @classmethod
    def parse(cls, text: str) -> "TypeSpec":
        """Parse ``A3``, ``B2xG2`` (case-insensitive, optional spaces)."""
        cleaned = re.sub(r"\s+", "", text).upper()
        if not cleaned:
            raise TypeSpecError("empty type spec")
        comps = []
        for part in cleaned.split("X"):
            m = re.fullmatch(r"([A-G])(\d+)", part)
            if m is None:
                raise TypeSpecError(f"cannot parse type {text!r}")
            comps.append((m.group(1), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def __str__(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)


def _dynkin(family: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the diagram edges (0-based)."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return [2] * n, chain
    if family == "B":
        return [4] * (n - 1) + [2], chain
    if family == "C":
        return [2] * (n - 1) + [4], chain
    if family == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        edges = [(0, 2), (2, 3), (3, 4)] + [(i, i + 1) for i in range(4, n - 1)] + [(1, 3)]
        return [2] * n, edges
    if family == "F":
        return [4, 4, 2, 2], chain
    if family == "G":
        return [2, 6], chain
    raise TypeSpecError(family)


def _gram_matrix(spec: TypeSpec) -> list[list[int]]:
    ell = spec.rank
    gram = [[0] * ell for _ in range(ell)]
    offset = 0
    for family, n in spec.components:
        lengths, edges = _dynkin(family, n)
        for i, sq in enumerate(lengths):
            gram[offset + i][offset + i] = sq
        for i, j in edges:
            val = -max(lengths[i], lengths[j]) // 2
            gram[offset + i][offset + j] = gram[offset + j][offset + i] = val
        offset += n
    return gram


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: Matrix

    def __call__(self, v: Sequence) -> tuple:
        return mat_vec(self.matrix, v)

    def __len__(self) -> int:
        return len(self.word)


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    cols = list(zip(*b))
    return tuple(tuple(sum(row[k] * col[k] for k in range(n)) for col in cols) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class SubSystem:
    """The positive roots supported on a set of simple roots."""

    simple: frozenset[int]
    positive_roots: tuple[Root, ...]
    highest: tuple[Root, ...]  # one per connected piece, ordered by smallest index


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: TypeSpec
    cartan: Matrix
    symmetrizer: tuple[int, ...]
    gram: Matrix
    positive_roots: tuple[Root, ...]
    _index: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    def index(self, root: Root) -> int:
        """Position of a positive root in ``positive_roots``."""
        return self._index[tuple(root)]

    def is_root(self, v: Sequence) -> bool:
        v = tuple(v)
        return v in self._index or neg(v) in self._index

    def is_positive_root(self, v: Sequence) -> bool:
        return tuple(v) in self._index

    # -- form ---------------------------------------------------------------

    def inner(self, v: Sequence, w: Sequence):
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError("shape mismatch")
        g = self.gram
        total = 0
        for i, vi in enumerate(v):
            if vi:
                row = g[i]
                total += vi * sum(row[j] * w[j] for j in range(self.rank) if w[j])
        return total

    def norm2(self, v: Sequence):
        return self.inner(v, v)

    def pairing(self, v: Sequence, beta: Sequence) -> Fraction:
        """<v, beta^vee> = 2 (v, beta) / (beta, beta)."""
        return Fraction(2 * self.inner(v, beta), self.norm2(beta))

    # -- structure ------------------------------------------------------------

    def height(self, root: Sequence) -> int:
        return sum(root)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        out, offset = [], 0
        for _, n in self.spec.components:
            out.append(frozenset(range(offset, offset + n)))
            offset += n
        return tuple(out)

    def support(self, phi: Sequence) -> frozenset[int]:
        if not self.is_positive_root(phi):
            raise ValueError(f"{tuple(phi)} is not a positive root")
        return frozenset(i for i, c in enumerate(phi) if c > 0)

    def connected_pieces(self, subset: Iterable[int]) -> list[frozenset[int]]:
        """Connected components of a set of nodes of the Dynkin diagram."""
        remaining = set(subset)
        pieces = []
        while remaining:
            start = min(remaining)
            stack, piece = [start], {start}
            while stack:
                i = stack.pop()
                for j in list(remaining):
                    if j not in piece and self.gram[i][j] != 0:
                        piece.add(j)
                        stack.append(j)
            remaining -= piece
            pieces.append(frozenset(piece))
        return sorted(pieces, key=min)

    def subsystem(self, simple_subset: Iterable[int]) -> SubSystem:
        subset = frozenset(simple_subset)
        roots = tuple(r for r in self.positive_roots
                      if all(c == 0 or i in subset for i, c in enumerate(r)))
        highest = []
        for piece in self.connected_pieces(subset):
            in_piece = [r for r in roots if all(c == 0 or i in piece for i, c in enumerate(r))]
            highest.append(max(in_piece, key=self.height))
        return SubSystem(subset, roots, tuple(highest))

    def highest_root(self, simple_subset: Iterable[int] | None = None) -> Root:
        """Highest root of a connected set of simple roots (default: first component)."""
        subset = self.components[0] if simple_subset is None else frozenset(simple_subset)
        sub = self.subsystem(subset)
        if len(sub.highest) != 1:
            raise ValueError("simple subset is not connected")
        return sub.highest[0]

    # -- Weyl group -----------------------------------------------------------

    def reflect(self, beta: Sequence, nu: Sequence) -> tuple:
        c = self.pairing(nu, beta)
        out = tuple(x - c * b for x, b in zip(nu, beta))
        if all(isinstance(x, int) for x in nu) and all(x.denominator == 1 for x in out):
            return tuple(int(x) for x in out)
        return out

    def reflection_matrix(self, beta: Sequence) -> Matrix:
        ell = self.rank
        cols = []
        for j in range(ell):
            e = tuple(int(i == j) for i in range(ell))
            img = self.reflect(beta, e)
            if any(Fraction(x).denominator != 1 for x in img):
                raise ValueError("reflection does not preserve the root lattice")
            cols.append(tuple(int(x) for x in img))
        return tuple(zip(*cols))

    @cached_property
    def simple_reflections(self) -> tuple[Matrix, ...]:
        return tuple(self.reflection_matrix(a) for a in self.simple_roots)

    def weyl_element(self, word: Sequence[int]) -> WeylElement:
        m = identity(self.rank)
        for i in word:
            m = mat_mul(m, self.simple_reflections[i])
        return WeylElement(tuple(word), m)

    def longest_element(self, simple_subset: Iterable[int] | None = None) -> WeylElement:
        """Longest element by greedy descent.

        Starting from the identity, right-multiply by any simple reflection
        s_i with w(alpha_i) positive; stop when every w(alpha_i) is negative.
        With ``simple_subset`` this gives the longest element of the
        parabolic subgroup generated by those reflections.
        """
        subset = sorted(range(self.rank) if simple_subset is None else simple_subset)
        w = identity(self.rank)
        word: list[int] = []
        while True:
            for i in subset:
                image = mat_vec(w, self.simple_roots[i])
                if all(c >= 0 for c in image):
                    w = mat_mul(w, self.simple_reflections[i])
                    word.append(i)
                    break
            else:
                return WeylElement(tuple(word), w)

    def fundamental_weights(self) -> list[Weight]:
        """omega_i in simple-root coordinates: (omega_i, alpha_j^vee) = delta_ij."""
        from .linalg import solve

        ell = self.rank
        # (omega, alpha_j^vee) = sum_k w_k cartan[j][k]
        out = []
        for i in range(ell):
            w = solve([list(self.cartan[j]) for j in range(ell)], [int(i == j) for j in range(ell)])
            out.append(tuple(w))
        return out

    def is_dominant(self, nu: Sequence) -> bool:
        return all(self.inner(nu, a) >= 0 for a in self.simple_roots)

    def dual_coxeter_number(self, simple_subset: Iterable[int]) -> int:
        """1 + <rho, theta^vee> over the (connected) subsystem."""
        sub = self.subsystem(simple_subset)
        if not sub.simple or len(sub.highest) != 1:
            raise ValueError("dual Coxeter number needs a nonempty connected subset")
        theta = sub.highest[0]
        two_rho = [sum(r[i] for r in sub.positive_roots) for i in range(self.rank)]
        value = 1 + Fraction(self.inner(two_rho, theta), self.norm2(theta))
        assert value.denominator == 1
        return int(value)


def neg(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def build_root_system(spec: TypeSpec | str) -> RootSystem:
    if isinstance(spec, str):
        spec = TypeSpec.parse(spec)
    gram = _gram_matrix(spec)
    ell = len(gram)
    cartan = tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(ell)) for i in range(ell))
    symmetrizer = tuple(gram[i][i] // 2 for i in range(ell))

    simple = [tuple(int(i == j) for j in range(ell)) for i in range(ell)]
    found = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = set()
        for phi in layer:
            for i in range(ell):
                # p: how far the alpha_i-string extends below phi
                p = 0
                down = list(phi)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * phi[j] for j in range(ell))
                q = p - pairing
                if q > 0:
                    up = list(phi)
                    up[i] += 1
                    nxt.add(tuple(up))
        layer = sorted(nxt)
        found.update(layer)
        ordered.extend(layer)
    # height first; within a height, alpha_1-heavy roots come first so the
    # simple roots appear as alpha_1, ..., alpha_l
    ordered.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    ordered = tuple(ordered)
    return RootSystem(
        spec=spec,
        cartan=cartan,
        symmetrizer=symmetrizer,
        gram=tuple(tuple(row) for row in gram),
        positive_roots=ordered,
        _index={r: k for k, r in enumerate(ordered)},
    )
