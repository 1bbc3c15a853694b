"""Chevalley basis structure constants and the bracket on g = n_- + h + n.

Signs follow the extraspecial-pair convention: for every non-simple positive
root xi, the special pair (alpha, beta) with alpha + beta = xi and alpha
earliest in the root order gets N_{alpha,beta} = +(p+1).  All other constants
come from the standard identities

    N_{a,b} = -N_{b,a},   N_{-a,-b} = -N_{a,b},
    N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)   when a + b + c = 0,

and the four-root relation for a + b + c + d = 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .rootsys import Root, RootSystem, neg


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _is_pos(a: Root) -> bool:
    return any(x > 0 for x in a)


class LieElement:
    """Element of g: coroot-basis Cartan part plus a sparse root part.

    ``roots`` maps signed roots to nonzero rational coefficients.
    """

    __slots__ = ("cartan", "roots")

    def __init__(self, cartan: Iterable = (), roots: Mapping | None = None, rank: int | None = None):
        cartan = tuple(Fraction(x) for x in cartan)
        if not cartan and rank is not None:
            cartan = (Fraction(0),) * rank
        self.cartan = cartan
        self.roots = {tuple(k): Fraction(v) for k, v in (roots or {}).items() if v != 0}

    @classmethod
    def root_vector(cls, rank: int, root: Root, coeff=1) -> "LieElement":
        return cls(rank=rank, roots={tuple(root): coeff})

    @classmethod
    def zero(cls, rank: int) -> "LieElement":
        return cls(rank=rank)

    def is_zero(self) -> bool:
        return not self.roots and not any(self.cartan)

    def in_n(self) -> bool:
        return not any(self.cartan) and all(_is_pos(r) for r in self.roots)

    def __add__(self, other: "LieElement") -> "LieElement":
        roots = dict(self.roots)
        for k, v in other.roots.items():
            roots[k] = roots.get(k, 0) + v
        return LieElement(tuple(a + b for a, b in zip(self.cartan, other.cartan)), roots)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement(tuple(c * x for x in self.cartan), {k: c * v for k, v in self.roots.items()})

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.cartan == other.cartan and self.roots == other.roots

    def __repr__(self) -> str:
        parts = [f"{v}*e{list(k)}" for k, v in sorted(self.roots.items())]
        if any(self.cartan):
            parts.append(f"h{[str(x) for x in self.cartan]}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True, eq=False)
class ChevalleyTable:
    rs: RootSystem
    constants: dict[tuple[Root, Root], int] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.rs.rank

    def N(self, a: Root, b: Root) -> int:
        """Structure constant N_{a,b}; zero when a + b is not a root."""
        return self.constants.get((tuple(a), tuple(b)), 0)

    def coroot(self, phi: Root) -> tuple[Fraction, ...]:
        """h_phi in the simple-coroot basis."""
        rs = self.rs
        n2 = rs.norm2(phi)
        return tuple(Fraction(c * rs.gram[i][i], n2) for i, c in enumerate(phi))

    def root_value(self, phi: Root, h) -> Fraction:
        """phi(h) for h given in the simple-coroot basis."""
        cart = self.rs.cartan
        return sum((Fraction(c) * sum(cart[i][j] * phi[j] for j in range(self.rank))
                    for i, c in enumerate(h) if c), Fraction(0))

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        ell = self.rank
        cartan = [Fraction(0)] * ell
        roots: dict[Root, Fraction] = {}

        def put(root, value):
            roots[root] = roots.get(root, 0) + value

        for a, ca in x.roots.items():
            for b, cb in y.roots.items():
                s = _add(a, b)
                if not any(s):
                    h = self.coroot(a)
                    for i in range(ell):
                        cartan[i] += ca * cb * h[i]
                    continue
                n = self.constants.get((a, b))
                if n:
                    put(s, ca * cb * n)
        if any(x.cartan):
            for b, cb in y.roots.items():
                v = self.root_value(b, x.cartan)
                if v:
                    put(b, v * cb)
        if any(y.cartan):
            for a, ca in x.roots.items():
                v = self.root_value(a, y.cartan)
                if v:
                    put(a, -v * ca)
        return LieElement(cartan, roots)

    def ad_nilpotent_power(self, z: LieElement, x: LieElement, k: int) -> LieElement:
        """(ad z)^k (x) for z in n."""
        if not z.in_n():
            raise ValueError("z must lie in n")
        for _ in range(k):
            if x.is_zero():
                break
            x = self.bracket(z, x)
        return x

    def basis(self) -> list[LieElement]:
        """e_phi (phi positive), then h_1..h_l, then e_{-phi}."""
        ell = self.rank
        out = [LieElement.root_vector(ell, r) for r in self.rs.positive_roots]
        out += [LieElement([int(i == j) for j in range(ell)]) for i in range(ell)]
        out += [LieElement.root_vector(ell, neg(r)) for r in self.rs.positive_roots]
        return out

    def to_tsv(self) -> str:
        lines = ["phi\tpsi\tN"]
        for (a, b), n in sorted(self.constants.items()):
            lines.append(f"{list(a)}\t{list(b)}\t{n}")
        return "\n".join(lines) + "\n"


def root_string_p(rs: RootSystem, phi: Root, psi: Root) -> int:
    """Largest p with psi - p*phi a root."""
    p = 0
    while rs.is_root(tuple(b - (p + 1) * a for a, b in zip(phi, psi))):
        p += 1
    return p


def build_chevalley(rs: RootSystem) -> ChevalleyTable:
    pos = rs.positive_roots
    order = {r: k for k, r in enumerate(pos)}
    n2 = {r: rs.norm2(r) for r in pos}
    table: dict[tuple[Root, Root], Fraction] = {}

    def norm2(r: Root) -> int:
        return n2[r] if r in n2 else n2[neg(r)]

    def N(a: Root, b: Root) -> Fraction:
        s = _add(a, b)
        if not any(s) or not rs.is_root(s):
            return Fraction(0)
        pa, pb = _is_pos(a), _is_pos(b)
        if pa and pb:
            return table[a, b]
        if not pa and not pb:
            return -N(neg(a), neg(b))
        # mixed signs: rotate the zero-sum triple (a, b, c) onto a same-sign pair
        c = neg(s)
        if _is_pos(c) == pa:  # (c, a) share a sign: N_{a,b}/(c,c) = N_{c,a}/(b,b)
            return Fraction(norm2(c), norm2(b)) * N(c, a)
        # (b, c) share a sign: N_{a,b}/(c,c) = N_{b,c}/(a,a)
        return Fraction(norm2(c), norm2(a)) * N(b, c)

    for xi in pos[rs.rank:]:
        pairs = [(a, _add(xi, neg(a))) for a in pos
                 if rs.is_positive_root(_add(xi, neg(a)))]
        pairs = [(a, b) for a, b in pairs if order[a] < order[b]]
        a0, b0 = min(pairs, key=lambda ab: order[ab[0]])
        n0 = Fraction(root_string_p(rs, a0, b0) + 1)
        table[a0, b0], table[b0, a0] = n0, -n0
        for a, b in pairs:
            if (a, b) == (a0, b0):
                continue
            # four-root relation with (a, b, -a0, -b0)
            total = Fraction(0)
            for x, y, u, v in ((b, neg(a0), a, neg(b0)), (neg(a0), a, b, neg(b0))):
                s = _add(x, y)
                n_xy = N(x, y)
                if n_xy:
                    total += n_xy * N(u, v) / norm2(s)
            val = norm2(xi) * total / n0
            table[a, b], table[b, a] = val, -val

    constants: dict[tuple[Root, Root], int] = {}
    for a in rs.roots:
        for b in rs.roots:
            v = N(a, b)
            if v:
                assert v.denominator == 1, (a, b, v)
                constants[a, b] = int(v)
    return ChevalleyTable(rs, constants)
