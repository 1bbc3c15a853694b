"""The cascade of strongly orthogonal roots and its Heisenberg layers."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .chevalley import ChevalleyTable, LieElement
from .report import VerificationReport
from .rootsys import Root, RootSystem, identity, mat_mul, mat_vec, neg


@dataclass(frozen=True)
class CascadeNode:
    beta: Root
    support_set: frozenset[int]
    delta_plus: tuple[Root, ...]
    layer: tuple[Root, ...]
    parent: int | None
    children: tuple[int, ...]
    h_dual: int
    depth: int


@dataclass(frozen=True, eq=False)
class Cascade:
    rs: RootSystem
    nodes: tuple[CascadeNode, ...]  # depth-first preorder

    @property
    def order(self) -> tuple[Root, ...]:
        return tuple(n.beta for n in self.nodes)

    @property
    def m(self) -> int:
        return len(self.nodes)

    def node(self, beta: Root) -> CascadeNode:
        for n in self.nodes:
            if n.beta == tuple(beta):
                return n
        raise KeyError(f"{tuple(beta)} is not in the cascade")

    def position(self, beta: Root) -> int:
        return self.order.index(tuple(beta))

    def layer(self, beta: Root) -> tuple[Root, ...]:
        return self.node(beta).layer

    @property
    def twin(self) -> dict[Root, Root]:
        out = {}
        for n in self.nodes:
            for phi in n.layer:
                if phi != n.beta:
                    out[phi] = tuple(b - p for b, p in zip(n.beta, phi))
        return out

    def layer_of(self, phi: Root) -> Root:
        """The cascade root whose layer contains phi."""
        for n in self.nodes:
            if tuple(phi) in n.layer:
                return n.beta
        raise KeyError(phi)

    def chain_of(self, phi: Root) -> tuple[Root, ...]:
        """The unique chain cascade C(phi)."""
        rs = self.rs
        supp = rs.support(phi)  # raises for non-positive input
        chain = []
        candidates = [i for i, n in enumerate(self.nodes) if n.parent is None]
        while True:
            k = next((i for i in candidates if supp <= self.nodes[i].support_set), None)
            if k is None:
                raise LookupError(f"no chain reaches {phi}")
            node = self.nodes[k]
            chain.append(node.beta)
            if rs.inner(phi, node.beta) > 0:
                return tuple(chain)
            candidates = list(node.children)

    def ancestors(self, k: int) -> Iterator[int]:
        p = self.nodes[k].parent
        while p is not None:
            yield p
            p = self.nodes[p].parent

    def to_dict(self) -> dict:
        return {
            "type": str(self.rs.spec),
            "m": self.m,
            "nodes": [
                {
                    "beta": list(n.beta),
                    "support": sorted(i + 1 for i in n.support_set),
                    "layer": [list(r) for r in n.layer],
                    "h_dual": n.h_dual,
                    "parent": n.parent,
                }
                for n in self.nodes
            ],
        }


def compute_cascade(rs: RootSystem) -> Cascade:
    raw: list[dict] = []

    def visit(support: frozenset[int], parent: int | None, depth: int) -> int:
        sub = rs.subsystem(support)
        (beta,) = sub.highest
        k = len(raw)
        layer = tuple(r for r in sub.positive_roots if rs.inner(r, beta) > 0)
        raw.append(dict(beta=beta, support_set=support, delta_plus=sub.positive_roots,
                        layer=layer, parent=parent, children=[],
                        h_dual=rs.dual_coxeter_number(support), depth=depth))
        # roots of g(beta) orthogonal to beta are supported on the simple roots
        # orthogonal to beta, since beta is dominant for g(beta)
        rest = frozenset(i for i in support if rs.inner(rs.simple_roots[i], beta) == 0)
        for piece in rs.connected_pieces(rest):
            raw[k]["children"].append(visit(piece, k, depth + 1))
        return k

    for comp in rs.components:
        visit(comp, None, 0)
    nodes = tuple(CascadeNode(**{**d, "children": tuple(d["children"])}) for d in raw)
    return Cascade(rs, nodes)


def strongly_orthogonal(rs: RootSystem, a: Root, b: Root) -> bool:
    plus = tuple(x + y for x, y in zip(a, b))
    minus = tuple(x - y for x, y in zip(a, b))
    return not rs.is_root(plus) and not rs.is_root(minus) and any(minus)


def reflection_product(rs: RootSystem, betas) -> tuple:
    m = identity(rs.rank)
    for b in betas:
        m = mat_mul(m, rs.reflection_matrix(b))
    return m


def verify_section1(rs: RootSystem, cascade: Cascade, max_orders: int = 120) -> VerificationReport:
    rep = VerificationReport("section1", str(rs.spec))
    B = cascade.order
    pos = rs.positive_roots

    bad = [n.beta for n in cascade.nodes
           if rs.subsystem(rs.support(n.beta)).highest != (n.beta,)]
    rep.add("locally_high", not bad, bad or None)

    bad = []
    for n in cascade.nodes:
        oracle = rs.dual_coxeter_number(rs.support(n.beta))
        if len(n.layer) != 2 * oracle - 3 or n.beta not in n.layer:
            bad.append({"beta": n.beta, "layer_size": len(n.layer), "h_dual": oracle})
    rep.add("layer_dimension", not bad, bad or None,
            sizes=[len(n.layer) for n in cascade.nodes])

    bad = [(n.beta, phi) for n in cascade.nodes for phi in n.layer
           if phi != n.beta and rs.pairing(phi, n.beta) != 1]
    rep.add("layer_ratio", not bad, bad or None)

    bad = []
    twin = cascade.twin
    for phi, psi in twin.items():
        if twin.get(psi) != phi or cascade.layer_of(psi) != cascade.layer_of(phi):
            bad.append(phi)
    rep.add("twin_involution", not bad, bad or None)

    seen: dict[Root, Root] = {}
    overlap = []
    for n in cascade.nodes:
        for phi in n.layer:
            if phi in seen:
                overlap.append(phi)
            seen[phi] = n.beta
    missing = [phi for phi in pos if phi not in seen]
    rep.add("layer_partition", not overlap and not missing and len(seen) == len(pos),
            {"overlap": overlap, "missing": missing} if overlap or missing else None)

    bad = [(a, b) for a, b in itertools.combinations(B, 2)
           if rs.inner(a, b) != 0 or not strongly_orthogonal(rs, a, b)]
    rep.add("strong_orthogonality", not bad, bad or None)

    addable = [phi for phi in pos if phi not in B
               and all(strongly_orthogonal(rs, phi, b) for b in B)]
    rep.add("maximality", not addable, addable or None)

    def chain(phi):
        try:
            return cascade.chain_of(phi)
        except LookupError:
            return None

    bad = []
    for i, j in itertools.permutations(range(len(B)), 2):
        ci, cj = chain(B[i]), chain(B[j])
        if ci is None or cj is None:
            bad.append((B[i], B[j], "no chain"))
            continue
        if ci == cj[:len(ci)] or cj == ci[:len(cj)]:
            continue
        di, dj = cascade.nodes[i].delta_plus, cascade.nodes[j].delta_plus
        for a in di:
            for b in dj:
                if not strongly_orthogonal(rs, a, b):
                    bad.append((B[i], B[j], a, b))
    rep.add("totally_disjoint", not bad, bad[:5] or None)

    w0 = rs.longest_element()
    perms = list(itertools.permutations(B))
    if len(perms) > max_orders:
        perms = [tuple(B), tuple(reversed(B))]
    bad = [list(map(list, p)) for p in perms if reflection_product(rs, p) != w0.matrix]
    rep.add("longest_element_product", not bad and len(w0) == len(pos), bad or None,
            orders_checked=len(perms))

    bad = []
    for n in cascade.nodes:
        local = rs.longest_element(rs.support(n.beta))
        sub_roots = n.delta_plus + tuple(neg(r) for r in n.delta_plus)
        for phi in sub_roots:
            img = w0(phi)
            if img != local(phi) or not rs.is_root(img) or (neg(img) not in n.delta_plus
                                                            and img not in n.delta_plus):
                bad.append((n.beta, phi))
    rep.add("longest_element_restriction", not bad, bad or None)

    bad = []
    for n in cascade.nodes:
        roots = set(n.delta_plus) | {neg(r) for r in n.delta_plus}
        for b in B:
            images = {tuple(int(x) for x in rs.reflect(b, r)) for r in roots}
            if images != roots:
                bad.append((n.beta, b, "unstable"))
            elif any(rs.reflect(b, r) != r for r in roots) and b not in roots:
                bad.append((n.beta, b, "not in W(beta)"))
    rep.add("reflection_stability", not bad, bad or None)

    bad = []
    for phi in pos:
        c = chain(phi)
        if c is None:
            bad.append(phi)
            continue
        ok = c[-1] == cascade.layer_of(phi)
        ok &= all(rs.inner(phi, b) == 0 for b in c[:-1])
        ok &= all(phi in cascade.node(b).delta_plus for b in c)
        ok &= all(_dominates(rs, x, y) for x, y in zip(c, c[1:]))
        if not ok:
            bad.append(phi)
    rep.add("chain_cascades", not bad, bad or None)
    return rep


def _dominates(rs: RootSystem, x: Root, y: Root) -> bool:
    """x > y in the partial order: x - y a nonzero sum of positive roots."""
    diff = tuple(a - b for a, b in zip(x, y))
    return any(diff) and all(d >= 0 for d in diff)


def heisenberg_bracket_check(tbl: ChevalleyTable, cascade: Cascade, beta: Root) -> bool:
    node = cascade.node(beta)
    ell = tbl.rank
    e = {phi: LieElement.root_vector(ell, phi) for phi in node.layer}
    twin = cascade.twin
    rest = [phi for phi in node.layer if phi != node.beta]
    for phi in node.layer:
        if not tbl.bracket(e[node.beta], e[phi]).is_zero():
            return False
    for phi, psi in itertools.combinations(rest, 2):
        br = tbl.bracket(e[phi], e[psi])
        if twin[phi] == psi:
            if set(br.roots) != {node.beta} or any(br.cartan):
                return False
        elif not br.is_zero():
            return False
    return True


def max_strongly_orthogonal(rs: RootSystem, required=()) -> int:
    """Size of the largest strongly orthogonal set of positive roots.

    Exhaustive branch and bound over the strong-orthogonality graph; used as
    an oracle for the cascade size.
    """
    pos = list(rs.positive_roots)
    ok = {a: {b for b in pos if strongly_orthogonal(rs, a, b)} for a in pos}
    start = [r for r in pos if all(r in ok[q] for q in required)]
    best = 0

    def grow(size: int, cands: list[Root]) -> None:
        nonlocal best
        if size + len(cands) <= best:
            return
        if not cands:
            best = max(best, size)
            return
        head, tail = cands[0], cands[1:]
        grow(size + 1, [c for c in tail if c in ok[head]])
        grow(size, tail)

    grow(len(required), [r for r in start if r not in required])
    return best
