"""Permutation actions of symmetry unitaries on a line set, and certificates
for the group-theoretic claims: 2-transitivity, group order, line-stabilizer
character multiplicity, and triviality of the projector commutant.

Permutations are tuples ``p`` of length n with ``p[i]`` = image of i.
Composition is ``compose(p, q) = p after q``, matching
``induced_permutation(U1 @ U2) == compose(perm(U1), perm(U2))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .heisenberg import commutant_dimension
from .lineset import LineSet

__all__ = [
    "NotASymmetry",
    "NotAProjector",
    "Perm",
    "compose",
    "invert",
    "identity_perm",
    "induced_permutation",
    "is_transitive",
    "two_transitivity",
    "group_order",
    "close_permutations",
    "ActionCertificate",
    "action_certificate",
    "MultiplicityCertificate",
    "multiplicity_certificate",
    "projector_commutant_dimension",
    "scalar_kernel_check",
]

Perm = tuple[int, ...]


class NotASymmetry(Exception):
    """The unitary does not permute the lines of the set."""


class NotAProjector(Exception):
    """The averaging operator is not idempotent to tolerance."""


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: i -> p[q[i]]."""
    return tuple(p[j] for j in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def induced_permutation(lines: LineSet, unitary: np.ndarray, tol: float = 1e-8) -> Perm:
    """The permutation i -> j with |<v_j, U v_i>| >= 1 - tol, if one exists.

    Raises NotASymmetry when some image is ambiguous or missing, or when the
    matches do not form a bijection.
    """
    V = lines.vectors
    overlaps = np.abs(V.conj().T @ (unitary @ V))  # [j, i] = |<v_j, U v_i>|
    n = lines.n
    images = []
    for i in range(n):
        hits = np.flatnonzero(overlaps[:, i] >= 1.0 - tol)
        if hits.size != 1:
            raise NotASymmetry(
                f"line {i} has {hits.size} near-unit overlaps after the map"
            )
        images.append(int(hits[0]))
    if len(set(images)) != n:
        raise NotASymmetry("induced map on lines is not a bijection")
    return tuple(images)


def _orbit(start: int, gens: Sequence[Perm]) -> set[int]:
    seen = {start}
    dq = deque([start])
    while dq:
        a = dq.popleft()
        for g in gens:
            b = g[a]
            if b not in seen:
                seen.add(b)
                dq.append(b)
    return seen


def is_transitive(gens: Sequence[Perm]) -> bool:
    if not gens:
        raise ValueError("empty generator list")
    return len(_orbit(0, gens)) == len(gens[0])


def two_transitivity(gens: Sequence[Perm]) -> bool:
    """True iff the orbit of the ordered pair (0, 1) has size n(n-1)."""
    if not gens:
        raise ValueError("empty generator list")
    n = len(gens[0])
    if n < 2:
        return False
    seen = {(0, 1)}
    dq = deque([(0, 1)])
    while dq:
        a, b = dq.popleft()
        for g in gens:
            pair = (g[a], g[b])
            if pair not in seen:
                seen.add(pair)
                dq.append(pair)
    return len(seen) == n * (n - 1)


def group_order(gens: Sequence[Perm]) -> int:
    """Order of the generated group by a stabilizer chain with base 0,1,2,...

    Deterministic incremental Schreier-Sims.  A sifted residue fixing points
    0..i-1 joins the generating set of every level <= i (it lies in each of
    those point stabilizers), the affected orbits are rebuilt, and all their
    Schreier generators are re-sifted, so the finished chain is verified.
    Order = product of the orbit sizes along the chain.
    """
    if not gens:
        raise ValueError("empty generator list")
    n = len(gens[0])
    e = identity_perm(n)
    strong: list[list[Perm]] = [[] for _ in range(n)]
    known: list[set[Perm]] = [set() for _ in range(n)]
    trans: list[dict[int, Perm]] = [{i: e} for i in range(n)]

    def rebuild(i: int) -> None:
        t = {i: e}
        dq = deque([i])
        while dq:
            a = dq.popleft()
            for g in strong[i]:
                b = g[a]
                if b not in t:
                    t[b] = compose(g, t[a])
                    dq.append(b)
        trans[i] = t

    def sift(g: Perm) -> tuple[Perm | None, int]:
        for i in range(n):
            a = g[i]
            if a == i:
                continue
            if a not in trans[i]:
                return g, i
            g = compose(invert(trans[i][a]), g)
        return None, n

    def add(g: Perm) -> None:
        stack = [g]
        while stack:
            h, i = sift(stack.pop())
            if h is None:
                continue
            for j in range(i + 1):
                if h not in known[j]:
                    known[j].add(h)
                    strong[j].append(h)
            for j in range(i + 1):
                rebuild(j)
                for a in sorted(trans[j]):
                    u = trans[j][a]
                    for s in strong[j]:
                        stack.append(compose(invert(trans[j][s[a]]), compose(s, u)))

    for g in gens:
        if len(g) != n:
            raise ValueError("generators have mixed degrees")
        add(tuple(g))
    order = 1
    for t in trans:
        order *= len(t)
    return order


def close_permutations(gens: Sequence[Perm], limit: int = 2_000_000) -> list[Perm]:
    """All elements of the generated group, BFS order; error beyond `limit`."""
    if not gens:
        raise ValueError("empty generator list")
    n = len(gens[0])
    e = identity_perm(n)
    seen = {e}
    dq = deque([e])
    out = [e]
    while dq:
        p = dq.popleft()
        for g in gens:
            q = compose(g, p)
            if q not in seen:
                if len(seen) >= limit:
                    raise ValueError(f"closure exceeds {limit} elements")
                seen.add(q)
                dq.append(q)
                out.append(q)
    return out


@dataclass(frozen=True)
class ActionCertificate:
    generators: tuple[Perm, ...]
    transitive: bool
    two_transitive: bool
    group_order: int
    matched_unitaries: int


def action_certificate(
    lines: LineSet,
    unitaries: Iterable[np.ndarray],
    tol: float = 1e-8,
    with_order: bool = True,
) -> ActionCertificate:
    """Extract permutations of every unitary and certify the induced group."""
    perms = [induced_permutation(lines, U, tol) for U in unitaries]
    if not perms:
        raise ValueError("no unitaries supplied")
    order = group_order(perms) if with_order else 0
    return ActionCertificate(
        generators=tuple(dict.fromkeys(perms)),
        transitive=is_transitive(perms),
        two_transitive=two_transitivity(perms),
        group_order=order,
        matched_unitaries=len(perms),
    )


@dataclass(frozen=True)
class MultiplicityCertificate:
    rank: int
    range_is_line0: bool
    idempotency_residual: float


def multiplicity_certificate(
    lines: LineSet,
    stab_unitaries: Sequence[np.ndarray],
    phases: Sequence[complex],
    tol: float = 1e-7,
) -> MultiplicityCertificate:
    """Rank of the character-averaging operator over a line-0 stabilizer.

    Pi = (1/|H|) sum_h conj(phase_h) U_h.  Rank 1 with range equal to line 0
    certifies that the character occurs exactly once in the restriction.
    """
    if len(stab_unitaries) != len(phases) or not stab_unitaries:
        raise ValueError("need equally many unitaries and phases, at least one")
    d = lines.d
    pi = np.zeros((d, d), dtype=complex)
    for U, lam in zip(stab_unitaries, phases):
        pi += np.conj(lam) * U
    pi /= len(stab_unitaries)
    residual = float(np.linalg.norm(pi @ pi - pi, 2))
    if residual > 1e-6:
        raise NotAProjector(f"averaging operator fails idempotency by {residual:.3e}")
    svals = np.linalg.svd(pi, compute_uv=False)
    rank = int(np.sum(svals > tol))
    range_ok = False
    if rank == 1:
        u = np.linalg.svd(pi)[0][:, 0]
        range_ok = bool(abs(np.vdot(u, lines.vectors[:, 0])) >= 1.0 - 1e-6)
    return MultiplicityCertificate(rank, range_ok, residual)


def projector_commutant_dimension(vectors: np.ndarray, tol: float = 1e-8) -> int:
    """Dimension of {X : X commutes with every v_i v_i*}.

    X commutes with a rank-1 projector exactly when v_i is an eigenvector of
    both X and X*; eigenvalues agree across non-orthogonal pairs, so for a
    spanning family the commutant consists of the constant blocks over the
    connected components of the non-orthogonality graph and its dimension is
    the component count.  Non-spanning input falls back to the nullity of the
    stacked commutation system.
    """
    V = np.asarray(vectors, dtype=complex)
    d, n = V.shape
    if np.linalg.matrix_rank(V, tol=1e-10) < d:
        projs = [np.outer(V[:, i], V[:, i].conj()) for i in range(n)]
        return commutant_dimension(projs, tol=tol)
    adj = np.abs(V.conj().T @ V) > tol
    seen = np.zeros(n, dtype=bool)
    components = 0
    for start in range(n):
        if seen[start]:
            continue
        components += 1
        dq = deque([start])
        seen[start] = True
        while dq:
            a = dq.popleft()
            for b in np.flatnonzero(adj[a] & ~seen):
                seen[b] = True
                dq.append(int(b))
    return components


def scalar_kernel_check(lines: LineSet | np.ndarray, tol: float = 1e-8) -> bool:
    """True iff every unitary fixing each line individually is scalar."""
    V = lines.vectors if isinstance(lines, LineSet) else np.asarray(lines, dtype=complex)
    return projector_commutant_dimension(V, tol=tol) == 1
