"""Fusion-tree bases, F-moves between tree shapes, and braid generators.

A tree shape is a nested tuple of leaf positions, e.g. ``((0, 1), (2, 3))``.
A basis state assigns a label to every internal node other than the root;
nodes are identified by the frozenset of leaves below them, so states survive
rotations of unrelated parts of the tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .model import AnyonModel, ModelError

Tree = object  # int leaf or (Tree, Tree)


# ---------------------------------------------------------------- shapes

def staircase(n: int) -> tuple:
    if n < 2:
        raise ValueError("staircase needs at least 2 leaves")
    tree = (0, 1)
    for i in range(2, n):
        tree = (tree, i)
    return tree


PAIRED4 = ((0, 1), (2, 3))
PAIRED8 = (((0, 1), (2, 3)), ((4, 5), (6, 7)))


def shape_tree(shape, n: int) -> tuple:
    """Resolve a shape descriptor (``"staircase"``, ``"paired4"``, ``"paired8"``
    or an explicit nested tuple) for ``n`` leaves."""
    if isinstance(shape, tuple):
        tree = shape
    elif shape == "staircase":
        tree = staircase(n)
    elif shape == "paired4":
        if n != 4:
            raise ValueError("paired4 needs exactly 4 leaves")
        tree = PAIRED4
    elif shape == "paired8":
        if n != 8:
            raise ValueError("paired8 needs exactly 8 leaves")
        tree = PAIRED8
    else:
        raise ValueError(f"unknown shape {shape!r}")
    if sorted(leaves_of(tree)) != list(range(n)) or list(leaves_of(tree)) != list(range(n)):
        raise ValueError(f"shape {tree} does not have leaves 0..{n - 1} in order")
    return tree


def leaves_of(tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return leaves_of(tree[0]) + leaves_of(tree[1])


def internal_nodes(tree) -> list[frozenset]:
    """Non-root internal nodes in post-order."""
    out: list[frozenset] = []

    def walk(t):
        if isinstance(t, int):
            return
        walk(t[0])
        walk(t[1])
        out.append(frozenset(leaves_of(t)))

    walk(tree)
    return out[:-1]


def _get(tree, path):
    for p in path:
        tree = tree[p]
    return tree


def _set(tree, path, sub):
    if not path:
        return sub
    kids = list(tree)
    kids[path[0]] = _set(tree[path[0]], path[1:], sub)
    return tuple(kids)


# ---------------------------------------------------------------- enumeration

def _enumerate(model: AnyonModel, tree, leaves, total) -> list[dict]:
    N = model.fusion

    def rec(t):
        if isinstance(t, int):
            return [(leaves[t], {})]
        out = []
        key = frozenset(leaves_of(t))
        for a, la in rec(t[0]):
            for b, lb in rec(t[1]):
                for c in np.flatnonzero(N[a, b]):
                    d = dict(la)
                    d.update(lb)
                    d[key] = int(c)
                    out.append((int(c), d))
        return out

    root = frozenset(leaves_of(tree))
    states = []
    for c, d in rec(tree):
        if c == total:
            d.pop(root)
            states.append(d)
    order = internal_nodes(tree)
    states.sort(key=lambda d: tuple(d[k] for k in order))
    return states


def _state_key(d: dict) -> tuple:
    return tuple(sorted((tuple(sorted(k)), v) for k, v in d.items()))


@dataclass
class FusionBasis:
    """Admissible internal labelings of ``tree`` with fixed leaves and total.

    ``states`` lists label tuples in post-order node order.  ``signs`` is an
    optional per-state sign gauge applied to every operator.
    """

    model: AnyonModel
    leaves: tuple[int, ...]
    total: int
    tree: tuple
    states: list[tuple[int, ...]]
    signs: np.ndarray | None = None
    _canon: list[dict] = field(default_factory=list, repr=False)
    _perm: np.ndarray | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def n(self) -> int:
        return len(self.leaves)

    @property
    def nodes(self) -> list[frozenset]:
        return internal_nodes(self.tree)

    def state_names(self) -> list[tuple[str, ...]]:
        return [tuple(self.model.labels[x] for x in st) for st in self.states]

    def gauge_matrix(self) -> np.ndarray:
        """``T`` with ``T[i, canon_j] = sign_i`` so that ``op_here = T op_canon T^T``."""
        T = np.zeros((self.dim, self.dim))
        perm = self._perm if self._perm is not None else np.arange(self.dim)
        signs = self.signs if self.signs is not None else np.ones(self.dim)
        T[np.arange(self.dim), perm] = signs
        return T

    def to_local(self, op: np.ndarray) -> np.ndarray:
        T = self.gauge_matrix()
        return T @ op @ T.T

    def with_gauge(self, order: Sequence[tuple], signs: Sequence[int] | None = None) -> "FusionBasis":
        """Same space with states listed in ``order`` (label tuples, names or
        indices) and an optional sign per listed state."""
        canon_states = [tuple(d[k] for k in self.nodes) for d in self._canon]
        idx = []
        for st in order:
            st = tuple(self.model.index(x) for x in st)
            if st not in canon_states:
                raise ModelError(f"state {st} is not in this basis")
            idx.append(canon_states.index(st))
        if sorted(idx) != list(range(self.dim)):
            raise ModelError("gauge order must list every basis state exactly once")
        sg = None if signs is None else np.array(signs, dtype=float)
        if sg is not None and (sg.shape != (self.dim,) or not np.all(np.abs(sg) == 1)):
            raise ModelError("signs must be a +/-1 vector of basis length")
        return FusionBasis(
            self.model, self.leaves, self.total, self.tree,
            [canon_states[i] for i in idx], sg, self._canon, np.array(idx),
        )


def enumerate_basis(model: AnyonModel, leaves, total, shape="staircase") -> FusionBasis:
    """Fusion basis for leaf labels ``leaves`` (a sequence, or ``(label, n)``
    for ``n`` identical leaves) fusing to ``total``."""
    if isinstance(leaves, tuple) and len(leaves) == 2 and isinstance(leaves[1], int) and not isinstance(leaves[0], int):
        leaves = [leaves[0]] * leaves[1]
    leaves = tuple(model.index(x) for x in leaves)
    if not leaves:
        raise ValueError("need at least one leaf")
    total = model.index(total)
    if len(leaves) == 1:
        tree = 0
        canon = [{}] if leaves[0] == total else []
    else:
        tree = shape_tree(shape, len(leaves))
        canon = _enumerate(model, tree, leaves, total)
    nodes = internal_nodes(tree) if len(leaves) > 1 else []
    states = [tuple(d[k] for k in nodes) for d in canon]
    return FusionBasis(model, leaves, total, tree, states, None, canon)


def fusion_dimension(model: AnyonModel, leaves, total) -> int:
    return enumerate_basis(model, leaves, total).dim


# ---------------------------------------------------------------- F-moves

def _label(model_leaves, total, tree_root, state, node):
    if isinstance(node, int):
        return model_leaves[node]
    key = frozenset(leaves_of(node))
    if key == tree_root:
        return total
    return state[key]


def _rotate(basis_tree, states, model, leaves, total, path, direction):
    """Rotate the node at ``path``.  Returns (new_tree, new_states, M) with
    ``M[new, old]`` the amplitude of each new-tree state in each old state."""
    node = _get(basis_tree, path)
    root = frozenset(leaves_of(basis_tree))
    if direction == "right":
        (X, Y), Z = node
        new_node = (X, (Y, Z))
        gone, born = frozenset(leaves_of((X, Y))), frozenset(leaves_of((Y, Z)))
    else:
        X, (Y, Z) = node
        new_node = ((X, Y), Z)
        gone, born = frozenset(leaves_of((Y, Z))), frozenset(leaves_of((X, Y)))
    new_tree = _set(basis_tree, path, new_node)
    new_states = _enumerate(model, new_tree, leaves, total)
    index = {_state_key(d): i for i, d in enumerate(new_states)}
    N = model.fusion
    M = np.zeros((len(new_states), len(states)), dtype=complex)
    for j, st in enumerate(states):
        a = _label(leaves, total, root, st, X)
        b = _label(leaves, total, root, st, Y)
        c = _label(leaves, total, root, st, Z)
        d = _label(leaves, total, root, st, node)
        old = st[gone]
        rest = {k: v for k, v in st.items() if k != gone}
        if direction == "right":
            for f in range(model.rank):
                if N[b, c, f] and N[a, f, d]:
                    rest[born] = f
                    M[index[_state_key(rest)], j] += model.F(a, b, c, d, old, f)
        else:
            for e in range(model.rank):
                if N[a, b, e] and N[e, c, d]:
                    rest[born] = e
                    M[index[_state_key(rest)], j] += np.conj(model.F(a, b, c, d, e, old))
    return new_tree, new_states, M


def f_move_matrix(basis: FusionBasis, path: Sequence[int] = (), direction: str = "right"):
    """F-move at the node addressed by ``path`` (0 = left, 1 = right child).

    ``direction="right"`` re-associates ``((X Y) Z)`` into ``(X (Y Z))``.
    Returns ``(matrix, new_basis)``; the matrix maps coordinates in ``basis``
    to coordinates in the canonical ordering of ``new_basis``.
    """
    path = tuple(path)
    try:
        node = _get(basis.tree, path)
        ok = not isinstance(node, int) and not isinstance(node[0 if direction == "right" else 1], int)
    except (IndexError, TypeError):
        ok = False
    if not ok:
        raise ValueError(f"no {direction} rotation at vertex {path} of {basis.tree}")
    tree, states, M = _rotate(basis.tree, basis._canon, basis.model, basis.leaves, basis.total, path, direction)
    new = FusionBasis(basis.model, basis.leaves, basis.total, tree,
                      [tuple(d[k] for k in internal_nodes(tree)) for d in states], None, states)
    return M @ basis.gauge_matrix().T, new


def _to_comb(tree, states, model, leaves, total):
    """Rotate into the left comb; returns the comb states and the
    accumulated change-of-basis matrix."""
    M = np.eye(len(states), dtype=complex)

    def find(t, path):
        if isinstance(t, int):
            return None
        if not isinstance(t[1], int):
            return path
        return find(t[0], path + (0,))

    while True:
        path = find(tree, ())
        if path is None:
            return tree, states, M
        tree, states, step = _rotate(tree, states, model, leaves, total, path, "left")
        M = step @ M


def conversion_matrix(source: FusionBasis, target: FusionBasis) -> np.ndarray:
    """Unitary ``U`` with ``coords_target = U @ coords_source``, routed through
    the left-comb normal form."""
    if (source.model is not target.model or source.leaves != target.leaves
            or source.total != target.total):
        raise ValueError("bases differ in model, leaves or total")
    if source.n == 1:
        return target.gauge_matrix() @ source.gauge_matrix().T
    _, cs, Ms = _to_comb(source.tree, source._canon, source.model, source.leaves, source.total)
    _, ct, Mt = _to_comb(target.tree, target._canon, target.model, target.leaves, target.total)
    if [_state_key(d) for d in cs] != [_state_key(d) for d in ct]:
        raise RuntimeError("left-comb enumerations disagree")
    U = Mt.conj().T @ Ms
    return target.gauge_matrix() @ U @ source.gauge_matrix().T


# ---------------------------------------------------------------- braiding

def _sibling_moves(tree, p):
    """Rotations making leaves p and p+1 siblings.  Returns the list of
    (path, direction) moves and the final tree."""
    moves = []

    def lca_path(t, path):
        left = leaves_of(t[0])
        if p in left and p + 1 in left:
            return lca_path(t[0], path + (0,))
        if p not in left and p + 1 not in left:
            return lca_path(t[1], path + (1,))
        return path

    def apply(path, direction):
        nonlocal tree
        node = _get(tree, path)
        if direction == "right":
            (X, Y), Z = node
            tree = _set(tree, path, (X, (Y, Z)))
        else:
            X, (Y, Z) = node
            tree = _set(tree, path, ((X, Y), Z))
        moves.append((path, direction))

    L = lca_path(tree, ())
    # bring p to the right edge of the left subtree
    while not isinstance(_get(tree, L + (0,)), int) and not isinstance(_get(tree, L + (0, 1)), int):
        apply(L + (0,), "left")
    # bring p+1 to the left edge of the right subtree
    while not isinstance(_get(tree, L + (1,)), int) and not isinstance(_get(tree, L + (1, 0)), int):
        apply(L + (1,), "right")
    node = _get(tree, L)
    if isinstance(node[0], int) and isinstance(node[1], int):
        return moves, tree, L
    if isinstance(node[0], int):
        apply(L, "left")
        return moves, tree, L + (0,)
    if isinstance(node[1], int):
        apply(L, "right")
        return moves, tree, L + (1,)
    apply(L, "right")
    apply(L + (1,), "left")
    return moves, tree, L + (1, 0)


def _generator_canonical(basis: FusionBasis, i: int, inverse: bool) -> np.ndarray:
    key = ("gen", i, inverse)
    if key in basis._cache:
        return basis._cache[key]
    model, leaves, total = basis.model, basis.leaves, basis.total
    p = i - 1
    if leaves[p] != leaves[p + 1]:
        raise ValueError(f"sigma_{i} would swap unequal leaf labels; only same-label exchanges are supported")
    if basis.dim == 0:
        G = np.zeros((0, 0), dtype=complex)
        basis._cache[key] = G
        return G
    moves, _, pair_path = _sibling_moves(basis.tree, p)
    tree, states = basis.tree, basis._canon
    M = np.eye(len(states), dtype=complex)
    for path, direction in moves:
        tree, states, step = _rotate(tree, states, model, leaves, total, path, direction)
        M = step @ M
    root = frozenset(leaves_of(tree))
    pair = frozenset((p, p + 1))
    a, b = leaves[p], leaves[p + 1]
    phases = []
    for st in states:
        c = total if pair == root else st[pair]
        r = model.R(a, b, c)
        phases.append(np.conj(r) if inverse else r)
    G = M.conj().T @ np.diag(phases) @ M
    basis._cache[key] = G
    return G


def braid_generator(basis: FusionBasis, i: int, inverse: bool = False) -> np.ndarray:
    """Matrix of the exchange ``sigma_i`` of leaves ``i`` and ``i+1`` (1-based)."""
    if not 1 <= i <= basis.n - 1:
        raise IndexError(f"generator index {i} outside 1..{basis.n - 1}")
    return basis.to_local(_generator_canonical(basis, i, inverse))


def braid_word_matrix(basis: FusionBasis, word) -> np.ndarray:
    """Ordered product of generators for ``word`` (a BraidWord or a list of
    signed generator indices); the leftmost letter is the leftmost factor."""
    letters = getattr(word, "letters", word)
    strands = getattr(word, "strands", None)
    if strands is not None and strands != basis.n:
        raise ValueError(f"word has {strands} strands, basis has {basis.n} leaves")
    out = np.eye(basis.dim, dtype=complex)
    for g in letters:
        if g == 0:
            raise ValueError("generator 0 is not allowed")
        out = out @ braid_generator(basis, abs(g), inverse=g < 0)
    return out


# ---------------------------------------------------------------- two-parameter braid matrices

def parametric_rep(n: int, t: complex, b: complex) -> dict[str, np.ndarray]:
    """Monomial braid matrices: ``sigma_i`` swaps basis vectors i, i+1 with
    weights ``t`` (upper) and ``b`` (lower)."""
    if n not in (2, 3):
        raise ValueError("parametric_rep supports n = 2 or 3")
    if t == 0 or b == 0:
        raise ValueError("t and b must be nonzero")
    out = {}
    for i in range(1, n):
        g = np.eye(n, dtype=complex)
        gi = np.eye(n, dtype=complex)
        p = i - 1
        g[p, p] = g[p + 1, p + 1] = 0
        gi[p, p] = gi[p + 1, p + 1] = 0
        g[p, p + 1], g[p + 1, p] = t, b
        gi[p, p + 1], gi[p + 1, p] = 1 / b, 1 / t
        out[f"s{i}"] = g
        out[f"s{i}^-1"] = gi
    return out
