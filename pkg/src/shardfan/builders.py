"""Generators for the bundled fan families."""
from __future__ import annotations

from collections import deque
from itertools import product

from .fanio import FanDocument


def _unit(n: int, i: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(sign if j == i else 0 for j in range(n))


def path_a2() -> FanDocument:
    """g-fan of the path algebra of 1 -> 2 (five chambers)."""
    rays = ((0, 1), (1, 0), (1, -1), (0, -1), (-1, 0))
    chambers = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0))
    return FanDocument(2, rays, chambers, "FA2")


def gen_orthant(n: int) -> FanDocument:
    """Coordinate fan: rays +-e_i, one chamber per sign vector."""
    if not 1 <= n <= 6:
        raise ValueError("orthant fans are generated for 1 <= n <= 6")
    rays = tuple(_unit(n, i, s) for i in range(n) for s in (1, -1))
    chambers = tuple(tuple(2 * i + (0 if s > 0 else 1) for i, s in enumerate(signs))
                     for signs in product((1, -1), repeat=n))
    return FanDocument(n, rays, chambers, f"orthant{n}")


def gen_crown(p: int, q: int) -> FanDocument:
    """Rank-two fan with ``p`` rays (-k, 1) and ``q`` rays (1, -k) between the axes."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    # counterclockwise from e1
    circle = [(1, 0), (0, 1)]
    circle += [(-k, 1) for k in range(1, p + 1)]
    circle += [(-1, 0), (0, -1)]
    circle += [(1, -k) for k in range(q, 0, -1)]
    m = len(circle)
    chambers = tuple((i, (i + 1) % m) for i in range(m))
    return FanDocument(2, tuple(circle), chambers, f"crown{p}_{q}")


def cartan_A(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def simple_reflections_A(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Simple reflections acting on fundamental-weight coordinates.

    ``s_i(x) = x - x_i * alpha_i`` where alpha_i is row ``i`` of the Cartan
    matrix (symmetric in type A).
    """
    C = cartan_A(n)
    mats = []
    for i in range(n):
        rows = tuple(tuple((1 if r == c else 0) - (C[i][r] if c == i else 0) for c in range(n))
                     for r in range(n))
        mats.append(rows)
    return mats


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def gen_coxeter_A(n: int) -> FanDocument:
    """Coxeter fan of type A_n in fundamental-weight coordinates."""
    if not 2 <= n <= 4:
        raise ValueError("type A Coxeter fans are generated for 2 <= n <= 4")
    gens = simple_reflections_A(n)
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in gens:
            sw = _matmul(s, w)
            if sw not in seen:
                seen.add(sw)
                order.append(sw)
                queue.append(sw)
    rays: list[tuple[int, ...]] = [_unit(n, i) for i in range(n)]
    index = {r: i for i, r in enumerate(rays)}
    chambers = []
    for w in order:
        ch = []
        for j in range(n):
            col = tuple(w[i][j] for i in range(n))
            if col not in index:
                index[col] = len(rays)
                rays.append(col)
            ch.append(index[col])
        chambers.append(tuple(sorted(ch)))
    return FanDocument(n, tuple(rays), tuple(chambers), f"coxeterA{n}")

