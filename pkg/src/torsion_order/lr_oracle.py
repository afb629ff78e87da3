"""Brute-force Littlewood-Richardson coefficients by counting tableaux.

Shares no code with :mod:`torsion_order.schubert`; it is used only to check
the Pieri-based product there.  ``c^nu_{lam,mu}`` counts semistandard fillings
of the skew shape ``nu / lam`` with content ``mu`` whose reverse reading word
(rows top to bottom, each read right to left) is a lattice word.
"""

from __future__ import annotations

from typing import Sequence


def _strip(part: Sequence[int]) -> tuple[int, ...]:
    return tuple(x for x in part if x > 0)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    lam, mu, nu = _strip(lam), _strip(mu), _strip(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(lam) > len(nu) or any(l > v for l, v in zip(lam, nu)):
        return 0
    lam_full = lam + (0,) * (len(nu) - len(lam))
    # Cells in reading order: row by row, right to left within a row.
    cells = [
        (row, col)
        for row in range(len(nu))
        for col in range(nu[row] - 1, lam_full[row] - 1, -1)
    ]
    letters = len(mu)
    filling: dict[tuple[int, int], int] = {}
    used = [0] * (letters + 1)

    def ok(row: int, col: int, x: int) -> bool:
        right = filling.get((row, col + 1))
        if right is not None and right < x:
            return False
        above = filling.get((row - 1, col))
        if above is not None and above >= x:
            return False
        if used[x] >= mu[x - 1]:
            return False
        # Lattice condition on the prefix of the reading word.
        if x > 1 and used[x] + 1 > used[x - 1]:
            return False
        return True

    def count(k: int) -> int:
        if k == len(cells):
            return 1
        row, col = cells[k]
        total = 0
        for x in range(1, letters + 1):
            if ok(row, col, x):
                filling[(row, col)] = x
                used[x] += 1
                total += count(k + 1)
                used[x] -= 1
                del filling[(row, col)]
        return total

    return count(0)


def grassmannian_product(
    m: int, lam: tuple[int, int], mu: tuple[int, int]
) -> dict[tuple[int, int], int]:
    """``sigma_lam * sigma_mu`` on Gr(2, m) as ``{nu: c^nu_{lam,mu}}`` inside the 2 x (m-2) box."""
    out = {}
    w = sum(lam) + sum(mu)
    for a in range(m - 1):
        b = w - a
        if 0 <= b <= a:
            c = lr_coefficient(lam, mu, (a, b))
            if c:
                out[(a, b)] = c
    return out
