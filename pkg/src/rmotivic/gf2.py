"""Exact F2 linear algebra on bit-packed rows (one python int per row, bit j = column j)."""

from __future__ import annotations

from typing import List, Optional, Tuple


def rank(rows: List[int]) -> int:
    """Rank of the row space over F2."""
    return len(echelon(rows)[0])


def echelon(rows: List[int]) -> Tuple[List[int], List[int]]:
    """Row-reduce to a reduced echelon basis.

    Returns (basis, pivots) where basis[i] has leading (lowest set) bit
    pivots[i], pivots are strictly increasing, and every basis row is reduced
    against all the others.
    """
    basis: List[int] = []
    pivots: List[int] = []
    for row in rows:
        row = reduce_row(row, basis, pivots)
        if row == 0:
            continue
        p = (row & -row).bit_length() - 1
        # keep existing rows reduced against the new pivot
        for i, b in enumerate(basis):
            if (b >> p) & 1:
                basis[i] = b ^ row
        idx = 0
        while idx < len(pivots) and pivots[idx] < p:
            idx += 1
        basis.insert(idx, row)
        pivots.insert(idx, p)
    return basis, pivots


def reduce_row(row: int, basis: List[int], pivots: List[int]) -> int:
    """Reduce row against an echelon basis."""
    for b, p in zip(basis, pivots):
        if (row >> p) & 1:
            row ^= b
    return row


class Echelon:
    """Incremental echelon form with optional combination tracking.

    add() returns the residue of the vector after reduction; when the residue
    is nonzero the vector joins the basis.  With track=True, combination(v)
    expresses v over the *inserted* vectors (bitmask over insertion order).
    """

    def __init__(self, track: bool = False):
        self.basis: List[int] = []
        self.pivots: List[int] = []
        self.track = track
        self.combos: List[int] = []  # combos[i]: which inserted vectors sum to basis[i]
        self.n_inserted = 0

    def residue(self, row: int) -> int:
        for b, p in zip(self.basis, self.pivots):
            if (row >> p) & 1:
                row ^= b
        return row

    def add(self, row: int) -> int:
        combo = 0
        r = row
        for b, p, c in zip(self.basis, self.pivots, self.combos or [0] * len(self.basis)):
            if (r >> p) & 1:
                r ^= b
                combo ^= c
        tag = 1 << self.n_inserted
        self.n_inserted += 1
        if r == 0:
            return 0
        self.basis.append(r)
        self.pivots.append((r & -r).bit_length() - 1)
        self.combos.append(combo ^ tag if self.track else 0)
        return r

    def solve(self, target: int) -> Optional[int]:
        """Bitmask over inserted vectors summing to target, or None."""
        if not self.track:
            raise ValueError("echelon built without track=True")
        combo = 0
        r = target
        for b, p, c in zip(self.basis, self.pivots, self.combos):
            if (r >> p) & 1:
                r ^= b
                combo ^= c
        return combo if r == 0 else None

    def contains(self, row: int) -> bool:
        return self.residue(row) == 0

    @property
    def dim(self) -> int:
        return len(self.basis)


def kernel_of_rows(rows: List[int]) -> List[int]:
    """Kernel of lambda -> sum(lambda_i * rows_i): bitmasks over row indices.

    Returned masks are in echelon form over the row-index coordinates.
    """
    ech = Echelon(track=True)
    kernel: List[int] = []
    for i, row in enumerate(rows):
        combo = 0
        r = row
        for b, p, c in zip(ech.basis, ech.pivots, ech.combos):
            if (r >> p) & 1:
                r ^= b
                combo ^= c
        if r == 0:
            kernel.append(combo | (1 << i))
        else:
            ech.basis.append(r)
            ech.pivots.append((r & -r).bit_length() - 1)
            ech.combos.append(combo | (1 << i))
            ech.n_inserted += 1
    return kernel
