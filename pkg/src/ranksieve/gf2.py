"""
Sparse GF(2) linear algebra on int bitsets: right and left nullspaces of
the relation matrix, and the pruning protocol that strips spurious
low-weight columns above the certification bound.

Rows are Python ints (bit i set = entry in column i), which keeps the
elimination word-packed without extra machinery.
"""

from __future__ import annotations


class ProtectedColumnError(ValueError):
    """A column at or below the certification bound would need removal."""


class SparseBitMatrix:
    def __init__(self, rows: list[int], ncols: int):
        self.rows = list(rows)
        self.ncols = ncols

    @classmethod
    def from_rows_of_indices(cls, rows_of_indices, ncols) -> "SparseBitMatrix":
        rows = []
        for idxs in rows_of_indices:
            r = 0
            for i in idxs:
                if not 0 <= i < ncols:
                    raise ValueError(f"column index {i} out of range")
                r ^= 1 << i
            rows.append(r)
        return cls(rows, ncols)

    @property
    def nrows(self):
        return len(self.rows)

    def column_weights(self) -> list[int]:
        w = [0] * self.ncols
        for r in self.rows:
            while r:
                low = r & -r
                w[low.bit_length() - 1] += 1
                r ^= low
        return w

    def row_indices(self, i) -> list[int]:
        r = self.rows[i]
        out = []
        while r:
            low = r & -r
            out.append(low.bit_length() - 1)
            r ^= low
        return out


def _echelon(rows: list[int]):
    """In-place forward elimination; returns {pivot_col: row_index}."""
    pivots = {}
    for i in range(len(rows)):
        r = rows[i]
        while r:
            col = r.bit_length() - 1
            if col in pivots:
                r ^= rows[pivots[col]]
            else:
                pivots[col] = i
                rows[i] = r
                break
        else:
            rows[i] = 0
    return pivots


def rank(m: SparseBitMatrix) -> int:
    rows = list(m.rows)
    return len(_echelon(rows))


def right_nullity(m: SparseBitMatrix):
    """
    (dimension, basis) of {x : M x = 0} over GF(2); basis vectors are ints
    over the column index space.
    """
    rows = list(m.rows)
    pivots = _echelon(rows)
    free_cols = [c for c in range(m.ncols) if c not in pivots]
    # back-substitute each free column against the echelon rows
    basis = []
    # reduce echelon rows fully (Gauss-Jordan) for clean reads
    for col in sorted(pivots, reverse=True):
        i = pivots[col]
        for cc, j in pivots.items():
            if j != i and (rows[j] >> col) & 1:
                rows[j] ^= rows[i]
    for fc in free_cols:
        v = 1 << fc
        for col, i in pivots.items():
            if (rows[i] >> fc) & 1:
                v ^= 1 << col
        basis.append(v)
    return len(free_cols), basis


def left_nullspace(m: SparseBitMatrix) -> list[int]:
    """Basis of {v : v M = 0}; vectors are ints over the row index space."""
    aug = [(row, 1 << i) for i, row in enumerate(m.rows)]
    pivots = {}
    basis = []
    for row, tag in aug:
        r, t = row, tag
        while r:
            col = r.bit_length() - 1
            if col in pivots:
                pr, pt = pivots[col]
                r ^= pr
                t ^= pt
            else:
                pivots[col] = (r, t)
                break
        else:
            basis.append(t)
    return basis


def prune(m: SparseBitMatrix, column_norms, protect_bound: int, min_column_weight: int = 2):
    """
    Iteratively drop columns of weight below `min_column_weight` together
    with their incident rows, but only for columns whose prime norm
    exceeds `protect_bound`.  A low-weight column at or below the bound
    raises ProtectedColumnError (removing it would invalidate the
    certification); zero-weight protected columns are reported instead so
    the caller can sieve targeted relations for them.

    Returns (pruned matrix, kept_column_indices, kept_row_indices,
    zero_protected_columns).
    """
    live_rows = set(range(m.nrows))
    live_cols = set(range(m.ncols))
    rows = list(m.rows)
    while True:
        w = [0] * m.ncols
        for i in live_rows:
            r = rows[i]
            while r:
                low = r & -r
                w[low.bit_length() - 1] += 1
                r ^= low
        bad = []
        zero_protected = []
        for c in sorted(live_cols):
            if w[c] >= min_column_weight:
                continue
            if column_norms[c] <= protect_bound:
                if w[c] == 0:
                    zero_protected.append(c)
                else:
                    raise ProtectedColumnError(
                        f"column {c} (norm {column_norms[c]}) has weight {w[c]}"
                        f" but lies at or below the certification bound {protect_bound}"
                    )
            else:
                bad.append(c)
        if not bad:
            kept_cols = sorted(live_cols)
            col_map = {c: i for i, c in enumerate(kept_cols)}
            kept_rows = sorted(live_rows)
            new_rows = []
            for i in kept_rows:
                r = rows[i]
                nr = 0
                while r:
                    low = r & -r
                    nr |= 1 << col_map[low.bit_length() - 1]
                    r ^= low
                new_rows.append(nr)
            return (
                SparseBitMatrix(new_rows, len(kept_cols)),
                kept_cols,
                kept_rows,
                zero_protected,
            )
        bad_mask = 0
        for c in bad:
            bad_mask |= 1 << c
        for i in list(live_rows):
            if rows[i] & bad_mask:
                live_rows.discard(i)
        live_cols.difference_update(bad)
