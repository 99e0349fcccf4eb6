"""Pure-Python kernels for the swap scan and DMS saturation checks.

Same contract as the compiled module ``lsckc._speedups``; one of the two is
selected at import time by :mod:`lsckc.kernels`. All inputs are numpy
arrays prepared by the solver:

* adjacency is CSR over (CL-member row, candidate-center column) pairs
  whose effective distance fits the probe threshold, columns ascending;
* ``set_rows`` / ``set_off`` flatten the CL sets as row indices;
* ``row_sets`` / ``row_sets_off`` invert that (sets containing each row);
* ``member`` is the set-by-row membership matrix (uint8);
* ``row_col`` maps a row to its own candidate column, ``col_row`` the
  reverse (or -1 for columns that are not CL members);
* masks are uint8 over candidate columns.

The swap scan enumerates p over CL member rows ascending, then center
pairs (u, v) from the pool in lexicographic order, and returns the first
triple whose post-swap center set still saturates every CL set. Candidate
columns are sorted by point id, so ascending column order is ascending id
order.
"""

from __future__ import annotations

BACKEND = "python"


def _member_cols(member_s, row_col, n_cand):
    """Expand per-row set membership to a per-column lookup."""
    out = [False] * n_cand
    for r, is_m in enumerate(member_s):
        if is_m:
            out[row_col[r]] = True
    return out


def _saturated(adj, rows_s, mask, member_cols_s, row_col, match_col):
    """Kuhn augmenting search: every non-center member row must be matched.

    ``match_col`` maps candidate column -> matched row; mutated in place so
    the caller can inspect which columns the witness uses.
    """

    def augment(r, visited):
        for c in adj[r]:
            if not mask[c] or member_cols_s[c] or c in visited:
                continue
            visited.add(c)
            w = match_col.get(c, -1)
            if w == -1 or augment(w, visited):
                match_col[c] = r
                return True
        return False

    for r in rows_s:
        if mask[row_col[r]]:
            continue  # self-served member
        if not augment(r, set()):
            return False
    return True


def _unpack(adj_off, adj_cols, set_off, set_rows, member, row_col, n_cand):
    n_rows = len(adj_off) - 1
    n_sets = len(set_off) - 1
    adj = [adj_cols[adj_off[r] : adj_off[r + 1]].tolist() for r in range(n_rows)]
    sets = [set_rows[set_off[s] : set_off[s + 1]].tolist() for s in range(n_sets)]
    row_col_l = row_col.tolist()
    member_cols = [_member_cols(member[s].tolist(), row_col_l, n_cand) for s in range(n_sets)]
    return adj, sets, row_col_l, member_cols


def dms_saturated(adj_off, adj_cols, set_off, set_rows, member, row_col, center_mask):
    """True iff the center mask saturates every CL set."""
    n_cand = len(center_mask)
    adj, sets, row_col_l, member_cols = _unpack(
        adj_off, adj_cols, set_off, set_rows, member, row_col, n_cand
    )
    mask = center_mask.tolist()
    for s in range(len(sets)):
        if not _saturated(adj, sets[s], mask, member_cols[s], row_col_l, {}):
            return False
    return True


def find_swap(
    adj_off,
    adj_cols,
    set_off,
    set_rows,
    row_sets_off,
    row_sets,
    member,
    row_col,
    col_row,
    fixed_mask,
    pool_cols,
):
    """First feasible enhanced single swap, or None.

    Returns ``(p_row, u_pos, v_pos)`` with positions into ``pool_cols``.
    The post-swap center set is ``(centers - {u, v}) | {p}``; feasibility
    means every CL set stays saturated. Sets that cannot have changed (no
    membership among p, u, v; witness matching untouched by the removed
    columns) are skipped, which keeps the scan cheap without changing its
    outcome.
    """
    n_cand = len(fixed_mask)
    n_rows = len(adj_off) - 1
    adj, sets, row_col_l, member_cols = _unpack(
        adj_off, adj_cols, set_off, set_rows, member, row_col, n_cand
    )
    col_row_l = col_row.tolist()
    fixed_l = fixed_mask.tolist()
    pool_l = pool_cols.tolist()
    row_sets_l = [
        row_sets[row_sets_off[r] : row_sets_off[r + 1]].tolist() for r in range(n_rows)
    ]

    mask = list(fixed_l)
    for c in pool_l:
        mask[c] = 1

    # Witness matchings under the current centers; track which sets' witness
    # uses which column so removals know what to recheck.
    uses = [[] for _ in range(n_cand)]
    for s in range(len(sets)):
        match_col: dict = {}
        if not _saturated(adj, sets[s], mask, member_cols[s], row_col_l, match_col):
            raise ValueError("swap scan requires a feasible starting center set")
        for c in match_col:
            uses[c].append(s)

    m = len(pool_l)
    for p_row in range(n_rows):
        p_col = row_col_l[p_row]
        for i in range(m):
            u_col = pool_l[i]
            for j in range(i + 1, m):
                v_col = pool_l[j]
                add_p = mask[p_col] == 0
                rem_u = u_col != p_col and fixed_l[u_col] == 0
                rem_v = v_col != p_col and fixed_l[v_col] == 0
                if not add_p and not rem_u and not rem_v:
                    return (p_row, i, j)  # center set unchanged
                affected = set()
                if add_p:
                    affected.update(row_sets_l[p_row])
                    mask[p_col] = 1
                if rem_u:
                    affected.update(row_sets_l[col_row_l[u_col]])
                    affected.update(uses[u_col])
                    mask[u_col] = 0
                if rem_v:
                    affected.update(row_sets_l[col_row_l[v_col]])
                    affected.update(uses[v_col])
                    mask[v_col] = 0
                feasible = all(
                    _saturated(adj, sets[s], mask, member_cols[s], row_col_l, {})
                    for s in affected
                )
                if add_p:
                    mask[p_col] = 0
                if rem_u:
                    mask[u_col] = 1
                if rem_v:
                    mask[v_col] = 1
                if feasible:
                    return (p_row, i, j)
    return None
