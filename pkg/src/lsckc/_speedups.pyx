# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the swap scan and DMS saturation checks.

Mirrors :mod:`lsckc._pykernels` exactly; see that module for the contract.
"""

import numpy as np

BACKEND = "compiled"


cdef bint _augment(Py_ssize_t r, Py_ssize_t s,
                   const long long[::1] adj_off, const long long[::1] adj_cols,
                   const unsigned char[::1] mask,
                   const unsigned char[:, ::1] member_col,
                   long long[::1] match_row,
                   long long[::1] visit_stamp, long long stamp) noexcept:
    cdef Py_ssize_t idx, c
    for idx in range(adj_off[r], adj_off[r + 1]):
        c = adj_cols[idx]
        if mask[c] == 0 or member_col[s, c] != 0 or visit_stamp[c] == stamp:
            continue
        visit_stamp[c] = stamp
        if match_row[c] == -1 or _augment(match_row[c], s, adj_off, adj_cols,
                                          mask, member_col, match_row,
                                          visit_stamp, stamp):
            match_row[c] = r
            return True
    return False


cdef bint _saturated(Py_ssize_t s,
                     const long long[::1] adj_off, const long long[::1] adj_cols,
                     const long long[::1] set_off, const long long[::1] set_rows,
                     const unsigned char[::1] mask,
                     const unsigned char[:, ::1] member_col,
                     const long long[::1] row_col,
                     long long[::1] match_row,
                     long long[::1] visit_stamp, long long* stamp) noexcept:
    cdef Py_ssize_t idx, r
    match_row[:] = -1
    for idx in range(set_off[s], set_off[s + 1]):
        r = set_rows[idx]
        if mask[row_col[r]] != 0:
            continue  # self-served member
        stamp[0] += 1
        if not _augment(r, s, adj_off, adj_cols, mask, member_col,
                        match_row, visit_stamp, stamp[0]):
            return False
    return True


def _member_col_matrix(member, row_col, Py_ssize_t n_cand):
    member_col = np.zeros((member.shape[0], n_cand), dtype=np.uint8)
    rows = np.arange(member.shape[1])
    cols = np.asarray(row_col)
    member_col[:, cols] = member[:, rows]
    return member_col


def dms_saturated(adj_off, adj_cols, set_off, set_rows, member, row_col, center_mask):
    """True iff the center mask saturates every CL set."""
    cdef const long long[::1] adj_off_v = adj_off
    cdef const long long[::1] adj_cols_v = adj_cols
    cdef const long long[::1] set_off_v = set_off
    cdef const long long[::1] set_rows_v = set_rows
    cdef const long long[::1] row_col_v = row_col
    cdef const unsigned char[::1] mask_v = center_mask
    cdef Py_ssize_t n_cand = center_mask.shape[0]
    cdef Py_ssize_t n_sets = set_off.shape[0] - 1
    member_col = _member_col_matrix(member, row_col, n_cand)
    cdef const unsigned char[:, ::1] member_col_v = member_col
    match_row_arr = np.full(n_cand, -1, dtype=np.int64)
    visit_arr = np.zeros(n_cand, dtype=np.int64)
    cdef long long[::1] match_row = match_row_arr
    cdef long long[::1] visit_stamp = visit_arr
    cdef long long stamp = 0
    cdef Py_ssize_t s
    for s in range(n_sets):
        if not _saturated(s, adj_off_v, adj_cols_v, set_off_v, set_rows_v,
                          mask_v, member_col_v, row_col_v, match_row,
                          visit_stamp, &stamp):
            return False
    return True


def find_swap(adj_off, adj_cols, set_off, set_rows, row_sets_off, row_sets,
              member, row_col, col_row, fixed_mask, pool_cols):
    """First feasible enhanced single swap as (p_row, u_pos, v_pos), or None."""
    cdef const long long[::1] adj_off_v = adj_off
    cdef const long long[::1] adj_cols_v = adj_cols
    cdef const long long[::1] set_off_v = set_off
    cdef const long long[::1] set_rows_v = set_rows
    cdef const long long[::1] row_sets_off_v = row_sets_off
    cdef const long long[::1] row_sets_v = row_sets
    cdef const long long[::1] row_col_v = row_col
    cdef const long long[::1] col_row_v = col_row
    cdef const unsigned char[::1] fixed_v = fixed_mask
    cdef const long long[::1] pool_v = pool_cols

    cdef Py_ssize_t n_cand = fixed_mask.shape[0]
    cdef Py_ssize_t n_rows = adj_off.shape[0] - 1
    cdef Py_ssize_t n_sets = set_off.shape[0] - 1
    cdef Py_ssize_t m = pool_cols.shape[0]

    member_col = _member_col_matrix(member, row_col, n_cand)
    cdef const unsigned char[:, ::1] member_col_v = member_col

    mask_arr = np.array(fixed_mask, dtype=np.uint8, copy=True)
    cdef unsigned char[::1] mask = mask_arr
    cdef Py_ssize_t i, j, idx
    for i in range(m):
        mask[pool_v[i]] = 1

    match_row_arr = np.full(n_cand, -1, dtype=np.int64)
    visit_arr = np.zeros(n_cand, dtype=np.int64)
    cdef long long[::1] match_row = match_row_arr
    cdef long long[::1] visit_stamp = visit_arr
    cdef long long stamp = 0

    # Witness matchings: which sets' witness uses which column.
    uses_arr = np.zeros((n_cand, n_sets), dtype=np.uint8)
    cdef unsigned char[:, ::1] uses = uses_arr
    cdef Py_ssize_t s, c
    for s in range(n_sets):
        if not _saturated(s, adj_off_v, adj_cols_v, set_off_v, set_rows_v,
                          mask, member_col_v, row_col_v, match_row,
                          visit_stamp, &stamp):
            raise ValueError("swap scan requires a feasible starting center set")
        for c in range(n_cand):
            if match_row[c] != -1:
                uses[c, s] = 1

    # Per-candidate recheck bookkeeping: stamp-marked affected set list.
    affected_arr = np.zeros(n_sets, dtype=np.int64)
    affected_stamp_arr = np.zeros(n_sets, dtype=np.int64)
    cdef long long[::1] affected = affected_arr
    cdef long long[::1] affected_stamp = affected_stamp_arr
    cdef long long cand_stamp = 0

    cdef Py_ssize_t p_row, p_col, u_col, v_col, n_aff, r
    cdef bint add_p, rem_u, rem_v, feasible

    for p_row in range(n_rows):
        p_col = row_col_v[p_row]
        for i in range(m):
            u_col = pool_v[i]
            for j in range(i + 1, m):
                v_col = pool_v[j]
                add_p = mask[p_col] == 0
                rem_u = u_col != p_col and fixed_v[u_col] == 0
                rem_v = v_col != p_col and fixed_v[v_col] == 0
                if not add_p and not rem_u and not rem_v:
                    return (p_row, i, j)  # center set unchanged
                cand_stamp += 1
                n_aff = 0
                if add_p:
                    for idx in range(row_sets_off_v[p_row], row_sets_off_v[p_row + 1]):
                        s = row_sets_v[idx]
                        if affected_stamp[s] != cand_stamp:
                            affected_stamp[s] = cand_stamp
                            affected[n_aff] = s
                            n_aff += 1
                    mask[p_col] = 1
                if rem_u:
                    r = col_row_v[u_col]
                    for idx in range(row_sets_off_v[r], row_sets_off_v[r + 1]):
                        s = row_sets_v[idx]
                        if affected_stamp[s] != cand_stamp:
                            affected_stamp[s] = cand_stamp
                            affected[n_aff] = s
                            n_aff += 1
                    for s in range(n_sets):
                        if uses[u_col, s] and affected_stamp[s] != cand_stamp:
                            affected_stamp[s] = cand_stamp
                            affected[n_aff] = s
                            n_aff += 1
                    mask[u_col] = 0
                if rem_v:
                    r = col_row_v[v_col]
                    for idx in range(row_sets_off_v[r], row_sets_off_v[r + 1]):
                        s = row_sets_v[idx]
                        if affected_stamp[s] != cand_stamp:
                            affected_stamp[s] = cand_stamp
                            affected[n_aff] = s
                            n_aff += 1
                    for s in range(n_sets):
                        if uses[v_col, s] and affected_stamp[s] != cand_stamp:
                            affected_stamp[s] = cand_stamp
                            affected[n_aff] = s
                            n_aff += 1
                    mask[v_col] = 0
                feasible = True
                for idx in range(n_aff):
                    if not _saturated(affected[idx], adj_off_v, adj_cols_v,
                                      set_off_v, set_rows_v, mask, member_col_v,
                                      row_col_v, match_row, visit_stamp, &stamp):
                        feasible = False
                        break
                if add_p:
                    mask[p_col] = 0
                if rem_u:
                    mask[u_col] = 1
                if rem_v:
                    mask[v_col] = 1
                if feasible:
                    return (p_row, i, j)
    return None
