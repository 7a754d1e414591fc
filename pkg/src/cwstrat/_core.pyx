# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the iteration phases.

Masked breadth-first collection of open stars (and differences of stars)
plus dense GF(p) rank over the tiny local matrices.  All loops release the
GIL so range-chunked calls run concurrently on a plain thread pool.
"""

import numpy as np

ctypedef long long i64

cdef enum:
    STACK_DIMS = 64  # per-call degree buffers; complexes above this use the fallback


cdef inline i64 _modinv(i64 a, i64 p) noexcept nogil:
    # extended Euclid; a in [1, p) with p prime
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rank_modp(i64* A, int nr, int nc, i64 p) noexcept nogil:
    """In-place row elimination; returns rank. A is row-major nr x nc."""
    cdef int rank = 0, row, col, r2, j, piv
    cdef i64 inv, f, v
    for col in range(nc):
        if rank == nr:
            break
        piv = -1
        for row in range(rank, nr):
            if A[row * nc + col] != 0:
                piv = row
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, nc):
                v = A[piv * nc + j]
                A[piv * nc + j] = A[rank * nc + j]
                A[rank * nc + j] = v
        inv = _modinv(A[rank * nc + col], p)
        for j in range(col, nc):
            A[rank * nc + j] = (A[rank * nc + j] * inv) % p
        for r2 in range(rank + 1, nr):
            f = A[r2 * nc + col]
            if f != 0:
                for j in range(col, nc):
                    A[r2 * nc + j] = (A[r2 * nc + j] - f * A[rank * nc + j]) % p
                    if A[r2 * nc + j] < 0:
                        A[r2 * nc + j] += p
        rank += 1
    return rank


cdef int _bfs_up(int root, i64 stamp, i64 skip,
                 const long long[:] cob_ptr, const int[:] cob_idx,
                 const unsigned char[:] alive,
                 i64* mark, int* queue, int* mem, int cap) noexcept nogil:
    """Collect alive cells >= root whose mark is neither ``stamp`` nor
    ``skip``; marks them with ``stamp``.  Returns the count, or -1 when the
    scratch capacity is exceeded."""
    cdef int head = 0, tail = 0, cnt = 0, c, x
    cdef long long e
    if mark[root] == skip:
        return 0
    mark[root] = stamp
    queue[0] = root
    tail = 1
    while head < tail:
        c = queue[head]
        head += 1
        if mem != NULL:
            mem[cnt] = c
        cnt += 1
        for e in range(cob_ptr[c], cob_ptr[c + 1]):
            x = cob_idx[e]
            if alive[x] and mark[x] != stamp and mark[x] != skip:
                if tail >= cap:
                    return -1
                mark[x] = stamp
                queue[tail] = x
                tail += 1
    return cnt


cdef void _local_hdims(int* mem, int cnt, i64* mark, i64 stamp,
                       const int[:] dims,
                       const long long[:] cob_ptr, const int[:] cob_idx,
                       const signed char[:] cob_deg,
                       i64 p, int maxdim, int* pos, i64* mat,
                       int* hdims) noexcept nogil:
    """Cohomology dimensions of the complex spanned by ``mem`` (cells whose
    mark equals ``stamp``), written into hdims[0..maxdim]."""
    cdef int ndeg[STACK_DIMS + 2]
    cdef int ranks[STACK_DIMS + 2]
    cdef int k, i, c, nr, nc, w
    cdef long long e
    cdef i64 val
    for k in range(maxdim + 2):
        ndeg[k] = 0
        ranks[k] = 0
    for i in range(cnt):
        c = mem[i]
        pos[c] = ndeg[dims[c]]  # degree-local basis position
        ndeg[dims[c]] += 1

    for k in range(maxdim):
        nr = ndeg[k + 1]
        nc = ndeg[k]
        if nr == 0 or nc == 0:
            ranks[k] = 0
            continue
        for i in range(nr * nc):
            mat[i] = 0
        for i in range(cnt):
            c = mem[i]
            if dims[c] != k:
                continue
            for e in range(cob_ptr[c], cob_ptr[c + 1]):
                w = cob_idx[e]
                if mark[w] == stamp:
                    val = cob_deg[e]
                    if val < 0:
                        val += p
                    mat[pos[w] * nc + pos[c]] = val
        ranks[k] = _rank_modp(mat, nr, nc, p)
    for k in range(maxdim + 1):
        hdims[k] = ndeg[k] - ranks[k]
        if k > 0:
            hdims[k] -= ranks[k - 1]


def max_star_size(const long long[:] cob_ptr, const int[:] cob_idx):
    """Largest up-set cardinality over all cells of the full complex."""
    cdef int m = cob_ptr.shape[0] - 1
    if m == 0:
        return 0
    mark_arr = np.zeros(m, dtype=np.int64)
    queue_arr = np.empty(m, dtype=np.int32)
    alive_arr = np.ones(m, dtype=np.uint8)
    cdef i64[:] mark = mark_arr
    cdef int[:] queue = queue_arr
    cdef const unsigned char[:] alive = alive_arr
    cdef int best = 0, c, cnt
    cdef i64 gen = 0
    with nogil:
        for c in range(m):
            gen += 1
            cnt = _bfs_up(c, gen, -1, cob_ptr, cob_idx, alive,
                          &mark[0], &queue[0], NULL, m)
            if cnt > best:
                best = cnt
    return best


def phase_a_range(int start, int stop,
                  const int[:] dims,
                  const long long[:] cob_ptr, const int[:] cob_idx,
                  const signed char[:] cob_deg,
                  const unsigned char[:] alive,
                  int target, long long p, int maxdim, int cap,
                  unsigned char[:] hdelta):
    """Star-cohomology delta test for every alive cell in [start, stop)."""
    cdef int m = cob_ptr.shape[0] - 1
    if maxdim >= STACK_DIMS:
        raise ValueError("complex dimension exceeds compiled-engine bound")
    mark_arr = np.zeros(m, dtype=np.int64)
    pos_arr = np.empty(m, dtype=np.int32)
    queue_arr = np.empty(cap, dtype=np.int32)
    mem_arr = np.empty(cap, dtype=np.int32)
    mat_arr = np.empty(cap * cap, dtype=np.int64)
    cdef i64[:] mark = mark_arr
    cdef int[:] pos = pos_arr
    cdef int[:] queue = queue_arr
    cdef int[:] mem = mem_arr
    cdef i64[:] mat = mat_arr
    cdef int hdims[STACK_DIMS + 2]
    cdef int w, cnt, k, ok
    cdef i64 gen = 0
    with nogil:
        for w in range(start, stop):
            if not alive[w]:
                continue
            gen += 1
            cnt = _bfs_up(w, gen, -1, cob_ptr, cob_idx, alive,
                          &mark[0], &queue[0], &mem[0], cap)
            if cnt < 0:
                with gil:
                    raise RuntimeError("star capacity exceeded in compiled kernel")
            _local_hdims(&mem[0], cnt, &mark[0], gen, dims,
                         cob_ptr, cob_idx, cob_deg, p, maxdim,
                         &pos[0], &mat[0], hdims)
            ok = 1
            for k in range(maxdim + 1):
                if hdims[k] != (1 if k == target else 0):
                    ok = 0
                    break
            hdelta[w] = ok
    return 0


def phase_b_range(long long start, long long stop,
                  const int[:] dims,
                  const long long[:] cob_ptr, const int[:] cob_idx,
                  const signed char[:] cob_deg,
                  const int[:] rel_src,
                  const unsigned char[:] alive,
                  int[:] level, int d, long long p, int maxdim, int cap):
    """Difference-cohomology vanishing test for relations with level d-1."""
    cdef int m = cob_ptr.shape[0] - 1
    if maxdim >= STACK_DIMS:
        raise ValueError("complex dimension exceeds compiled-engine bound")
    mark_arr = np.zeros(m, dtype=np.int64)
    pos_arr = np.empty(m, dtype=np.int32)
    queue_arr = np.empty(cap, dtype=np.int32)
    mem_arr = np.empty(cap, dtype=np.int32)
    mat_arr = np.empty(cap * cap, dtype=np.int64)
    cdef i64[:] mark = mark_arr
    cdef int[:] pos = pos_arr
    cdef int[:] queue = queue_arr
    cdef int[:] mem = mem_arr
    cdef i64[:] mat = mat_arr
    cdef int hdims[STACK_DIMS + 2]
    cdef long long k
    cdef int x, y, cnt, blocked, t, ok
    cdef i64 gen = 0
    with nogil:
        for k in range(start, stop):
            if level[k] != d - 1:
                continue
            x = cob_idx[k]
            y = rel_src[k]
            if not (alive[x] and alive[y]):
                continue
            gen += 2
            blocked = _bfs_up(x, gen, -1, cob_ptr, cob_idx, alive,
                              &mark[0], &queue[0], NULL, cap)
            if blocked < 0:
                with gil:
                    raise RuntimeError("star capacity exceeded in compiled kernel")
            cnt = _bfs_up(y, gen + 1, gen, cob_ptr, cob_idx, alive,
                          &mark[0], &queue[0], &mem[0], cap)
            if cnt < 0:
                with gil:
                    raise RuntimeError("star capacity exceeded in compiled kernel")
            _local_hdims(&mem[0], cnt, &mark[0], gen + 1, dims,
                         cob_ptr, cob_idx, cob_deg, p, maxdim,
                         &pos[0], &mat[0], hdims)
            ok = 1
            for t in range(maxdim + 1):
                if hdims[t] != 0:
                    ok = 0
                    break
            if ok:
                level[k] = d
    return 0


def phase_c_slice(const int[:] cand,
                  const long long[:] cob_ptr, const int[:] cob_idx,
                  const unsigned char[:] alive, const unsigned char[:] hdelta,
                  const int[:] level, int[:] codim, int d):
    """Upward-closure check over one dimension slice of candidate cells."""
    cdef int i, u, x, ok
    cdef long long e
    cdef int nc = cand.shape[0]
    with nogil:
        for i in range(nc):
            u = cand[i]
            if not (alive[u] and hdelta[u]):
                continue
            ok = 1
            for e in range(cob_ptr[u], cob_ptr[u + 1]):
                x = cob_idx[e]
                if alive[x] and (codim[x] != d or level[e] != d):
                    ok = 0
                    break
            if ok:
                codim[u] = d
    return 0
