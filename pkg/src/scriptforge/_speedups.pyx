# cython: boundscheck=False, wraparound=False, cdivision=True
"""C kernel for recursive longest-matching-block string similarity.

Contract-identical to ``scriptforge.similarity._gestalt_py.match_total``:
the longest shared block is chosen by size, then leftmost start in ``a``,
then leftmost start in ``b``, and the unmatched segments on either side are
processed the same way.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


def match_total(str a, str b):
    """Return M, the summed length of all matched blocks between a and b."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return 0

    cdef int* ca = <int*> malloc(la * sizeof(int))
    cdef int* cb = <int*> malloc(lb * sizeof(int))
    # j2len[j+1] = longest common suffix length ending at a[i], b[j] for the
    # row currently being scanned; updated in place, j descending.
    cdef int* j2len = <int*> malloc((lb + 1) * sizeof(int))
    # Explicit work stack of (alo, ahi, blo, bhi) quadruples.
    cdef Py_ssize_t cap = 2 * (la + lb) + 8
    cdef Py_ssize_t* stack = <Py_ssize_t*> malloc(4 * cap * sizeof(Py_ssize_t))
    if ca == NULL or cb == NULL or j2len == NULL or stack == NULL:
        free(ca); free(cb); free(j2len); free(stack)
        raise MemoryError()

    cdef Py_ssize_t i, j, alo, ahi, blo, bhi, top
    cdef Py_ssize_t besti, bestj, starti, startj
    cdef int k, bestsize
    cdef Py_UCS4 ch
    cdef long total = 0

    i = 0
    for ch in a:
        ca[i] = <int> ch
        i += 1
    j = 0
    for ch in b:
        cb[j] = <int> ch
        j += 1

    try:
        top = 0
        stack[0] = 0; stack[1] = la; stack[2] = 0; stack[3] = lb
        top = 1
        while top > 0:
            top -= 1
            alo = stack[4 * top]; ahi = stack[4 * top + 1]
            blo = stack[4 * top + 2]; bhi = stack[4 * top + 3]

            besti = alo; bestj = blo; bestsize = 0
            memset(j2len + blo, 0, (bhi - blo + 1) * sizeof(int))
            for i in range(alo, ahi):
                # descending j keeps j2len[j] holding the previous row's value
                for j in range(bhi - 1, blo - 1, -1):
                    if ca[i] == cb[j]:
                        k = (j2len[j] if j > blo else 0) + 1
                        j2len[j + 1] = k
                        starti = i - k + 1
                        startj = j - k + 1
                        if k > bestsize or (
                            k == bestsize
                            and (starti < besti or (starti == besti and startj < bestj))
                        ):
                            besti = starti; bestj = startj; bestsize = k
                    else:
                        j2len[j + 1] = 0

            if bestsize > 0:
                total += bestsize
                if top + 2 > cap:
                    raise MemoryError("match stack overflow")
                if besti > alo and bestj > blo:
                    stack[4 * top] = alo; stack[4 * top + 1] = besti
                    stack[4 * top + 2] = blo; stack[4 * top + 3] = bestj
                    top += 1
                if besti + bestsize < ahi and bestj + bestsize < bhi:
                    stack[4 * top] = besti + bestsize; stack[4 * top + 1] = ahi
                    stack[4 * top + 2] = bestj + bestsize; stack[4 * top + 3] = bhi
                    top += 1
    finally:
        free(ca); free(cb); free(j2len); free(stack)

    return total
