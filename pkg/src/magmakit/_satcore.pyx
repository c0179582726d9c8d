# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled saturation kernel; see _satcore_py.py for the algorithm notes.

Identical semantics to the pure twin, with C arrays for the union-find and
an open-addressing int64 hash table for the signature index.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset


def kernel_name():
    return "compiled"


cdef struct Table:
    long long* keys
    int* vals
    size_t mask
    size_t used


cdef int table_init(Table* t, size_t want) except -1:
    cdef size_t cap = 16
    while cap < want * 2:
        cap <<= 1
    t.keys = <long long*> malloc(cap * sizeof(long long))
    t.vals = <int*> malloc(cap * sizeof(int))
    if t.keys == NULL or t.vals == NULL:
        raise MemoryError()
    memset(t.keys, 0xFF, cap * sizeof(long long))  # all slots = -1 (empty)
    t.mask = cap - 1
    t.used = 0
    return 0


cdef void table_free(Table* t):
    if t.keys != NULL:
        free(t.keys)
    if t.vals != NULL:
        free(t.vals)


cdef int table_grow(Table* t) except -1:
    cdef size_t old_cap = t.mask + 1
    cdef size_t cap = old_cap << 1
    cdef long long* ok = t.keys
    cdef int* ov = t.vals
    cdef size_t i, h
    t.keys = <long long*> malloc(cap * sizeof(long long))
    t.vals = <int*> malloc(cap * sizeof(int))
    if t.keys == NULL or t.vals == NULL:
        raise MemoryError()
    memset(t.keys, 0xFF, cap * sizeof(long long))
    t.mask = cap - 1
    for i in range(old_cap):
        if ok[i] != -1:
            h = (<size_t> (<unsigned long long> ok[i] * 0x9E3779B97F4A7C15ULL)) & t.mask
            while t.keys[h] != -1:
                h = (h + 1) & t.mask
            t.keys[h] = ok[i]
            t.vals[h] = ov[i]
    free(ok)
    free(ov)
    return 0


cdef long long table_get_or_set(Table* t, long long key, int val) except? -2:
    """Return the existing value for key, or -1 after inserting (key, val)."""
    cdef size_t h = (<size_t> (<unsigned long long> key * 0x9E3779B97F4A7C15ULL)) & t.mask
    while True:
        if t.keys[h] == key:
            return t.vals[h]
        if t.keys[h] == -1:
            t.keys[h] = key
            t.vals[h] = val
            t.used += 1
            if t.used * 3 > t.mask * 2:
                table_grow(t)
            return -1
        h = (h + 1) & t.mask


cdef long long* stack_push(long long* stack, size_t* cap, size_t len_needed) except NULL:
    # On realloc failure the original block stays valid and is released by
    # the caller's cleanup; freeing it here would double-free.
    cdef long long* out = stack
    if len_needed > cap[0]:
        while cap[0] < len_needed:
            cap[0] <<= 1
        out = <long long*> realloc(stack, cap[0] * sizeof(long long))
        if out == NULL:
            raise MemoryError()
    return out


def saturate_core(int n, int[::1] left, int[::1] right,
                  int[::1] pairs_a, int[::1] pairs_b, bint decompose):
    """Return the list of class representatives for nodes 0..n-1."""
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* size = <int*> malloc(n * sizeof(int))
    cdef int* witness = <int*> malloc(n * sizeof(int))
    cdef int* head = <int*> malloc(n * sizeof(int))
    cdef int* tail = <int*> malloc(n * sizeof(int))
    cdef int* nxt = <int*> malloc(2 * <size_t> n * sizeof(int))
    cdef size_t stack_cap = 1024
    cdef long long* stack = <long long*> malloc(stack_cap * sizeof(long long))
    cdef size_t stack_len = 0
    cdef Table sig
    cdef int i, k, l, r, x, y, rx, ry, wx, wy, e, j, tmp
    cdef long long key, got
    cdef object result

    if (parent == NULL or size == NULL or witness == NULL or head == NULL
            or tail == NULL or nxt == NULL or stack == NULL):
        raise MemoryError()

    sig.keys = NULL
    sig.vals = NULL
    table_init(&sig, <size_t> n + 16)

    try:
        for i in range(n):
            parent[i] = i
            size[i] = 1
            witness[i] = -1
            head[i] = -1
            tail[i] = -1
        for i in range(2 * n):
            nxt[i] = -1

        for k in range(n):
            l = left[k]
            if l >= 0:
                r = right[k]
                witness[k] = k
                key = (<long long> l) * n + r
                got = table_get_or_set(&sig, key, k)
                if got >= 0 and got != k:
                    stack = stack_push(stack, &stack_cap, stack_len + 1)
                    stack[stack_len] = (got << 32) | <unsigned int> k
                    stack_len += 1
                e = 2 * k
                if head[l] == -1:
                    head[l] = e
                    tail[l] = e
                else:
                    nxt[tail[l]] = e
                    tail[l] = e
                e = 2 * k + 1
                if head[r] == -1:
                    head[r] = e
                    tail[r] = e
                else:
                    nxt[tail[r]] = e
                    tail[r] = e

        for i in range(pairs_a.shape[0]):
            stack = stack_push(stack, &stack_cap, stack_len + 1)
            stack[stack_len] = ((<long long> pairs_a[i]) << 32) | <unsigned int> pairs_b[i]
            stack_len += 1

        while stack_len > 0:
            stack_len -= 1
            key = stack[stack_len]
            x = <int> (key >> 32)
            y = <int> (key & 0xFFFFFFFF)

            rx = x
            while parent[rx] != rx:
                parent[rx] = parent[parent[rx]]
                rx = parent[rx]
            ry = y
            while parent[ry] != ry:
                parent[ry] = parent[parent[ry]]
                ry = parent[ry]
            if rx == ry:
                continue
            if size[rx] < size[ry]:
                tmp = rx
                rx = ry
                ry = tmp
            parent[ry] = rx
            size[rx] += size[ry]

            wx = witness[rx]
            wy = witness[ry]
            if wx >= 0 and wy >= 0:
                if decompose:
                    stack = stack_push(stack, &stack_cap, stack_len + 2)
                    stack[stack_len] = ((<long long> left[wx]) << 32) | <unsigned int> left[wy]
                    stack_len += 1
                    stack[stack_len] = ((<long long> right[wx]) << 32) | <unsigned int> right[wy]
                    stack_len += 1
            elif wx < 0:
                witness[rx] = wy

            e = head[ry]
            while e != -1:
                k = e >> 1
                x = left[k]
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                y = right[k]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                key = (<long long> x) * n + y
                got = table_get_or_set(&sig, key, k)
                if got >= 0:
                    j = <int> got
                    x = j
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    y = k
                    while parent[y] != y:
                        parent[y] = parent[parent[y]]
                        y = parent[y]
                    if x != y:
                        stack = stack_push(stack, &stack_cap, stack_len + 1)
                        stack[stack_len] = ((<long long> j) << 32) | <unsigned int> k
                        stack_len += 1
                e = nxt[e]

            if head[ry] != -1:
                if head[rx] == -1:
                    head[rx] = head[ry]
                else:
                    nxt[tail[rx]] = head[ry]
                tail[rx] = tail[ry]
                head[ry] = -1
                tail[ry] = -1

        result = [0] * n
        for i in range(n):
            x = i
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            result[i] = x
        return result
    finally:
        free(parent)
        free(size)
        free(witness)
        free(head)
        free(tail)
        free(nxt)
        free(stack)
        table_free(&sig)
