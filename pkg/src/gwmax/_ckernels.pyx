# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Inputs must fit the int64 guards checked by ``gwmax.kernels``:
``modulus ** n < 2 ** 62`` and ``modulus < 2 ** 31``.
"""

import numpy as np
cimport numpy as cnp
from libcpp.unordered_set cimport unordered_set

from .errors import GroupTooLargeError

cnp.import_array()

ctypedef long long i64


cdef inline i64 _encode(const i64[:, :] rows, Py_ssize_t r, Py_ssize_t n, i64 modulus) nogil:
    cdef i64 code = 0
    cdef Py_ssize_t j
    for j in range(n):
        code = code * modulus + rows[r, j]
    return code


cdef inline i64 _encode_vec(const i64[:] v, Py_ssize_t n, i64 modulus) nogil:
    cdef i64 code = 0
    cdef Py_ssize_t j
    for j in range(n):
        code = code * modulus + v[j]
    return code


BITMAP_LIMIT = 1 << 26


def closure(Py_ssize_t n, gens, i64 modulus, Py_ssize_t cap, i64 bitmap_limit=BITMAP_LIMIT):
    """Same contract as ``_pykernels.closure``; returns a sorted int64 array.

    Membership uses a dense byte map over all ``modulus ** n`` codes when
    that grid has at most ``bitmap_limit`` points, and a hash set otherwise.
    """
    cdef Py_ssize_t size = 1, s, k, r, j, base_size
    cdef i64 grid = 1, code
    cdef bint dense
    for j in range(n):
        grid *= modulus
    dense = grid <= bitmap_limit
    cdef unsigned char[:] present = np.zeros(grid if dense else 1, dtype=np.uint8)
    cdef unordered_set[i64] seen
    cdef i64[:, :] elems = np.zeros((1, n), dtype=np.int64)
    cdef i64[:, :] grown
    cdef i64[:] g = np.zeros(n, dtype=np.int64)
    cdef i64[:] t = np.zeros(n, dtype=np.int64)
    cdef i64[:] shift = np.zeros(n, dtype=np.int64)
    if dense:
        present[0] = 1
    else:
        seen.insert(0)
    for gen in gens:
        for j in range(n):
            g[j] = int(gen[j]) % modulus
            t[j] = g[j]
        s = 1
        while True:
            code = _encode_vec(t, n, modulus)
            if (dense and present[code]) or (not dense and seen.count(code)):
                break
            for j in range(n):
                t[j] = (t[j] + g[j]) % modulus
            s += 1
        if s == 1:
            continue
        if size * s > cap:
            raise GroupTooLargeError(
                f"subgroup closure reached {size * s} elements (cap {cap})",
                size=size * s,
                cap=cap,
            )
        base_size = size
        grown = np.empty((base_size * s, n), dtype=np.int64)
        grown[:base_size, :] = elems
        for j in range(n):
            shift[j] = g[j]
        with nogil:
            for k in range(1, s):
                for r in range(base_size):
                    for j in range(n):
                        grown[k * base_size + r, j] = (elems[r, j] + shift[j]) % modulus
                    code = _encode(grown, k * base_size + r, n, modulus)
                    if dense:
                        present[code] = 1
                    else:
                        seen.insert(code)
                for j in range(n):
                    shift[j] = (shift[j] + g[j]) % modulus
            size = base_size * s
        elems = grown
    if dense:
        return np.flatnonzero(np.asarray(present)).astype(np.int64)
    codes = np.empty(size, dtype=np.int64)
    cdef i64[:] cv = codes
    for r in range(size):
        cv[r] = _encode(elems, r, n, modulus)
    codes.sort()
    return codes


def oracle_scan(A, radices, i64 modulus):
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t n = len(radices)
    cdef i64[:, :] a = np.asarray([[int(x) % modulus for x in row] for row in A], dtype=np.int64).reshape(m, n)
    cdef i64[:] rad = np.asarray(radices, dtype=np.int64)
    cdef i64[:] step = np.empty(n, dtype=np.int64)
    cdef i64[:] k = np.zeros(n, dtype=np.int64)
    cdef i64[:] digits = np.zeros(n, dtype=np.int64)
    cdef i64[:] sums = np.zeros(m, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef i64 total = 1
    cdef bint ok, done = False
    for j in range(n):
        step[j] = modulus // rad[j]
        total *= rad[j]
    out = np.empty(total, dtype=np.int64)
    cdef i64[:] ov = out
    cdef Py_ssize_t count = 0
    with nogil:
        while not done:
            ok = True
            for i in range(m):
                if sums[i] != 0:
                    ok = False
                    break
            if ok:
                ov[count] = _encode_vec(digits, n, modulus)
                count += 1
            # mixed-radix increment, last coordinate fastest
            j = n - 1
            while True:
                if j < 0:
                    done = True
                    break
                k[j] += 1
                if k[j] < rad[j]:
                    digits[j] += step[j]
                    for i in range(m):
                        sums[i] = (sums[i] + a[i, j] * step[j]) % modulus
                    break
                k[j] = 0
                for i in range(m):
                    sums[i] = ((sums[i] - a[i, j] * digits[j]) % modulus + modulus) % modulus
                digits[j] = 0
                j -= 1
    return out[:count].copy()
