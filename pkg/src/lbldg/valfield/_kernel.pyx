# cython: language_level=3
"""Compiled series kernels; drop-in twins of _kernel_py with identical
contracts (term lists: descending-exponent tuples of Fraction pairs)."""

BACKEND = "cython"


def kernel_add(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, la = len(a), lb = len(b)
    cdef list out = []
    cdef tuple ta, tb
    while i < la and j < lb:
        ta = <tuple> a[i]
        tb = <tuple> b[j]
        if ta[0] > tb[0]:
            out.append(ta)
            i += 1
        elif tb[0] > ta[0]:
            out.append(tb)
            j += 1
        else:
            c = ta[1] + tb[1]
            if c:
                out.append((ta[0], c))
            i += 1
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


def kernel_mul(tuple a, tuple b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return ()
    cdef dict acc = {}
    cdef tuple ta, tb
    for i in range(la):
        ta = <tuple> a[i]
        for j in range(lb):
            tb = <tuple> b[j]
            e = ta[0] + tb[0]
            prev = acc.get(e)
            if prev is None:
                acc[e] = ta[1] * tb[1]
            else:
                acc[e] = prev + ta[1] * tb[1]
    cdef list exps = sorted(acc.keys(), reverse=True)
    cdef list out = []
    for e in exps:
        c = acc[e]
        if c:
            out.append((e, c))
    return tuple(out)
