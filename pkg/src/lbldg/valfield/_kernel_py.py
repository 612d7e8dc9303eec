"""Pure-Python series kernels.

Term lists are tuples of (exponent, coefficient) pairs of Fractions in
strictly descending exponent order with no zero coefficients. These two
functions carry essentially all the arithmetic load of the package; the
compiled twin in _kernel.pyx implements the same contracts.
"""

BACKEND = "pure"


def kernel_add(a, b):
    """Merge two term lists, combining equal exponents, dropping zeros."""
    out = []
    i, j, la, lb = 0, 0, len(a), len(b)
    while i < la and j < lb:
        ea, ca = a[i]
        eb, cb = b[j]
        if ea > eb:
            out.append(a[i])
            i += 1
        elif eb > ea:
            out.append(b[j])
            j += 1
        else:
            c = ca + cb
            if c:
                out.append((ea, c))
            i += 1
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def kernel_mul(a, b):
    """Convolve two term lists."""
    if not a or not b:
        return ()
    acc = {}
    for ea, ca in a:
        for eb, cb in b:
            e = ea + eb
            prev = acc.get(e)
            acc[e] = ca * cb if prev is None else prev + ca * cb
    return tuple(
        (e, acc[e]) for e in sorted(acc.keys(), reverse=True) if acc[e]
    )
