"""Pure-Python kernels; the reference implementation for the compiled ones."""

from __future__ import annotations


def berkowitz(rows, zero, one):
    """Coefficients of det(t*I - A), highest degree first, over any commutative ring.

    Division-free, so it works over Z, Z[i] and cyclotomic rings alike.  Zero
    entries are skipped, which makes monomial matrices cheap.
    """
    n = len(rows)
    if n == 0:
        return [one]
    sparse = [[(j, v) for j, v in enumerate(row) if v] for row in rows]
    vec = [one, -rows[n - 1][n - 1]]
    for s in range(n - 2, -1, -1):
        size = n - s
        sub = [[(j - s - 1, v) for j, v in sparse[i] if j > s] for i in range(s + 1, n)]
        row_r = [(j - s - 1, v) for j, v in sparse[s] if j > s]
        d = [rows[i][s] for i in range(s + 1, n)]
        diags = [one, -rows[s][s]]
        for k in range(size - 1):
            acc = zero
            for j, r in row_r:
                x = d[j]
                if x:
                    acc = acc + r * x
            diags.append(-acc)
            if k < size - 2:
                nd = []
                for entries in sub:
                    acc = zero
                    for j, a in entries:
                        x = d[j]
                        if x:
                            acc = acc + a * x
                    nd.append(acc)
                d = nd
        new = []
        for i in range(size + 1):
            acc = zero
            for j in range(min(i, size - 1) + 1):
                c = diags[i - j]
                if c:
                    x = vec[j]
                    if x:
                        acc = acc + c * x
            new.append(acc)
        vec = new
    return vec


def berkowitz_int(rows):
    return berkowitz([[int(x) for x in row] for row in rows], 0, 1)
