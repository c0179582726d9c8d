"""Pure-Python saturation kernel.

Union-find congruence closure over a term DAG with an optional child
decomposition rule. Twin of the compiled kernel in ``_satcore.pyx``; both
must produce identical partitions for identical inputs.

Node layout: ids ``0..n-1``; ``left[i]``/``right[i]`` are child ids, or -1
for leaves. Children always have smaller ids than their parents.

Closure rules driven to fixpoint:
  * initial pairs are unioned;
  * upward (sum/congruence): two composites whose children lie in equal
    classes are unioned -- detected through a signature table;
  * downward (decomposition), when enabled: two composites in one class get
    their left children and their right children unioned.
"""
from __future__ import annotations


def kernel_name() -> str:
    return "pure"


def saturate_core(n, left, right, pairs_a, pairs_b, decompose):
    """Return the list of class representatives for nodes 0..n-1."""
    parent = list(range(n))
    size = [1] * n
    witness = [-1] * n
    # Per-root linked list of "use" entries; composite k owns entries 2k
    # (left slot) and 2k+1 (right slot).
    head = [-1] * n
    tail = [-1] * n
    nxt = [-1] * (2 * n)
    sig: dict = {}
    work: list = []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def attach(root, entry):
        if head[root] == -1:
            head[root] = entry
            tail[root] = entry
        else:
            nxt[tail[root]] = entry
            tail[root] = entry

    for k in range(n):
        l = left[k]
        if l >= 0:
            r = right[k]
            witness[k] = k
            key = l * n + r
            j = sig.get(key)
            if j is None:
                sig[key] = k
            else:
                work.append((j, k))
            attach(l, 2 * k)
            attach(r, 2 * k + 1)

    for x, y in zip(pairs_a, pairs_b):
        work.append((x, y))

    while work:
        x, y = work.pop()
        rx = find(x)
        ry = find(y)
        if rx == ry:
            continue
        if size[rx] < size[ry]:
            rx, ry = ry, rx
        parent[ry] = rx
        size[rx] += size[ry]

        wx = witness[rx]
        wy = witness[ry]
        if wx >= 0 and wy >= 0:
            if decompose:
                work.append((left[wx], left[wy]))
                work.append((right[wx], right[wy]))
        elif wx < 0:
            witness[rx] = wy

        # Nodes with a child in the losing class may have changed signature.
        e = head[ry]
        while e != -1:
            k = e >> 1
            key = find(left[k]) * n + find(right[k])
            j = sig.get(key)
            if j is None:
                sig[key] = k
            elif find(j) != find(k):
                work.append((j, k))
            e = nxt[e]

        if head[ry] != -1:
            if head[rx] == -1:
                head[rx] = head[ry]
            else:
                nxt[tail[rx]] = head[ry]
            tail[rx] = tail[ry]
            head[ry] = -1
            tail[ry] = -1

    return [find(i) for i in range(n)]
