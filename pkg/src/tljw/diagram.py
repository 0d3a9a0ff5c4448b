"""Planar (n, m) Temperley-Lieb diagrams as non-crossing perfect matchings.

Boundary convention (fixed, serialized as fmt 1): the n source points are
labelled 0..n-1 top to bottom on the left, the m target points are labelled
n..n+m-1 BOTTOM TO TOP on the right, so the full label sequence walks the
boundary circle once.  Planarity is then the balanced-nesting condition on
the linear sequence 0..n+m-1, checkable with one stack scan.

Under this convention the cheap reflections are:

* involution  x -> n+m-1-x        (swap source/target, the cellular flip)
* vertical    x -> n-1-x resp. 2n+m-1-x   (top-bottom mirror)
* turn_up     label rotation by +k (bend top target strands to the source)

Composition glues f's target to g's source (f-target label t meets g-source
label n+m-1-t) and counts the closed loops formed; callers multiply
coefficients by delta per loop.
"""

from __future__ import annotations

from functools import lru_cache

_INTERN = {}


class Diagram:
    """Immutable planar pairing; value-interned so equality is identity."""

    __slots__ = ("source", "target", "pairing", "_hash")

    def __new__(cls, source, target, pairing, _checked=False):
        pairing = tuple(pairing)
        key = (source, target, pairing)
        d = _INTERN.get(key)
        if d is not None:
            return d
        if not _checked:
            _validate(source, target, pairing)
        d = object.__new__(cls)
        d.source = source
        d.target = target
        d.pairing = pairing
        d._hash = hash(key)
        _INTERN[key] = d
        return d

    def __eq__(self, other):
        return self is other or (isinstance(other, Diagram)
                                 and self.pairing == other.pairing
                                 and self.source == other.source
                                 and self.target == other.target)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        # canonical order: shape then lexicographic pairing; used for output
        return ((self.source, self.target, self.pairing)
                < (other.source, other.target, other.pairing))

    def __repr__(self):
        return f"Diagram({self.source}->{self.target}, {list(self.pairing)})"

    def to_json(self):
        return {"fmt": 1, "source": self.source, "target": self.target,
                "pairing": list(self.pairing)}

    @classmethod
    def from_json(cls, data):
        return cls(data["source"], data["target"], data["pairing"])


def _validate(n, m, pairing):
    if n < 0 or m < 0 or (n + m) % 2:
        raise ValueError(f"bad boundary ({n}, {m})")
    N = n + m
    if len(pairing) != N:
        raise ValueError("pairing length mismatch")
    for i, j in enumerate(pairing):
        if not (0 <= j < N) or j == i or pairing[j] != i:
            raise ValueError("pairing is not a fixed-point-free involution")
    stack = []
    for i, j in enumerate(pairing):
        if j > i:
            stack.append(i)
        elif not stack or stack[-1] != j:
            raise ValueError("pairing is not planar")
        else:
            stack.pop()
    if stack:
        raise ValueError("pairing is not planar")


def _make(n, m, pairing):
    return Diagram(n, m, pairing, _checked=True)


def identity_diagram(n):
    N = 2 * n
    return _make(n, n, tuple(N - 1 - i for i in range(N)))


EMPTY = identity_diagram(0)


def generator_u(n, i):
    """The cup-cap generator u_i of TL_n, capping strands i, i+1 from the top."""
    if not (1 <= i <= n - 1):
        raise ValueError(f"u_{i} does not exist in TL_{n}")
    N = 2 * n
    pairing = [N - 1 - k for k in range(N)]
    r = i - 1  # 0-indexed top strand of the cap
    pairing[r], pairing[r + 1] = r + 1, r
    # matching cup on the target side, rows r, r+1: labels 2n-1-r and 2n-2-r
    a, b = N - 1 - r, N - 2 - r
    pairing[a], pairing[b] = b, a
    return _make(n, n, tuple(pairing))


def cap_diagram(k=1):
    """Nested caps: 2k -> 0, strand j matched with 2k-1-j."""
    N = 2 * k
    return _make(N, 0, tuple(N - 1 - j for j in range(N)))


def cup_diagram(k=1):
    """Nested cups: 0 -> 2k."""
    N = 2 * k
    return _make(0, N, tuple(N - 1 - j for j in range(N)))


def compose_diagrams(f, g):
    """Glue f: n->m with g: m->r into (n->r, loop count).

    Interface: f-target label t meets g-source label n+m-1-t.  Chains are
    walked from each composite boundary point; interface slots left unvisited
    afterwards belong to closed loops.
    """
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.target}-target with {g.source}-source")
    n, m = f.source, f.target
    r = g.target
    fp, gp = f.pairing, g.pairing
    N = n + r
    out = [-1] * N
    nm1 = n + m - 1
    seen = bytearray(m)  # interface slots, indexed by g-source label
    for start in range(N):
        if out[start] >= 0:
            continue
        if start < n:
            on_f, cur = True, fp[start]
        else:
            on_f, cur = False, gp[start - n + m]
        while True:
            if on_f:
                # cur: f-label reached along f's pairing
                if cur < n:
                    end = cur
                    break
                s = nm1 - cur
                seen[s] = 1
                on_f, cur = False, gp[s]
            else:
                # cur: g-label reached along g's pairing
                if cur >= m:
                    end = cur - m + n
                    break
                seen[cur] = 1
                on_f, cur = True, fp[nm1 - cur]
        out[start] = end
        out[end] = start
    loops = 0
    for s0 in range(m):
        if not seen[s0]:
            loops += 1
            s = s0
            while not seen[s]:
                seen[s] = 1
                t = gp[s]  # stays on the interface: the cycle is closed
                seen[t] = 1
                s = nm1 - fp[nm1 - t]
    return _make(n, r, tuple(out)), loops


def tensor_diagrams(f, g):
    """Stack f above g: (a+c) -> (b+d)."""
    a, b = f.source, f.target
    c, d = g.source, g.target
    N = a + c + b + d
    out = [0] * N
    shift_ft = c + d

    def fmap(x):
        return x if x < a else x + shift_ft

    def gmap(y):
        return y + a

    for x, y in enumerate(f.pairing):
        out[fmap(x)] = fmap(y)
    for x, y in enumerate(g.pairing):
        out[gmap(x)] = gmap(y)
    return _make(a + c, b + d, tuple(out))


def involute_diagram(f):
    """Cellular involution: reflect source <-> target."""
    n, m = f.source, f.target
    N = n + m
    out = [0] * N
    for x, y in enumerate(f.pairing):
        out[N - 1 - x] = N - 1 - y
    return _make(m, n, tuple(out))


def flip_diagram(f):
    """Vertical flip: reverse the top-to-bottom order on both boundaries."""
    n, m = f.source, f.target

    def fmap(x):
        return n - 1 - x if x < n else 2 * n + m - 1 - x

    out = [0] * (n + m)
    for x, y in enumerate(f.pairing):
        out[fmap(x)] = fmap(y)
    return _make(n, m, tuple(out))


def turn_up(f, k):
    """Bend the top k target strands back as the top k source strands.

    On the boundary circle this is a rotation of the labelling, so planarity
    is automatic; turn_down is the inverse rotation.
    """
    n, m = f.source, f.target
    if k < 0 or k > m:
        raise ValueError(f"cannot turn up {k} of {m} target strands")
    if k == 0:
        return f
    N = n + m
    out = [0] * N
    fp = f.pairing
    for x in range(N):
        out[(x + k) % N] = (fp[x] + k) % N
    return _make(n + k, m - k, tuple(out))


def turn_down(f, k):
    """Bend the top k source strands back as the top k target strands."""
    n, m = f.source, f.target
    if k < 0 or k > n:
        raise ValueError(f"cannot turn down {k} of {n} source strands")
    if k == 0:
        return f
    N = n + m
    out = [0] * N
    fp = f.pairing
    for x in range(N):
        out[(x - k) % N] = (fp[x] - k) % N
    return _make(n - k, m + k, tuple(out))


def partial_trace_diagram(f):
    """Close the bottom source strand onto the bottom target strand.

    Labels n-1 and n are circle-adjacent, so the closure stays planar.
    Returns ((n-1, m-1) diagram, loop count in {0, 1})."""
    n, m = f.source, f.target
    if n < 1 or m < 1:
        raise ValueError("trace needs at least one strand on each side")
    fp = f.pairing
    a, b = fp[n - 1], fp[n]
    loops = 0
    if a == n:  # the two closed points were matched: a free loop
        loops = 1
        pairs = {x: y for x, y in enumerate(fp) if x != n - 1 and x != n}
    else:
        pairs = {x: y for x, y in enumerate(fp) if x not in (n - 1, n) and y not in (n - 1, n)}
        pairs[a] = b
        pairs[b] = a

    def relabel(x):
        return x if x < n - 1 else x - 2

    out = [0] * (n + m - 2)
    for x, y in pairs.items():
        out[relabel(x)] = relabel(y)
    return _make(n - 1, m - 1, tuple(out)), loops


def through_degree(f):
    """Number of strands connecting source to target."""
    n = f.source
    return sum(1 for x in range(n) if f.pairing[x] >= n)


@lru_cache(maxsize=None)
def _matchings(lo, hi):
    """Non-crossing perfect matchings of the points lo..hi-1, as pair tuples."""
    if lo >= hi:
        return ((),)
    out = []
    for j in range(lo + 1, hi, 2):
        for inner in _matchings(lo + 1, j):
            for outer in _matchings(j + 1, hi):
                out.append(((lo, j),) + inner + outer)
    return tuple(out)


def enumerate_diagrams(n, m):
    """All (n, m) diagrams; there are Catalan((n+m)/2) of them."""
    if (n + m) % 2:
        raise ValueError(f"no diagrams with boundary ({n}, {m})")
    out = []
    for pairs in _matchings(0, n + m):
        pairing = [0] * (n + m)
        for x, y in pairs:
            pairing[x] = y
            pairing[y] = x
        out.append(_make(n, m, tuple(pairing)))
    return out


def catalan(k):
    c = 1
    for i in range(k):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c
