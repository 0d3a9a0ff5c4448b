"""Formal linear combinations of diagrams over Q(d) or a pointed field.

A Morphism is a sparse mapping diagram -> nonzero coefficient with a fixed
shape (source, target) and ring tag.  Values are immutable after
construction; every operation is a pure function, so sharing across threads
is safe.

Bilinear products accumulate (result diagram, coefficient pair, loop count)
multiplicities first and run coefficient arithmetic once per distinct combo;
on the structured elements appearing here (projectors and their relatives)
the distinct coefficient pairs are far fewer than the term pairs, which is
what makes exact Q(d) products at 10 strands practical.
"""

from __future__ import annotations

import random

from . import diagram as dg
from .ring import (GENERIC, DoesNotDescend, IntegerPolynomial,
                   RationalFunction, reduce_scalar)
from .ring import _padd


class Morphism:
    __slots__ = ("source", "target", "ring", "terms", "_fp")

    def __init__(self, source, target, terms, ring=GENERIC):
        self.source = source
        self.target = target
        self.ring = ring
        clean = {}
        for d, c in terms.items():
            if d.source != source or d.target != target:
                raise ValueError(f"term {d} does not fit shape {source}->{target}")
            if c:
                clean[d] = c
        self.terms = clean
        self._fp = None

    @classmethod
    def _raw(cls, source, target, terms, ring):
        self = object.__new__(cls)
        self.source = source
        self.target = target
        self.ring = ring
        self.terms = terms
        self._fp = None
        return self

    def fingerprint(self):
        """Value key usable as a dict key for memoizing big products."""
        if self._fp is None:
            items = tuple(sorted((d.pairing, c) for d, c in self.terms.items()))
            self._fp = (self.source, self.target, id(self.ring) if self.ring is not GENERIC
                        else 0, hash(items), items)
        return self._fp

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.source == other.source
                and self.target == other.target and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash(self.fingerprint()[:4])

    def __add__(self, other):
        return mor_linear(self, other, None, None)

    def __sub__(self, other):
        _check_same_shape(self, other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            v = out.get(d)
            v = -c if v is None else v - c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return Morphism._raw(self.source, self.target, out, self.ring)

    def __neg__(self):
        return Morphism._raw(self.source, self.target,
                             {d: -c for d, c in self.terms.items()}, self.ring)

    def scale(self, c):
        if not c:
            return Morphism._raw(self.source, self.target, {}, self.ring)
        return Morphism._raw(self.source, self.target,
                             {d: c * v for d, v in self.terms.items()}, self.ring)

    def __repr__(self):
        ring = "k" if self.ring is not GENERIC else "Q(δ)"
        return f"Morphism({self.source}->{self.target}, {len(self.terms)} terms over {ring})"

    def to_json(self):
        terms = sorted(self.terms.items(), key=lambda t: t[0].pairing)
        if self.ring is GENERIC:
            ring = {"type": "generic"}
        else:
            ring = {"type": "pointed", "p": self.ring.p,
                    "minpoly": [str(c) for c in self.ring.minpoly]}
        return {
            "fmt": 1,
            "source": self.source,
            "target": self.target,
            "ring": ring,
            "terms": [{"diagram": d.to_json(), "coeff": c.to_json()} for d, c in terms],
        }


def _check_same_shape(a, b):
    if a.source != b.source or a.target != b.target:
        raise ValueError(f"shape mismatch: {a.source}->{a.target} vs {b.source}->{b.target}")
    if a.ring != b.ring:
        raise ValueError("coefficient ring mismatch")


def zero_morphism(n, m, ring=GENERIC):
    return Morphism._raw(n, m, {}, ring)


def diagram_morphism(d, ring=GENERIC, coeff=None):
    return Morphism._raw(d.source, d.target, {d: coeff if coeff is not None else ring.one()}, ring)


def identity_morphism(n, ring=GENERIC):
    return diagram_morphism(dg.identity_diagram(n), ring)


def generator_morphism(n, i, ring=GENERIC):
    return diagram_morphism(dg.generator_u(n, i), ring)


def mor_linear(a, b, c1=None, c2=None):
    """c1*a + c2*b (missing scalars default to one)."""
    _check_same_shape(a, b)
    one = a.ring.one()
    c1 = one if c1 is None else c1
    c2 = one if c2 is None else c2
    out = {}
    for d, c in a.terms.items():
        v = c1 * c
        if v:
            out[d] = v
    for d, c in b.terms.items():
        v = c2 * c
        if not v:
            continue
        w = out.get(d)
        w = v if w is None else w + v
        if w:
            out[d] = w
        else:
            del out[d]
    return Morphism._raw(a.source, a.target, out, a.ring)


_MUL_MEMO = {}
_MUL_MEMO_LIMIT = 4_000_000


def _coeff_mul(a, b):
    if a.is_one():
        return b
    if b.is_one():
        return a
    key = (a, b)
    v = _MUL_MEMO.get(key)
    if v is None:
        if len(_MUL_MEMO) > _MUL_MEMO_LIMIT:
            _MUL_MEMO.clear()
        v = a * b
        _MUL_MEMO[key] = v
    return v


def mor_compose(a, b):
    """The product a.b: glue a's target boundary to b's source boundary.

    For elements x, y of TL_n this is the algebra product x.y with x on the
    source side; closed loops contribute a factor of delta each.  Over Q(d)
    the bucket sums are grouped by denominator, so gcd work happens once per
    distinct denominator instead of once per term pair.
    """
    if a.target != b.source:
        raise ValueError(f"cannot compose {a.source}->{a.target} with {b.source}->{b.target}")
    if a.ring != b.ring:
        raise ValueError("coefficient ring mismatch")
    ring = a.ring
    compose = dg.compose_diagrams
    aterms = a.terms
    bterms = b.terms
    if ring is GENERIC:
        buckets = {}
        for da, ca in aterms.items():
            for db, cb in bterms.items():
                d, loops = compose(da, db)
                v = _coeff_mul(ca, cb)
                if loops:
                    v = v.mul_delta_pow(loops)
                groups = buckets.get(d)
                if groups is None:
                    buckets[d] = {v.den.coeffs: v.num.coeffs}
                else:
                    den = v.den.coeffs
                    num = groups.get(den)
                    groups[den] = v.num.coeffs if num is None else _padd(num, v.num.coeffs)
        out = {}
        zero = ring.zero()
        for d, groups in buckets.items():
            total = zero
            for den, num in groups.items():
                if num:
                    total = total + RationalFunction(IntegerPolynomial._raw(num),
                                                     IntegerPolynomial._raw(den))
            if total:
                out[d] = total
        return Morphism._raw(a.source, b.target, out, ring)
    out = {}
    for da, ca in aterms.items():
        for db, cb in bterms.items():
            d, loops = compose(da, db)
            v = _coeff_mul(ca, cb)
            if loops:
                v = v.mul_delta_pow(loops)
            w = out.get(d)
            if w is None:
                if v:
                    out[d] = v
            else:
                w = w + v
                if w:
                    out[d] = w
                else:
                    del out[d]
    return Morphism._raw(a.source, b.target, out, ring)


def mor_tensor(a, b):
    """Stack a above b."""
    if a.ring != b.ring:
        raise ValueError("coefficient ring mismatch")
    out = {}
    tensor = dg.tensor_diagrams
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            d = tensor(da, db)
            v = _coeff_mul(ca, cb)
            w = out.get(d)
            if w is None:
                if v:
                    out[d] = v
            else:
                w = w + v
                if w:
                    out[d] = w
                else:
                    del out[d]
    return Morphism._raw(a.source + b.source, a.target + b.target, out, a.ring)


def mor_involute(a):
    """Cellular involution: reflect every diagram, keep coefficients."""
    out = {dg.involute_diagram(d): c for d, c in a.terms.items()}
    return Morphism._raw(a.target, a.source, out, a.ring)


def mor_flip(a):
    """Vertical flip automorphism (top-bottom mirror on both boundaries)."""
    out = {dg.flip_diagram(d): c for d, c in a.terms.items()}
    return Morphism._raw(a.source, a.target, out, a.ring)


def mor_turn_up(a, k):
    out = {dg.turn_up(d, k): c for d, c in a.terms.items()}
    return Morphism._raw(a.source + k, a.target - k, out, a.ring)


def mor_turn_down(a, k):
    out = {dg.turn_down(d, k): c for d, c in a.terms.items()}
    return Morphism._raw(a.source - k, a.target + k, out, a.ring)


def partial_trace(a, steps=1):
    """Close the bottom source strand onto the bottom target strand, `steps`
    times; each closed loop contributes a factor of delta."""
    if steps < 0:
        raise ValueError("negative trace steps")
    cur = a
    for _ in range(steps):
        if cur.source < 1 or cur.target < 1:
            raise ValueError("empty boundary: cannot trace")
        out = {}
        for d, c in cur.terms.items():
            d2, loops = dg.partial_trace_diagram(d)
            v = c.mul_delta_pow(loops) if loops else c
            w = out.get(d2)
            if w is None:
                if v:
                    out[d2] = v
            else:
                w = w + v
                if w:
                    out[d2] = w
                else:
                    del out[d2]
        cur = Morphism._raw(cur.source - 1, cur.target - 1, out, cur.ring)
    return cur


def coefficient_of(a, d):
    c = a.terms.get(d)
    return a.ring.zero() if c is None else c


def max_through_degree(a):
    return max((dg.through_degree(d) for d in a.terms), default=-1)


def annihilated_by_generators(a):
    """True iff u_i.a = 0 and a.u_i = 0 for every generator."""
    n = a.source
    if a.target != n:
        raise ValueError("annihilation test needs an (n, n) morphism")
    for i in range(1, n):
        u = generator_morphism(n, i, a.ring)
        if not mor_compose(u, a).is_zero():
            return False
        if not mor_compose(a, u).is_zero():
            return False
    return True


def reduce_morphism(a, k):
    """Apply reduce_scalar coefficient-wise; raises DoesNotDescend with the
    offending diagram attached when some coefficient has no image."""
    out = {}
    for d, c in a.terms.items():
        try:
            v = reduce_scalar(c, k)
        except DoesNotDescend as e:
            raise DoesNotDescend(c, k, diagram=d) from None
        if v:
            out[d] = v
    return Morphism._raw(a.source, a.target, out, k)


def cell_dim(n, m):
    """Number of (n, m) diagrams with exactly m through-strands."""
    if m > n or (n - m) % 2:
        raise ValueError(f"no cell ({n}, {m})")
    import math
    k = (n - m) // 2
    b1 = math.comb(n, k)
    b2 = math.comb(n, k - 1) if k >= 1 else 0
    return b1 - b2


# ---------------------------------------------------------------------------
# randomized rank of the right-multiplication map
# ---------------------------------------------------------------------------

_RANK_PRIMES = (2147483629, 2147483587, 2147483563)


def _rank_once(rows, ncols, q):
    import numpy as np

    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in row:
            mat[i, j] = (mat[i, j] + v) % q
    rank = 0
    rcount = mat.shape[0]
    for col in range(ncols):
        piv = None
        for i in range(rank, rcount):
            if mat[i, col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            mat[[rank, piv]] = mat[[piv, rank]]
        inv = pow(int(mat[rank, col]), -1, q)
        mat[rank] = mat[rank] * inv % q
        colvals = mat[rank + 1:, col].copy()
        nz = colvals.nonzero()[0]
        if nz.size:
            mat[rank + 1 + nz] = (mat[rank + 1 + nz] - colvals[nz, None] * mat[rank]) % q
        rank += 1
        if rank == rcount:
            break
    return rank


def left_ideal_rank(e, rng=None):
    """Dimension of TL_n . e over Q(d) for an idempotent e.

    The right-multiplication matrix is written down once over the diagram
    basis with symbolic entries, then evaluated at delta = random residue
    modulo a 31-bit prime and Gauss-eliminated; two agreeing specializations
    are required, a third breaks ties (specializing can only drop the rank).
    """
    if e.ring is not GENERIC:
        raise ValueError("rank is computed over Q(d)")
    n = e.source
    rng = rng or random.Random()
    basis = dg.enumerate_diagrams(n, n)
    index = {d: j for j, d in enumerate(basis)}
    sym_rows = []
    for x in basis:
        row = []
        for d, c in e.terms.items():
            y, loops = dg.compose_diagrams(x, d)
            row.append((index[y], c, loops))
        sym_rows.append(row)

    def trial(q):
        while True:
            r = rng.randrange(2, q)
            memo = {}
            try:
                rows = []
                for row in sym_rows:
                    vals = []
                    for j, c, loops in row:
                        v = memo.get(c)
                        if v is None:
                            num = c.num.evaluate(r) % q
                            den = c.den.evaluate(r) % q
                            if den == 0:
                                raise ZeroDivisionError
                            v = num * pow(den, -1, q) % q
                            memo[c] = v
                        if loops:
                            v = v * pow(r, loops, q) % q
                        vals.append((j, v))
                    rows.append(vals)
            except ZeroDivisionError:
                continue  # unlucky point on a denominator; resample
            return _rank_once(rows, len(basis), q)

    r1 = trial(_RANK_PRIMES[0])
    r2 = trial(_RANK_PRIMES[1])
    if r1 == r2:
        return r1
    r3 = trial(_RANK_PRIMES[2])
    # rank only ever drops at unlucky points, so the max is the generic value
    return max(r1, r2, r3)
