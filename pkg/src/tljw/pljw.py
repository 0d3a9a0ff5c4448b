"""(ell, p)-digit combinatorics and the generalized Jones-Wenzl elements.

The mixed radix is p^(0) = 1, p^(i) = ell * p^(i-1) for i >= 1; digits of a
number satisfy n_0 < ell and n_i < p, which makes the expansion unique.
The support I_n flips signs on the sub-leading digits of n+1 and subtracts
one; |I_n| = 1 characterizes the strand counts whose classical projector
descends ("Adam" numbers), and the father f(n) zeroes the least nonzero
digit of n+1.

build_pljw assembles, over Q(d),

    pJW_n = sum over j in I_n of  lambda_n^j  p_n^j . JW_j . iota(p_n^j)

by recursion on the father.  Internally each projector p_n^j is carried
together with its monic spine M_n^j (the through-degree-j part): every
other diagram of p_n^j dies against the middle clasp, so all the heavy
clasp products reduce to spine-sized ones.  The spine is an implementation
detail; the public decomposition exposes the full projectors.
"""

from __future__ import annotations

import math

from .ring import (GENERIC, INFINITY, RationalFunction, TorsionParams,
                   quantum_rf, reduce_scalar)
from . import diagram as dg
from .morphism import (Morphism, coefficient_of, diagram_morphism,
                       identity_morphism, max_through_degree, mor_compose,
                       mor_involute, mor_linear, mor_tensor, partial_trace,
                       reduce_morphism, zero_morphism)
from .jw import clasp_compose_left, clasp_compose_right, jw, jw_exists_adam


def p_super(i, t):
    """The radix p^(i): 1, ell, ell*p, ell*p^2, ..."""
    if i < 0:
        raise ValueError("negative radix index")
    if i == 0:
        return 1
    if t.p == INFINITY:
        if i > 1:
            raise ValueError("radix index beyond 1 is infinite in generic characteristic")
        return t.ell
    return t.ell * t.p ** (i - 1)


class LPDigits:
    """Digit expansion value = sum digits[i] * p^(i)."""

    __slots__ = ("torsion", "digits", "value")

    def __init__(self, torsion, digits, value):
        self.torsion = torsion
        self.digits = tuple(digits)
        self.value = value

    def least_index(self):
        for i, c in enumerate(self.digits):
            if c:
                return i
        raise ValueError("zero has no digits")

    def top_index(self):
        return len(self.digits) - 1

    def __repr__(self):
        return f"LPDigits({list(self.digits)}, value={self.value})"


def lp_digits(x, t):
    """Greedy mixed-radix expansion of x >= 1."""
    if x < 1:
        raise ValueError("digits are defined for positive integers")
    n0 = x % t.ell
    rest = x // t.ell
    digits = [n0]
    if t.p == INFINITY:
        if rest:
            digits.append(rest)
    else:
        while rest:
            digits.append(rest % t.p)
            rest //= t.p
    out = LPDigits(t, digits, x)
    assert sum(c * p_super(i, t) for i, c in enumerate(out.digits)) == x
    return out


def supp(n, t):
    """The support I_n: sign flips on the sub-leading digits of n+1, minus 1."""
    if n < 0:
        raise ValueError("support of a negative strand count")
    d = lp_digits(n + 1, t)
    b = d.top_index()
    vals = {d.digits[b] * p_super(b, t)}
    for i in range(b - 1, -1, -1):
        c = d.digits[i]
        if not c:
            continue
        step = c * p_super(i, t)
        vals = {v + s for v in vals for s in (step, -step)}
    return tuple(sorted(v - 1 for v in vals))


def is_adam(n, t):
    """Singleton support; cross-checked against the closed-form descent test."""
    by_supp = len(supp(n, t)) == 1
    by_form = jw_exists_adam(n, t)
    if by_supp != by_form:
        raise AssertionError(f"support and closed-form disagree at n={n}, {t}")
    return by_supp


def father(n, t):
    """Zero the least nonzero digit of n+1 and subtract one."""
    if is_adam(n, t):
        raise ValueError(f"{n} is ({t.ell},{t.p})-Adam and has no father")
    d = lp_digits(n + 1, t)
    a = d.least_index()
    return n - d.digits[a] * p_super(a, t)


def supp_split_check(n, t):
    """I_n = (I_f(n) + m) disjoint-union (I_f(n) - m), m = n - f(n)."""
    if is_adam(n, t):
        return True
    f = father(n, t)
    m = n - f
    base = supp(f, t)
    plus = {i + m for i in base}
    minus = {i - m for i in base}
    return plus.isdisjoint(minus) and tuple(sorted(plus | minus)) == supp(n, t)


# ---------------------------------------------------------------------------
# the decomposition
# ---------------------------------------------------------------------------

class PljwDecomposition:
    """All data of pJW_n over Q(d) for one torsion pair."""

    __slots__ = ("n", "torsion", "support", "lam", "projector", "terms",
                 "total", "monic", "q")

    def __init__(self, n, torsion, support, lam, projector, terms, total,
                 monic, q):
        self.n = n
        self.torsion = torsion
        self.support = support
        self.lam = lam              # i -> RationalFunction
        self.projector = projector  # i -> Morphism n->i            (p_n^i)
        self.terms = terms          # i -> Morphism n->n            (U_n^i)
        self.total = total
        self.monic = monic          # i -> through-degree-i part of p_n^i
        self.q = q                  # i -> p_n^i . JW_i

    def __repr__(self):
        return (f"PljwDecomposition(n={self.n}, {self.torsion!r}, "
                f"support={list(self.support)})")

    def to_json(self):
        t = self.torsion
        return {
            "fmt": 1,
            "n": self.n,
            "torsion": t.to_json(),
            "support": list(self.support),
            "lambda": {str(i): self.lam[i].to_json() for i in self.support},
            "projectors": {str(i): self.projector[i].to_json() for i in self.support},
            "terms": {str(i): self.terms[i].to_json() for i in self.support},
            "total": self.total.to_json(),
        }


_PLJW_CACHE = {}


def lp_lambdas(n, t):
    """The scalars lambda_n^i alone, by the arithmetic recursion; no
    morphisms are built, so this stays cheap at any strand count."""
    if n == 0 or is_adam(n, t):
        return {n: quantum_rf(1)}
    f = father(n, t)
    m = n - f
    lf = lp_lambdas(f, t)
    out = {}
    for i, v in lf.items():
        out[i + m] = v
        out[i - m] = (quantum_rf(i + 1 - m) / quantum_rf(i + 1)) * v
    return out


def _bend_diagram(i, m):
    """(i+m) -> (i-m): identity on top, the bottom m strands of the clasp
    boundary folded onto the m carried strands by nested arcs."""
    return dg.tensor_diagrams(dg.identity_diagram(i - m), dg.cap_diagram(m))


def build_pljw(n, t):
    """The decomposition of pJW_n over Q(d); cached per (n, ell, p)."""
    if n < 0:
        raise ValueError("negative strand count")
    key = (n, t.ell, t.p)
    dec = _PLJW_CACHE.get(key)
    if dec is not None:
        return dec
    if n == 0 or is_adam(n, t):
        e = jw(n)
        ident = identity_morphism(n)
        dec = PljwDecomposition(
            n, t, (n,), {n: quantum_rf(1)}, {n: ident}, {n: e}, e,
            {n: ident}, {n: e})
        _PLJW_CACHE[key] = dec
        return dec
    f = father(n, t)
    m = n - f
    D = build_pljw(f, t)
    idm = identity_morphism(m)
    lam, projector, monic, q, terms = {}, {}, {}, {}, {}
    for i in D.support:
        # up-branch: pad with m straight strands
        lam[i + m] = D.lam[i]
        projector[i + m] = mor_tensor(D.projector[i], idm)
        monic[i + m] = mor_tensor(D.monic[i], idm)
        # down-branch: clasp on i, then bend the bottom m strands up
        lam[i - m] = (quantum_rf(i + 1 - m) / quantum_rf(i + 1)) * D.lam[i]
        bend = diagram_morphism(_bend_diagram(i, m))
        p_down = mor_compose(mor_tensor(D.q[i], idm), bend)
        projector[i - m] = p_down
        monic[i - m] = Morphism._raw(
            n, i - m,
            {d: c for d, c in p_down.terms.items() if dg.through_degree(d) == i - m},
            p_down.ring)
    support = tuple(sorted(lam))
    total = zero_morphism(n, n)
    for j in support:
        q[j] = clasp_compose_right(monic[j], j)
        terms[j] = mor_compose(q[j], mor_involute(monic[j]))
        total = mor_linear(total, terms[j], None, lam[j])
    dec = PljwDecomposition(n, t, support, lam, projector, terms, total, monic, q)
    _PLJW_CACHE[key] = dec
    return dec


def descend_pljw(n, k):
    """Image of pJW_n in TL_n over k; never allowed to fail."""
    t = TorsionParams.from_field(k)
    dec = build_pljw(n, t)
    try:
        return reduce_morphism(dec.total, k)
    except Exception as e:  # a failure here means the construction is broken
        raise RuntimeError(f"pJW_{n} failed to descend to {k}: {e}") from e


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

class VerifyReport:
    __slots__ = ("n", "torsion", "checks", "methods")

    def __init__(self, n, torsion):
        self.n = n
        self.torsion = torsion
        self.checks = {}
        self.methods = {}

    @property
    def passed(self):
        return all(self.checks.values())

    def record(self, name, ok, method="direct"):
        self.checks[name] = bool(ok)
        self.methods[name] = method

    def __repr__(self):
        state = "pass" if self.passed else "FAIL"
        return f"VerifyReport(n={self.n}, {state}, {self.checks})"


def verify_pljw(dec, product_budget=250_000):
    """Exact verification of the decomposition invariants.

    Pairwise products whose term-count product exceeds the budget are checked
    through the pairing matrix instead of brute force: the inner products
    iota(M_i) . M_j are small, and the clasp kill rule (itself re-verified
    against the generator annihilation) collapses everything else.
    """
    rep = VerifyReport(dec.n, dec.torsion)
    n = dec.n
    total = dec.total
    one = total.ring.one()

    rep.record("identity_coefficient",
               coefficient_of(total, dg.identity_diagram(n)) == one)
    rep.record("involution_invariance", mor_involute(total) == total)
    for j in dec.support:
        rep.record(f"through_degree_{j}", max_through_degree(dec.terms[j]) == j)

    # pairing matrix: JW_i . iota(p_i) . p_j . JW_j vs delta_ij (1/lambda_i) JW_i
    pairing_ok = True
    for i in dec.support:
        for j in dec.support:
            C = mor_compose(mor_involute(dec.monic[i]), dec.monic[j])
            G = clasp_compose_right(clasp_compose_left(C, i), j)
            if i == j:
                expect = jw(i).scale(dec.lam[i].inverse())
            else:
                expect = zero_morphism(i, j)
            ok = G == expect
            pairing_ok = pairing_ok and ok
            rep.record(f"pairing_{i}_{j}", ok)

    # orthogonal idempotents: direct products within budget, else derived
    for i in dec.support:
        for j in dec.support:
            a = dec.terms[i].scale(dec.lam[i])
            b = dec.terms[j].scale(dec.lam[j])
            expect = a if i == j else zero_morphism(n, n)
            if len(a) * len(b) <= product_budget:
                rep.record(f"orthogonality_{i}_{j}", mor_compose(a, b) == expect)
            else:
                # lambda_i lambda_j M_i JW_i [G_ij] JW_j iota(M_j) with G verified
                rep.record(f"orthogonality_{i}_{j}",
                           rep.checks[f"pairing_{i}_{j}"], method="pairing")

    if len(total) ** 2 <= product_budget:
        rep.record("idempotent", mor_compose(total, total) == total)
    else:
        ok = pairing_ok and all(
            rep.checks[f"orthogonality_{i}_{j}"]
            for i in dec.support for j in dec.support)
        rep.record("idempotent", ok, method="pairing")

    _verify_absorption(dec, rep, product_budget)
    return rep


def _verify_absorption(dec, rep, product_budget):
    n, t = dec.n, dec.torsion
    if len(dec.support) == 1:
        # Adam case: pJW_n = JW_n and the statement is clasp absorption
        rep.record("absorption_left", True, method="adam")
        rep.record("absorption_right", True, method="adam")
        return
    f = father(n, t)
    m = n - f
    Df = build_pljw(f, t)
    g = mor_tensor(Df.total, identity_morphism(m))
    total = dec.total
    if len(g) * len(total) <= product_budget:
        rep.record("absorption_left", mor_compose(g, total) == total)
        rep.record("absorption_right", mor_compose(total, g) == total)
        return
    # q-level route: (pJW_f x id).q_n^j = q_n^j forces absorption termwise
    ok = True
    for j in dec.support:
        B = mor_compose(g, dec.monic[j])
        ok = ok and clasp_compose_right(B, j) == dec.q[j]
    rep.record("absorption_left", ok, method="q-level")
    # the right side is the involution image of the left once iota-invariance
    # of both factors is known; those invariances are recorded checks
    iota_ok = (rep.checks.get("involution_invariance", False)
               and mor_involute(g) == g)
    rep.record("absorption_right", ok and iota_ok, method="involution")


def verify_descent_idempotent(n, k, product_budget=30_000_000):
    """Descend pJW_n and certify the image is idempotent over k.

    Within budget the square is computed directly over k; beyond it the
    exact Q(d) idempotency (verified separately) transports along the
    coefficient-wise ring homomorphism, which is what reduce_morphism is.
    """
    e = descend_pljw(n, k)
    if len(e) ** 2 <= product_budget:
        return mor_compose(e, e) == e, "direct", e
    t = TorsionParams.from_field(k)
    dec = build_pljw(n, t)
    ok = verify_pljw(dec).checks["idempotent"]
    return ok, "reduction-hom", e


# ---------------------------------------------------------------------------
# induced-module multiplicities and traces
# ---------------------------------------------------------------------------

def multiplicity_induced(N, n, m, i):
    """Multiplicity of the i-th cell module after inducing the (n, m) cell
    module up to N strands: binom(N-n, (m+N-n-i)/2), zero off-range."""
    if n > N:
        raise ValueError("need n <= N")
    top = N - n
    twice = m + top - i
    if twice % 2 or twice < 0 or twice // 2 > top:
        return 0
    return math.comb(top, twice // 2)


def trace_pljw(n, t, steps):
    """tau^steps applied to pJW_n over Q(d)."""
    if steps > n:
        raise ValueError("cannot trace more strands than exist")
    return partial_trace(build_pljw(n, t).total, steps)


def trace_case_info(n, t):
    """The (a, n_a, t=p^(a), m) data governing the radix-step trace of pJW_n."""
    d = lp_digits(n + 1, t)
    a = d.least_index()
    na = d.digits[a]
    ts = p_super(a, t)
    return a, na, ts, na * ts


def trace_case_check(n, t, k=None):
    """Check the radix-step trace formulas for pJW_n.

    Returns a dict with the case data and three verdicts:

    * symbolic: over Q(d), tau^t(pJW_n) = ([m]/[m-t]) pJW_{n-t}  (n_a > 1)
                or = ([2t]/[t]) pJW_{n-t}                         (n_a = 1)
    * k_literal: after descent, the same with the textbook constants
      [n_a]/[n_a-1], n_a/(n_a-1), [2], 2
    * k_twisted: the +delta-faithful variant with the constant multiplied by
      eps^(p^(a-1)) for a > 0, eps = [ell+1](deltabar)

    k verdicts are None when no field is supplied.
    """
    a, na, ts, m = trace_case_info(n, t)
    out = {"n": n, "a": a, "n_a": na, "steps": ts, "m": m}
    if ts > n:
        out["skipped"] = "trace step exceeds strand count"
        return out
    lhs = trace_pljw(n, t, ts)
    target = build_pljw(n - ts, t).total
    if na > 1:
        const = quantum_rf(m) / quantum_rf(m - ts)
    else:
        const = quantum_rf(2 * ts) / quantum_rf(ts)
    out["symbolic"] = lhs == target.scale(const)
    if k is None:
        out["k_literal"] = out["k_twisted"] = None
        return out
    lhs_k = reduce_morphism(lhs, k)
    target_k = reduce_morphism(target, k)
    if a == 0:
        cval = reduce_scalar(quantum_rf(na) / quantum_rf(na - 1) if na > 1
                             else quantum_rf(2), k)
        twist = k.one()
    else:
        p = k.p
        num, den = (na, na - 1) if na > 1 else (2, 1)
        cval = k.from_int(num) * k.from_int(den).inverse()
        eps = k.element(quantum_rf(t.ell + 1).num.coeffs)
        twist = eps if (p ** (a - 1)) % 2 else k.one()
    out["k_literal"] = lhs_k == target_k.scale(cval)
    out["k_twisted"] = lhs_k == target_k.scale(cval * twist)
    return out


def identity_coeff_trace(n, t_steps, t):
    """Identity-diagram coefficient of tau^t_steps(pJW_n), reported against
    the conjectural value [2]^t_steps; never asserted."""
    d = lp_digits(n + 1, t)
    a = d.least_index()
    b = d.top_index()
    if not (b > a > 0):
        raise ValueError("requires at least two digits and a positive least index")
    if not (0 < t_steps < d.digits[a] * p_super(a, t)):
        raise ValueError("trace depth must stay below the least digit block")
    traced = trace_pljw(n, t, t_steps)
    observed = coefficient_of(traced, dg.identity_diagram(n - t_steps))
    two = quantum_rf(2)
    expected = quantum_rf(1)
    for _ in range(t_steps):
        expected = expected * two
    return observed, expected, observed == expected
