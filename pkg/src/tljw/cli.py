"""Command-line interface.

Subcommands: jw, pljw, digits, supp, father, exists, trace, verify.
Exit codes: 0 success, 1 verification failure, 2 non-descent, 64 usage
error, 65 inconsistent parameters.

Field specs use the grammar  p=<prime>,minpoly=<c0>,<c1>,...  with the
minimal-polynomial coefficients listed low to high (monic, so the last one
is 1).  Computed projectors are cached under $TL_CACHE (default ./.tl-cache)
as {kind}-{n}-{ell}-{p}.json with atomic writes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .ring import (GENERIC, INFINITY, DoesNotDescend, PointedField,
                   TorsionParams, detect_ell)
from . import diagram as dg
from .morphism import cell_dim, coefficient_of, left_ideal_rank, mor_compose
from .jw import (_JW_CACHE, descend_jw, jw, jw_coeff_morrison, jw_exists_adam,
                 jw_exists_binomial, jw_idempotent_check, jw_trace_check,
                 jw_two_trace_check, seed_jw, trace_proper_check)
from .pljw import (_PLJW_CACHE, build_pljw, descend_pljw, father,
                   identity_coeff_trace, is_adam, lp_digits, lp_lambdas,
                   p_super, supp, supp_split_check, trace_case_check,
                   verify_descent_idempotent, verify_pljw)
from .morphism import annihilated_by_generators, mor_involute, partial_trace, reduce_morphism
from .render import morphism_latex, morphism_text
from . import serialize

EX_OK = 0
EX_VERIFY = 1
EX_DESCENT = 2
EX_USAGE = 64
EX_PARAMS = 65

FIELD_MATRIX = (
    (2, (0, 1)),   # ell = 2
    (2, (1, 1)),   # ell = 3
    (3, (0, 1)),   # ell = 2
    (3, (2, 1)),   # ell = 3
    (5, (3, 1)),   # ell = 5
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_field(spec):
    """p=<prime>,minpoly=<c0>,<c1>,..."""
    try:
        head, _, tail = spec.partition(",minpoly=")
        if not head.startswith("p=") or not tail:
            raise ValueError
        p = int(head[2:])
        coeffs = [int(c) for c in tail.split(",")]
        return PointedField(p, coeffs)
    except (ValueError, IndexError) as e:
        raise UsageError(f"bad field spec {spec!r}: {e}") from None


def parse_p(text):
    if text in ("infinity", "inf"):
        return INFINITY
    return int(text)


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

class DiskCache:
    def __init__(self, root=None):
        self.root = root or os.environ.get("TL_CACHE", ".tl-cache")

    def _path(self, kind, n, ell, p):
        ptag = "infinity" if p == INFINITY else p
        return os.path.join(self.root, f"{kind}-{n}-{ell}-{ptag}.json")

    def load(self, kind, n, ell="generic", p="generic"):
        path = self._path(kind, n, ell, p)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def store(self, kind, n, payload, ell="generic", p="generic"):
        os.makedirs(self.root, exist_ok=True)
        path = self._path(kind, n, ell, p)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(serialize.dumps(payload))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def cached_jw(n, cache):
    if n in _JW_CACHE:
        return jw(n)
    payload = cache.load("jw", n)
    if payload is not None:
        try:
            e = serialize.morphism_from_json(payload)
            seed_jw(n, e)
            return e
        except (ValueError, ArithmeticError):
            pass  # corrupt or stale entry: recompute below
    e = jw(n)
    for m in range(2, n + 1):
        if cache.load("jw", m) is None:
            cache.store("jw", m, jw(m).to_json())
    return e


def cached_pljw(n, t, cache):
    key = (n, t.ell, t.p)
    if key in _PLJW_CACHE:
        return build_pljw(n, t)
    payload = cache.load("pljw", n, t.ell, t.p)
    if payload is not None:
        try:
            dec = serialize.decomposition_from_json(payload)
            _PLJW_CACHE[key] = dec
            return dec
        except (ValueError, ArithmeticError):
            pass
    dec = build_pljw(n, t)
    cache.store("pljw", n, dec.to_json(), t.ell, t.p)
    return dec


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def emit_morphism(m, fmt):
    if fmt == "json":
        print(serialize.dumps(m.to_json()))
    elif fmt == "latex":
        print(morphism_latex(m))
    else:
        print(morphism_text(m))


def torsion_from_args(args, need=True):
    field = getattr(args, "field", None)
    if field:
        k = parse_field(field)
        ell = detect_ell(k)
        if args.ell is not None and args.ell != ell:
            print(f"field has ell = {ell}, inconsistent with --ell {args.ell}",
                  file=sys.stderr)
            sys.exit(EX_PARAMS)
        return TorsionParams(ell, k.p), k
    if args.ell is not None and getattr(args, "p", None) is not None:
        return TorsionParams(args.ell, args.p), None
    if need:
        raise UsageError("provide either --field or both --ell and --p")
    return None, None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_jw(args, cache):
    e = cached_jw(args.n, cache)
    if args.field:
        k = parse_field(args.field)
        try:
            e = reduce_morphism(e, k)
        except DoesNotDescend as exc:
            print(f"JW_{args.n} does not descend to {k}: "
                  f"coefficient {exc.scalar} at {exc.diagram}", file=sys.stderr)
            sys.exit(EX_DESCENT)
    emit_morphism(e, args.format)
    return EX_OK


def cmd_pljw(args, cache):
    t, k = torsion_from_args(args)
    show = args.show
    # support and lambda are digit arithmetic; skip the morphism build
    if show == "support":
        values = supp(args.n, t)
        if args.format == "json":
            print(serialize.dumps(list(values)))
        else:
            print(" ".join(str(i) for i in values))
        return EX_OK
    if show == "lambda":
        lam = lp_lambdas(args.n, t)
        if args.format == "json":
            print(serialize.dumps({str(i): lam[i].to_json() for i in lam}))
        else:
            inner = ", ".join(f"{i}: {lam[i]}" for i in sorted(lam, reverse=True))
            print("{" + inner + "}")
        return EX_OK
    dec = cached_pljw(args.n, t, cache)
    if show == "terms":
        if args.format == "json":
            print(serialize.dumps({str(i): dec.terms[i].to_json() for i in dec.support}))
        else:
            for i in sorted(dec.support, reverse=True):
                print(f"U[{i}] (lambda = {dec.lam[i]}):")
                print(morphism_text(dec.terms[i]))
        return EX_OK
    total = dec.total
    if k is not None:
        total = reduce_morphism(total, k)  # guaranteed to succeed
    emit_morphism(total, args.format)
    return EX_OK


def cmd_digits(args, cache):
    t, _ = torsion_from_args(args)
    print(",".join(str(c) for c in lp_digits(args.x, t).digits))
    return EX_OK


def cmd_supp(args, cache):
    t, _ = torsion_from_args(args)
    print(" ".join(str(i) for i in supp(args.n, t)))
    return EX_OK


def cmd_father(args, cache):
    t, _ = torsion_from_args(args)
    try:
        print(father(args.n, t))
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EX_PARAMS
    return EX_OK


def cmd_exists(args, cache):
    if not args.field:
        raise UsageError("exists requires --field")
    k = parse_field(args.field)
    t = TorsionParams.from_field(k)
    adam = jw_exists_adam(args.n, t)
    binom = jw_exists_binomial(args.n, k)
    print(f"adam: {str(adam).lower()}, binomial: {str(binom).lower()}")
    if adam != binom:
        print("existence criteria disagree; this indicates a bug", file=sys.stderr)
        return EX_VERIFY
    return EX_OK


def cmd_trace(args, cache):
    t, k = torsion_from_args(args)
    dec = cached_pljw(args.n, t, cache)
    traced = partial_trace(dec.total, steps=args.steps)
    if k is not None:
        traced = reduce_morphism(traced, k)
    emit_morphism(traced, args.format)
    return EX_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def _fields_from_args(args):
    if args.field:
        return [parse_field(spec) for spec in args.field]
    return [PointedField(p, m) for p, m in FIELD_MATRIX]


def _report(lines, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    lines.append((ok, f"{tag}  {name}{suffix}"))


def suite_jw(args, cache):
    lines = []
    maxn = args.max_n or 9
    cached_jw(3, cache)
    from .ring import RF_ONE, quantum_rf
    u1 = dg.generator_u(3, 1)
    u2 = dg.generator_u(3, 2)
    u1u2 = dg.compose_diagrams(u1, u2)[0]
    u2u1 = dg.compose_diagrams(u2, u1)[0]
    table = {
        dg.identity_diagram(3): quantum_rf(1),
        u1: -(quantum_rf(2) / quantum_rf(3)),
        u2: -(quantum_rf(2) / quantum_rf(3)),
        u1u2: RF_ONE / quantum_rf(3),
        u2u1: RF_ONE / quantum_rf(3),
    }
    _report(lines, "three-strand coefficient table", jw(3).terms == table)
    for n in range(1, maxn + 1):
        cached_jw(n, cache)
        ok, how = jw_idempotent_check(n)
        ann = annihilated_by_generators(jw(n))
        inv = mor_involute(jw(n)) == jw(n)
        unit = coefficient_of(jw(n), dg.identity_diagram(n)) == GENERIC.one()
        _report(lines, f"defining properties n={n}", ok and ann and inv and unit,
                f"square: {how}")
    for n in range(2, min(maxn, 8) + 1):
        ok = all(jw_coeff_morrison(d) == coefficient_of(jw(n), d)
                 for d in dg.enumerate_diagrams(n, n))
        _report(lines, f"folding oracle n={n}", ok)
    for n in range(2, min(maxn, 8) + 1):
        ok = all(jw_trace_check(n, m) for m in range(1, n + 1))
        _report(lines, f"trace identity n={n}", ok)
    return lines


def suite_descent(args, cache):
    lines = []
    maxn = args.max_n or 10
    for k in _fields_from_args(args):
        t = TorsionParams.from_field(k)
        for n in range(1, maxn + 1):
            cached_jw(n, cache)
            adam = jw_exists_adam(n, t)
            binom = jw_exists_binomial(n, k)
            try:
                descend_jw(n, k)
                desc = True
            except DoesNotDescend:
                desc = False
            _report(lines, f"trichotomy p={k.p} ell={t.ell} n={n}",
                    adam == binom == desc,
                    f"adam={adam} binomial={binom} descends={desc}")
    return lines


def suite_pljw(args, cache):
    lines = []
    maxn = args.max_n or 10
    t_only = (TorsionParams(args.ell, args.p)
              if args.ell is not None and args.p is not None else None)
    fields = _fields_from_args(args)
    pairs = {}
    for k in fields:
        t = TorsionParams.from_field(k)
        pairs.setdefault((t.ell, t.p), []).append(k)
    if t_only is not None:
        pairs = {(t_only.ell, t_only.p): pairs.get((t_only.ell, t_only.p), [])}
    for (ell, p), ks in sorted(pairs.items()):
        t = TorsionParams(ell, p)
        for n in range(1, maxn + 1):
            dec = cached_pljw(n, t, cache)
            rep = verify_pljw(dec)
            _report(lines, f"decomposition ell={ell} p={p} n={n}", rep.passed,
                    "" if rep.passed else str({c: v for c, v in rep.checks.items() if not v}))
            for k in ks:
                ok, how, _ = verify_descent_idempotent(n, k)
                _report(lines, f"descent idempotent p={k.p} ell={ell} n={n}", ok, how)
        for n in range(1, min(maxn, 8) + 1):
            dec = cached_pljw(n, t, cache)
            want = sum(cell_dim(n, i) for i in dec.support)
            got = left_ideal_rank(dec.total)
            got2 = left_ideal_rank(dec.total)
            _report(lines, f"rank ell={ell} p={p} n={n}",
                    got == want and got2 == want, f"rank={got},{got2} cells={want}")
        combos_ok = True
        for n in range(0, 201):
            if is_adam(n, t):
                continue
            if not supp_split_check(n, t):
                combos_ok = False
        _report(lines, f"support combinatorics ell={ell} p={p} n<=200", combos_ok)
    return lines


def suite_traces(args, cache):
    lines = []
    maxn = args.max_n or 10
    fields = _fields_from_args(args)
    for k in fields:
        t = TorsionParams.from_field(k)
        ell, p = t.ell, t.p
        # radix-step traces of the generalized projectors
        for n in range(1, maxn + 1):
            cached_pljw(n, t, cache)
            r = trace_case_check(n, t, k)
            if "skipped" in r:
                continue
            name = (f"radix trace p={p} ell={ell} n={n} "
                    f"(a={r['a']}, digit={r['n_a']}, steps={r['steps']})")
            _report(lines, name, r["symbolic"] and r["k_literal"],
                    f"symbolic={r['symbolic']} k={r['k_literal']} "
                    f"k-twisted={r['k_twisted']}")
        # bent-pair trace of the doubled projector
        try:
            signed, literal = jw_two_trace_check(1, k)
            _report(lines, f"doubled-projector trace p={p} ell={ell}", literal,
                    f"signed-form={signed}")
        except ValueError:
            pass
        # integer-ratio trace of descended classical projectors
        if p != INFINITY and p > 2:
            res = trace_proper_check(2, 1, k)
            _report(lines, f"integer-ratio trace p={p} ell={ell} a=2", res["p_super"],
                    f"twisted={res['p_super_twisted']} literal-exponent={res['p_literal']}")
        # informative: identity coefficient under shallow traces
        for n in range(1, maxn + 1):
            try:
                d = lp_digits(n + 1, t)
                a, b = d.least_index(), d.top_index()
                if not (b > a > 0):
                    continue
                for steps in range(1, min(3, d.digits[a] * p_super(a, t))):
                    obs, exp, match = identity_coeff_trace(n, steps, t)
                    lines.append((True, f"INFO  identity coefficient n={n} steps={steps}: "
                                  f"observed {obs} vs [2]^{steps} = {exp} "
                                  f"({'match' if match else 'mismatch'})"))
            except ValueError:
                continue
    return lines


def cmd_verify(args, cache):
    suites = {"jw": suite_jw, "pljw": suite_pljw, "traces": suite_traces,
              "descent": suite_descent}
    lines = suites[args.suite](args, cache)
    failures = 0
    for ok, text in lines:
        print(text)
        if not ok:
            failures += 1
    print(f"{len(lines)} checks, {failures} failures")
    return EX_OK if failures == 0 else EX_VERIFY


# ---------------------------------------------------------------------------

def build_parser():
    ap = _Parser(prog="tljw", description=__doc__,
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_torsion(p, with_field=True):
        p.add_argument("--ell", type=int)
        p.add_argument("--p", type=parse_p)
        if with_field:
            p.add_argument("--field")

    p = sub.add_parser("jw", help="compute a Jones-Wenzl projector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(fn=cmd_jw)

    p = sub.add_parser("pljw", help="compute a generalized projector")
    p.add_argument("--n", type=int, required=True)
    add_torsion(p)
    p.add_argument("--show", choices=("total", "lambda", "support", "terms"),
                   default="total")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(fn=cmd_pljw)

    p = sub.add_parser("digits", help="mixed-radix digit expansion")
    p.add_argument("--x", type=int, required=True)
    add_torsion(p)
    p.set_defaults(fn=cmd_digits)

    p = sub.add_parser("supp", help="support of a strand count")
    p.add_argument("--n", type=int, required=True)
    add_torsion(p)
    p.set_defaults(fn=cmd_supp)

    p = sub.add_parser("father", help="father of a non-Adam strand count")
    p.add_argument("--n", type=int, required=True)
    add_torsion(p)
    p.set_defaults(fn=cmd_father)

    p = sub.add_parser("exists", help="descent tests for a classical projector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_exists)

    p = sub.add_parser("trace", help="partial traces of a generalized projector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, default=1)
    add_torsion(p)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("jw", "pljw", "traces", "descent"),
                   required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--ell", type=int)
    p.add_argument("--p", type=parse_p)
    p.add_argument("--field", action="append")
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        cache = DiskCache()
        return args.fn(args, cache)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EX_USAGE
    except DoesNotDescend as e:
        print(str(e), file=sys.stderr)
        return EX_DESCENT
    except BrokenPipeError:
        return EX_OK


if __name__ == "__main__":
    sys.exit(main())
