"""JSON wire formats (all tagged "fmt": 1) and their loaders.

Serializers live on the classes; this module holds the inverse maps and the
deterministic dump used by the cache, so a cache hit and a recomputation
print byte-identical output.
"""

from __future__ import annotations

import json

from .ring import (GENERIC, IntegerPolynomial, PointedField, RationalFunction,
                   TorsionParams)
from .diagram import Diagram
from .morphism import Morphism
from .pljw import PljwDecomposition


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def ring_from_json(data):
    if data.get("type") == "generic":
        return GENERIC
    if data.get("type") == "pointed":
        return PointedField(int(data["p"]), [int(c) for c in data["minpoly"]])
    raise ValueError(f"unknown ring tag {data!r}")


def ring_to_json(ring):
    if ring is GENERIC:
        return {"type": "generic"}
    return {"type": "pointed", "p": ring.p, "minpoly": [str(c) for c in ring.minpoly]}


def coeff_from_json(data, ring):
    if ring is GENERIC:
        return RationalFunction.from_json(data)
    return ring.element(int(c) for c in data)


def morphism_from_json(data):
    if data.get("fmt") != 1:
        raise ValueError("unsupported morphism format")
    ring = ring_from_json(data["ring"])
    terms = {}
    for item in data["terms"]:
        d = Diagram.from_json(item["diagram"])
        terms[d] = coeff_from_json(item["coeff"], ring)
    return Morphism(data["source"], data["target"], terms, ring)


def decomposition_from_json(data):
    from .jw import clasp_compose_right
    from .diagram import through_degree
    if data.get("fmt") != 1:
        raise ValueError("unsupported decomposition format")
    t = TorsionParams.from_json(data["torsion"])
    n = data["n"]
    support = tuple(sorted(data["support"]))
    lam = {int(i): RationalFunction.from_json(v) for i, v in data["lambda"].items()}
    projector = {int(i): morphism_from_json(v) for i, v in data["projectors"].items()}
    terms = {int(i): morphism_from_json(v) for i, v in data["terms"].items()}
    total = morphism_from_json(data["total"])
    monic, q = {}, {}
    for i in support:
        p = projector[i]
        monic[i] = Morphism(n, i, {d: c for d, c in p.terms.items()
                                   if through_degree(d) == i}, p.ring)
        q[i] = clasp_compose_right(monic[i], i)
    return PljwDecomposition(n, t, support, lam, projector, terms, total, monic, q)
