"""Invariant battery behind ``steinerprod sweep``.

Each check returns a list of failure strings; an empty list is a pass.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .families import (
    complete,
    complete_bipartite,
    example31,
    generate,
    hypercube,
    kappa_k_bipartite,
    kappa_k_complete,
    path,
    random_connected_graph,
    random_tree,
    star,
    upper_bounds,
)
from .graph import Graph, cartesian_product, vertex_connectivity
from .product import (
    census_edge_kinds,
    construct_path_product,
    construct_tree_product,
    construct_two_factor,
)
from .steiner import kappa3, validate_certificate
from .errors import GraphError


@dataclass
class CheckResult:
    name: str
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def _k3(g: Graph, hook) -> int:
    return hook(kappa3(g).value)


def check_complete(max_n, rng, hook):
    out = []
    for n in range(3, max_n + 1):
        got, want = _k3(complete(n), hook), kappa_k_complete(n, 3)
        if got != want:
            out.append(f"K{n}: oracle {got}, formula {want}")
    return out


def check_bipartite(max_n, rng, hook):
    out = []
    for total in range(3, max_n + 1):
        for a in range(1, total // 2 + 1):
            b = total - a
            got, want = _k3(complete_bipartite(a, b), hook), kappa_k_bipartite(a, b, 3)
            if got != want:
                out.append(f"K_{{{a},{b}}}: oracle {got}, formula {want}")
    return out


def check_hypercube(max_n, rng, hook):
    out = []
    for n in (2, 3):
        got = _k3(hypercube(n), hook)
        if got != n - 1:
            out.append(f"Q{n}: oracle {got}, expected {n - 1}")
    return out


def check_sandwich(max_n, rng, hook):
    out = []
    for i in range(20):
        g = random_connected_graph(rng.randint(4, max(4, max_n)), rng)
        k = _k3(g, hook)
        delta_bound, kap = upper_bounds(g)
        if k > kap:
            out.append(f"graph {i}: kappa3 {k} > kappa {kap}")
        if delta_bound is not None and k > delta_bound:
            out.append(f"graph {i}: kappa3 {k} > delta-1 {delta_bound}")
    return out


def check_sabidussi(max_n, rng, hook):
    out = []
    for i in range(10):
        g = random_connected_graph(rng.randint(2, 5), rng)
        h = random_connected_graph(rng.randint(2, 5), rng)
        kp = vertex_connectivity(cartesian_product(g, h))
        if kp < vertex_connectivity(g) + vertex_connectivity(h):
            out.append(f"pair {i}: kappa(product) {kp} below the sum of factor connectivities")
    return out


def _check_constructed(prod: Graph, c, tag: str) -> list[str]:
    out = []
    cert, trace = c
    if validate_certificate(prod, cert):
        out.append(f"{tag}: invalid certificate")
    if census_edge_kinds(cert, trace, prod)["violations"]:
        out.append(f"{tag}: census violation")
    if len(cert) < trace.bound["required"]:
        out.append(f"{tag}: {len(cert)} trees, bound {trace.bound['required']}")
    return out


def check_constructions(max_n, rng, hook):
    out = []
    factors = [complete(4), example31(2)] + ([complete(5)] if max_n >= 5 else [])
    seconds = [path(2), path(3), star(3), random_tree(min(max_n, 6), rng.randrange(1000))]
    for g in factors:
        for t in seconds:
            prod = cartesian_product(g, t)
            for _ in range(5):
                s = rng.sample(prod.vertices, 3)
                tag = f"{g.name} x {t.name} {s}"
                try:
                    c = construct_tree_product(g, t, s)
                except GraphError as exc:
                    out.append(f"{tag}: {exc}")
                    continue
                out += _check_constructed(prod, c, tag)
    for g, h in [(complete(4), complete(3)), (complete(3), complete(3))]:
        prod = cartesian_product(g, h)
        for _ in range(5):
            s = rng.sample(prod.vertices, 3)
            tag = f"{g.name} x {h.name} {s}"
            try:
                c = construct_two_factor(g, h, s)
            except GraphError as exc:
                out.append(f"{tag}: {exc}")
                continue
            out += _check_constructed(prod, c, tag)
    return out


def check_dominance(max_n, rng, hook):
    """Oracle value of a small product is at least what the builder gives
    on the witness triple."""
    out = []
    g, t = complete(4), path(2)
    prod = cartesian_product(g, t)
    r = kappa3(prod)
    got = hook(r.value)
    c = construct_path_product(g, t, r.triple)
    if got < len(c):
        out.append(f"{prod.name}: oracle {got} below constructed {len(c)}")
    return out


CHECKS: list[tuple[str, Callable]] = [
    ("complete-graphs", check_complete),
    ("complete-bipartite", check_bipartite),
    ("hypercubes", check_hypercube),
    ("upper-bound-sandwich", check_sandwich),
    ("product-connectivity", check_sabidussi),
    ("constructions", check_constructions),
    ("oracle-dominance", check_dominance),
]


def run_sweep(max_n: int = 6, seed: int = 0, corrupt: bool = False) -> list[CheckResult]:
    """Run every check; ``corrupt`` skews the oracle by one as a negative control."""
    hook = (lambda v: v + 1) if corrupt else (lambda v: v)
    results = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        failures = fn(max_n, random.Random(f"{seed}:{name}"), hook)
        results.append(CheckResult(name, failures, time.perf_counter() - start))
    return sorted(results, key=lambda r: r.name)


def report_markdown(results: list[CheckResult]) -> str:
    lines = ["| check | result | seconds | failures |", "|---|---|---|---|"]
    for r in results:
        lines.append(f"| {r.name} | {'pass' if r.ok else 'FAIL'} | {r.seconds:.2f} | {len(r.failures)} |")
    for r in results:
        for f in r.failures:
            lines.append(f"\n- {r.name}: {f}")
    return "\n".join(lines) + "\n"
