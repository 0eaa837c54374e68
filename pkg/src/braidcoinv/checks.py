"""Verification checks addressable by id from the command line.

Each check returns a JSON-ready dict with at least an ``ok`` flag.  All
scalars are exact strings.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .braid import (
    TensorVec,
    kernel,
    lex_words,
    psi_w,
    symmetrizer,
    symmetrizer_by_words,
)
from .cyclo import CycNum
from .group import act_hyperplane, compose, get_group
from .model import (
    KappaSet,
    lemma42_path,
    load_kappa,
    random_generic,
    verify_commutativity,
    verify_equivariance,
    verify_fullness,
    verify_intertwining,
    verify_kernel,
    hilbert_image,
)
from .nichols import ORIENTATIONS, TWISTS, descends, quadratic_span_rank, verify_nilpotency, verify_quadratic
from .poly import Poly, alpha_form, dunkl_apply, expected_hilbert, hilbert_PG, monomials, pullback
from .ydmod import get_module


@dataclass
class CheckConfig:
    e: int
    n: int
    kappa: Optional[str] = None
    seed: int = 0
    twist: str = "inverse"
    orientation: str = "literal"
    max_degree: int = 3
    cache: Optional[object] = None
    extra: dict = field(default_factory=dict)

    def kappa_set(self, default: str = "random-generic") -> KappaSet:
        return load_kappa(self.kappa or default, self.e, self.n, self.seed)


def random_poly(n: int, level: int, rng: random.Random, max_degree: int = 3, homogeneous: bool = True) -> Poly:
    d = rng.randint(0, max_degree)
    degs = [d] if homogeneous else range(d + 1)
    while True:
        terms = {a: CycNum.rational(level, rng.randint(-3, 3)) for dd in degs for a in monomials(n, dd)}
        f = Poly(n, level, terms)
        if f:
            return f


# group level ------------------------------------------------------------------------------------


def check_cocycle(cfg: CheckConfig) -> dict:
    G = get_group(cfg.e, cfg.n)
    L = G.level
    fails = {"cocycle": 0, "inverse": 0, "pullback": 0, "order": 0}
    els = G.elements
    for H in G.hyperplanes:
        for g in els:
            gH, lam = act_hyperplane(g, H)
            if gH.order != H.order:
                fails["order"] += 1
            ginv = g.inverse()
            _, lam_inv = act_hyperplane(ginv, gH)
            if lam_inv != lam.inv():
                fails["inverse"] += 1
            # g^* alpha_H = conj(lambda(g^{-1}, H)) alpha_{g^{-1} H}
            K, mu_ = act_hyperplane(ginv, H)
            if pullback(alpha_form(H, G.n, L), g) != alpha_form(K, G.n, L).scale(mu_.conj()):
                fails["pullback"] += 1
            for h in els:
                hH, l1 = act_hyperplane(h, H)
                _, l2 = act_hyperplane(g, hH)
                _, l3 = act_hyperplane(compose(g, h), H)
                if l3 != l2 * l1:
                    fails["cocycle"] += 1
    n_el = len(els)
    return {
        "order": n_el,
        "hyperplanes": len(G.hyperplanes),
        "pairs_checked": n_el * n_el * len(G.hyperplanes),
        "failures": fails,
        "ok": not any(fails.values()),
    }


def check_yd(cfg: CheckConfig) -> dict:
    G = get_group(cfg.e, cfg.n)
    M = get_module(cfg.e, cfg.n)
    fails = [(h.text(), str(M.symbols[b])) for h in G.elements for b in range(M.dim) if not M.check_yd(h, b)]
    return {"checked": len(G.elements) * M.dim, "failures": fails[:20], "ok": not fails}


def check_braid(cfg: CheckConfig) -> dict:
    M = get_module(cfg.e, cfg.n)
    one = CycNum.one(M.level)
    fails = 0
    for w in itertools.product(range(M.dim), repeat=3):
        t = TensorVec.word(w, one)
        if psi_w(M, (1, 2, 1), t) != psi_w(M, (2, 1, 2), t):
            fails += 1
    rng = random.Random(cfg.seed)
    scheme_fail = []
    top = cfg.extra.get("scheme_degree", 5)
    for d in range(1, top + 1):
        words = list(itertools.product(range(M.dim), repeat=d))
        sample = words if len(words) <= 64 else rng.sample(words, 16)
        for w in sample:
            t = TensorVec.word(w, one)
            if symmetrizer(M, t) != symmetrizer_by_words(M, t, lex_words(d)):
                scheme_fail.append([d, list(w)])
    return {
        "braid_tensors": M.dim**3,
        "braid_failures": fails,
        "scheme_failures": scheme_fail,
        "ok": fails == 0 and not scheme_fail,
    }


def check_nilpotency(cfg: CheckConfig) -> dict:
    M = get_module(cfg.e, cfg.n)
    rows = [verify_nilpotency(M, b) for b in range(M.dim)]
    return {"symbols": [{k: r[k] for k in ("symbol", "e_H", "k", "bound", "ok")} for r in rows],
            "ok": all(r["ok"] for r in rows)}


def check_quadratic(cfg: CheckConfig) -> dict:
    M = get_module(cfg.e, cfg.n)
    out = {}
    for o in ORIENTATIONS:
        reps = verify_quadratic(M, o)
        out[o] = [{"family": r["family"], "tuples_checked": r["tuples_checked"],
                   "failures": r["failures"][:10], "failure_count": len(r["failures"])} for r in reps]
    res = {"orientation": cfg.orientation, "families": out[cfg.orientation], "by_orientation": out}
    ok = all(r["failure_count"] == 0 for r in out[cfg.orientation])
    if cfg.e == 1:
        kd = kernel(M, 2).kernel_dim
        span = quadratic_span_rank(M, cfg.orientation)
        res["kernel_dim"] = kd
        res["span_rank"] = span
        ok = ok and span == kd
    res["ok"] = ok
    return res


# mu ------------------------------------------------------------------------------------------------


def _kappa_draws(cfg: CheckConfig, count: int = 3) -> list[KappaSet]:
    if cfg.kappa:
        return [cfg.kappa_set()]
    rng = random.Random(cfg.seed)
    return [random_generic(cfg.e, cfg.n, rng, cfg.twist) for _ in range(count)]


def check_equivariance(cfg: CheckConfig) -> dict:
    reps = [verify_equivariance(k) for k in _kappa_draws(cfg)]
    return {"draws": reps, "ok": all(r["ok"] for r in reps)}


def check_commutativity(cfg: CheckConfig) -> dict:
    reps = [verify_commutativity(k) for k in _kappa_draws(cfg)]
    return {"draws": reps, "ok": all(r["ok"] for r in reps)}


def check_intertwining(cfg: CheckConfig) -> dict:
    ks = cfg.kappa_set()
    rng = random.Random(cfg.seed)
    reps = []
    for _ in range(cfg.extra.get("samples", 10)):
        f = random_poly(cfg.n, ks.level, rng, cfg.max_degree)
        r = verify_intertwining(f, ks, cfg.twist)
        r["poly"] = str(f)
        reps.append(r)
    return {"kappa": ks.name, "twist": cfg.twist, "samples": reps, "ok": all(r["ok"] for r in reps)}


def check_hilbert(cfg: CheckConfig) -> dict:
    ks = cfg.kappa_set()
    ideal = list(hilbert_PG(cfg.e, cfg.n, "ideal"))
    pair = list(hilbert_PG(cfg.e, cfg.n, "pairing"))
    img = hilbert_image(ks, "pairing", twist=cfg.twist)
    tdeg = cfg.extra.get("tensor_degree")
    tens = hilbert_image(ks, "tensor", max_degree=tdeg) if tdeg is not None else None
    order = get_group(cfg.e, cfg.n).order
    ok = ideal == pair == img == expected_hilbert(cfg.e, cfg.n) and sum(ideal) == order
    res = {"hilbert_PG_ideal": ideal, "hilbert_PG_pairing": pair, "hilbert_image_pairing": img,
           "total": sum(ideal), "order": order}
    if tens is not None:
        res["hilbert_image_tensor"] = tens
        ok = ok and tens == ideal[: len(tens)] + [0] * max(0, len(tens) - len(ideal))
    res["ok"] = ok
    return res


def check_lemma42(cfg: CheckConfig) -> dict:
    ks = cfg.kappa_set()
    full = verify_fullness(ks, cfg.twist)
    kern = verify_kernel(ks, "sigma")
    return {"fullness": full, "kernel": kern, "ok": full["ok"] and kern["ok"]}


def check_kernel(cfg: CheckConfig) -> dict:
    ks = cfg.kappa_set()
    sig = verify_kernel(ks, "sigma")
    der = verify_kernel(ks, "derivations", twist="direct")
    return {"sigma": sig, "derivations": der, "ok": sig["ok"] and der["ok"]}


def check_pairing(cfg: CheckConfig) -> dict:
    from .duality import CONVENTIONS, SIDES, pairing_table

    ks = cfg.kappa_set("solved-C1" if cfg.twist == "inverse" else "solved-C1-direct")
    runs = []
    for conv in CONVENTIONS:
        for side in SIDES:
            v = pairing_table(cfg.e, cfg.n, ks, conv, side, cfg.twist).verdict()
            v.pop("mismatches")
            runs.append(v)
    passing = [f"{r['convention']}/{r['side']}" for r in runs if r["ok"]]
    return {"kappa": ks.name, "twist": cfg.twist, "runs": runs, "passing": passing, "ok": bool(passing)}


def check_dunkl(cfg: CheckConfig) -> dict:
    from .model import unit_vector

    ks = cfg.kappa_set()
    rng = random.Random(cfg.seed)
    L = ks.level
    fails = []
    pairs = list(itertools.combinations(range(cfg.n), 2))
    for _ in range(cfg.extra.get("samples", 10)):
        f = random_poly(cfg.n, L, rng, cfg.max_degree, homogeneous=False)
        for i, j in pairs:
            x, y = unit_vector(cfg.n, i, L), unit_vector(cfg.n, j, L)
            c = dunkl_apply(x, dunkl_apply(y, f, ks, cfg.e), ks, cfg.e) - dunkl_apply(
                y, dunkl_apply(x, f, ks, cfg.e), ks, cfg.e
            )
            if c:
                fails.append(str(f))
    return {"kappa": ks.name, "failures": fails, "ok": not fails}


def check_descent(cfg: CheckConfig) -> dict:
    M = get_module(cfg.e, cfg.n)
    rows = []
    for d in range(2, cfg.max_degree + 1):
        cert = cfg.cache.kernel(M, d) if cfg.cache is not None else kernel(M, d)
        row = {"degree": d, "kernel_dim": cert.kernel_dim}
        for tw in TWISTS:
            row[tw] = len(descends(M, d, tw, cert))
        rows.append(row)
    return {"twist": cfg.twist, "degrees": rows, "ok": all(r[cfg.twist] == 0 for r in rows)}


CHECKS: dict[str, Callable[[CheckConfig], dict]] = {
    "cocycle": check_cocycle,
    "yd": check_yd,
    "braid": check_braid,
    "nilpotency": check_nilpotency,
    "quadratic": check_quadratic,
    "equivariance": check_equivariance,
    "commutativity": check_commutativity,
    "intertwining": check_intertwining,
    "hilbert": check_hilbert,
    "lemma42": check_lemma42,
    "kernel": check_kernel,
    "pairing": check_pairing,
    "dunkl": check_dunkl,
    "descent": check_descent,
}
