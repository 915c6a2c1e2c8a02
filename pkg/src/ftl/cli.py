"""Command-line front end: ``ftl <command> --config FILE --out DIR --seed N``.

Each command writes ``<out>/<command>.csv`` and ``<out>/<command>.json``.
Exit status: 0 when every checked invariant held, 1 when one failed (the JSON
names the invariant and carries a witness), 2 for invalid input.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import discs as disc_mod
from . import domain as dm
from . import kobayashi as kob
from . import renorm as rn
from . import rescaling as rs
from .descriptors import Descriptor, load_descriptor, loads_descriptor, parse_indices
from .errors import DescriptorError, EmptyWitnessError, FTLError, InvalidDomainError, NonConvergenceError
from .poly import sup_norm
from .report import write_csv, write_json

COMMANDS = ("tau", "frame", "constants", "renorm", "rescale", "normality", "pba", "kobayashi", "verify-all")

DEFAULT_TOL = {
    "tau_rel": 1e-10,
    "boundary": 1e-10,
    "identity": 1e-12,
    "const_change": 0.05,
    "limit": 1e-6,
    "gap": 0.01,
    "eps_tail": 0.05,
    "R_tail": 10.0,
}


@dataclass
class RunConfig:
    command: str
    config: Path | None
    out: Path
    seed: int = 0
    tol: dict = field(default_factory=dict)

    def tolerance(self, name: str) -> float:
        return self.tol.get(name, DEFAULT_TOL[name])


@dataclass
class Outcome:
    header: list[str]
    rows: list[list]
    summary: dict
    violations: list[dict] = field(default_factory=list)

    def violate(self, invariant: str, witness) -> None:
        self.violations.append({"invariant": invariant, "witness": witness})


def rng_for(seed: int, tag: str, index: int = 0) -> np.random.Generator:
    """Independent stream per (run seed, task, index); stable across processes."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(tag.encode()), index]))


def pmap() -> Callable:
    """Order-preserving map over ``FTL_THREADS`` workers (serial when unset or 1)."""
    n = int(os.environ.get("FTL_THREADS", "1") or 1)
    if n <= 1:
        return lambda fn, items: list(map(fn, items))

    def run(fn, items):
        with ThreadPoolExecutor(max_workers=n) as ex:
            return list(ex.map(fn, items))

    return run


def _pt(w) -> list[float]:
    w = np.asarray(w)
    return [w[0].real, w[0].imag, w[1].real, w[1].imag]


def random_interior(D: dm.DomainModel, rng: np.random.Generator) -> np.ndarray:
    """Interior point with ``|w1| <= box/2`` and depth log-uniform in ``[1e-8, 1e-1]``."""
    w1 = 0.5 * D.box * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    depth = 10 ** rng.uniform(-8, -1)
    w2 = complex(-0.5 * float(dm.eval_poly(D.P, w1)) - depth, rng.uniform(-0.1, 0.1) * D.box)
    return np.array([w1, w2])


# -- commands ---------------------------------------------------------------

def cmd_tau(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "point", "eps", "random"})
    out = Outcome(["domain", "eta1_re", "eta1_im", "eta2_re", "eta2_im", "eps", "tau", "tau_bisect", "rel_err"], [], {})
    eps_list = [float(x) for e in desc.all("eps") for x in e.args] or None
    count = desc.int("random", 0 if desc.points() else 1000)
    tol = cfg.tolerance("tau_rel")
    worst = 0.0
    for D in desc.domains():
        rng = rng_for(cfg.seed, "tau:" + D.name)
        pts = [(p, e) for p in desc.points() for e in (eps_list or [0.01])]
        for _ in range(count):
            eta = random_interior(D, rng)
            pts.append((eta, eps_list[0] if eps_list else 10 ** rng.uniform(-10, 0)))
        for eta, eps in pts:
            t = dm.tau(D, eta, eps)
            tb = dm.tau_bisect(D, eta, eps)
            err = abs(t - tb) / tb
            worst = max(worst, err)
            out.rows.append([D.name, *_pt(eta), eps, t, tb, err])
            if err > tol:
                out.violate("tau closed form matches bisection", {"domain": D.name, "eta": _pt(eta), "eps": eps, "rel_err": err})
    out.summary = {"triples": len(out.rows), "worst_rel_err": worst}
    return out


def cmd_frame(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "point", "random"})
    out = Outcome(["domain", "eta1_re", "eta1_im", "eta2_re", "eta2_im", "eps", "eps_tilde", "tau", "rho_hat", "J_eta_hat"], [], {})
    count = desc.int("random", 0 if desc.points() else 1000)
    worst_ratio = 0.0
    for D in desc.domains():
        rng = rng_for(cfg.seed, "frame:" + D.name)
        pts = desc.points() + [random_interior(D, rng) for _ in range(count)]
        for eta in pts:
            f = dm.frame(D, eta)
            rh = dm.rho(D, f.eta_hat)
            jh = dm.j_from_frame(f, f.eta_hat)
            out.rows.append([D.name, *_pt(eta), f.eps, f.eps_tilde, f.tau_val, rh, jh])
            worst_ratio = max(worst_ratio, abs(f.eps_tilde) / f.eps)
            wit = {"domain": D.name, "eta": _pt(eta), "eps": f.eps, "eps_tilde": f.eps_tilde}
            if abs(f.eps_tilde) > 2 * f.eps:
                out.violate("|eps_tilde| <= 2 eps", wit)
            if abs(f.eps_tilde - f.eps) > cfg.tolerance("identity") * max(1.0, f.eps):
                out.violate("eps_tilde = eps on rigid models", wit)
            if abs(rh) > cfg.tolerance("boundary"):
                out.violate("rho(eta_hat) = 0", dict(wit, rho_hat=rh))
            if dm.j_from_frame(f, f.eta) != 0.0:
                out.violate("J_eta(eta) = 0", wit)
    out.summary = {"points": len(out.rows), "max_eps_tilde_over_eps": worst_ratio}
    return out


def cmd_constants(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "samples", "doubling", "torus"})
    samples = desc.int("samples", 10000)
    doubling = desc.word("doubling", "yes", ("yes", "no")) == "yes"
    torus = desc.int("torus", 16)
    if samples < 1:
        raise desc.error(desc.one("samples"), "samples must be >= 1")
    keys = ["C0", "C1", "C2", "C3", "C4", "C5"]
    out = Outcome(["domain", "samples", "pairs", *keys, "worst_middle"], [], {"domains": {}})
    for D in desc.domains():
        runs = [dm.measure_catlin_constants(D, samples, seed=cfg.seed, torus_n=torus)]
        if doubling:
            runs.append(dm.measure_catlin_constants(D, 2 * samples, seed=cfg.seed, torus_n=torus))
        for r in runs:
            out.rows.append([D.name, r.triples, r.pairs, *(getattr(r, k) for k in keys), r.worst_middle])
            if r.counterexample is not None:
                out.violate("middle sandwich inequalities", dict(r.counterexample, domain=D.name))
        info = {"constants": runs[-1].as_dict()}
        if doubling:
            change = {k: abs(getattr(runs[1], k) - getattr(runs[0], k)) / getattr(runs[0], k) for k in ("C2", "C3", "C4")}
            info["relative_change"] = change
            for k, v in change.items():
                if not v < cfg.tolerance("const_change"):
                    out.violate(f"{k} stable under doubling", {"domain": D.name, "change": v})
        frozen = D.with_constants(C5=float(f"{runs[-1].C5:.6g}"))
        (cfg.out / f"{D.name or 'domain'}.dom").write_text(dm.dumps_domain(frozen), encoding="utf-8")
        out.summary["domains"][D.name] = info
    return out


def _suite_from(desc: Descriptor) -> tuple[rn.Suite, list[dm.DomainModel]]:
    e = desc.one("suite")
    if e is None or len(e.args) != 1:
        raise desc.error(e, "a 'suite <name>' line is required")
    if e.args[0] not in rn.BUILTIN_SUITES:
        raise desc.error(e, f"unknown suite {e.args[0]!r} (built-in: {', '.join(rn.BUILTIN_SUITES)})")
    base = rn.BUILTIN_SUITES[e.args[0]]
    kw = {}
    for key, attr in (("k", "k"), ("alpha-", "alpha_minus"), ("alpha+", "alpha_plus"), ("c", "c")):
        v = desc.float(key)
        if v is not None:
            kw[attr] = v
    s = desc.one("s")
    if s is not None:
        if len(s.args) != 2 or s.args[0] != "linear":
            raise desc.error(s, "expected 's linear <slope>'")
        try:
            kw["slope"] = float(s.args[1])
        except ValueError:
            raise desc.error(s, f"bad slope {s.args[1]!r}") from None
    ie = desc.one("indices")
    if ie is not None:
        if len(ie.args) != 1:
            raise desc.error(ie, "expected 'indices <n1..n2>'")
        kw["indices"] = tuple(int(x) for x in parse_indices(desc, ie, ie.args[0]))
    discs = desc.int("discs")
    if discs is not None:
        kw["discs"] = discs
    suite = rn.Suite(**{**base.__dict__, **kw})
    try:
        suite.params()
    except ValueError as exc:
        raise desc.error(e, str(exc)) from None
    doms = desc.domains(default=(suite.domain,)) if suite.name == "catlin-discs" else []
    return suite, doms


def cmd_renorm(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"suite", "k", "alpha-", "alpha+", "c", "s", "indices", "domain", "discs"})
    suite, doms = _suite_from(desc)
    p = suite.params()
    if suite.name == "catlin-discs":
        return _catlin_discs(suite, p, doms, cfg)
    out = Outcome(["n", "t_prime_re", "t_prime_im", "eps_prime_re", "eps_prime_im", "sigma", "t_re", "t_im",
                   "eps_re", "eps_im", "R", "ratio", "sep", "worst_schwarz"], [],
                  {"suite": suite.name, "k": p.k, "alpha": p.alpha, "alpha_minus": p.alpha_minus,
                   "alpha_plus": p.alpha_plus, "c": p.c, "slope": p.slope, "clamped": p.clamped})
    seq, wit = [], []
    for n in suite.indices:
        f, w = rn.suite_maps(suite.name, n)
        seq.append((n, f))
        wit.append(w)
    try:
        res = rn.renormalize(seq, rn.sphere_jfamily(), p, wit, map_fn=pmap())
    except EmptyWitnessError as exc:
        out.violate("non-empty witness set", {"error": str(exc), "suite": suite.name})
        out.summary["error"] = str(exc)
        return out
    for r in res.records:
        out.rows.append([r.n, r.t_prime.real, r.t_prime.imag, r.eps_prime.real, r.eps_prime.imag, r.sigma,
                         r.t.real, r.t.imag, r.eps.real, r.eps.imag, r.R, r.ratio, r.sep, r.worst_schwarz])
        if not r.cert_ok:
            out.violate("Schwarz certification on D_R x D_alpha-", r.witness)
        if r.sep < p.k:
            out.violate("J(g(0), g(1)) >= k", {"n": r.n, "sep": r.sep})
    eps = [abs(r.eps) for r in res.records]
    Rs = [r.R for r in res.records]
    trends = {
        "eps_decreasing": all(b < a for a, b in zip(eps, eps[1:])),
        "R_increasing": all(b > a for a, b in zip(Rs, Rs[1:])),
        "eps_tail": eps[-1] if eps else None,
        "R_tail": Rs[-1] if Rs else None,
        "cauchy": res.cauchy,
        "cauchy_ok": res.cauchy_ok,
        "r0_to_zero": res.r0_trend_ok,
        "dropped": res.dropped,
    }
    out.summary.update(trends)
    if not res.records:
        out.violate("at least one admissible index", {"dropped": res.dropped})
        return out
    if not trends["eps_decreasing"] or not eps[-1] < cfg.tolerance("eps_tail"):
        out.violate("eps_n strictly decreasing to below the tail threshold", {"eps": eps})
    if not trends["R_increasing"] or not Rs[-1] > cfg.tolerance("R_tail"):
        out.violate("R_n strictly increasing beyond the tail threshold", {"R": Rs})
    if not res.cauchy_ok:
        out.violate("renormalized maps Cauchy on the comparison grid", {"differences": res.cauchy})
    return out


def _catlin_discs(suite: rn.Suite, p: rn.SchwarzParams, doms, cfg: RunConfig) -> Outcome:
    out = Outcome(["domain", "disc", "degree", "premise_held", "worst", "ok", "clamp_dependent"], [],
                  {"suite": suite.name, "alpha_plus": p.alpha_plus, "alpha_minus": p.alpha_minus, "c": p.c,
                   "slope": p.slope, "clamped": p.clamped})
    for D in doms:
        J = rn.catlin_jfamily(D)

        def one(i, D=D, J=J):
            rng = rng_for(cfg.seed, "catlin-discs:" + D.name, i)
            deg = int(rng.integers(1, 5))
            disc = disc_mod.random_disc(D, rng, disc_mod.random_centre(D, rng, 0.5), deg)
            return deg, rn.schwarz_check(disc, J, p, rng, bases=32)

        for i, (deg, rep) in enumerate(pmap()(one, range(suite.discs))):
            out.rows.append([D.name, i, deg, rep.premise_held, rep.worst, rep.ok, rep.clamp_dependent])
            if not rep.ok:
                out.violate("Schwarz-type property for discs in the domain", dict(rep.witness or {}, domain=D.name, disc=i))
    out.summary["discs"] = len(out.rows)
    out.summary["clamp_dependent"] = sum(1 for r in out.rows if r[-1])
    return out


def _sequence(desc: Descriptor, default: str) -> list[tuple[float, np.ndarray]]:
    pts = desc.points()
    e = desc.one("sequence")
    if e is None:
        if pts:
            return [(float(i), p) for i, p in enumerate(pts, 1)]
        e = loads_descriptor(f"sequence {default}").entries[0]
    if len(e.args) != 4 or e.args[0] != "ray":
        raise desc.error(e, "expected 'sequence ray <re> <im> <indices>'")
    try:
        direc = complex(float(e.args[1]), float(e.args[2]))
    except ValueError:
        raise desc.error(e, "ray direction must be two numbers") from None
    if not direc.real < 0:
        raise desc.error(e, "ray direction must point into the domain (negative real part)")
    return [(n, np.array([0.0, direc / n])) for n in parse_indices(desc, e, e.args[3])]


def _compact(desc: Descriptor, box: float, grid: int) -> tuple[float, int]:
    e = desc.one("compact")
    if e is None:
        return box, grid
    if len(e.args) != 4 or e.args[0] != "box" or e.args[2] != "grid":
        raise desc.error(e, "expected 'compact box <float> grid <int>'")
    try:
        return float(e.args[1]), int(e.args[3])
    except ValueError:
        raise desc.error(e, "expected 'compact box <float> grid <int>'") from None


def cmd_rescale(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "sequence", "point", "compact"})
    seq = _sequence(desc, "ray -1 0 10..1e9*3.1622776601683795")
    box, grid = _compact(desc, 1.0, 16)
    out = Outcome(["domain", "n", "eps", "tau", "supnorm_Pn", "gap"], [], {"domains": {}})
    for D in desc.domains():
        info = {}
        try:
            L = rs.limit_domain(D, [e for _, e in seq], tol=cfg.tolerance("limit"))
        except ValueError as exc:
            raise desc.error(desc.one("sequence") or desc.one("point"), str(exc)) from None
        except NonConvergenceError as exc:
            out.violate("rescaled polynomials converge", {"domain": D.name, "coefficient": list(exc.index),
                                                         "variation": exc.variation})
            L = None
        gaps = []
        for n, eta in seq:
            f = dm.frame(D, eta)
            rs.rescale_map(D, eta)
            Pn = rs.rescaled_polynomial(D, eta)
            gap = rs.hausdorff_gap(D, eta, L.P, box, grid) if L is not None else float("nan")
            gaps.append(gap)
            out.rows.append([D.name, n, f.eps, f.tau_val, sup_norm(Pn), gap])
            if abs(sup_norm(Pn) - 1.0) > 1e-12:
                out.violate("sup norm of P_n is 1", {"domain": D.name, "n": n, "sup": sup_norm(Pn)})
        if L is not None:
            brody = rs.brody_hyperbolic(L.P)
            info = {"limit": {f"{j},{k}": c for (j, k), c in L.P.upper_items()}, "variation": L.variation,
                    "sup_norm": sup_norm(L.P), "brody_hyperbolic": brody, "tail_gap": gaps[-1]}
            if not brody:
                out.violate("limit domain is Brody-hyperbolic", {"domain": D.name})
            if not gaps[-1] < cfg.tolerance("gap"):
                out.violate("Hausdorff gap small at the tail", {"domain": D.name, "gap": gaps[-1]})
        out.summary["domains"][D.name] = info
    return out


def _families(desc: Descriptor, D: dm.DomainModel):
    fams = []
    for e in desc.all("family"):
        for name in e.args:
            if name not in ("constant", "affine", "quadratic", "poly"):
                raise desc.error(e, f"unknown disc family {name!r}")
            fams.append((name, rs.disc_family(D, name, seed=0)))
    for e in desc.all("discs"):
        a = e.args
        if len(a) != 7 or a[0] != "poly" or a[1] != "degree" or a[3] != "count" or a[5] != "seed":
            raise desc.error(e, "expected 'discs poly degree <int> count <int> seed <int>'")
        try:
            deg, count, seed = int(a[2]), int(a[4]), int(a[6])
        except ValueError:
            raise desc.error(e, "degree, count and seed must be integers") from None
        fams += [(f"poly{seed + i}", rs.disc_family(D, "poly", degree=deg, seed=seed + i)) for i in range(count)]
    if not fams:
        fams = [(n, rs.disc_family(D, n)) for n in ("affine", "quadratic")]
    return fams


def cmd_normality(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "sequence", "point", "compact", "family", "discs", "r0"})
    seq = _sequence(desc, "ray -1 0 10..200:10")
    radius, _ = _compact(desc, 0.5, 0)
    r0 = desc.float("r0", 0.05)
    out = Outcome(["domain", "family", "n", "sup", "bound", "p"], [], {"runs": []})
    for D in desc.domains():
        for name, fam in _families(desc, D):
            try:
                rep = rs.normality_experiment(D, fam, seq, radius=radius, r0=r0)
            except ValueError as exc:
                raise desc.error(desc.one("sequence") or desc.one("point"), str(exc)) from None
            except FTLError as exc:
                out.violate("discs stay in the domain", {"domain": D.name, "family": name, "error": str(exc)})
                continue
            for n, v in rep.per_index_sup:
                out.rows.append([D.name, name, n, v, rep.bound, rep.p])
            out.summary["runs"].append({"domain": D.name, "family": name, "sup": rep.sup, "bound": rep.bound,
                                        "p": rep.p, "worst_link": rep.worst_link, "normal": rep.normal})
            if not rep.normal:
                out.violate("sup of S_n o f_n bounded by C(p) with J < 1 links",
                            {"domain": D.name, "family": name, "sup": rep.sup, "worst_link": rep.worst_link})
    return out


def cmd_pba(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "k", "trials", "points", "family"})
    k = desc.float("k", 1.0)
    trials = desc.int("trials", 200)
    points = desc.int("points", 64)
    family = desc.word("family", "poly", ("poly", "constant"))
    out = Outcome(["domain", "k", "r0hat", "chat", "pairs", "violations", "frontier", "excluded"], [], {"domains": {}})
    for D in desc.domains():
        rep = rs.pba_probe(D, k, trials, points, seed=cfg.seed, family=family)
        out.rows.append([D.name, k, rep.r0hat, rep.chat, rep.pairs, len(rep.violations), len(rep.frontier), rep.excluded])
        out.summary["domains"][D.name] = {"r0hat": rep.r0hat, "chat": rep.chat, "frontier": rep.frontier[:5]}
        if rep.violations or rep.r0hat == 0:
            out.violate("some ladder pair is violation-free", {"domain": D.name, "witnesses": rep.violations})
    return out


def cmd_kobayashi(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "ray", "direction", "family"})
    e = desc.one("ray")
    deltas = np.logspace(-4, -1, 10)
    if e is not None:
        a = e.args
        if len(a) != 5 or a[0] != "w2" or a[4] not in ("log", "lin"):
            raise desc.error(e, "expected 'ray w2 <delta-min> <delta-max> <count> log|lin'")
        try:
            lo, hi, cnt = float(a[1]), float(a[2]), int(a[3])
        except ValueError:
            raise desc.error(e, "bad ray bounds") from None
        if not 0 < lo < hi <= 0.1 or cnt < 2:
            raise desc.error(e, "need 0 < delta-min < delta-max <= 0.1 and count >= 2")
        deltas = np.logspace(math.log10(lo), math.log10(hi), cnt) if a[4] == "log" else np.linspace(lo, hi, cnt)
    dirs = []
    for d in desc.all("direction"):
        if len(d.args) != 4:
            raise desc.error(d, "'direction' takes re1 im1 re2 im2")
        try:
            v = [float(x) for x in d.args]
        except ValueError:
            raise desc.error(d, "direction components must be numbers") from None
        if not any(v):
            raise desc.error(d, "direction must be nonzero")
        dirs.append(np.array([complex(v[0], v[1]), complex(v[2], v[3])]))
    dirs = dirs or [np.array([1, 0], complex), np.array([0, 1], complex)]
    family = desc.word("family", "affine+quad", ("affine", "affine+quad"))
    out = Outcome(["domain", "X1_re", "X1_im", "X2_re", "X2_im", "delta", "mVal", "kUpper", "kLower", "ratio"], [], {"sweeps": []})
    for D in desc.domains():
        for X in dirs:
            sw = kob.metric_ratio_sweep(D, deltas, X, family, map_fn=pmap())
            for r in sw.rows:
                out.rows.append([D.name, X[0].real, X[0].imag, X[1].real, X[1].imag, r["delta"], r["mVal"],
                                 r["kUpper"], r["kLower"], r["ratio"]])
                if not r["mVal"] > 0:
                    out.violate("M > 0 for nonzero X", {"domain": D.name, "delta": r["delta"]})
                if r["kLower"] / sw.A_hat > r["kUpper"] * (1 + 1e-12):
                    out.violate("lower bound below upper bound", {"domain": D.name, "delta": r["delta"]})
            out.summary["sweeps"].append({"domain": D.name, "X": X, "slope_m": sw.slope_m, "slope_k": sw.slope_k,
                                          "ratio_min": sw.ratio_min, "ratio_max": sw.ratio_max, "A_hat": sw.A_hat})
            if not (0.1 <= sw.ratio_min and sw.ratio_max <= 10.0):
                out.violate("kUpper / M within a factor 10", {"domain": D.name, "X": X, "range": [sw.ratio_min, sw.ratio_max]})
    return out


def _chains(D: dm.DomainModel, cfg: RunConfig, count: int) -> dict:
    ok = 0
    worst = 0.0
    bad = None
    for i in range(count):
        rng = rng_for(cfg.seed, "chains:" + D.name, i)
        length = int(rng.integers(1, 6))
        Cp = dm.chain_constant(D.C5, length - 1)
        chain = dm.random_chain(D, rng, length, 0.5 * D.eps0 / Cp)
        cert = dm.chain_engulf(D, chain)
        worst = max(worst, float(dm.sup_norm_c2(cert.image)) / cert.Cp)
        if cert.ok and cert.in_pseudo_ball:
            ok += 1
        elif bad is None:
            bad = {"index": i, "chain": [_pt(q) for q in chain]}
    return {"ok": ok, "count": count, "worst_image_over_Cp": worst, "witness": bad}


def cmd_verify_all(desc: Descriptor, cfg: RunConfig) -> Outcome:
    desc.check_keys({"domain", "samples", "chains", "discs"})
    samples = desc.int("samples", 2000)
    n_chains = desc.int("chains", 200)
    n_discs = desc.int("discs", 200)
    names = []
    for e in desc.all("domain"):
        path = desc.base / e.args[0] if e.args else None
        names.append(str(path.resolve()) if path is not None and path.is_file() else (e.args[0] if e.args else ""))
    names = names or ["egg1"]
    doms = desc.domains()
    out = Outcome(["check", "domain", "verdict", "violations"], [], {"checks": {}})

    def sub(tag, fn, text, dname=""):
        d = loads_descriptor(text, f"<verify-all:{tag}>")
        res = fn(d, cfg)
        out.rows.append([tag, dname, "pass" if not res.violations else "fail", len(res.violations)])
        out.summary["checks"][f"{tag}:{dname}" if dname else tag] = {"summary": res.summary, "violations": res.violations}
        for v in res.violations:
            out.violate(f"{tag}: {v['invariant']}", v["witness"])

    for name, D in zip(names, doms):
        dl = f"domain {name}\n"
        sub("tau", cmd_tau, dl + "random 1000", D.name)
        sub("frame", cmd_frame, dl + "random 1000", D.name)
        sub("constants", cmd_constants, dl + f"samples {samples}", D.name)
        ch = _chains(D, cfg, n_chains)
        out.rows.append(["chains", D.name, "pass" if ch["ok"] == ch["count"] else "fail", ch["count"] - ch["ok"]])
        out.summary["checks"][f"chains:{D.name}"] = ch
        if ch["ok"] != ch["count"]:
            out.violate("chains: image within C(p) and inside the pseudo-ball", ch["witness"])
        sub("rescale", cmd_rescale, dl, D.name)
        sub("normality", cmd_normality, dl, D.name)
        sub("pba", cmd_pba, dl, D.name)
        sub("kobayashi", cmd_kobayashi, dl + "ray w2 1e-4 1e-1 8 log", D.name)
        sub("renorm-catlin-discs", cmd_renorm, dl + f"suite catlin-discs\ndiscs {n_discs}", D.name)
    sub("renorm-zalcman-nz", cmd_renorm, "suite zalcman-nz")
    sub("renorm-zalcman-exp", cmd_renorm, "suite zalcman-exp")
    return out


HANDLERS = {
    "tau": cmd_tau,
    "frame": cmd_frame,
    "constants": cmd_constants,
    "renorm": cmd_renorm,
    "rescale": cmd_rescale,
    "normality": cmd_normality,
    "pba": cmd_pba,
    "kobayashi": cmd_kobayashi,
    "verify-all": cmd_verify_all,
}


def run(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    stem = cfg.out / cfg.command
    try:
        desc = load_descriptor(cfg.config) if cfg.config is not None else Descriptor("<defaults>")
        outcome = HANDLERS[cfg.command](desc, cfg)
    except (DescriptorError, InvalidDomainError) as exc:
        print(f"ftl: {exc}", file=sys.stderr)
        payload = {"command": cfg.command, "seed": cfg.seed, "status": "invalid", "error": str(exc)}
        if isinstance(exc, DescriptorError):
            payload.update(file=exc.source, line=exc.line)
        write_json(stem.with_suffix(".json"), payload)
        return 2
    write_csv(stem.with_suffix(".csv"), outcome.header, outcome.rows)
    status = "violation" if outcome.violations else "ok"
    write_json(stem.with_suffix(".json"), {"command": cfg.command, "seed": cfg.seed, "status": status,
                                           "violations": outcome.violations, "summary": outcome.summary})
    if outcome.violations:
        print(f"ftl {cfg.command}: {len(outcome.violations)} violation(s); see {stem.with_suffix('.json')}", file=sys.stderr)
        return 1
    return 0


def _tol(text: str) -> tuple[str, float]:
    name, _, val = text.partition("=")
    if name not in DEFAULT_TOL:
        raise argparse.ArgumentTypeError(f"unknown tolerance {name!r} (known: {', '.join(DEFAULT_TOL)})")
    try:
        return name, float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value in {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ftl", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", type=Path, help="descriptor or domain file")
    ap.add_argument("--out", type=Path, default=Path("ftl-out"), help="report directory")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=_tol, action="append", default=[], metavar="NAME=VALUE",
                    help="override a tolerance: " + ", ".join(DEFAULT_TOL))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.config, args.out, args.seed, dict(args.tol))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
