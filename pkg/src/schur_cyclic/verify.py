"""Verification suites: each runs a family of independent cross-checks and
collects the failures.  Cases are plain picklable tuples so that ``jobs > 1``
can farm them out to worker processes; results are always reported in case
order."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import restricted as rw
from .algebra import get_field
from .cyclic import (bounds, cyclic_generator_matrix, from_generating_set,
                     mir12_square_generator, singleton_cap, square_spec,
                     subfield_subcode_oracle)
from .cyclotomic import coset_unions, negate
from .linear import min_distance, reed_muller, reed_solomon, schur_square, schur_square_rank

SUITES = ("theorem1", "srw", "tables", "distances", "triple", "bounds", "reference")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "failures": list(self.failures), "details": list(self.details),
                "seconds": round(self.seconds, 3)}


def _run(name, fn, cases, jobs=1):
    t0 = time.perf_counter()
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            outs = list(pool.map(fn, cases))
    else:
        outs = [fn(c) for c in cases]
    res = SuiteResult(name, cases=len(cases))
    for ok, info in outs:
        res.details.append(info)
        if not ok:
            res.failures.append(info)
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# theorem1: three routes to the square of a cyclic code
# ---------------------------------------------------------------------------


def _theorem1_case(case):
    q, n = case
    bad = []
    count = 0
    for I in coset_unions(q, n):
        count += 1
        c = from_generating_set(q, n, I)
        G = c.generator_matrix()
        if G != subfield_subcode_oracle(negate(I), c.ext):
            bad.append({"I": I.sorted, "what": "C != B(-I)|Fq"})
            continue
        sq = square_spec(c)
        products = schur_square(G)
        sub = subfield_subcode_oracle(negate(sq.I), c.ext)
        g_mir = mir12_square_generator(c)
        via_mir = cyclic_generator_matrix(c.field, n, g_mir)
        if not (products == sub == via_mir == sq.generator_matrix()):
            bad.append({"I": I.sorted, "what": "square routes disagree"})
        elif g_mir != sq.g or products.rank != len(sq.I):
            bad.append({"I": I.sorted, "what": "generator or dimension mismatch"})
    return not bad, {"q": q, "n": n, "sets": count, "mismatches": bad[:5]}


def suite_theorem1(ns=(7, 15, 31), q=2, jobs=1):
    return _run("theorem1", _theorem1_case, [(q, n) for n in ns], jobs)


# ---------------------------------------------------------------------------
# srw: subadditivity of restricted weights
# ---------------------------------------------------------------------------

EXHAUSTIVE_SRW_K = 9


def _srw_case(case):
    k, s, samples, seed = case
    n = 2**k - 1
    w = rw.restricted_weights(2, k, s).astype(np.int32)
    if k <= EXHAUSTIVE_SRW_K:
        mode, pairs = "exhaustive", n * n
        t = np.arange(n)
        bad = None
        for start in range(0, n, 256):
            ts = t[start:start + 256]
            lhs = w[(ts[:, None] + t[None, :]) % n]
            rhs = w[ts][:, None] + w[None, :]
            viol = np.argwhere(lhs > rhs)
            if len(viol):
                i, j = viol[0]
                bad = (int(ts[i]), int(t[j]))
                break
    else:
        mode, pairs = "sampled", samples
        rng = np.random.default_rng([seed, k, s])
        bad = None
        for start in range(0, samples, 1 << 18):
            size = min(1 << 18, samples - start)
            a = rng.integers(0, n, size)
            b = rng.integers(0, n, size)
            viol = np.flatnonzero(w[(a + b) % n] > w[a] + w[b])
            if len(viol):
                bad = (int(a[viol[0]]), int(b[viol[0]]))
                break
    info = {"k": k, "s": s, "mode": mode, "pairs": pairs}
    if bad:
        info["counterexample"] = bad
    return bad is None, info


def suite_srw(ks=range(1, 13), samples=10**6, seed=0, jobs=1):
    cases = [(k, s, samples, seed) for k in ks for s in range(1, k + 1)]
    return _run("srw", _srw_case, cases, jobs)


# ---------------------------------------------------------------------------
# tables: recurrences vs enumeration vs the Schur-square rank
# ---------------------------------------------------------------------------


def _tables_case(case):
    which, k, rank_oracle = case
    s, m = rw.TABLES[which]
    rec = rw.table(which, k, k)[0]
    spec, enum = rw.construct_restricted(2, k, s, m)
    b = bounds(spec)
    info = {"table": which, "k": k, "row": list(rec.values()), "flags": list(rec.flags)}
    problems = []
    if rec.values() != enum.values():
        problems.append(f"recurrence {rec.values()} != enumeration {enum.values()}")
    if rw.n_count(2, s, m, k) != rec.dim_C:
        problems.append("walk count differs from dim C")
    if (b.d_C_lower, b.d_Csq_lower) != (rec.d_C_lower, rec.d_Csq_lower):
        info["amplitude_bounds"] = [b.d_C_lower, b.d_Csq_lower]
        if b.d_C_lower < rec.d_C_lower or b.d_Csq_lower < rec.d_Csq_lower:
            problems.append("amplitude bound weaker than the restricted-weight bound")
    if rank_oracle:
        r = schur_square_rank(spec.generator_matrix())
        info["rank_oracle"] = r
        if r != rec.dim_Csq:
            problems.append(f"rank oracle {r} != |W+W| {rec.dim_Csq}")
    if problems:
        info["problems"] = problems
    return not problems, info


def _graph_case(case):
    s, m, seeds, poly = case
    g = rw.build_graph(2, s, m)
    seq = rw.n_sequence(g, len(seeds))
    ok = tuple(seq[1:len(seeds) + 1]) == tuple(seeds) and g.charpoly == tuple(poly)
    return ok, {"graph": [s, m], "vertices": g.order, "charpoly": list(g.charpoly),
                "seeds": seq[1:len(seeds) + 1]}


def suite_tables(kmax=12, rank_oracle=True, jobs=1):
    cases = [("t1", k, rank_oracle) for k in range(3, kmax + 1)]
    cases += [("t2", k, rank_oracle) for k in range(5, kmax + 1)]
    res = _run("tables", _tables_case, cases, jobs)
    # the graph of the (5, 2) family must reproduce the hard-coded recurrence
    ok, info = _graph_case((5, 2, rw._S5M2_SEEDS, (0, 1, 0, 1, 0, 0, -2, 0, -1, 0, -1, 1)))
    res.cases += 1
    res.details.append(info)
    if not ok:
        res.failures.append(info)
    return res


# ---------------------------------------------------------------------------
# distances: exact values for the small rows, witnesses for the large ones
# ---------------------------------------------------------------------------


def _distance_case(case):
    kind, k, s = case
    m = (s - 1) // 2
    spec, row = rw.construct_restricted(2, k, s, m)
    if kind == "C":
        r = min_distance(spec.generator_matrix())
        lb, cap = row.d_C_lower, None
    elif kind == "Csq":
        sq = square_spec(spec)
        r = min_distance(sq.generator_matrix())
        lb, cap = row.d_Csq_lower, singleton_cap(spec.n, spec.dim)
    else:
        word = rw.special_low_weight_word(k, s)
        wt = int(word.sum())
        sq = square_spec(spec)
        member = sq.generator_matrix().contains(word)
        exact = member and wt == row.d_Csq_lower
        info = {"kind": "witness", "k": k, "s": s, "weight": wt, "bound": row.d_Csq_lower,
                "member": bool(member), "exact": bool(exact)}
        return exact, info
    ok = r.exact and lb <= r.value and (cap is None or r.value <= cap)
    info = {"kind": kind, "k": k, "s": s, "distance": r.value, "method": r.method,
            "bound": lb, "cap": cap, "tight": r.value == lb}
    return ok, info


DISTANCE_CASES = (("C", 3, 3), ("Csq", 3, 3), ("C", 4, 3), ("Csq", 4, 3), ("C", 5, 3),
                  ("witness", 6, 3), ("witness", 9, 3), ("witness", 12, 3),
                  ("witness", 5, 5), ("witness", 10, 5))


def suite_distances(jobs=1):
    res = _run("distances", _distance_case, list(DISTANCE_CASES), jobs)
    for info in res.details:
        # the small rows of the s=3 family are optimal: bound is attained
        if info["kind"] != "witness" and not info["tight"]:
            res.failures.append(info)
    return res


# ---------------------------------------------------------------------------
# triple: |W| = Tr(A^k) = recurrence
# ---------------------------------------------------------------------------

TRIPLE_PARAMS = ((3, 1), (4, 1), (5, 1), (5, 2), (7, 3))


def _triple_case(case):
    s, m, kmax = case
    g = rw.build_graph(2, s, m)
    traces = rw.walk_traces(g.adjacency, kmax)
    rec = rw.n_sequence(g, kmax)
    bad = []
    for k in range(s, kmax + 1):
        size = len(rw.w_set(2, k, s, m))
        if not size == traces[k] == rec[k]:
            bad.append((k, size, traces[k], rec[k]))
    for k in range(s, min(kmax, 10) + 1):
        walks = rw.count_closed_walks(g, k)
        if walks != rec[k]:
            bad.append((k, "walks", walks, rec[k]))
    info = {"s": s, "m": m, "kmax": kmax, "values": rec[s:]}
    if bad:
        info["counterexample"] = bad[0]
    return not bad, info


def suite_triple(kmax=20, params=TRIPLE_PARAMS, jobs=1):
    return _run("triple", _triple_case, [(s, m, kmax) for s, m in params], jobs)


# ---------------------------------------------------------------------------
# bounds: BCH <= exact <= Singleton-like cap
# ---------------------------------------------------------------------------


def _bounds_case(case):
    q, n, cap = case
    bad = []
    checked = 0
    for I in coset_unions(q, n):
        if not I.members:
            continue
        c = from_generating_set(q, n, I)
        b = bounds(c)
        sq = square_spec(c)
        for label, spec, lower, upper in (("C", c, b.d_C_lower, None),
                                          ("Csq", sq, b.d_Csq_lower, b.singleton_cap)):
            if q ** spec.dim > cap:
                continue
            d = min_distance(spec.generator_matrix(), cap=cap).value
            checked += 1
            if d < lower or (upper is not None and d > upper):
                bad.append({"I": I.sorted, "code": label, "d": d, "lower": lower, "upper": upper})
    return not bad, {"q": q, "n": n, "instances": checked, "violations": bad[:5]}


def suite_bounds(cases=((2, 7), (2, 15), (2, 21), (3, 8), (2, 31)), cap=1 << 18, jobs=1):
    return _run("bounds", _bounds_case, [(q, n, cap) for q, n in cases], jobs)


# ---------------------------------------------------------------------------
# reference codes
# ---------------------------------------------------------------------------


def _reference_case(case):
    kind = case[0]
    if kind == "rs":
        m = case[1]
        f = get_field(2, 3)
        G = reed_solomon(f, list(f.elements()), m)
        r = schur_square(G).rank
        return r == 2 * m + 1, {"code": f"RS(GF(8), m={m})", "square_rank": r, "expected": 2 * m + 1}
    r_, k = case[1], case[2]
    G = reed_muller(r_, k)
    sq = schur_square(G)
    d = min_distance(G).value
    dsq = min_distance(sq).value
    exp_dim = sum(1 for j in range(1 << k) if bin(j).count("1") <= r_)
    ok = (G.rank == exp_dim and d == 2 ** (k - r_) and dsq == 2 ** max(0, k - 2 * r_)
          and sq == reed_muller(min(k, 2 * r_), k))
    return ok, {"code": f"RM({r_},{k})", "dim": G.rank, "d": d, "dim_sq": sq.rank, "d_sq": dsq}


def suite_reference(jobs=1):
    cases = [("rs", m) for m in range(4)] + [("rm", 1, 4), ("rm", 2, 4)]
    return _run("reference", _reference_case, cases, jobs)


def run_suite(name: str, *, jobs=1, seed=0, **kw) -> SuiteResult:
    if name == "theorem1":
        return suite_theorem1(jobs=jobs, **kw)
    if name == "srw":
        return suite_srw(seed=seed, jobs=jobs, **kw)
    if name == "tables":
        return suite_tables(jobs=jobs, **kw)
    if name == "distances":
        return suite_distances(jobs=jobs)
    if name == "triple":
        return suite_triple(jobs=jobs, **kw)
    if name == "bounds":
        return suite_bounds(jobs=jobs, **kw)
    if name == "reference":
        return suite_reference(jobs=jobs)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")
