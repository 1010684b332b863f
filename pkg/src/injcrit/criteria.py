"""Mechanized checkers for the finite-injective-dimension criteria.

Each checker takes concrete graded inputs, tests the hypotheses of one
criterion (identified by an opaque id such as "T2.4" in the report
format), and, when all hypotheses pass, asserts the conclusion and
re-verifies it by an independent finite computation.  Hypothesis
failures yield "not_applicable" verdicts; capped computations yield
"undecided"; a verified-hypotheses instance whose conclusion check
fails is flagged "engine_bug", since the mathematics leaves no third
option.

The finiteness of injective dimension is always certified through a
single Bass number: for C maximal Cohen-Macaulay over a Cohen-Macaulay
ring of dimension d, the injective dimension is finite exactly when
Ext^{d+1}(k, C) vanishes.  No injective resolution is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .invariants import (RegularSequenceCertificate, UndecidedError,
                         depth, dimension, hilbert_series, is_cohen_macaulay,
                         length, multiplicity, rank, type_of)
from .modules import (GradedModule, ResolutionCapError, ZeroModuleError,
                      ext, quotient_by_sequence)

CRITERION_IDS = ("L2.1", "L2.2", "L2.3", "T2.4", "T2.4-moreover", "Claim",
                 "C2.6", "C2.7", "C2.8", "C2.9", "Bass")


@dataclass
class Hypothesis:
    name: str
    status: str            # "pass" | "fail" | "undecided"
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status,
                "values": self.values}


@dataclass
class CriterionReport:
    criterion: str
    inputs: dict
    hypotheses: list
    conclusion: str
    verification: dict = field(default_factory=lambda: {"status": "skipped",
                                                        "method": "none"})
    undecided: list = field(default_factory=list)

    @property
    def asserted(self) -> bool:
        return (not self.undecided
                and all(h.status == "pass" for h in self.hypotheses))

    @property
    def verdict(self) -> str:
        if self.undecided or any(h.status == "undecided"
                                 for h in self.hypotheses):
            return "undecided"
        if not all(h.status == "pass" for h in self.hypotheses):
            return "not_applicable"
        if self.verification["status"] == "fail":
            return "engine_bug"
        return "pass"

    def to_dict(self) -> dict:
        return {"criterion": self.criterion,
                "inputs": self.inputs,
                "hypotheses": [h.to_dict() for h in self.hypotheses],
                "conclusion": self.conclusion,
                "asserted": self.asserted,
                "verification": self.verification,
                "undecided": list(self.undecided),
                "verdict": self.verdict}


_CAPPED = (UndecidedError, ResolutionCapError)


class _Run:
    """Collects undecided reasons from capped computations."""

    def __init__(self):
        self.undecided = []

    def get(self, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _CAPPED as e:
            self.undecided.append(str(e))
            return None


def _mult_or_zero(E: GradedModule) -> int:
    if E.is_zero():
        return 0
    return multiplicity(E)


def _ext_window(M: GradedModule, C: GradedModule, lo: int, hi: int,
                run: _Run, cap=None) -> Optional[dict]:
    """{i: length-or-dimension marker} of Ext^i(M,C) over lo..hi; None if
    any computation was capped."""
    out = {}
    for i in range(lo, hi + 1):
        E = run.get(ext, M, C, i, "R", cap)
        if E is None:
            return None
        out[i] = 0 if E.is_zero() else (length(E) or -1)
    return out


def _name(M: GradedModule, default: str) -> str:
    return M.name or default


# ---------------------------------------------------------------------------
# multiplicity = length of the parameter quotient

def check_lemma_mult_length(M: GradedModule,
                            cert: RegularSequenceCertificate
                            ) -> CriterionReport:
    """e(M) equals the length of M cut by a verified linear parameter
    system (criterion id L2.1)."""
    if not cert.verified:
        raise ValueError("certificate is not verified for this module")
    run = _Run()
    hyps = [Hypothesis("certificate verified",
                       "pass",
                       {"elements": [str(x) for x in cert.elements],
                        "seed": cert.seed})]
    cm = run.get(is_cohen_macaulay, M)
    hyps.append(Hypothesis("M Cohen-Macaulay",
                           "undecided" if cm is None else
                           ("pass" if cm else "fail"), {}))
    e = run.get(multiplicity, M)
    cut = quotient_by_sequence(M, cert.elements)
    l = run.get(length, cut)
    verification = {"status": "skipped", "method": "two-sided computation"}
    if e is not None and l is not None:
        verification = {"status": "pass" if e == l else "fail",
                        "method": "two-sided computation",
                        "e": e, "length_of_quotient": l}
    return CriterionReport(
        "L2.1",
        {"M": _name(M, "M"), "sequence_length": len(cert.elements)},
        hyps,
        "e(M) = l(M / xM)",
        verification,
        run.undecided)


# ---------------------------------------------------------------------------
# regular-sequence transfer for Ext modules

def check_regseq_transfer(M: GradedModule, C: GradedModule,
                          cert: RegularSequenceCertificate,
                          degree_bound: int = 8,
                          cap: Optional[int] = None) -> CriterionReport:
    """Transfer of a regular sequence on M to Ext^{r-s}(M, C), with the
    base-change isomorphism and the vanishing one step further
    (criterion id L2.2)."""
    from .invariants import is_regular_element
    if not cert.verified:
        raise ValueError("certificate is not verified for this module")
    run = _Run()
    r = run.get(depth, C)
    s = run.get(dimension, M)
    inputs = {"M": _name(M, "M"), "C": _name(C, "C"), "r": r, "s": s,
              "sequence": [str(x) for x in cert.elements]}
    hyps = []
    if r is None or s is None:
        return CriterionReport("L2.2", inputs, hyps, "", undecided=run.undecided)
    if s > r:
        hyps.append(Hypothesis("s <= r", "fail", {"r": r, "s": s}))
        return CriterionReport("L2.2", inputs, hyps,
                               "transfer of the sequence to the Ext module")
    cm = run.get(is_cohen_macaulay, M)
    hyps.append(Hypothesis("M Cohen-Macaulay",
                           "undecided" if cm is None else
                           ("pass" if cm else "fail"), {}))
    hyps.append(Hypothesis("sequence length = dim M",
                           "pass" if len(cert.elements) == s else "fail",
                           {"length": len(cert.elements), "s": s}))
    window = _ext_window(M, C, r - s + 1, r + 1, run, cap)
    hyps.append(Hypothesis(
        "Ext^i(M,C) = 0 for r-s+1 <= i <= r+1",
        "undecided" if window is None else
        ("pass" if all(v == 0 for v in window.values()) else "fail"),
        {"window": window} if window is not None else {}))
    report = CriterionReport(
        "L2.2", inputs, hyps,
        "the sequence transfers to Ext^{r-s}(M,C), base-changes Ext^r, "
        "and Ext^{r+1}(M/xM, C) = 0",
        undecided=run.undecided)
    if not report.asserted:
        return report
    E = run.get(ext, M, C, r - s, "R", cap)
    if E is None:
        report.undecided = run.undecided
        return report
    checks = {}
    if s == 0:
        checks["ext_nonzero"] = not E.is_zero()
        ok = checks["ext_nonzero"]
    else:
        # (i) successive regularity on the Ext module
        flags = []
        N = E
        for x in cert.elements:
            flags.append(is_regular_element(N, x))
            N = quotient_by_sequence(N, [x])
        checks["regular_on_ext"] = flags
        # (ii) Ext^r(M/xM, C) matches Ext^{r-s}(M,C) / x, up to the
        # grading shift contributed by the connecting maps (one per
        # element, by its degree)
        MX = quotient_by_sequence(M, cert.elements)
        ER = run.get(ext, MX, C, r, "R", cap)
        if ER is None:
            report.undecided = run.undecided
            return report
        delta = sum(x.degree() for x in cert.elements)
        ha = hilbert_series(ER).coefficients(degree_bound)
        hb = hilbert_series(N).coefficients(degree_bound)
        hilbert_match = ({d: v for d, v in ha.items()
                          if d + delta <= degree_bound}
                         == {d - delta: v for d, v in hb.items()
                             if d <= degree_bound})
        ga = sorted(ER.minimal_model().shifts)
        gb = sorted(a - delta for a in N.minimal_model().shifts)
        iso_ok = hilbert_match and ga == gb
        checks["base_change_iso"] = iso_ok
        checks["iso_report"] = {"hilbert_match": hilbert_match,
                                "generator_match": ga == gb,
                                "shift": -delta}
        # (iii) vanishing one step further
        E1 = run.get(ext, MX, C, r + 1, "R", cap)
        if E1 is None:
            report.undecided = run.undecided
            return report
        checks["next_ext_zero"] = E1.is_zero()
        ok = all(flags) and iso_ok and checks["next_ext_zero"]
    report.verification = {"status": "pass" if ok else "fail",
                           "method": "kernel tests + Hilbert comparison",
                           **checks}
    return report


# ---------------------------------------------------------------------------
# finite-length criterion for the Bass number

def check_finite_length_criterion(M: GradedModule, C: GradedModule,
                                  cap: Optional[int] = None
                                  ) -> CriterionReport:
    """Length inequality plus one Ext vanishing forces the next Bass
    number of C to vanish (criterion id L2.3)."""
    run = _Run()
    lM = length(M)
    if lM is None:
        raise ValueError("M must have finite length")
    if lM == 0:
        raise ZeroModuleError("M must be nonzero")
    r = run.get(depth, C)
    t = run.get(type_of, C, cap)
    inputs = {"M": _name(M, "M"), "C": _name(C, "C"), "r": r,
              "type_C": t, "length_M": lM}
    hyps = []
    if r is None or t is None:
        return CriterionReport("L2.3", inputs, hyps, "",
                               undecided=run.undecided)
    E = run.get(ext, M, C, r, "R", cap)
    lE = length(E) if E is not None else None
    hyps.append(Hypothesis(
        "r(C) l(M) <= l(Ext^r(M,C))",
        "undecided" if lE is None else
        ("pass" if t * lM <= lE else "fail"),
        {"lhs": t * lM, "rhs": lE}))
    E1 = run.get(ext, M, C, r + 1, "R", cap)
    hyps.append(Hypothesis(
        "Ext^{r+1}(M,C) = 0",
        "undecided" if E1 is None else
        ("pass" if E1.is_zero() else "fail"),
        {"length": length(E1) if E1 is not None else None}))
    report = CriterionReport("L2.3", inputs, hyps,
                             "Ext^{r+1}(k, C) = 0",
                             undecided=run.undecided)
    if not report.asserted:
        return report
    k = C.ring.residue_field()
    B = run.get(ext, k, C, r + 1, "R", cap)
    if B is None:
        report.undecided = run.undecided
        return report
    report.verification = {"status": "pass" if B.is_zero() else "fail",
                           "method": "direct Bass-number computation",
                           "bass_length": length(B)}
    return report


# ---------------------------------------------------------------------------
# Bass-number finiteness certificate

def verify_finite_injdim_bass(C: GradedModule,
                              cap: Optional[int] = None) -> CriterionReport:
    """Finite injective dimension via vanishing of Ext^{dim R + 1}(k, C)
    (criterion id Bass)."""
    run = _Run()
    ring = C.ring
    R = ring.as_module()
    d = run.get(dimension, R)
    inputs = {"C": _name(C, "C"), "dim_R": d}
    hyps = []
    if d is None:
        return CriterionReport("Bass", inputs, hyps, "",
                               undecided=run.undecided)
    rcm = run.get(is_cohen_macaulay, R)
    hyps.append(Hypothesis("R Cohen-Macaulay",
                           "undecided" if rcm is None else
                           ("pass" if rcm else "fail"), {}))
    dC = run.get(dimension, C)
    depC = run.get(depth, C)
    mcm = (None if dC is None or depC is None
           else (dC == depC == d))
    hyps.append(Hypothesis("C maximal Cohen-Macaulay",
                           "undecided" if mcm is None else
                           ("pass" if mcm else "fail"),
                           {"dim": dC, "depth": depC, "dim_R": d}))
    k = ring.residue_field()
    B = run.get(ext, k, C, d + 1, "R", cap)
    hyps.append(Hypothesis("Ext^{dim R + 1}(k, C) = 0",
                           "undecided" if B is None else
                           ("pass" if B.is_zero() else "fail"),
                           {"bass_length": length(B) if B is not None
                            else None}))
    report = CriterionReport("Bass", inputs, hyps,
                             "C has finite injective dimension",
                             undecided=run.undecided)
    if report.asserted:
        report.verification = {"status": "pass",
                               "method": "bass number vanishing"}
    return report


# ---------------------------------------------------------------------------
# the main theorem

def check_main_theorem(C: GradedModule, M: GradedModule,
                       cap: Optional[int] = None) -> CriterionReport:
    """Multiplicity inequality plus a finite Ext vanishing window imply
    R Cohen-Macaulay and C maximal Cohen-Macaulay of finite injective
    dimension (criterion id T2.4)."""
    if C.is_zero():
        raise ZeroModuleError("C must be nonzero")
    run = _Run()
    r = run.get(depth, C)
    s = run.get(dimension, M)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "M": _name(M, "M"),
              "r": r, "s": s, "type_C": t}
    if r is not None and s is not None and s > r:
        raise ValueError(
            f"dim M = {s} exceeds depth C = {r}: the index window "
            f"Ext^{{r-s}}..Ext^{{r+1}} is empty of meaning; choose M with "
            f"dim M <= depth C")
    hyps = []
    if r is None or s is None or t is None:
        return CriterionReport("T2.4", inputs, hyps, "",
                               undecided=run.undecided)
    cm = run.get(is_cohen_macaulay, M)
    hyps.append(Hypothesis("M Cohen-Macaulay",
                           "undecided" if cm is None else
                           ("pass" if cm else "fail"), {}))
    eM = run.get(multiplicity, M)
    E = run.get(ext, M, C, r - s, "R", cap)
    eE = _mult_or_zero(E) if E is not None else None
    hyps.append(Hypothesis(
        "r(C) e(M) <= e(Ext^{r-s}(M,C))",
        "undecided" if eM is None or eE is None else
        ("pass" if t * eM <= eE else "fail"),
        {"lhs": None if eM is None else t * eM, "rhs": eE}))
    window = _ext_window(M, C, r - s + 1, r + 1, run, cap)
    hyps.append(Hypothesis(
        "Ext^i(M,C) = 0 for r-s+1 <= i <= r+1",
        "undecided" if window is None else
        ("pass" if all(v == 0 for v in window.values()) else "fail"),
        {"window": window} if window is not None else {}))
    report = CriterionReport(
        "T2.4", inputs, hyps,
        "R is Cohen-Macaulay and C is maximal Cohen-Macaulay "
        "with finite injective dimension",
        undecided=run.undecided)
    if not report.asserted:
        return report
    bass = verify_finite_injdim_bass(C, cap=cap)
    ok = bass.verdict == "pass"
    if bass.verdict == "undecided":
        report.undecided = report.undecided + bass.undecided + ["bass check"]
        return report
    report.verification = {"status": "pass" if ok else "fail",
                           "method": "depth/dim equalities + bass number",
                           "bass": bass.to_dict()}
    return report


def check_moreover_clause(C: GradedModule, M_verified: GradedModule,
                          others, degree_bound: int = 8,
                          cap: Optional[int] = None) -> CriterionReport:
    """Once the main criterion holds, every Cohen-Macaulay module of the
    same dimension satisfies both conditions, with the multiplicity
    inequality sharpened to an equality (criterion id T2.4-moreover)."""
    base = check_main_theorem(C, M_verified, cap=cap)
    run = _Run()
    r = run.get(depth, C)
    s = run.get(dimension, M_verified)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "M": _name(M_verified, "M"),
              "r": r, "s": s, "modules": [_name(N, f"N{i}")
                                          for i, N in enumerate(others)]}
    base_status = ("pass" if base.verdict == "pass" else
                   "undecided" if base.verdict == "undecided" else "fail")
    hyps = [Hypothesis("main criterion verified for M", base_status,
                       {"verdict": base.verdict})]
    report = CriterionReport(
        "T2.4-moreover", inputs, hyps,
        "every Cohen-Macaulay module of dimension s satisfies both "
        "conditions, with equality in the multiplicity bound",
        undecided=list(run.undecided))
    if not report.asserted or r is None or s is None or t is None:
        return report
    per_module = []
    all_ok = True
    for i, N in enumerate(others):
        entry = {"module": _name(N, f"N{i}")}
        sN = run.get(dimension, N)
        cmN = run.get(is_cohen_macaulay, N)
        if sN != s or not cmN:
            entry["skipped"] = f"not CM of dimension {s}"
            per_module.append(entry)
            continue
        eN = run.get(multiplicity, N)
        E = run.get(ext, N, C, r - s, "R", cap)
        window = _ext_window(N, C, r - s + 1, r + 1, run, cap)
        if eN is None or E is None or window is None:
            entry["undecided"] = True
            per_module.append(entry)
            all_ok = False
            continue
        eE = _mult_or_zero(E)
        entry["lhs"] = t * eN
        entry["rhs"] = eE
        entry["equality"] = (t * eN == eE)
        entry["window_zero"] = all(v == 0 for v in window.values())
        per_module.append(entry)
        if not (entry["equality"] and entry["window_zero"]):
            all_ok = False
    report.undecided = list(run.undecided)
    report.verification = {"status": "pass" if all_ok else "fail",
                           "method": "per-module equality + window",
                           "modules": per_module}
    return report


def check_claim_multiplicity(C: GradedModule, M: GradedModule,
                             cap: Optional[int] = None) -> CriterionReport:
    """Multiplicity is preserved by dualizing into C, scaled by the type
    of C: r(C) e(M) = e(Hom(M, C)) for M maximal Cohen-Macaulay over a
    Cohen-Macaulay ring (criterion id Claim)."""
    run = _Run()
    ring = C.ring
    R = ring.as_module()
    d = run.get(dimension, R)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "M": _name(M, "M"), "dim_R": d,
              "type_C": t}
    hyps = []
    rcm = run.get(is_cohen_macaulay, R)
    hyps.append(Hypothesis("R Cohen-Macaulay",
                           "undecided" if rcm is None else
                           ("pass" if rcm else "fail"), {}))
    dM = run.get(dimension, M)
    depM = run.get(depth, M)
    mcm = None if dM is None or depM is None or d is None else \
        (dM == depM == d)
    hyps.append(Hypothesis("M maximal Cohen-Macaulay",
                           "undecided" if mcm is None else
                           ("pass" if mcm else "fail"),
                           {"dim": dM, "depth": depM}))
    bass = verify_finite_injdim_bass(C, cap=cap)
    hyps.append(Hypothesis("C maximal Cohen-Macaulay with finite "
                           "injective dimension",
                           bass.verdict if bass.verdict in
                           ("pass", "undecided") else "fail", {}))
    report = CriterionReport("Claim", inputs, hyps,
                             "r(C) e(M) = e(Hom(M, C))",
                             undecided=run.undecided)
    if not report.asserted or t is None:
        return report
    eM = run.get(multiplicity, M)
    H = run.get(ext, M, C, 0, "R", cap)
    if eM is None or H is None:
        report.undecided = run.undecided
        return report
    eH = _mult_or_zero(H)
    report.verification = {"status": "pass" if t * eM == eH else "fail",
                           "method": "two-sided multiplicity",
                           "lhs": t * eM, "rhs": eH}
    return report


# ---------------------------------------------------------------------------
# corollaries

def check_gorenstein_criterion(M: GradedModule,
                               cap: Optional[int] = None) -> CriterionReport:
    """Gorensteinness of R from a Cohen-Macaulay witness module
    (criterion id C2.6, the case C = R)."""
    run = _Run()
    ring = M.ring
    R = ring.as_module()
    r = run.get(depth, R)
    tR = run.get(type_of, R, cap)
    inputs = {"M": _name(M, "M"), "depth_R": r, "type_R": tR}
    hyps = []
    if r is None:
        return CriterionReport("C2.6", inputs, hyps, "",
                               undecided=run.undecided)
    cm = run.get(is_cohen_macaulay, M)
    hyps.append(Hypothesis("M Cohen-Macaulay",
                           "undecided" if cm is None else
                           ("pass" if cm else "fail"), {}))
    s = run.get(dimension, M)
    hyps.append(Hypothesis("dim M = depth R",
                           "undecided" if s is None else
                           ("pass" if s == r else "fail"),
                           {"dim_M": s, "depth_R": r}))
    eM = run.get(multiplicity, M)
    H = run.get(ext, M, R, 0, "R", cap)
    eH = _mult_or_zero(H) if H is not None else None
    hyps.append(Hypothesis(
        "r(R) e(M) <= e(Hom(M,R))",
        "undecided" if None in (tR, eM, eH) else
        ("pass" if tR * eM <= eH else "fail"),
        {"lhs": None if None in (tR, eM) else tR * eM, "rhs": eH}))
    window = _ext_window(M, R, 1, r + 1, run, cap)
    hyps.append(Hypothesis(
        "Ext^i(M,R) = 0 for 1 <= i <= depth R + 1",
        "undecided" if window is None else
        ("pass" if all(v == 0 for v in window.values()) else "fail"),
        {"window": window} if window is not None else {}))
    report = CriterionReport("C2.6", inputs, hyps, "R is Gorenstein",
                             undecided=run.undecided)
    if not report.asserted:
        return report
    rcm = run.get(is_cohen_macaulay, R)
    ok = rcm is True and tR == 1
    report.verification = {"status": "pass" if ok else "fail",
                           "method": "type(R) = 1 and R Cohen-Macaulay",
                           "type_R": tR, "R_cm": rcm}
    return report


def check_mcm_inequality(C: GradedModule,
                         cap: Optional[int] = None) -> CriterionReport:
    """Finite injective dimension of a maximal Cohen-Macaulay module from
    the inequality r(C) e(R) <= e(C) (criterion id C2.7)."""
    run = _Run()
    ring = C.ring
    R = ring.as_module()
    d = run.get(dimension, R)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "dim_R": d, "type_C": t}
    hyps = []
    rcm = run.get(is_cohen_macaulay, R)
    hyps.append(Hypothesis("R Cohen-Macaulay",
                           "undecided" if rcm is None else
                           ("pass" if rcm else "fail"), {}))
    dC = run.get(dimension, C)
    depC = run.get(depth, C)
    mcm = None if None in (dC, depC, d) else (dC == depC == d)
    hyps.append(Hypothesis("C maximal Cohen-Macaulay",
                           "undecided" if mcm is None else
                           ("pass" if mcm else "fail"),
                           {"dim": dC, "depth": depC}))
    eR = run.get(multiplicity, R)
    eC = run.get(multiplicity, C)
    hyps.append(Hypothesis("r(C) e(R) <= e(C)",
                           "undecided" if None in (t, eR, eC) else
                           ("pass" if t * eR <= eC else "fail"),
                           {"lhs": None if None in (t, eR) else t * eR,
                            "rhs": eC}))
    report = CriterionReport("C2.7", inputs, hyps,
                             "C has finite injective dimension",
                             undecided=run.undecided)
    if not report.asserted:
        return report
    bass = verify_finite_injdim_bass(C, cap=cap)
    if bass.verdict == "undecided":
        report.undecided = report.undecided + bass.undecided + ["bass check"]
        return report
    report.verification = {"status": "pass" if bass.verdict == "pass"
                           else "fail",
                           "method": "bass number vanishing",
                           "bass": bass.to_dict()}
    return report


def check_rank_criterion(C: GradedModule,
                         cap: Optional[int] = None) -> CriterionReport:
    """Finite injective dimension from type bounded by rank over a
    flagged domain, with the exact identity e(C) = e(R) rank(C) as a
    cross-check (criterion id C2.8)."""
    run = _Run()
    ring = C.ring
    R = ring.as_module()
    d = run.get(dimension, R)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "dim_R": d, "type_C": t,
              "domain_flag": ring.domain_flag}
    hyps = []
    rcm = run.get(is_cohen_macaulay, R)
    hyps.append(Hypothesis("R Cohen-Macaulay",
                           "undecided" if rcm is None else
                           ("pass" if rcm else "fail"), {}))
    dC = run.get(dimension, C)
    depC = run.get(depth, C)
    mcm = None if None in (dC, depC, d) else (dC == depC == d)
    hyps.append(Hypothesis("C maximal Cohen-Macaulay",
                           "undecided" if mcm is None else
                           ("pass" if mcm else "fail"),
                           {"dim": dC, "depth": depC}))
    rk = run.get(rank, C)
    hyps.append(Hypothesis("C has a rank (flagged domain)",
                           "undecided" if rk is None and run.undecided else
                           ("pass" if rk is not None else "fail"),
                           {"rank": rk}))
    hyps.append(Hypothesis("r(C) <= rank(C)",
                           "undecided" if None in (t, rk) and run.undecided
                           else ("pass" if rk is not None and t is not None
                                 and t <= rk else "fail"),
                           {"type": t, "rank": rk}))
    report = CriterionReport("C2.8", inputs, hyps,
                             "C has finite injective dimension",
                             undecided=run.undecided)
    if not report.asserted:
        return report
    eR = run.get(multiplicity, R)
    eC = run.get(multiplicity, C)
    identity_ok = (eR is not None and eC is not None
                   and eC == eR * rk)
    bass = verify_finite_injdim_bass(C, cap=cap)
    if bass.verdict == "undecided" or eR is None or eC is None:
        report.undecided = report.undecided + bass.undecided + ["bass check"]
        return report
    ok = identity_ok and bass.verdict == "pass"
    report.verification = {"status": "pass" if ok else "fail",
                           "method": "multiplicity identity + bass number",
                           "e_C": eC, "e_R_times_rank": eR * rk,
                           "bass": bass.to_dict()}
    return report


def check_self_ext_criterion(C: GradedModule,
                             cap: Optional[int] = None) -> CriterionReport:
    """The case M = C: self-Ext vanishing plus an endomorphism-ring
    multiplicity bound (criterion id C2.9)."""
    run = _Run()
    n = run.get(dimension, C)
    t = run.get(type_of, C, cap)
    inputs = {"C": _name(C, "C"), "n": n, "type_C": t}
    hyps = []
    if n is None:
        return CriterionReport("C2.9", inputs, hyps, "",
                               undecided=run.undecided)
    cm = run.get(is_cohen_macaulay, C)
    hyps.append(Hypothesis("C Cohen-Macaulay",
                           "undecided" if cm is None else
                           ("pass" if cm else "fail"), {}))
    eC = run.get(multiplicity, C)
    End = run.get(ext, C, C, 0, "R", cap)
    eEnd = _mult_or_zero(End) if End is not None else None
    hyps.append(Hypothesis(
        "r(C) e(C) <= e(End(C))",
        "undecided" if None in (t, eC, eEnd) else
        ("pass" if t * eC <= eEnd else "fail"),
        {"lhs": None if None in (t, eC) else t * eC, "rhs": eEnd}))
    window = _ext_window(C, C, 1, n + 1, run, cap)
    hyps.append(Hypothesis(
        "Ext^i(C,C) = 0 for 1 <= i <= n+1",
        "undecided" if window is None else
        ("pass" if all(v == 0 for v in window.values()) else "fail"),
        {"window": window} if window is not None else {}))
    report = CriterionReport(
        "C2.9", inputs, hyps,
        "R is Cohen-Macaulay and C is maximal Cohen-Macaulay "
        "with finite injective dimension",
        undecided=run.undecided)
    if not report.asserted:
        return report
    bass = verify_finite_injdim_bass(C, cap=cap)
    if bass.verdict == "undecided":
        report.undecided = report.undecided + bass.undecided + ["bass check"]
        return report
    report.verification = {"status": "pass" if bass.verdict == "pass"
                           else "fail",
                           "method": "bass number vanishing",
                           "bass": bass.to_dict()}
    return report
