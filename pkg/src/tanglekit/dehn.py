"""
Slopes, the Montesinos trick and family reports.

A slope ``a/b`` on the boundary torus of the double branched cover of a
tangle ``t`` is filled by the double branched cover of ``N(-a/b + t)``.
Reports never assert a verdict without listing the hypotheses that were
checked; a failed hypothesis yields ``Unknown`` together with the reason.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import conventions as cv
from . import diagram as dg
from . import invariants as inv
from . import montesinos as mo
from . import quasialt as qa
from . import tangle as tg

DIRECT = "Direct"
RECIPROCAL = "Reciprocal"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Slope:
    """p * gamma_inf + q * gamma_0, stored with q >= 0 (and p > 0 when q = 0)."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("(0, 0) is not a slope")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def fraction(self):
        return tg.TangleFraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


def montesinos_trick(t, s):
    """Branch link of the filling: N(-p/q + t), or D(t) for the slope 1/0."""
    if isinstance(t, str):
        t = tg.parse_expr(t)
    if s.q == 0:
        return tg.Denominator(t)
    return tg.Numerator(tg.Sum(tg.rational(tg.TangleFraction(-s.p, s.q)), t))


def reciprocal_equivalence(t, s):
    """
    The pair (rotCW(t), -q/p) whose branch link has the same determinant as
    that of (t, p/q); with t = tau(T) the rotated diagram is the encirclement
    seen from the reciprocal side.
    """
    if isinstance(t, str):
        t = tg.parse_expr(t)
    other = (tg.RotateCW(t), Slope(-s.q, s.p))
    lhs = inv.link_det(montesinos_trick(t, s))
    rhs = inv.link_det(montesinos_trick(*other))
    if lhs != rhs:
        raise inv.IdentityViolation("reciprocal presentations disagree", direct=lhs, reciprocal=rhs)
    return other


@dataclass(frozen=True)
class Prop1Description:
    montesinos: mo.MontesinosForm
    knot: str
    coefficient_magnitude: int
    coefficient_sign: str = "undetermined"

    def to_json(self):
        return {
            "montesinos": self.montesinos.to_json(),
            "surgery": {
                "knot": self.knot,
                "coefficient_magnitude": self.coefficient_magnitude,
                "coefficient_sign": self.coefficient_sign,
            },
        }


def prop1_description(m):
    """Seifert description of the 1/2 filling of tau(-m)."""
    if m < 1:
        raise ValueError("m must be positive")
    form = mo.augmented_form(m, 1)
    magnitude = inv.link_det(montesinos_trick(tg.Encircle(tg.Integer(-m)), Slope(1, 2)))
    if magnitude != 4 * (m + 1):
        raise inv.IdentityViolation("surgery coefficient mismatch", det=magnitude, expected=4 * (m + 1))
    return Prop1Description(form, f"T(2,{-2 * m - 1})", magnitude)


# --------------------------------------------------------------------------
# Family reports


@dataclass(frozen=True)
class Verdict:
    status: str
    hypotheses: dict = field(default_factory=dict)
    reasons: tuple = ()

    @property
    def positive(self):
        return self.status != UNKNOWN

    def to_json(self):
        return {"status": self.status, "hypotheses": self.hypotheses, "reasons": list(self.reasons)}


@dataclass(frozen=True)
class FamilyReport:
    tangle: str
    slope: Slope
    which: str
    branch_link: str
    determinant: int
    crossings: int
    certificate: object
    l_space: Verdict
    non_left_orderable: Verdict
    hyperbolic_branch_link: Verdict
    non_seifert: Verdict
    non_qa_flag: bool

    def to_json(self, inline_certificate=True):
        data = {
            "tangle": self.tangle,
            "slope": {"p": self.slope.p, "q": self.slope.q},
            "which": self.which,
            "branch_link": self.branch_link,
            "determinant": self.determinant,
            "crossings": self.crossings,
            "c_gt_det": self.non_qa_flag,
            "verdicts": {
                "l_space": self.l_space.to_json(),
                "non_left_orderable": self.non_left_orderable.to_json(),
                "hyperbolic_branch_link": self.hyperbolic_branch_link.to_json(),
                "non_seifert": self.non_seifert.to_json(),
            },
        }
        if self.certificate is not None:
            data["certificate"] = qa.to_json(self.certificate) if inline_certificate else "attached"
        return data


def match_tn(t):
    """(n, box) if ``t`` is structurally build_Tn(n, box), else None."""
    try:
        c = dg.synthesize(t).crossing_count
    except dg.DiagramError:
        return None
    for box in (dg.ODD, dg.EVEN):
        for n in range(1, c // 2 + 1):
            if dg.build_Tn(n, box) == t:
                return n, box
    return None


def component_report(d):
    """(number of components, list of per-component self-crossing counts)."""
    counts = []
    for _, _, _, path in d.strands():
        seen = [c for c, _ in path]
        counts.append(len(seen) - len(set(seen)))
    counts += [0] * d.loops
    return len(counts), counts


def _augmented_link(t, f):
    """N(T*(-1) + (-p/q)): the alternating link augmented by the encircling circle."""
    return tg.Numerator(tg.Sum(tg.Product(t, tg.Integer(-1)), tg.rational(-f)))


def family_report(t, p, q, which=DIRECT):
    if isinstance(t, str):
        t = tg.parse_expr(t)
    f = tg.TangleFraction(p, q)
    p, q = f.num, f.den
    if q == 0:
        raise ValueError("need a finite p/q")
    tdiag = dg.synthesize(t)
    tangle_type = dg.classify_type(tdiag)
    if tangle_type != cv.TYPE2:
        raise dg.EncircleTypeError("family reports need a type-2 tangle")
    tau = tg.Encircle(t)
    slope = Slope(p, p + q)
    if which == DIRECT:
        link = montesinos_trick(tau, slope)
    elif which == RECIPROCAL:
        link = montesinos_trick(*reciprocal_equivalence(tau, slope))
    else:
        raise ValueError(f"unknown presentation {which!r}")
    d = dg.synthesize(link)
    det = inv.determinant(d)
    direct_det = inv.link_det(montesinos_trick(tau, slope))
    if det != direct_det:
        raise inv.IdentityViolation("determinant differs between presentations", det=det, direct=direct_det)
    pair = inv.det_pair(tdiag)
    c_t = tdiag.crossing_count
    in_range = 0 < f.num and f <= 1

    # QA certificate
    cert, cert_reasons = None, []
    if in_range:
        cert = qa.certify_family(t, p, q)
    elif f.num < 0:
        direct = dg.synthesize(montesinos_trick(tau, slope))
        try:
            cert = qa.certify_alternating_base(direct)
        except qa.SplitOrUnreduced as err:
            cert_reasons.append(f"no alternating-base certificate: {err}")
    else:
        cert_reasons.append("p/q > 1 lies outside the certified range")
    problems = qa.check_certificate(cert) if cert is not None else ["no certificate"]
    if cert is not None and problems:
        raise inv.IdentityViolation("emitted certificate failed its own check", violations=problems)
    l_space = (
        Verdict("ByQACertificate", {"certificate_valid": True, "det": det})
        if cert is not None
        else Verdict(UNKNOWN, {}, tuple(cert_reasons))
    )

    # non-left-orderability
    nlo_hyp = {"connected_alternating_type2": True, "p/q <= 1": f <= 1}
    non_lo = (
        Verdict("ByTheorem1", nlo_hyp)
        if f <= 1
        else Verdict(UNKNOWN, nlo_hyp, ("p/q > 1",))
    )

    # hyperbolicity of the branch link
    lu = dg.locally_unknotted(t, tdiag)
    lemma = dg.synthesize(_augmented_link(t, f)) if in_range else None
    hyp = {
        "0 < p/q <= 1": in_range,
        "locally_unknotted": lu,
        "N_T > 1": pair.N > 1,
        "D_T >= c(T)": pair.D >= c_t,
    }
    if lemma is not None:
        hyp["det > c (augmented link)"] = inv.determinant(lemma) > lemma.crossing_count
    failed = [k for k, v in hyp.items() if v not in (True, "Guaranteed")]
    hyperbolic = (
        Verdict("ByLemma", hyp) if not failed else Verdict(UNKNOWN, hyp, tuple(f"{k} fails" for k in failed))
    )

    # non-Seifert
    tn = match_tn(t)
    direct_diag = dg.synthesize(montesinos_trick(tau, slope))
    ncomp, self_crossings = component_report(direct_diag)
    ns_hyp = {
        "T is T_n": tn is not None,
        "p even": p % 2 == 0,
        "0 < p/q < 1": 0 < f.num and f < 1,
        "two components": ncomp == 2,
        "one component trivial": 0 in self_crossings,
    }
    if tn is not None:
        ns_hyp["N(T_n) is a knot"] = dg.closure(tdiag, "N").components() == 1
    failed = [k for k, v in ns_hyp.items() if v is not True]
    non_seifert = (
        Verdict("ByPropositionTn", {**ns_hyp, "n": tn[0], "box": tn[1]})
        if not failed
        else Verdict(UNKNOWN, ns_hyp, tuple(f"{k} fails" for k in failed))
    )

    return FamilyReport(
        tangle=tg.to_text(t),
        slope=slope,
        which=which,
        branch_link=tg.to_text(link),
        determinant=det,
        crossings=d.crossing_count,
        certificate=cert,
        l_space=l_space,
        non_left_orderable=non_lo,
        hyperbolic_branch_link=hyperbolic,
        non_seifert=non_seifert,
        non_qa_flag=qa.non_qa_flag(d),
    )
