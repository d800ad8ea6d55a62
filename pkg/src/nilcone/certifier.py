"""Verdict pipeline: is a diagonal derivation Ricci negative, and can an
algebra be a Ricci negative nilradical at all.

Positive verdicts always carry a certificate that re-verifies from stored
data alone with exact arithmetic; negative verdicts carry one of the
implemented obstructions.  Everything else is Unknown, reported honestly:
the degeneration search under-approximates the true cone.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .derivations import (
    DiagonalDerivationSpace,
    all_derivations_traceless,
    diagonal_derivations,
    is_characteristically_nilpotent,
    is_diagonal_derivation,
    require_diagonal_derivation,
)
from .errors import ParseError
from .liecore import Key, LieBracket, emit_bracket, is_nice_basis, is_nilpotent, parse_bracket, center
from .linalg import ONE, Vec, ZERO, frac, leading_principal_minors
from .momentricci import MetricExtension, extension_ricci, is_negative_definite, ricci_negative_at
from .polytope import (
    iter_face_candidates,
    is_face,
    pairing,
    strict_cone_membership,
    sub_bracket,
    verify_membership,
    weight_set,
)
from .simplex import OPTIMAL, solve_lp

POSITIVE_DERIVATION = "PositiveDerivation"
NICE_CONE = "NiceCone"
DEGENERATION_CONE = "DegenerationCone"
WITNESS_METRIC = "WitnessMetric"

CERTIFIED_RN = "CertifiedRN"
CERTIFIED_NOT_RN = "CertifiedNotRN"
UNKNOWN = "Unknown"

SCOPE_DERIVATION = "derivation"
SCOPE_ALGEBRA = "algebra"


@dataclass(frozen=True)
class Certificate:
    kind: str
    d: Vec
    # (alpha, J) for DegenerationCone; the limit bracket is sub_bracket(mu, J)
    degeneration: tuple[Vec, frozenset[Key]] | None = None
    coefficients: dict[Key, Fraction] = field(default_factory=dict)
    slack: Fraction = ZERO
    witness: MetricExtension | None = None


@dataclass(frozen=True)
class Verdict:
    status: str
    scope: str
    d: Vec | None = None
    certificate: Certificate | None = None
    obstruction: str | None = None
    notes: str = ""


def necessary_condition(mu: LieBracket, d: Vec) -> tuple[bool, str | None]:
    """tr D > 0 and D positive definite on the center.

    The center need not be spanned by standard basis vectors, so the
    restriction is tested as a quadratic form by exact leading minors.
    """
    require_diagonal_derivation(d, mu)
    trd = sum(d, ZERO)
    if trd <= 0:
        return False, f"trace {trd} is not positive"
    z = center(mu)
    if z:
        gram = [
            [sum((d[r] * za[r] * zb[r] for r in range(mu.dim)), ZERO) for zb in z]
            for za in z
        ]
        if any(m <= 0 for m in leading_principal_minors(gram)):
            return False, "restriction to the center is not positive definite"
    return True, None


def _membership_certificate(
    d: Vec, lam: LieBracket, kind: str, degeneration
) -> Certificate | None:
    w = weight_set(lam)
    res = strict_cone_membership(d, w)
    if not res.feasible:
        return None
    return Certificate(
        kind=kind,
        d=tuple(d),
        degeneration=degeneration,
        coefficients=dict(res.assignment),
        slack=res.slack,
    )


def certify_derivation(
    mu: LieBracket,
    d: Vec,
    budget: int = 4096,
    want_witness: bool = False,
    seed: int = 0,
) -> Verdict:
    """Decide whether the diagonal derivation D is Ricci negative.

    Pipeline: entrywise-positive shortcut, necessary condition, nice-basis
    LP, nice face degenerations by decreasing |J|, then Unknown.  Never
    returns a verdict about the algebra itself.
    """
    require_diagonal_derivation(d, mu)
    d = tuple(frac(x) for x in d)
    trd = sum(d, ZERO)
    if trd <= 0:
        raise ValueError(f"derivation trace must be positive, got {trd}")

    if all(x > 0 for x in d):
        cert = Certificate(POSITIVE_DERIVATION, d, slack=min(d))
        return Verdict(CERTIFIED_RN, SCOPE_DERIVATION, d, cert, notes="positive derivation")

    ok, reason = necessary_condition(mu, d)
    if not ok:
        return Verdict(
            CERTIFIED_NOT_RN,
            SCOPE_DERIVATION,
            d,
            obstruction=f"necessary condition fails: {reason}",
            notes="verdict applies to this derivation only",
        )

    if is_nice_basis(mu):
        cert = _membership_certificate(d, mu, NICE_CONE, None)
        if cert is not None:
            verdict = Verdict(CERTIFIED_RN, SCOPE_DERIVATION, d, cert, notes="nice basis cone")
            return _maybe_attach_witness(mu, verdict, want_witness, budget, seed)
        return Verdict(
            UNKNOWN,
            SCOPE_DERIVATION,
            d,
            notes="cone membership over the full hull is infeasible; "
            "the certified cone under-approximates the true one",
        )

    w = weight_set(mu)
    tested = 0
    complete = True
    for j_set in iter_face_candidates(mu):
        if j_set == frozenset(mu.keys()):
            continue  # the full hull needs a nice basis, handled above
        if tested >= budget:
            complete = False
            break
        tested += 1
        lam = sub_bracket(mu, j_set)
        if not is_nice_basis(lam):
            continue
        face, alpha = is_face(j_set, w)
        if not face:
            continue
        # D solves a subset of the defining equations, so it stays a derivation
        cert = _membership_certificate(d, lam, DEGENERATION_CONE, (alpha, frozenset(j_set)))
        if cert is not None:
            verdict = Verdict(
                CERTIFIED_RN, SCOPE_DERIVATION, d, cert,
                notes=f"degeneration keeping {len(j_set)} of {len(mu.keys())} constants",
            )
            return _maybe_attach_witness(mu, verdict, want_witness, budget, seed)
    note = "no nice face degeneration certifies this derivation"
    if not complete:
        note += " (face budget exhausted)"
    return Verdict(UNKNOWN, SCOPE_DERIVATION, d, notes=note)


def _maybe_attach_witness(mu, verdict, want_witness, budget, seed):
    if not want_witness or verdict.certificate is None:
        return verdict
    ext = find_witness_metric(mu, verdict.d, verdict.certificate, budget=budget, seed=seed)
    if ext is None:
        return verdict
    cert = Certificate(
        kind=verdict.certificate.kind,
        d=verdict.certificate.d,
        degeneration=verdict.certificate.degeneration,
        coefficients=verdict.certificate.coefficients,
        slack=verdict.certificate.slack,
        witness=ext,
    )
    return Verdict(verdict.status, verdict.scope, verdict.d, cert, notes=verdict.notes)


# ---------------------------------------------------------------------------
# Algebra-level verdict
# ---------------------------------------------------------------------------


def _positive_diagonal_derivation(dspace: DiagonalDerivationSpace, n: int) -> Vec | None:
    """LP for a derivation with all diagonal entries positive."""
    if dspace.dim == 0:
        return None
    p = dspace.dim
    # variables: t = u - v, eps; maximize eps with D(t) >= eps entrywise
    c = [ZERO] * (2 * p) + [ONE]
    a_ub = []
    for r in range(n):
        row = [-dspace.basis[m][r] for m in range(p)]
        a_ub.append(row + [-x for x in row] + [ONE])
    b_ub = [ZERO] * n
    a_ub.append([ZERO] * (2 * p) + [ONE])
    b_ub.append(ONE)
    sol = solve_lp(c, a_ub, b_ub)
    if sol.status != OPTIMAL or sol.value <= 0:
        return None
    t = tuple(sol.x[m] - sol.x[p + m] for m in range(p))
    return dspace.point(t)


def _extreme_ray_candidates(mu: LieBracket, dspace: DiagonalDerivationSpace) -> list[Vec]:
    """Extreme rays of the closed certificate cone in the d-space, plus their sum.

    Enumerated from the projected inequality description; skipped when the
    projection would be too large to be worth it.
    """
    from .linalg import Echelon, dense_row
    from .polytope import project_certificate_cone

    if dspace.dim == 0 or len(mu.keys()) > 16:
        return []
    cone = project_certificate_cone(weight_set(mu), dspace)
    if cone.empty or not cone.inequalities:
        return []
    p = dspace.dim
    rows = [tuple(map(frac, r)) for r in cone.inequalities]
    rays: list[Vec] = []
    if p == 1:
        for sgn in (ONE, -ONE):
            if all(r[0] * sgn >= 0 for r in rows) and any(r[0] * sgn > 0 for r in rows):
                rays.append((sgn,))
    else:
        for subset in itertools.combinations(range(len(rows)), p - 1):
            ech = Echelon(p)
            for idx in subset:
                ech.add_row(dense_row(rows[idx]))
            ns = ech.nullspace_basis()
            if len(ns) != 1:
                continue
            for cand in (ns[0], tuple(-x for x in ns[0])):
                vals = [sum((r[i] * cand[i] for i in range(p)), ZERO) for r in rows]
                if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                    if cand not in rays:
                        rays.append(cand)
    out = [dspace.point(r) for r in rays]
    if len(out) > 1:
        out.append(tuple(sum(col, ZERO) for col in zip(*out)))
    return out


def certify_nilradical(
    mu: LieBracket,
    user_d: Vec | None = None,
    budget: int = 4096,
    seed: int = 0,
    want_witness: bool = False,
) -> Verdict:
    """Algebra-level verdict: obstructions first, then candidate derivations."""
    if not is_nilpotent(mu):
        raise ValueError("algebra is not nilpotent")

    if all_derivations_traceless(mu):
        engel = is_characteristically_nilpotent(mu)
        if engel.is_nilpotent:
            return Verdict(
                CERTIFIED_NOT_RN,
                SCOPE_ALGEBRA,
                obstruction="characteristically nilpotent: every derivation is "
                "nilpotent (Engel flag of dimensions "
                + ",".join(map(str, engel.flag_dims)) + ")",
            )
        return Verdict(
            CERTIFIED_NOT_RN,
            SCOPE_ALGEBRA,
            obstruction="every derivation is traceless, so all solvable "
            "extensions are unimodular",
        )

    dspace = diagonal_derivations(mu)
    candidates: list[Vec] = []
    pos = _positive_diagonal_derivation(dspace, mu.dim)
    if pos is not None:
        candidates.append(pos)
    candidates.extend(_extreme_ray_candidates(mu, dspace))
    if user_d is not None:
        candidates.append(tuple(frac(x) for x in user_d))

    seen = set()
    for cand in candidates:
        cand = _orient_positive_trace(cand)
        if cand is None or cand in seen:
            continue
        seen.add(cand)
        if not is_diagonal_derivation(cand, mu):
            continue
        verdict = certify_derivation(mu, cand, budget=budget, want_witness=want_witness, seed=seed)
        if verdict.status == CERTIFIED_RN:
            return Verdict(
                CERTIFIED_RN, SCOPE_ALGEBRA, verdict.d, verdict.certificate,
                notes=verdict.notes,
            )
    return Verdict(
        UNKNOWN,
        SCOPE_ALGEBRA,
        notes="no candidate derivation certified; obstruction tests passed, "
        "so the algebra may still be a Ricci negative nilradical",
    )


def _orient_positive_trace(d: Vec) -> Vec | None:
    tr = sum(d, ZERO)
    if tr > 0:
        return d
    if tr < 0:
        return tuple(-x for x in d)
    return None


# ---------------------------------------------------------------------------
# Witness metrics
# ---------------------------------------------------------------------------


def find_witness_metric(
    mu: LieBracket,
    d: Vec,
    cert: Certificate,
    budget: int = 400,
    seed: int = 0,
) -> MetricExtension | None:
    """Search for (s, h) making the extension Ricci negative definite.

    Exact grid first (powers of 2 along the degeneration direction), then
    a float-guided coordinate descent in log space; acceptance is always
    the exact minor test.  Returns None when the budget runs out.
    """
    if cert.kind not in (NICE_CONE, DEGENERATION_CONE):
        raise ValueError("witness search needs a cone certificate")
    require_diagonal_derivation(d, mu)
    n = mu.dim
    alpha = cert.degeneration[0] if cert.degeneration else None
    tried = 0
    scales = (ONE, Fraction(1, 2), Fraction(1, 4), Fraction(2), Fraction(1, 8))
    exps = (0,) if alpha is None else (0, 1, 2, 3, 4, 6, 8)
    for m in exps:
        h = (
            (ONE,) * n
            if m == 0
            else tuple(Fraction(2) ** int(m * a) for a in alpha)
        )
        for s in scales:
            if tried >= budget:
                return None
            tried += 1
            ext = MetricExtension(mu, d, s, h)
            if ricci_negative_at(ext):
                return ext

    # float-guided fallback: minimize the worst minor-sign violation
    import math

    rng = random.Random(seed)

    def violation(log_s: float, log_h: list[float]) -> float:
        s = Fraction(math.exp(log_s)).limit_denominator(10**6)
        h = tuple(Fraction(math.exp(x)).limit_denominator(10**6) for x in log_h)
        if s <= 0 or any(x <= 0 for x in h):
            return math.inf
        ext = MetricExtension(mu, d, s, h)
        minors = leading_principal_minors(extension_ricci(ext))
        worst = 0.0
        sign = -1
        for mv in minors:
            worst = max(worst, float(-sign * mv))
            sign = -sign
        return worst

    log_s = 0.0
    log_h = [0.0] * n
    step = 1.0
    while tried < budget:
        base = violation(log_s, log_h)
        if base == 0.0:
            s = Fraction(math.exp(log_s)).limit_denominator(10**6)
            h = tuple(Fraction(math.exp(x)).limit_denominator(10**6) for x in log_h)
            ext = MetricExtension(mu, d, s, h)
            if ricci_negative_at(ext):
                return ext
        improved = False
        for idx in range(n + 1):
            for delta in (step, -step):
                if tried >= budget:
                    return None
                tried += 1
                ls, lh = log_s, list(log_h)
                if idx == 0:
                    ls += delta
                else:
                    lh[idx - 1] += delta
                if violation(ls, lh) < base:
                    log_s, log_h = ls, lh
                    improved = True
                    break
            if improved:
                break
        if not improved:
            step /= 2
            if step < 1e-4:
                # random restart
                log_s = rng.uniform(-2, 2)
                log_h = [rng.uniform(-4, 4) for _ in range(n)]
                step = 1.0
    return None


# ---------------------------------------------------------------------------
# Certificate verification and serialization
# ---------------------------------------------------------------------------


def verify_certificate(mu: LieBracket, cert: Certificate) -> tuple[bool, str]:
    """Exact re-check of a stored certificate; no search is re-run."""
    d = cert.d
    if not is_diagonal_derivation(d, mu):
        return False, "stored D is not a diagonal derivation"
    if sum(d, ZERO) <= 0:
        return False, "stored D has non-positive trace"

    if cert.kind == POSITIVE_DERIVATION:
        if all(x > 0 for x in d) and cert.slack > 0 and cert.slack <= min(d):
            return True, "all diagonal entries positive"
        return False, "entries are not all positive"

    if cert.kind == WITNESS_METRIC:
        if cert.witness is None:
            return False, "missing metric data"
        if cert.witness.mu != mu or tuple(cert.witness.d) != tuple(d):
            return False, "metric data does not match the algebra or derivation"
        if is_negative_definite(extension_ricci(cert.witness)):
            return True, "extension Ricci is negative definite"
        return False, "extension Ricci is not negative definite"

    if cert.kind == NICE_CONE:
        lam = mu
        if not is_nice_basis(lam):
            return False, "basis is not nice"
    elif cert.kind == DEGENERATION_CONE:
        if cert.degeneration is None:
            return False, "missing degeneration data"
        alpha, j_set = cert.degeneration
        if not j_set <= set(mu.keys()):
            return False, "kept set is not a subset of the index set"
        for (i, j, k) in mu.keys():
            pr = pairing(alpha, i, j, k)
            if (i, j, k) in j_set:
                if pr != 0:
                    return False, "alpha does not vanish on the kept set"
            elif pr >= 0:
                return False, "alpha is not negative on the dropped set"
        lam = sub_bracket(mu, j_set)
        if not is_nice_basis(lam):
            return False, "degenerate bracket is not nice"
        if not is_diagonal_derivation(d, lam):
            return False, "D is not a derivation of the degenerate bracket"
    else:
        return False, f"unknown certificate kind {cert.kind!r}"

    extra = set(cert.coefficients) - set(lam.keys())
    if extra:
        return False, f"coefficients on absent weights {sorted(extra)}"
    slack = verify_membership(d, weight_set(lam), cert.coefficients)
    if slack is None:
        return False, "coefficients do not witness strict membership"
    if cert.slack <= 0 or slack < cert.slack:
        return False, f"claimed slack {cert.slack} exceeds actual {slack}"
    if cert.witness is not None:
        if cert.witness.mu != mu or tuple(cert.witness.d) != tuple(d):
            return False, "metric data does not match the algebra or derivation"
        if not is_negative_definite(extension_ricci(cert.witness)):
            return False, "attached metric is not negative definite"
    return True, f"membership verified with slack {slack}"


def _fmt(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_certificate(mu: LieBracket, cert: Certificate) -> str:
    """Self-contained text block: the algebra, the derivation, and the data."""
    lines = ["certificate", f"kind {cert.kind}"]
    for line in emit_bracket(mu).strip().splitlines():
        lines.append(line)
    lines.append("derivation " + " ".join(_fmt(x) for x in cert.d))
    if cert.degeneration is not None:
        alpha, j_set = cert.degeneration
        lines.append("alpha " + " ".join(_fmt(x) for x in alpha))
        for (i, j, k) in sorted(j_set):
            lines.append(f"keep {i} {j} {k}")
    for (i, j, k) in sorted(cert.coefficients):
        lines.append(f"coeff {i} {j} {k} {_fmt(cert.coefficients[(i, j, k)])}")
    if cert.slack:
        lines.append(f"slack {_fmt(cert.slack)}")
    if cert.witness is not None:
        lines.append(f"metric-scale {_fmt(cert.witness.s)}")
        lines.append("metric-h " + " ".join(_fmt(x) for x in cert.witness.h))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[LieBracket, Certificate]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "certificate" or lines[-1] != "end":
        raise ParseError("certificate block must start with 'certificate' and end with 'end'")
    kind = None
    bracket_lines = []
    d = None
    alpha = None
    keep: list[Key] = []
    coeffs: dict[Key, Fraction] = {}
    slack = ZERO
    scale = None
    h = None
    for ln in lines[1:-1]:
        parts = ln.split()
        try:
            if parts[0] == "kind" and len(parts) == 2:
                kind = parts[1]
            elif parts[0] in ("dim", "bracket"):
                bracket_lines.append(ln)
            elif parts[0] == "derivation":
                d = tuple(Fraction(x) for x in parts[1:])
            elif parts[0] == "alpha":
                alpha = tuple(Fraction(x) for x in parts[1:])
            elif parts[0] == "keep" and len(parts) == 4:
                keep.append((int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "coeff" and len(parts) == 5:
                coeffs[(int(parts[1]), int(parts[2]), int(parts[3]))] = Fraction(parts[4])
            elif parts[0] == "slack" and len(parts) == 2:
                slack = Fraction(parts[1])
            elif parts[0] == "metric-scale" and len(parts) == 2:
                scale = Fraction(parts[1])
            elif parts[0] == "metric-h":
                h = tuple(Fraction(x) for x in parts[1:])
            else:
                raise ParseError(f"unrecognized certificate line {ln!r}")
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed certificate line {ln!r}")
    if kind is None or d is None or not bracket_lines:
        raise ParseError("certificate is missing kind, algebra, or derivation")
    mu = parse_bracket("\n".join(bracket_lines))
    if len(d) != mu.dim:
        raise ParseError("derivation length does not match the dimension")
    degeneration = None
    if alpha is not None or keep:
        if alpha is None or not keep:
            raise ParseError("degeneration needs both alpha and kept triples")
        if len(alpha) != mu.dim:
            raise ParseError("alpha length does not match the dimension")
        degeneration = (alpha, frozenset(keep))
    witness = None
    if scale is not None or h is not None:
        if scale is None or h is None or len(h) != mu.dim:
            raise ParseError("metric data needs both scale and a full h vector")
        witness = MetricExtension(mu, d, scale, h)
    return mu, Certificate(kind, d, degeneration, coeffs, slack, witness)
