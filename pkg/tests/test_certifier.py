from fractions import Fraction as F

import pytest

from nilcone.catalog import catalog_get
from nilcone.certifier import (
    CERTIFIED_NOT_RN,
    CERTIFIED_RN,
    DEGENERATION_CONE,
    NICE_CONE,
    POSITIVE_DERIVATION,
    SCOPE_ALGEBRA,
    SCOPE_DERIVATION,
    UNKNOWN,
    Certificate,
    certify_derivation,
    certify_nilradical,
    find_witness_metric,
    necessary_condition,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)
from nilcone.errors import ParseError
from nilcone.liecore import LieBracket
from nilcone.momentricci import extension_ricci, is_negative_definite
from nilcone.polytope import strict_cone_membership, weight_set

HEIS = LieBracket(3, {(1, 2, 3): F(1)})


def _nice_cone_cert(mu, d):
    res = strict_cone_membership(d, weight_set(mu))
    assert res.feasible
    return Certificate(NICE_CONE, tuple(d), None, dict(res.assignment), res.slack)


def test_necessary_condition_passes():
    assert necessary_condition(HEIS, (F(1), F(1), F(2))) == (True, None)


def test_necessary_condition_center_failure():
    mu = catalog_get("n4nice")
    # derivation (-1, 2, 1, 0) vanishes on the one dimensional center
    ok, reason = necessary_condition(mu, (F(-1), F(2), F(1), F(0)))
    assert not ok and "center" in reason


def test_positive_derivation_shortcut():
    v = certify_derivation(HEIS, (F(1), F(1), F(2)))
    assert v.status == CERTIFIED_RN
    assert v.scope == SCOPE_DERIVATION
    assert v.certificate.kind == POSITIVE_DERIVATION
    ok, _ = verify_certificate(HEIS, v.certificate)
    assert ok


def test_nonpositive_trace_rejected():
    with pytest.raises(ValueError):
        certify_derivation(HEIS, (F(-1), F(-1), F(-2)))


def test_center_failure_gives_derivation_scope_negative():
    mu = catalog_get("n4nice")
    v = certify_derivation(mu, (F(-1), F(2), F(1), F(0)))
    assert v.status == CERTIFIED_NOT_RN
    assert v.scope == SCOPE_DERIVATION
    assert "necessary condition" in v.obstruction


def test_nice_cone_unknown_outside():
    mu = catalog_get("n4nice")
    v = certify_derivation(mu, (F(1), F(-1), F(0), F(1)))
    assert v.status == UNKNOWN


def test_degeneration_certificate_alg1():
    mu = catalog_get("dim7-alg1")
    d = tuple(map(F, (0, 1, 0, 1, 1, 1, 1)))
    v = certify_derivation(mu, d)
    assert v.status == CERTIFIED_RN
    assert v.certificate.kind == DEGENERATION_CONE
    _, j_set = v.certificate.degeneration
    assert set(mu.keys()) - j_set == {(2, 3, 7)}
    ok, msg = verify_certificate(mu, v.certificate)
    assert ok, msg


def test_pinned_alg1_certificate_verifies():
    mu = catalog_get("dim7-alg1")
    d = tuple(map(F, (0, 1, 0, 1, 1, 1, 1)))
    alpha = tuple(map(F, (-1, 0, -2, -1, -2, -3, -4)))
    j_set = frozenset(mu.keys()) - {(2, 3, 7)}
    cert = Certificate(
        DEGENERATION_CONE, d, (alpha, j_set),
        {(1, 2, 4): F(1, 2), (2, 3, 5): F(1, 2)}, F(1, 2),
    )
    ok, msg = verify_certificate(mu, cert)
    assert ok and "slack 1/2" in msg


def test_scaling_monotonicity():
    # r D stays certified and r a witnesses it with slack r * old slack
    mu = catalog_get("dim7-alg1")
    d = tuple(map(F, (0, 1, 0, 1, 1, 1, 1)))
    base = certify_derivation(mu, d).certificate
    for r in (F(2), F(1, 3), F(7, 5)):
        scaled = Certificate(
            base.kind,
            tuple(r * x for x in d),
            base.degeneration,
            {k: r * a for k, a in base.coefficients.items()},
            r * base.slack,
        )
        ok, msg = verify_certificate(mu, scaled)
        assert ok, msg
        v = certify_derivation(mu, scaled.d)
        assert v.status == CERTIFIED_RN


def test_verify_rejects_tampering():
    mu = catalog_get("dim7-alg1")
    d = tuple(map(F, (0, 1, 0, 1, 1, 1, 1)))
    good = certify_derivation(mu, d).certificate
    inflated = Certificate(
        good.kind, good.d, good.degeneration, good.coefficients, good.slack + 1
    )
    ok, msg = verify_certificate(mu, inflated)
    assert not ok and "slack" in msg
    alpha, j_set = good.degeneration
    bad_alpha = (tuple(a + 1 for a in alpha), j_set)
    ok, msg = verify_certificate(
        mu, Certificate(good.kind, good.d, bad_alpha, good.coefficients, good.slack)
    )
    assert not ok and "alpha" in msg


def test_verify_rejects_foreign_coefficients():
    cert = _nice_cone_cert(HEIS, (F(1), F(1), F(2)))
    tampered = Certificate(
        cert.kind, cert.d, None, {(1, 2, 3): F(1, 2), (9, 9, 9): F(1)}, cert.slack
    )
    ok, msg = verify_certificate(HEIS, tampered)
    assert not ok and "absent" in msg


def test_verify_rejects_unknown_kind():
    cert = Certificate("Bogus", (F(1), F(1), F(2)))
    ok, msg = verify_certificate(HEIS, cert)
    assert not ok and "Bogus" in msg


def test_verify_rejects_non_derivation():
    cert = Certificate(POSITIVE_DERIVATION, (F(1), F(1), F(1)), slack=F(1))
    ok, msg = verify_certificate(HEIS, cert)
    assert not ok and "derivation" in msg


def test_witness_metric_heis():
    cert = _nice_cone_cert(HEIS, (F(1), F(1), F(2)))
    ext = find_witness_metric(HEIS, cert.d, cert, budget=50)
    assert ext is not None
    assert ext.s == 1 and ext.h == (F(1), F(1), F(1))
    assert is_negative_definite(extension_ricci(ext))


def test_witness_requires_cone_certificate():
    cert = Certificate(POSITIVE_DERIVATION, (F(1), F(1), F(2)), slack=F(1))
    with pytest.raises(ValueError):
        find_witness_metric(HEIS, cert.d, cert)


def test_serialization_roundtrip():
    mu = catalog_get("dim7-alg1")
    d = tuple(map(F, (0, 1, 0, 1, 1, 1, 1)))
    v = certify_derivation(mu, d, want_witness=True, budget=50)
    text = serialize_certificate(mu, v.certificate)
    mu2, cert2 = parse_certificate(text)
    assert mu2 == mu
    assert cert2 == v.certificate
    ok, msg = verify_certificate(mu2, cert2)
    assert ok, msg


@pytest.mark.parametrize("text", [
    "kind NiceCone\nend",                               # missing header
    "certificate\nkind NiceCone\ndim 3\nbracket 1 2 3 1\nend",  # no derivation
    "certificate\nkind X\ndim 3\nbracket 1 2 3 1\nderivation 1 1\nend",  # short d
    "certificate\nkind X\ndim 3\nbracket 1 2 3 1\nderivation 1 1 2\nwhat 1\nend",
    "certificate\nkind X\ndim 3\nbracket 1 2 3 1\nderivation 1 1 2\nalpha 0 0 -1\nend",
])
def test_parse_certificate_errors(text):
    with pytest.raises(ParseError):
        parse_certificate(text)


def test_nilradical_heis():
    v = certify_nilradical(HEIS)
    assert v.status == CERTIFIED_RN
    assert v.scope == SCOPE_ALGEBRA


def test_nilradical_n4nonice_uses_degeneration():
    v = certify_nilradical(catalog_get("n4nonice"))
    assert v.status == CERTIFIED_RN
    assert v.certificate.kind == DEGENERATION_CONE
    # the whole d-space is a single ray through (0, 1, 1, 1)
    x = v.d[1]
    assert v.d == (F(0), x, x, x) and x > 0


def test_nilradical_traceless_obstruction():
    for id_ in ("ex3", "ex10"):
        v = certify_nilradical(catalog_get(id_))
        assert v.status == CERTIFIED_NOT_RN
        assert "traceless" in v.obstruction


def test_nilradical_engel_obstruction():
    for id_ in ("ex4-1", "ex4-2"):
        v = certify_nilradical(catalog_get(id_))
        assert v.status == CERTIFIED_NOT_RN
        assert "characteristically nilpotent" in v.obstruction


def test_nilradical_rejects_non_nilpotent():
    sl2 = LieBracket(3, {(1, 2, 2): F(2), (1, 3, 3): F(-2), (2, 3, 1): F(1)})
    with pytest.raises(ValueError):
        certify_nilradical(sl2)


def test_nilradical_user_derivation_considered():
    mu = catalog_get("dim7-alg1")
    v = certify_nilradical(mu, user_d=tuple(map(F, (0, 1, 0, 1, 1, 1, 1))))
    assert v.status == CERTIFIED_RN
