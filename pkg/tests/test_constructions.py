import itertools

import pytest

from tamebrauer.brauer import global_index_direct, parse_class
from tamebrauer.constructions import (
    KINDS,
    ConstructionSpec,
    DivisionCertificate,
    build,
    galois_group_matches,
    smallest_q,
    verify_certificate,
)
from tamebrauer.errors import OrderConditionFailed, ParseError, RootsOfUnityMissing, StepFailed
from tamebrauer.finite_field import field_from_order, power_class_order, root_degree

ORDER_TUPLES = [o for o in itertools.product(range(1, 25), repeat=4) if o[0] * o[1] * o[2] * o[3] <= 24]


def cert_text(*args, **kw):
    return build(ConstructionSpec(*args, **kw))[2].to_text()


def test_thm45_examples():
    v = verify_certificate(cert_text("Thm45", (2, 2, 1, 1), 5, 2))
    assert (v.index, v.degree, v.division) == (4, 4, True)
    v = verify_certificate(cert_text("Thm45", (1, 1, 1, 1), 5, 2))
    assert (v.index, v.division) == (1, True)
    v = verify_certificate(cert_text("Thm45", (1, 1, 2, 2), 5, 2))
    assert (v.index, v.division) == (4, True)
    assert sum(" TWIST " in line for line in v.trace) == 1
    with pytest.raises(OrderConditionFailed):
        ConstructionSpec("Thm45", (2, 2, 1, 1), 5, 1)


def test_thm42_examples():
    v = verify_certificate(cert_text("Thm42", (2, 1, 2, 1), 5, 2, 2))
    assert (v.index, v.degree, v.division) == (4, 4, True)
    assert v.trace[0].startswith("0 CHART")
    # n1 n2 = 1: only the second symbol remains
    v = verify_certificate(cert_text("Thm42", (1, 1, 2, 2), 5, 2, 2))
    assert (v.index, v.division) == (4, True)
    with pytest.raises(OrderConditionFailed):
        ConstructionSpec("Thm42", (2, 1, 2, 1), 5, 2, 1)
    with pytest.raises(OrderConditionFailed):
        ConstructionSpec("Thm42", (2, 1, 2, 1), 5, 4, 2)


def test_invalid_parameters():
    with pytest.raises(RootsOfUnityMissing):
        ConstructionSpec("Thm45", (3, 1, 1, 1), 5, 2)
    with pytest.raises(Exception):
        ConstructionSpec("Thm99", (1, 1, 1, 1), 5)
    with pytest.raises(Exception):
        ConstructionSpec("Thm45", (1, 1, 1), 5)


def test_presentations():
    alg, sub, cert = build(ConstructionSpec("Thm45", (2, 2, 1, 1), 5, 2))
    assert alg.degree == 4 and sub.degree == 4
    assert [g[1] for g in sub.generators] == [2, 2]
    text = alg.format()
    assert "x1^4 = t" in text and "pi" in text
    alg, sub, cert = build(ConstructionSpec("Thm42", (2, 1, 2, 1), 5, 2, 2))
    assert cert.chart and cert.sources


@pytest.mark.parametrize("kind", KINDS)
def test_all_order_tuples_up_to_24(kind):
    verified, skipped = 0, []
    for o in ORDER_TUPLES:
        n = o[0] * o[1] * o[2] * o[3]
        q = smallest_q(n)
        g = field_from_order(q).gen()
        if kind == "Thm42" and o[0] * o[1] == q - 1 > 1:
            # a^(q-1) = 1 for every a in F_q, so no admissible a exists at this q
            with pytest.raises(OrderConditionFailed):
                ConstructionSpec(kind, o, q, g, g)
            skipped.append(o)
            continue
        spec = ConstructionSpec(kind, o, q, g, g)
        alg, sub, cert = build(spec)
        v = verify_certificate(cert)
        assert v.division and v.index == n, (kind, o)
        assert galois_group_matches(spec, sub)
        verified += 1
    assert verified + len(skipped) == len(ORDER_TUPLES) == 408
    if kind == "Thm45":
        assert not skipped


def test_thm42_tuples_with_full_first_part_verify_over_larger_field():
    # (2,1,1,1) at q=3 has no valid a; q=5 does
    for o, q in [((2, 1, 1, 1), 5), ((4, 1, 1, 1), 9), ((2, 2, 1, 1), 9), ((6, 1, 1, 1), 13)]:
        g = field_from_order(q).gen()
        v = verify_certificate(build(ConstructionSpec("Thm42", o, q, g, g))[2])
        assert v.division


def test_round_trip_gives_identical_trace():
    for args in [("Thm45", (2, 3, 1, 2), 13, 2), ("Thm42", (2, 1, 3, 1), 7, 3, 3), ("Thm42", (1, 1, 3, 2), 7, 3, 3)]:
        cert = build(ConstructionSpec(*args))[2]
        text = cert.to_text()
        again = DivisionCertificate.from_text(text)
        assert again == cert
        assert again.to_text() == text
        assert verify_certificate(cert).trace == verify_certificate(text).trace


def _bad_lambda_cases(kind, max_n=12):
    for o in ORDER_TUPLES:
        n = o[0] * o[1] * o[2] * o[3]
        first, second = o[0] * o[1], o[2] * o[3]
        if n > max_n or (kind == "Thm42" and first == smallest_q(n) - 1 > 1):
            continue
        q = smallest_q(n)
        F = field_from_order(q)
        for lam in F.elements()[1:]:
            if kind == "Thm45" and root_degree(F, lam, first) != first:
                yield ConstructionSpec(kind, o, q, lam, check=False)
            if kind == "Thm42" and power_class_order(F, lam, second) != second:
                yield ConstructionSpec(kind, o, q, lam, F.gen(), check=False)


def test_monotone_failure_thm45():
    """A lambda violating the root degree condition never verifies; failure is at DEGREE or BASE."""
    seen = 0
    for spec in _bad_lambda_cases("Thm45"):
        with pytest.raises(StepFailed) as info:
            verify_certificate(build(spec)[2])
        assert info.value.kind in ("DEGREE", "BASE")
        seen += 1
    assert seen > 400


def test_monotone_failure_thm42_bad_a():
    seen = 0
    for o in ORDER_TUPLES:
        n, first = o[0] * o[1] * o[2] * o[3], o[0] * o[1]
        if n > 12 or first == 1:
            continue
        q = smallest_q(n)
        F = field_from_order(q)
        for a in F.elements()[1:]:
            if (a**first).value == 1:
                with pytest.raises(StepFailed) as info:
                    verify_certificate(build(ConstructionSpec("Thm42", o, q, F.gen(), a, check=False))[2])
                assert info.value.kind == "DEGREE"
                seen += 1
    assert seen > 400


def test_thm42_lambda_condition_is_sufficient_not_necessary():
    """A bad lambda either fails at BASE or the reduced class has full index by the residue-order path."""
    failed = passed = 0
    for spec in _bad_lambda_cases("Thm42"):
        cert = build(spec)[2]
        try:
            v = verify_certificate(cert)
        except StepFailed as exc:
            assert exc.kind in ("DEGREE", "BASE")
            failed += 1
            continue
        var, class_text, _ = next(s for s in cert.steps if s.kind == "BASE").args
        reduced = parse_class(class_text, spec.field, var)
        assert global_index_direct(reduced) == spec.second and v.division
        passed += 1
    assert failed > 200 and passed > 100
    # hand check: (x/(x-1), (x-4)/(x-1))_4 over F_5(x) has residue 3 at x = 4, of order 4
    v = verify_certificate(build(ConstructionSpec("Thm42", (1, 1, 1, 4), 5, 4, 2, check=False))[2])
    assert v.division


def _tamper(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


def test_tampering_is_detected():
    t45 = cert_text("Thm45", (2, 2, 2, 1), 9, "g")
    t42 = cert_text("Thm42", (2, 1, 2, 1), 5, 2, 2)
    lines45 = t45.splitlines()
    base45 = next(ln for ln in lines45 if ln.startswith("step BASE"))
    degree45 = next(ln for ln in lines45 if ln.startswith("step DEGREE"))
    reduce42 = next(ln for ln in t42.splitlines() if ln.startswith("step REDUCE"))
    cases = [
        _tamper(t45, base45, base45.rsplit("|", 1)[0] + "| 2"),
        _tamper(t45, degree45, degree45.rsplit("|", 1)[0] + "| 1"),
        _tamper(t45, "step UNIT pi | t | 0", "step UNIT pi | t | 1"),
        _tamper(t42, reduce42, reduce42.replace("(4*y^2 + 4)", "(3*y^2 + 4)")),
        _tamper(t42, "step UNIT t | (x*t)/(x*t + 4) | 1", "step UNIT t | (x*t)/(x*t + 4) | 0"),
        _tamper(t42, "chart s t | s = t^2*x", "chart s t | s = t*x"),
        _tamper(t42, "degree 4", "degree 8"),
        "\n".join(ln for ln in t42.splitlines() if not ln.startswith("step TWIST")) + "\n",
        "\n".join(ln for ln in t42.splitlines() if not ln.startswith("step UNIT t | (x*t)")) + "\n",
        _tamper(t45, base45, base45.rsplit("|", 1)[0] + "| x"),
    ]
    for text in cases:
        with pytest.raises(StepFailed):
            verify_certificate(text)


def test_malformed_certificates_are_parse_errors():
    good = cert_text("Thm45", (2, 2, 1, 1), 5, 2)
    for text in ["", good.replace("CERT/1", "CERT/2"), good.replace("end\n", ""), good.replace("step UNIT", "step JUMP"),
                 good.replace("degree 4", "degree four"), good.replace("vars t pi\n", ""), good + "extra\n"]:
        with pytest.raises(ParseError):
            verify_certificate(text)


def test_smallest_q():
    assert [smallest_q(n) for n in (1, 2, 3, 4, 5, 6, 8, 10, 12, 24)] == [2, 3, 4, 5, 11, 7, 9, 11, 13, 25]
