"""Smoke tests for the python bindings against the worked 1-D example."""

import pytest

import bvjet


@pytest.fixture()
def pair():
    fc = bvjet.field_content("q parity 0; p antifield_of q", 1)
    F = bvjet.integral(bvjet.parse("p * q * q_xx", fc))
    G = bvjet.integral(bvjet.parse("D(p, x, 2) * cos(q)", fc))
    return fc, F, G


def test_parse_and_derivatives(pair):
    fc, F, G = pair
    f = bvjet.parse("p * q * q_xx", fc)
    assert str(f.euler("q")) == "2*q_xx*p + 2*q_x*p_x + q*p_xx"
    assert str(f.euler("p")) == "q*q_xx"
    assert f.parity() == 1
    with pytest.raises(bvjet.ParseError):
        bvjet.parse("sin(p)", fc)
    with pytest.raises(bvjet.ParseError):
        bvjet.parse("q * undeclared", fc)


def test_jet_mode_counterexample(pair):
    fc, F, G = pair
    br = bvjet.schouten_jet(F, G)
    assert not bvjet.functional_zero(br)
    # Delta F is a total divergence, Delta G vanishes identically
    assert bvjet.functional_zero(bvjet.laplacian_jet(F))
    assert bvjet.laplacian_jet(G).is_structurally_zero()
    # the derivation identity fails in jet mode
    lhs = bvjet.laplacian_jet(br)
    rhs = bvjet.schouten_jet(bvjet.laplacian_jet(F), G) + bvjet.schouten_jet(
        F, bvjet.laplacian_jet(G)
    )
    assert bvjet.functional_zero(rhs)
    assert not bvjet.functional_zero(lhs)


def test_functional_mode_restores_the_identity(pair):
    fc, F, G = pair
    Fe, Ge = bvjet.extend(F), bvjet.extend(G)
    br = bvjet.schouten(Fe, Ge)
    assert br.term_count() == 3
    lhs = bvjet.laplacian(br)
    rhs = bvjet.schouten(bvjet.laplacian(Fe), Ge) + bvjet.schouten(Fe, bvjet.laplacian(Ge))
    assert lhs == rhs
    assert bvjet.functional_equal(
        bvjet.restrict_to_diagonal(lhs), bvjet.restrict_to_diagonal(rhs)
    )
    # the functional bracket collapses to the jet bracket on the diagonal
    assert bvjet.functional_equal(bvjet.restrict_to_diagonal(br), bvjet.schouten_jet(F, G))


def test_free_slot_is_an_error(pair):
    fc, F, _ = pair
    d = bvjet.functional_derivative(bvjet.extend(F), "q")
    with pytest.raises(Exception, match="free test-shift slot"):
        bvjet.restrict_to_diagonal(d)


def test_yang_mills_and_qme():
    model = bvjet.YangMillsModel(dim=2, algebra="su2")
    assert all(ok for _, ok, _ in model.verify_laplacian_zero())
    assert all(ok for _, ok, _ in model.verify_classical_master())
    qme = bvjet.check_qme(model.bv_action())
    assert qme["pass"] and qme["exp_route_pass"]


def test_verify_suite_report():
    report = bvjet.verify("counterexample")
    assert report["all_pass"]
    assert all(c["verdict"] == "pass" for c in report["checks"])
