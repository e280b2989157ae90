import numpy as np
import pytest

from kawahara_lab.branch import derived_kawahara_branch, kawahara_branch, mkawahara_branch
from kawahara_lab.pf2 import (KernelSamples, NonEvenKernelError, bimodal_kernel, full_report,
                              gaussian_kernel, nonlinearity_kernel, positivity_and_logconcavity,
                              quadrature_kernel, sech2_kernel, symmetric_k, tp2_sample_check)


def test_sech2_kernel_passes():
    k = sech2_kernel()
    assert k.k_values[0] == -40 and k.k_values[-1] == 40
    rep = positivity_and_logconcavity(k)
    assert rep.positive and rep.log_concave
    tp = tp2_sample_check(k, 100_000, 42)
    assert tp.tp2_min_det >= -1e-12 * np.max(k.g_values) ** 2 and tp.tp2_pass


def test_gaussian_passes():
    rep = full_report(gaussian_kernel())
    assert rep.positive and rep.log_concave and rep.tp2_pass
    assert rep.tp2_min_det >= -1e-12


def test_gaussian_determinant_sign_identity():
    # exponents reduce to 2 (x2 - x1)(y2 - y1) >= 0
    rng = np.random.Generator(np.random.Philox(7))
    x = np.sort(rng.uniform(-2, 2, (1000, 2)), axis=1)
    y = np.sort(rng.uniform(-2, 2, (1000, 2)), axis=1)
    g = lambda t: np.exp(-t * t)
    det = g(x[:, 0] - y[:, 0]) * g(x[:, 1] - y[:, 1]) - g(x[:, 0] - y[:, 1]) * g(x[:, 1] - y[:, 0])
    lhs = np.log(g(x[:, 0] - y[:, 0]) * g(x[:, 1] - y[:, 1])) - np.log(
        g(x[:, 0] - y[:, 1]) * g(x[:, 1] - y[:, 0]))
    assert np.allclose(lhs, 2 * (x[:, 1] - x[:, 0]) * (y[:, 1] - y[:, 0]))
    assert np.all(det >= 0)


def test_bimodal_fails():
    k = bimodal_kernel()
    rep = full_report(k)
    assert rep.positive and not rep.log_concave and not rep.tp2_pass
    assert rep.tp2_min_det < 0
    # the failure sits at the central dip: second differences of log g are positive there
    lg = k.log_g
    d2 = lg[2:] - 2 * lg[1:-1] + lg[:-2]
    kk = k.k_values[1:-1]
    assert np.all(d2[np.abs(kk) < 0.04] > 0)


def test_scaling_invariance():
    for kernel in (sech2_kernel(), gaussian_kernel(), bimodal_kernel()):
        a = full_report(kernel, 20_000, 42)
        b = full_report(kernel.scaled(1e6), 20_000, 42)
        assert (a.positive, a.log_concave, a.tp2_pass) == (b.positive, b.log_concave, b.tp2_pass)
        assert a.tp2_argmin == b.tp2_argmin


def test_determinism():
    a = tp2_sample_check(sech2_kernel(), 10_000, 42)
    b = tp2_sample_check(sech2_kernel(), 10_000, 42)
    c = tp2_sample_check(sech2_kernel(), 10_000, 43)
    assert a.tp2_argmin == b.tp2_argmin and a.tp2_min_det == b.tp2_min_det
    assert a.tp2_argmin != c.tp2_argmin


def test_input_validation():
    k = symmetric_k()
    g = np.exp(-(k - 0.5) ** 2)
    with pytest.raises(NonEvenKernelError):
        positivity_and_logconcavity(KernelSamples(k, g))
    short = symmetric_k(10.0, 101)
    with pytest.raises(ValueError):
        positivity_and_logconcavity(KernelSamples(short, np.exp(-short ** 2)))
    with pytest.raises(ValueError):
        KernelSamples(k[::-1], g)


def test_negative_sample_not_positive():
    k = symmetric_k()
    g = np.cos(k / 10.0)
    rep = positivity_and_logconcavity(KernelSamples(k, g))
    assert not rep.positive and not rep.log_concave


def test_csv_roundtrip():
    k = sech2_kernel()
    text = k.to_csv()
    assert text.splitlines()[0] == "k,g"
    back = KernelSamples.from_csv(text)
    assert back.provenance == "file"
    assert np.array_equal(back.g_values, k.g_values)
    with pytest.raises(ValueError):
        KernelSamples.from_csv("a,b\n1,2\n")


def test_quadrature_matches_closed_form():
    x = np.linspace(-40, 40, 8001)
    k = symmetric_k(40.0, 161)
    q = quadrature_kernel(x, 1 / np.cosh(x) ** 2, k)
    assert np.max(np.abs(q.g_values - sech2_kernel(40.0, 161).g_values)) < 1e-10


@pytest.mark.parametrize("point", [kawahara_branch(1.0, "paper"), derived_kawahara_branch(1.0),
                                   mkawahara_branch(1.0, "derived")])
def test_branch_kernels_pass(point):
    rep = full_report(nonlinearity_kernel(point), 20_000, 42)
    assert rep.positive and rep.log_concave and rep.tp2_pass
