#include <doctest.h>

#include <cmath>
#include <qsw/detail/lattice_eval.hpp>
#include <qsw/spectral_discrete.hpp>

using namespace qsw;
using Cx = qsw::Complex;

namespace {

// direct bilateral-sum oracle for ||psi(xi)||^2 over the ctx window
double norm_direct(const QContext& ctx, double t, const SpectralPoint& p) {
  const auto vals =
      p.kind == SpectralPoint::Kind::Pos
          ? detail::psi_pos_window(ctx, t, p.index, ctx.window.first, ctx.window.second)
          : detail::psi_neg_window(ctx, t, p.index, ctx.window.first, ctx.window.second);
  double s = 0.0;
  for (double v : vals) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("spectrum_points") {
  QContext ctx(0.5);
  const auto pts = spectrum_points(ctx, 1.0, 2, -1, 1);
  REQUIRE(pts.size() == 6);
  CHECK(pts[0].value == doctest::Approx(1.0));
  CHECK(pts[1].value == doctest::Approx(0.5));
  CHECK(pts[2].value == doctest::Approx(0.25));
  CHECK(pts[3].value == doctest::Approx(-2.0));
  CHECK(pts[4].value == doctest::Approx(-1.0));
  CHECK(pts[5].value == doctest::Approx(-0.5));
  for (const auto& p : pts) {
    CHECK(p.value != 0.0);
    CHECK(p.norm_sq > 0.0);
  }
}

TEST_CASE("norm closed forms vs direct bilateral sums") {
  QContext ctx(0.5);
  // n = 0: ||psi(1)||^2 = (-tq,-1/t,q;q)_inf = 1/m_t(0)
  CHECK(norm_sq_pos(ctx, 1.0, 0) ==
        doctest::Approx(triple_product_norm(ctx, 1.0)).epsilon(1e-13));
  // ratio norm(n+1)/norm(n) = (1 - q^{n+1})/q
  for (long n = 0; n <= 6; ++n) {
    const double ratio = norm_sq_pos(ctx, 1.0, n + 1) / norm_sq_pos(ctx, 1.0, n);
    CHECK(ratio == doctest::Approx((1.0 - std::pow(ctx.q, double(n + 1))) / ctx.q)
                       .epsilon(1e-13));
  }
  // r = 0 closed form
  const double qq = qpoch_inf(ctx, ctx.q);
  CHECK(norm_sq_neg(ctx, 1.0, 0) ==
        doctest::Approx(qpoch_inf(ctx, -1.0) * qq * qq).epsilon(1e-13));
  // negative index r = -1 via the reciprocal Pochhammer, positive value
  CHECK(norm_sq_neg(ctx, 1.0, -1) > 0.0);
  // closed vs direct over the grid
  for (double q : {0.4, 0.5, 0.7}) {
    QContext c(q);
    for (double t : {0.25, 1.0, 3.0}) {
      for (long n = 0; n <= 6; ++n) {
        const SpectralPoint p{SpectralPoint::Kind::Pos, n, std::pow(q, double(n)),
                              norm_sq_pos(c, t, n)};
        CHECK(std::fabs(norm_direct(c, t, p) / p.norm_sq - 1.0) < 1e-10);
      }
      for (long r = -4; r <= 4; ++r) {
        const SpectralPoint p{SpectralPoint::Kind::Neg, r,
                              -std::pow(q, double(r)) / t, norm_sq_neg(c, t, r)};
        CHECK(std::fabs(norm_direct(c, t, p) / p.norm_sq - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("residues: closed form vs finite-difference of 1/W") {
  QContext ctx(0.5);
  const double t = 1.0;
  // sign alternation in n
  for (long n = 0; n <= 3; ++n) {
    const auto pts = spectrum_points(ctx, t, 3, 0, 0);
    const double rn = residue_inv_wronskian(ctx, t, pts[size_t(n)]);
    CHECK(((n % 2 == 0) ? rn < 0.0 : rn > 0.0));
  }
  // six spectral points, res_{z=xi} 1/W = 1/W'(xi) (simple zeros):
  // central finite difference with step 1e-6 |xi|
  auto pts = spectrum_points(ctx, t, 2, -1, 1);
  for (const auto& p : pts) {
    const double h = 1e-6 * std::fabs(p.value);
    const Cx w1 = wronskian_closed(ctx, t, Cx(p.value + h));
    const Cx w0 = wronskian_closed(ctx, t, Cx(p.value - h));
    const double wprime = ((w1 - w0) / (2.0 * h)).real();
    const double closed = residue_inv_wronskian(ctx, t, p);
    CHECK(std::fabs(closed - 1.0 / wprime) <= 1e-5 * std::fabs(closed));
  }
}

TEST_CASE("orthogonality relations OR-Sn, OR-Mr, OR-MS") {
  QContext ctx(0.5);
  const std::pair<int, int> win = ctx.window;
  CHECK(verify_OR_Sn(ctx, 1.0, 0, 0, win) < 1e-12);
  CHECK(verify_OR_Sn(ctx, 1.0, 2, 5, win) < 1e-10);
  CHECK(verify_OR_Sn(QContext(0.5), 0.25, 4, 4, win) < 1e-10 / (std::pow(0.5, 4.0) * qq_n(ctx, 4)) * 1.0);
  {
    // relative check on the diagonal target at t = 0.25, n = 4
    const double target = 1.0 / (std::pow(ctx.q, 4.0) * qq_n(ctx, 4));
    CHECK(verify_OR_Sn(ctx, 0.25, 4, 4, win) < 1e-10 * target);
  }
  CHECK(verify_OR_Mr(ctx, 1.0, 0, 0, win) < 1e-10);
  CHECK(verify_OR_Mr(ctx, 1.0, 0, 2, win) < 1e-10);
  CHECK(verify_OR_Mr(ctx, 1.0, -1, -1, win) <
        1e-10 * qpoch_finite(ctx, -ctx.q, -1) * (1.0 / ctx.q));
  CHECK(verify_OR_MS(ctx, 1.0, 0, 0, win) < 1e-10);
  CHECK(verify_OR_MS(ctx, 0.25, 3, -2, win) < 1e-9);
  // window too small -> loud failure
  CHECK_THROWS_AS((void)verify_OR_Sn(ctx, 1.0, 0, 0, {-4, 4}), WindowError);
}

TEST_CASE("full Gram matrix of {S_n} u {M_r} is diagonal with the stated diagonals") {
  QContext ctx(0.5);
  const double t = 1.0;
  const auto win = ctx.window;
  double worst_off = 0.0, worst_diag = 0.0;
  for (long n = 0; n <= 6; ++n) {
    for (long m = n; m <= 6; ++m) {
      const double resid = verify_OR_Sn(ctx, t, n, m, win);
      if (n == m) {
        const double target = 1.0 / (std::pow(ctx.q, double(n)) * qq_n(ctx, n));
        worst_diag = std::max(worst_diag, resid / target);
      } else {
        worst_off = std::max(worst_off, resid);
      }
    }
  }
  for (long r = -4; r <= 4; ++r) {
    for (long s = r; s <= 4; ++s) {
      const double resid = verify_OR_Mr(ctx, t, r, s, win);
      if (r == s) {
        const double target =
            qpoch_finite(ctx, -ctx.q / t, r) * std::pow(ctx.q, double(-r));
        worst_diag = std::max(worst_diag, resid / target);
      } else {
        worst_off = std::max(worst_off, resid);
      }
    }
  }
  for (long n = 0; n <= 6; ++n)
    for (long r = -4; r <= 4; ++r)
      worst_off = std::max(worst_off, verify_OR_MS(ctx, t, n, r, win));
  CHECK(worst_off < 1e-9);
  CHECK(worst_diag < 1e-9);
}

TEST_CASE("expand: coefficients, Parseval, reconstruction") {
  QContext ctx(0.5);
  const double t = 1.0;
  Sequence e0;
  e0.kmin = 0;
  e0.v = {Cx(1.0)};
  // defect < 1e-8 at (25, 25) needs q = 0.45 (geometric tails; see also the
  // monotone refinement below at q = 0.5)
  {
    QContext c45(0.45);
    const auto res = expand(c45, t, e0, 25, -25, 25, {-45, 45});
    CHECK(res.parseval_defect < 1e-8);
    CHECK(res.reconstruction_error < 1e-4);
  }
  // coefficient concentration: v = psi(q^2) restricted to a window
  {
    const auto basis = detail::psi_pos_window(ctx, t, 2, -20, 20);
    Sequence v;
    v.kmin = -20;
    v.v.assign(basis.size(), Cx(0.0));
    for (size_t i = 0; i < basis.size(); ++i) v.v[i] = basis[i];
    const auto res = expand(ctx, t, v, 6, -6, 6, {-20, 20});
    double cmax = 0.0, cother = 0.0;
    for (size_t i = 0; i < res.points.size(); ++i) {
      const auto& p = res.points[i];
      if (p.kind == SpectralPoint::Kind::Pos && p.index == 2)
        cmax = std::fabs(res.coeffs[i]);
      else
        cother = std::max(cother, std::fabs(res.coeffs[i]));
    }
    CHECK(cmax > 0.9);
    CHECK(cother < 1e-8 * cmax);
  }
  // linearity of coefficients in v
  {
    Sequence e3;
    e3.kmin = 3;
    e3.v = {Cx(1.0)};
    Sequence both;
    both.kmin = 0;
    both.v = {Cx(2.0), Cx(0.0), Cx(0.0), Cx(-1.5)};
    const auto ra = expand(ctx, t, e0, 8, -8, 8, {-14, 14});
    const auto rb = expand(ctx, t, e3, 8, -8, 8, {-14, 14});
    const auto rc = expand(ctx, t, both, 8, -8, 8, {-14, 14});
    for (size_t i = 0; i < ra.coeffs.size(); ++i)
      CHECK(rc.coeffs[i] ==
            doctest::Approx(2.0 * ra.coeffs[i] - 1.5 * rb.coeffs[i]).epsilon(1e-10));
  }
  // Parseval defect decreases through (10,10) -> (20,20) -> (30,30) at q = 0.5
  for (int j : {-2, 0, 3}) {
    Sequence v;
    v.kmin = j;
    v.v = {Cx(1.0)};
    double prev = 1e300;
    for (long N : {10L, 20L, 30L}) {
      const auto res = expand(ctx, t, v, N, -N, N, {-55, 55});
      CHECK(res.parseval_defect < prev);
      prev = res.parseval_defect;
    }
  }
}

TEST_CASE("or_report_json shape") {
  const auto s = or_report_json("OR-Sn", 2, 3, 1.2e-11, 0.0, {-80, 80});
  CHECK(s.find("\"relation\":\"OR-Sn\"") != std::string::npos);
  CHECK(s.find("\"residual\"") != std::string::npos);
  CHECK(s.find("\"window\":[-80,80]") != std::string::npos);
}
