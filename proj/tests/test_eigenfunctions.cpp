#include <doctest.h>

#include <cmath>
#include <qsw/eigenfunctions.hpp>

#include "oracles.hpp"

using namespace qsw;
using Cx = qsw::Complex;

TEST_CASE("phi_z basics and S_n relation") {
  QContext ctx(0.5);
  CHECK(phi_z(ctx, Cx(1.0), Cx(0.0)) == Cx(1.0));
  // phi_{q^n}(x) = (q;q)_n S_n(x;q), n = 3, x = 0.7
  const long n = 3;
  const double x = 0.7;
  const Cx lhs = phi_z(ctx, Cx(std::pow(ctx.q, 3.0)), Cx(x));
  const Cx rhs = qq_n(ctx, n) * sw_polynomial(ctx, n, Cx(x));
  CHECK(std::abs(lhs - rhs) < 1e-14);
  // z -> 0 continuity to the 0phi1 limit form
  const Cx near0 = phi_z(ctx, Cx(1e-9), Cx(1.0));
  const Cx at0 = phi_z(ctx, Cx(0.0), Cx(1.0));
  CHECK(std::abs(near0 - at0) < 1e-7);
}

TEST_CASE("phi_cap_z: trivial value, branch, Heine") {
  QContext ctx(0.5);
  // upper parameter 1 kills every term past n = 0
  CHECK(std::abs(phi_cap_z(ctx, Cx(1.0), 2.0) - Cx(1.0)) < 1e-15);
  CHECK_THROWS_AS((void)phi_cap_z(ctx, Cx(-0.25), 1.0), BranchError);
  // Heine limit identity on a 3x3 grid of (z, x):
  // 1phi1(1/z;0;q,-q/xz) = (-q/xz;q)_inf 0phi1(-;-q/xz;q,-q/xz^2)
  for (double zr : {0.6, 1.3, 2.0}) {
    for (double x : {0.4, 1.0, 2.5}) {
      const Cx z(zr, 0.3);
      const Cx arg = -ctx.q / (x * z);
      const Cx lhs = phi11(ctx, Cx(1.0) / z, arg);
      const Cx rhs = qpoch_inf(ctx, arg) * phi01(ctx, arg, arg / z);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
    }
  }
  // the spec's spot case z = 2, x = 1 with real z
  {
    const Cx z(2.0);
    const double x = 1.0;
    const Cx arg = -ctx.q / (x * z);
    const Cx lhs = phi11(ctx, Cx(1.0) / z, arg);
    const Cx rhs = qpoch_inf(ctx, arg) * phi01(ctx, arg, arg / z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("rogers_ramanujan identities") {
  for (double q : {0.3, 0.5, 0.8}) {
    QContext ctx(q);
    QContext ctx5(std::pow(q, 5.0), ctx.tol);  // base q^5 products
    const double lhs1 = rogers_ramanujan(ctx, -1.0);
    const double rhs1 = 1.0 / (qpoch_inf(ctx5, q) * qpoch_inf(ctx5, std::pow(q, 4.0)));
    CHECK(std::fabs(lhs1 - rhs1) < 1e-12);
    const double lhs2 = rogers_ramanujan(ctx, -q);
    const double rhs2 = 1.0 / (qpoch_inf(ctx5, std::pow(q, 2.0)) *
                               qpoch_inf(ctx5, std::pow(q, 3.0)));
    CHECK(std::fabs(lhs2 - rhs2) < 1e-12);
  }
  QContext ctx(0.5);
  CHECK(rogers_ramanujan(ctx, Cx(0.0)) == Cx(1.0));
}

TEST_CASE("sw_polynomial") {
  QContext ctx(0.5);
  CHECK(sw_polynomial(ctx, 0, 123.4) == 1.0);
  // S_1(x) = (1 - qx)/(1 - q) has its root at 1/q
  CHECK(std::fabs(sw_polynomial(ctx, 1, 1.0 / ctx.q)) < 1e-15);
  // leading coefficient (-1)^n q^{n^2}/(q;q)_n via large-x ratio
  const long n = 4;
  const double X = 1e8;
  const double lead = sw_polynomial(ctx, n, X) / std::pow(X, double(n));
  CHECK(lead ==
        doctest::Approx(std::pow(ctx.q, double(n * n)) / qq_n(ctx, n)).epsilon(1e-6));
  // eigen-relation L S_n = q^n S_n at n = 4, x = 0.3
  auto f = [&](double x) { return Cx(sw_polynomial(ctx, 4, x)); };
  CHECK(check_eigen_residual(ctx, f, Cx(std::pow(ctx.q, 4.0)), 0.3) < 1e-11);
}

TEST_CASE("qbessel_M: trivial, Jackson relation, eigen-relation") {
  QContext ctx(0.5);
  // x -> 0: phi_z(0) = 1
  CHECK(qbessel_M(ctx, 2, 1.0, 1e-300) ==
        doctest::Approx(1.0 / qpoch_inf(ctx, ctx.q)).epsilon(1e-12));
  // t^{(k+r)/2} M_r^{(t)}(t q^k) = q^{r(r+k)/2} J2_{k+r}(2 sqrt(t) q^{-r/2})
  {
    const long r = 1, k = 0;
    const double t = 0.25;
    const double lhs = std::pow(t, 0.5 * (k + r)) *
                       qbessel_M(ctx, r, t, t * std::pow(ctx.q, double(k)));
    const double rhs =
        std::pow(ctx.q, 0.5 * r * (r + k)) *
        jackson_J2(ctx, k + r, 2.0 * std::sqrt(t) * std::pow(ctx.q, -0.5 * r));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  // L M_r = -(q^r/t) M_r at r = 0, t = 1, x = q^2
  auto f = [&](double x) { return Cx(qbessel_M(ctx, 0, 1.0, x)); };
  CHECK(check_eigen_residual(ctx, f, Cx(-1.0), ctx.q * ctx.q) < 1e-10);
}

TEST_CASE("jackson_J2: the two series forms agree") {
  QContext ctx(0.5);
  const long nu = 2;
  const double z = 1.0;
  const double f1 = jackson_J2(ctx, nu, z);
  // 0phi1 form: (q^{nu+1};q)_inf/(q;q)_inf (z/2)^nu 0phi1(-;q^{nu+1};q,-z^2 q^{nu+1}/4)
  const double b = std::pow(ctx.q, double(nu + 1));
  const double f2 = qpoch_inf(ctx, b) / qpoch_inf(ctx, ctx.q) *
                    std::pow(z / 2.0, double(nu)) *
                    phi01(ctx, Cx(b), Cx(-z * z * b / 4.0)).real();
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));
  // small-argument scaling ~ (z/2)^nu
  const double v1 = jackson_J2(ctx, 3, 1e-4);
  const double v2 = jackson_J2(ctx, 3, 2e-4);
  CHECK(v2 / v1 == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("qfibonacci: seeds, hand expansion, closed sum, limit") {
  QContext ctx(0.5);
  const double t = 0.5;
  CHECK(qfibonacci(ctx, t, 0) == 0.0);
  CHECK(qfibonacci(ctx, t, 1) == 1.0);
  // hand expansion of the recurrence: F_3 = 1 - tq, F_4 = 1 - tq - tq^2
  CHECK(qfibonacci(ctx, t, 3) == doctest::Approx(1.0 - t * ctx.q).epsilon(1e-15));
  CHECK(qfibonacci(ctx, t, 4) ==
        doctest::Approx(1.0 - t * ctx.q - t * ctx.q * ctx.q).epsilon(1e-15));
  // closed sum F_{k+1} = sum_n [k-n n]_q (-1)^n q^{n^2} t^n for k <= 20
  for (double tt : {0.1, 0.5, 2.0}) {
    for (long k = 1; k <= 20; ++k) {
      double s = 0.0;
      for (long n = 0; n <= k / 2; ++n)
        s += qbinomial(ctx, k - n, n) * std::pow(-1.0, double(n)) *
             std::pow(ctx.q, double(n * n)) * std::pow(tt, double(n));
      CHECK(qfibonacci(ctx, tt, k + 1) == doctest::Approx(s).epsilon(1e-13));
    }
  }
  // F_k -> phi_0(t)
  CHECK(std::fabs(qfibonacci(ctx, 0.5, 40) - rogers_ramanujan(ctx, 0.5)) < 1e-12);
}

TEST_CASE("check_eigen_residual: constant function gives |1 - z|") {
  QContext ctx(0.5);
  auto one = [](double) { return Cx(1.0); };
  CHECK(check_eigen_residual(ctx, one, Cx(0.25), 1.7) ==
        doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("difference equation of 1phi1: -ay f(yq) + (y-q) f(y) + q f(y/q) = 0") {
  for (double q : {0.3, 0.5, 0.8}) {
    QContext ctx(q);
    for (double a : {0.5, 2.0, -1.0}) {
      for (double y : {0.1, 1.0, 3.0}) {
        auto f = [&](double yy) { return phi11(ctx, Cx(a), Cx(yy)); };
        const Cx r = -a * y * f(y * q) + (y - q) * f(y) + q * f(y / q);
        CHECK(std::abs(r) < 1e-11);
      }
    }
  }
}

TEST_CASE("eigen-residual grids for phi_z, Phi_z, S_n, M_r") {
  QContext ctx(0.5);
  for (double re : {-1.0, -0.3, 0.2, 0.7, 1.5}) {
    for (double im : {-0.6, 0.0, 0.4, 1.1}) {
      const Cx z(re, im);
      auto f = [&](double x) { return phi_z(ctx, z, Cx(x)); };
      CHECK(check_eigen_residual(ctx, f, z, 0.9) < 1e-10);
    }
  }
  for (double re : {-0.8, 0.3, 1.2}) {
    for (double im : {0.2, 0.7}) {
      const Cx z(re, im);
      auto f = [&](double x) { return phi_cap_z(ctx, z, x); };
      CHECK(check_eigen_residual(ctx, f, z, 1.0) < 1e-10);
    }
  }
  {
    const Cx z(0.3, 0.2);
    auto f = [&](double x) { return phi_cap_z(ctx, z, x); };
    CHECK(check_eigen_residual(ctx, f, z, 1.0) < 1e-10);
  }
  for (long n = 0; n <= 10; ++n) {
    auto f = [&](double x) { return Cx(sw_polynomial(ctx, n, x)); };
    CHECK(check_eigen_residual(ctx, f, Cx(std::pow(ctx.q, double(n))), 0.7) < 1e-10);
  }
  for (double t : {0.25, 1.0, 4.0}) {
    for (long r = -5; r <= 5; ++r) {
      auto f = [&](double x) { return Cx(qbessel_M(ctx, r, t, x)); };
      const Cx z(-std::pow(ctx.q, double(r)) / t);
      CHECK(check_eigen_residual(ctx, f, z, 1.0) < 1e-10);
    }
  }
}

TEST_CASE("proportionality identity eq:prop") {
  QContext ctx(0.5);
  CHECK(proportionality_check(ctx, Cx(-1.0), 2, 1) < 1e-12);
  CHECK(proportionality_check(ctx, Cx(0.0), 0, 0) == 0.0);
  CHECK(proportionality_check(ctx, Cx(1.0 / 0.7), -1, 3) < 1e-11);
  for (Cx c : {Cx(-1.0), Cx(0.4), Cx(1.3, -0.5), Cx(-0.2, 0.8)}) {
    for (auto [m, k] : {std::pair<long, long>{0, 2}, {3, -1}, {-2, 4}}) {
      CHECK(proportionality_check(ctx, c, m, k) < 1e-11);
    }
  }
}

TEST_CASE("eq:inf-prod product identity") {
  QContext ctx(0.5);
  const double t = 1.0;
  const Cx z(2.0);
  for (long n : {1L, 2L, 5L}) {
    const Cx lhs = qpoch_inf(ctx, -std::pow(ctx.q, 1.0 - double(n)) / (t * z));
    const Cx rhs = qpoch_finite(ctx, -t * z, n) * qpoch_inf(ctx, -ctx.q / (t * z)) /
                   (std::pow(t * z, Cx(double(n))) *
                    std::pow(ctx.q, 0.5 * double(n) * double(n - 1)));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
  }
}
