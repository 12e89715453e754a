#include "qsw/qseries.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace qsw {

namespace {

template <class T>
T qpoch_finite_impl(const QContext& ctx, T a, long n) {
  const double q = ctx.q;
  if (n >= 0) {
    T p(1.0);
    T aq = a;
    for (long k = 0; k < n; ++k) {
      p *= T(1.0) - aq;
      aq *= q;
    }
    return p;
  }
  // (a;q)_{-m} = 1 / prod_{k=1..m} (1 - a q^{-k})
  const long m = -n;
  T p(1.0);
  double qk = 1.0;
  for (long k = 1; k <= m; ++k) {
    qk /= q;
    T f = T(1.0) - a * qk;
    if (std::abs(f) == 0.0)
      throw PoleError("qpoch_finite: vanishing factor at negative index");
    p *= f;
  }
  return T(1.0) / p;
}

template <class T>
T qpoch_inf_impl(const QContext& ctx, T a) {
  const double q = ctx.q;
  T p(1.0);
  T aq = a;
  int quiet = 0;
  // |a q^k| < tol for two consecutive k, cap generous (convergence is
  // geometric so the cap is never the binding constraint for q < 1 - eps)
  for (long k = 0; k < 100000; ++k) {
    p *= T(1.0) - aq;
    if (std::abs(aq) < ctx.tol) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    aq *= q;
  }
  return p;
}

}  // namespace

Complex qpoch_finite(const QContext& ctx, Complex a, long n) {
  require_finite(a, "qpoch_finite");
  return qpoch_finite_impl(ctx, a, n);
}

double qpoch_finite(const QContext& ctx, double a, long n) {
  require_finite(a, "qpoch_finite");
  return qpoch_finite_impl(ctx, a, n);
}

Complex qpoch_inf(const QContext& ctx, Complex a) {
  require_finite(a, "qpoch_inf");
  return qpoch_inf_impl(ctx, a);
}

double qpoch_inf(const QContext& ctx, double a) {
  require_finite(a, "qpoch_inf");
  return qpoch_inf_impl(ctx, a);
}

std::pair<double, double> log_qpoch_finite(const QContext& ctx, double a, long n) {
  const double q = ctx.q;
  double lg = 0.0, sg = 1.0;
  if (n >= 0) {
    double aq = a;
    for (long k = 0; k < n; ++k) {
      double f = 1.0 - aq;
      if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
      if (f < 0) sg = -sg;
      lg += std::log(std::fabs(f));
      aq *= q;
    }
  } else {
    double qk = 1.0;
    for (long k = 1; k <= -n; ++k) {
      qk /= q;
      double f = 1.0 - a * qk;
      if (f == 0.0)
        throw PoleError("log_qpoch_finite: vanishing factor at negative index");
      if (f < 0) sg = -sg;
      lg -= std::log(std::fabs(f));
    }
  }
  return {lg, sg};
}

double qq_n(const QContext& ctx, long n) { return qpoch_finite(ctx, ctx.q, n); }

double qbinomial(const QContext& ctx, long n, long k) {
  if (k < 0 || k > n) return 0.0;
  return qq_n(ctx, n) / (qq_n(ctx, k) * qq_n(ctx, n - k));
}

namespace {

// If a is (numerically) q^{-m} for an integer m >= 1, the 1phi1 series
// terminates after m+1 terms.  Detecting this matters: past the zero factor
// the rounding residue of (1 - a q^m) can be re-amplified by a large
// argument, so we cut the sum hard.
long terminating_order(const QContext& ctx, Complex a) {
  if (a.real() <= 1.0) return -1;
  if (std::fabs(a.imag()) > 1e-13 * std::abs(a)) return -1;
  const double m = std::round(-std::log(a.real()) / ctx.log_q());
  if (m < 1 || m > 1e6) return -1;
  const double resid = std::fabs(a.real() * std::pow(ctx.q, m) - 1.0);
  return resid < 1e-10 ? static_cast<long>(m) : -1;
}

}  // namespace

Complex phi11(const QContext& ctx, Complex a, Complex y) {
  require_finite(a, "phi11");
  require_finite(y, "phi11");
  const double q = ctx.q;
  const Complex ay = a * y;  // grouped so huge a with tiny y stays finite
  const long cut = terminating_order(ctx, a);
  Complex sum(0.0);
  Complex term(1.0);
  double qn = 1.0;
  int quiet = 0;
  for (long n = 0; n <= ctx.max_terms; ++n) {
    sum += term;
    if (cut >= 0 && n >= cut) return sum;
    if (std::abs(term) < ctx.tol * (1.0 + std::abs(sum))) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
    // T_{n+1}/T_n = -q^n (y - a y q^n) / (1 - q^{n+1})
    term *= -qn * (y - ay * qn) / (1.0 - qn * q);
    qn *= q;
    if (term == Complex(0.0)) return sum;
  }
  throw MaxTermsError("phi11: series did not converge within max_terms");
}

Complex phi01(const QContext& ctx, Complex b, Complex z) {
  require_finite(b, "phi01");
  require_finite(z, "phi01");
  const double q = ctx.q;
  Complex sum(0.0);
  Complex term(1.0);
  double qn = 1.0;   // q^n
  double q2n = 1.0;  // q^{2n}
  int quiet = 0;
  for (long n = 0; n <= ctx.max_terms; ++n) {
    sum += term;
    if (std::abs(term) < ctx.tol * (1.0 + std::abs(sum))) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
    Complex fb = 1.0 - b * qn;
    if (std::abs(fb) < 1e-250)
      throw PoleError("phi01: lower-parameter factor vanished");
    // T_{n+1}/T_n = q^{2n} z / ((1 - q^{n+1})(1 - b q^n))
    term *= q2n * z / ((1.0 - qn * q) * fb);
    qn *= q;
    q2n *= q * q;
  }
  throw MaxTermsError("phi01: series did not converge within max_terms");
}

double triple_product_norm(const QContext& ctx, double t) {
  if (!(t > 0.0)) throw DomainError("triple_product_norm: t must be positive");
  return qpoch_inf(ctx, -t * ctx.q) * qpoch_inf(ctx, -1.0 / t) * qpoch_inf(ctx, ctx.q);
}

}  // namespace qsw
