#include "qsw/eigenfunctions.hpp"

#include <cmath>
#include <vector>

#include "qsw/detail/lattice_eval.hpp"

namespace qsw {

namespace {

Complex ipow(Complex b, long e) {
  if (e < 0) return Complex(1.0) / ipow(b, -e);
  Complex r(1.0);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

Complex phi_z(const QContext& ctx, Complex z, Complex x) {
  require_finite(z, "phi_z");
  require_finite(x, "phi_z");
  if (z == Complex(0.0)) return phi01(ctx, Complex(0.0), -x * ctx.q);
  return phi11(ctx, Complex(1.0) / z, -x * z * ctx.q);
}

Complex phi_cap_z(const QContext& ctx, Complex z, double x) {
  require_finite(z, "phi_cap_z");
  if (!(x > 0.0)) throw DomainError("phi_cap_z: x must be positive");
  if (z.imag() == 0.0 && z.real() <= 0.0)
    throw BranchError("phi_cap_z: z on the branch cut (-inf, 0]");
  const Complex expo = std::log(x) * std::log(z) / ctx.log_q();
  return std::exp(expo) * phi11(ctx, Complex(1.0) / z, -ctx.q / (x * z));
}

Complex rogers_ramanujan(const QContext& ctx, Complex x) {
  return phi01(ctx, Complex(0.0), -x * ctx.q);
}

double rogers_ramanujan(const QContext& ctx, double x) {
  return rogers_ramanujan(ctx, Complex(x)).real();
}

Complex sw_polynomial(const QContext& ctx, long n, Complex x) {
  require_finite(x, "sw_polynomial");
  if (n < 0) throw DomainError("sw_polynomial: n must be >= 0");
  const double q = ctx.q;
  // sum_k [n k]_q (-1)^k q^{k^2} x^k, with incremental (q;q)_k and q^{k^2}
  Complex sum(0.0);
  Complex xk(1.0);
  double qq_k = 1.0;             // (q;q)_k
  double qq_nk = qq_n(ctx, n);   // (q;q)_{n-k}
  double qsq = 1.0;              // q^{k^2}
  double qodd = q;               // q^{2k+1}
  const double qq_nn = qq_nk;
  double sign = 1.0;
  for (long k = 0; k <= n; ++k) {
    sum += (qq_nn / (qq_k * qq_nk)) * sign * qsq * xk;
    if (k == n) break;
    xk *= x;
    sign = -sign;
    qsq *= qodd;
    qodd *= q * q;
    qq_k *= 1.0 - std::pow(q, double(k + 1));
    qq_nk /= 1.0 - std::pow(q, double(n - k));
  }
  return sum / qq_nn;
}

double sw_polynomial(const QContext& ctx, long n, double x) {
  return sw_polynomial(ctx, n, Complex(x)).real();
}

double qbessel_M(const QContext& ctx, long r, double t, double x) {
  if (!(t > 0.0)) throw DomainError("qbessel_M: t must be positive");
  if (!(x > 0.0)) throw DomainError("qbessel_M: x must be positive");
  const double qqinf = qpoch_inf(ctx, ctx.q);
  // on the t-lattice use the cancellation-free route
  const double kreal = std::log(x / t) / ctx.log_q();
  const long k = std::lround(kreal);
  if (std::fabs(kreal - double(k)) < 1e-12 * (1.0 + std::fabs(kreal)))
    return detail::phi_neg_lattice(ctx, t, r, static_cast<int>(k)) / qqinf;
  const Complex z(-std::pow(ctx.q, double(r)) / t);
  return phi_z(ctx, z, Complex(x)).real() / qqinf;
}

double jackson_J2(const QContext& ctx, long nu, double zarg) {
  if (!(zarg > 0.0)) throw DomainError("jackson_J2: argument must be positive");
  const double q = ctx.q;
  const double pref = std::pow(zarg / 2.0, double(nu)) / qpoch_inf(ctx, q);
  return pref *
         phi11(ctx, Complex(-zarg * zarg / 4.0), Complex(std::pow(q, double(nu + 1))))
             .real();
}

double qfibonacci(const QContext& ctx, double t, long k) {
  if (k < 0) throw DomainError("qfibonacci: k must be >= 0");
  if (k == 0) return 0.0;
  double fm1 = 0.0, f = 1.0;           // F_0, F_1
  double qj = 1.0;                     // q^{j-1} at j = 1
  for (long j = 1; j < k; ++j) {
    const double fp1 = f - t * qj * fm1;
    fm1 = f;
    f = fp1;
    qj *= ctx.q;
  }
  return f;
}

double check_eigen_residual(const QContext& ctx,
                            const std::function<Complex(double)>& f, Complex z,
                            double x) {
  if (!(x > 0.0)) throw DomainError("check_eigen_residual: x must be positive");
  const Complex fx = f(x);
  const Complex r = f(x * ctx.q) - fx / x + f(x / ctx.q) / x - z * fx;
  return std::abs(r);
}

double proportionality_check(const QContext& ctx, Complex c, long m, long k) {
  const double q = ctx.q;
  const Complex a = -c * std::pow(q, double(-m));
  const Complex lhs =
      ipow(-c, m + k) * phi11(ctx, a, Complex(std::pow(q, double(1 + m + k))));
  const Complex rhs = std::pow(q, double(m) * double(m + k)) *
                      phi11(ctx, a, Complex(std::pow(q, double(1 - m - k))));
  return std::abs(lhs - rhs);
}

}  // namespace qsw
