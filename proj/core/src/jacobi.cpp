#include "qsw/jacobi.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "qsw/detail/lattice_eval.hpp"
#include "qsw/qseries.hpp"

namespace qsw {

namespace detail {

double cancel_budget(const QContext& ctx) {
  return std::sqrt(12.0 / std::log10(1.0 / ctx.q));
}

namespace {

double log_1overq(const QContext& ctx, double m1, double m2) {
  const double m = std::max({1.0, std::fabs(m1), std::fabs(m2)});
  return std::log(m) / std::log(1.0 / ctx.q);
}

double coeff_a(const QContext& ctx, double t, int k) {
  return 1.0 / std::sqrt(t * std::pow(ctx.q, double(k + 1)));
}

double coeff_b(const QContext& ctx, double t, int k) {
  return -1.0 / (t * std::pow(ctx.q, double(k)));
}

// phi-route value of psi_k(-q^r/t): prefactor in log space
double psi_neg_direct(const QContext& ctx, double t, long r, int k) {
  const double q = ctx.q;
  const Complex a(-t * std::pow(q, double(-r)));
  const Complex y(std::pow(q, double(k + r + 1)));
  const double lp = 0.5 * k * std::log(t) + 0.25 * double(k) * (k + 1) * std::log(q);
  return std::exp(lp) * phi11(ctx, a, y).real();
}

// Psi-route value via the proportionality psi = (-1)^r q^{r^2} t^{-r} Psi
double psi_neg_low(const QContext& ctx, double t, long r, int k) {
  const double q = ctx.q;
  const Complex a(-t * std::pow(q, double(-r)));
  const Complex y(std::pow(q, double(1 - k - r)));
  const double lq = (double(r) * r + double(r) * k + 0.25 * double(k) * (k + 1)) *
                    std::log(q);
  const double lt = (-double(r) - 0.5 * k) * std::log(t);
  const double sgn = ((r + k) % 2 != 0) ? -1.0 : 1.0;
  return sgn * std::exp(lq + lt) * phi11(ctx, a, y).real();
}

}  // namespace

double L_direct_neg(const QContext& ctx, double t, long r, int k) {
  return log_1overq(ctx, std::pow(ctx.q, double(k + r + 1)),
                    t * std::pow(ctx.q, double(k + 1)));
}

double L_low_neg(const QContext& ctx, double t, long r, int k) {
  return log_1overq(ctx, std::pow(ctx.q, double(1 - k - r)),
                    t * std::pow(ctx.q, double(1 - k - 2 * r)));
}

std::vector<double> psi_neg_window(const QContext& ctx, double t, long r,
                                   int kmin, int kmax) {
  const double budget = cancel_budget(ctx);
  const double z = -std::pow(ctx.q, double(r)) / t;
  std::vector<double> out(size_t(kmax - kmin + 1), 0.0);

  int gap_lo = 1, gap_hi = 0;  // empty
  for (int k = kmin; k <= kmax; ++k) {
    const double ld = L_direct_neg(ctx, t, r, k);
    const double ll = L_low_neg(ctx, t, r, k);
    if (std::min(ld, ll) > budget) {
      if (gap_lo > gap_hi) gap_lo = gap_hi = k;
      gap_lo = std::min(gap_lo, k);
      gap_hi = std::max(gap_hi, k);
    } else {
      out[size_t(k - kmin)] =
          (ld <= ll) ? psi_neg_direct(ctx, t, r, k) : psi_neg_low(ctx, t, r, k);
    }
  }
  if (gap_lo > gap_hi) return out;

  // three-term recurrence inward from both sides, meeting mid-gap
  const int k_mid = (gap_lo + gap_hi) / 2;
  double v1 = psi_neg_direct(ctx, t, r, gap_hi + 2);
  double v0 = psi_neg_direct(ctx, t, r, gap_hi + 1);
  for (int k = gap_hi + 1; k - 1 >= k_mid; --k) {
    const double vm = ((z - coeff_b(ctx, t, k)) * v0 - coeff_a(ctx, t, k) * v1) /
                      coeff_a(ctx, t, k - 1);
    if (k - 1 >= kmin && k - 1 <= kmax) out[size_t(k - 1 - kmin)] = vm;
    v1 = v0;
    v0 = vm;
  }
  double u0 = psi_neg_low(ctx, t, r, gap_lo - 1);
  double um = psi_neg_low(ctx, t, r, gap_lo - 2);
  for (int k = gap_lo - 1; k + 1 <= k_mid - 1; ++k) {
    const double u1 = ((z - coeff_b(ctx, t, k)) * u0 - coeff_a(ctx, t, k - 1) * um) /
                      coeff_a(ctx, t, k);
    if (k + 1 >= kmin && k + 1 <= kmax) out[size_t(k + 1 - kmin)] = u1;
    um = u0;
    u0 = u1;
  }
  return out;
}

std::vector<double> psi_pos_window(const QContext& ctx, double t, long n,
                                   int kmin, int kmax) {
  const double q = ctx.q;
  const double lnq = std::log(q);
  const double lnt = std::log(t);
  const double qqn_v = qq_n(ctx, n);
  std::vector<double> out(size_t(kmax - kmin + 1), 0.0);
  for (int k = kmin; k <= kmax; ++k) {
    const double pref_lg = 0.5 * k * lnt + 0.25 * double(k) * (k + 1) * lnq;
    const double lnx = lnt + k * lnq;
    // q^{n^2} x^n > 1: pull the top monomial out and evaluate the reversed
    // polynomial at q^{-2n}/x (same Stieltjes-Wigert sum shape)
    if (double(n) * n * lnq + n * lnx > 0.0) {
      const double u = std::exp(-(2.0 * n + k) * lnq - lnt);
      const double sgn = (n % 2 != 0) ? -1.0 : 1.0;
      const double lg = pref_lg + double(n) * n * lnq + n * lnx;
      out[size_t(k - kmin)] =
          sgn * std::exp(lg) * qqn_v * sw_polynomial(ctx, n, u);
    } else {
      out[size_t(k - kmin)] =
          std::exp(pref_lg) * qqn_v * sw_polynomial(ctx, n, std::exp(lnx));
    }
  }
  return out;
}

double phi_neg_lattice(const QContext& ctx, double t, long r, int k) {
  const double q = ctx.q;
  const double budget = cancel_budget(ctx);
  const double ld = L_direct_neg(ctx, t, r, k);
  const double ll = L_low_neg(ctx, t, r, k);
  if (ld <= std::min(ll, budget)) {
    const Complex a(-t * std::pow(q, double(-r)));
    return phi11(ctx, a, Complex(std::pow(q, double(k + r + 1)))).real();
  }
  if (ll <= budget) {
    const Complex a(-t * std::pow(q, double(-r)));
    const Complex y(std::pow(q, double(1 - k - r)));
    const double lg = (double(r) * r + double(r) * k) * std::log(q) -
                      (double(r) + k) * std::log(t);
    const double sgn = ((r + k) % 2 != 0) ? -1.0 : 1.0;
    return sgn * std::exp(lg) * phi11(ctx, a, y).real();
  }
  const double psi = psi_neg_window(ctx, t, r, k, k)[0];
  const double pref_lg =
      0.5 * k * std::log(t) + 0.25 * double(k) * (k + 1) * std::log(q);
  return psi * std::exp(-pref_lg);
}

}  // namespace detail

double JacobiOperator::a(int k) const {
  return 1.0 / std::sqrt(t * std::pow(ctx.q, double(k + 1)));
}

double JacobiOperator::b(int k) const { return -1.0 / (t * std::pow(ctx.q, double(k))); }

Sequence apply(const JacobiOperator& op, const Sequence& v) {
  Sequence u;
  u.kmin = v.kmin;
  u.v.resize(v.v.size());
  for (int k = v.kmin; k <= v.kmax(); ++k) {
    u.ref(k) = op.a(k) * v.at(k + 1) + op.b(k) * v.at(k) + op.a(k - 1) * v.at(k - 1);
  }
  return u;
}

namespace {

// z == q^n for integer n >= 0, within lattice tolerance?
bool match_pos_lattice(const QContext& ctx, Complex z, long* n_out) {
  if (z.real() <= 0.0 || std::fabs(z.imag()) > 1e-13 * std::abs(z)) return false;
  const double nr = std::round(std::log(z.real()) / ctx.log_q());
  if (nr < 0 || nr > 1e6) return false;
  if (std::fabs(z.real() - std::pow(ctx.q, nr)) > 1e-12 * z.real()) return false;
  *n_out = static_cast<long>(nr);
  return true;
}

bool match_neg_lattice(const QContext& ctx, double t, Complex z, long* r_out) {
  if (z.real() >= 0.0 || std::fabs(z.imag()) > 1e-13 * std::abs(z)) return false;
  const double rr = std::round(std::log(-z.real() * t) / ctx.log_q());
  if (std::fabs(rr) > 1e6) return false;
  if (std::fabs(-z.real() - std::pow(ctx.q, rr) / t) > 1e-12 * (-z.real()))
    return false;
  *r_out = static_cast<long>(rr);
  return true;
}

Complex psi_direct(const JacobiOperator& op, Complex z, int k) {
  const QContext& ctx = op.ctx;
  const double pref =
      std::exp(0.5 * k * std::log(op.t) + 0.25 * double(k) * (k + 1) * ctx.log_q());
  const Complex x(op.t * std::pow(ctx.q, double(k)));
  return pref * phi_z(ctx, z, x);
}

Complex psicap_direct(const JacobiOperator& op, Complex z, int k) {
  const QContext& ctx = op.ctx;
  const double pref =
      std::exp(0.5 * k * std::log(op.t) + 0.25 * double(k) * (k + 1) * ctx.log_q());
  const Complex y = -std::pow(ctx.q, double(1 - k)) / (op.t * z);
  Complex zk = std::pow(z, double(k));
  if (z.imag() == 0.0) {  // keep real z exactly real (z^k for negative z)
    double mag = std::pow(std::fabs(z.real()), double(k));
    zk = Complex((z.real() < 0.0 && (k % 2 != 0)) ? -mag : mag);
  }
  return pref * zk * phi11(ctx, Complex(1.0) / z, y);
}

}  // namespace

EigenSequence psi_seq(const JacobiOperator& op, Complex z, int kmin, int kmax) {
  const QContext& ctx = op.ctx;
  require_finite(z, "psi_seq");
  EigenSequence es;
  es.z = z;
  es.kind = EigenKind::Psi;
  es.seq.kmin = kmin;
  es.seq.v.assign(size_t(kmax - kmin + 1), Complex(0.0));

  long idx = 0;
  if (match_pos_lattice(ctx, z, &idx)) {
    auto vals = detail::psi_pos_window(ctx, op.t, idx, kmin, kmax);
    for (size_t i = 0; i < vals.size(); ++i) es.seq.v[i] = vals[i];
    return es;
  }
  if (match_neg_lattice(ctx, op.t, z, &idx)) {
    auto vals = detail::psi_neg_window(ctx, op.t, idx, kmin, kmax);
    for (size_t i = 0; i < vals.size(); ++i) es.seq.v[i] = vals[i];
    return es;
  }

  // generic z: direct series where safe, downward recurrence below
  const double budget = detail::cancel_budget(ctx);
  auto safe = [&](int k) {
    const double arg1 = op.t * std::abs(z) * std::pow(ctx.q, double(k + 1));
    const double arg2 = op.t * std::pow(ctx.q, double(k + 1));
    return std::log(std::max({1.0, arg1, arg2})) / std::log(1.0 / ctx.q) <= budget;
  };
  int k_dir = kmin;
  while (!safe(k_dir)) ++k_dir;
  for (int k = std::max(k_dir, kmin); k <= kmax; ++k)
    es.seq.ref(k) = psi_direct(op, z, k);
  if (k_dir > kmin) {
    Complex v1 = (k_dir + 1 >= kmin && k_dir + 1 <= kmax) ? es.seq.at(k_dir + 1)
                                                          : psi_direct(op, z, k_dir + 1);
    Complex v0 = (k_dir <= kmax) ? es.seq.at(k_dir) : psi_direct(op, z, k_dir);
    for (int k = k_dir; k - 1 >= kmin; --k) {
      const Complex vm = ((z - op.b(k)) * v0 - op.a(k) * v1) / op.a(k - 1);
      if (k - 1 <= kmax) es.seq.ref(k - 1) = vm;
      v1 = v0;
      v0 = vm;
    }
  }
  return es;
}

EigenSequence psicap_seq(const JacobiOperator& op, Complex z, int kmin, int kmax) {
  const QContext& ctx = op.ctx;
  require_finite(z, "psicap_seq");
  if (z == Complex(0.0))
    throw ZeroSpectralParam("psicap_seq: Psi(z) is undefined at z = 0");
  EigenSequence es;
  es.z = z;
  es.kind = EigenKind::PsiCap;
  es.seq.kmin = kmin;
  es.seq.v.assign(size_t(kmax - kmin + 1), Complex(0.0));

  long n = 0;
  if (match_pos_lattice(ctx, z, &n)) {
    // 1phi1(q^{-n};0;q,.) terminates: direct evaluation at every index
    for (int k = kmin; k <= kmax; ++k) es.seq.ref(k) = psicap_direct(op, z, k);
    return es;
  }

  const double budget = detail::cancel_budget(ctx);
  auto safe = [&](int k) {
    const double y = std::pow(ctx.q, double(1 - k)) / (op.t * std::abs(z));
    const double ay = y / std::abs(z);
    return std::log(std::max({1.0, y, ay})) / std::log(1.0 / ctx.q) <= budget;
  };
  int k_cap = kmax;
  while (!safe(k_cap)) --k_cap;
  for (int k = kmin; k <= std::min(k_cap, kmax); ++k)
    es.seq.ref(k) = psicap_direct(op, z, k);
  if (k_cap < kmax) {
    Complex um = (k_cap - 1 >= kmin && k_cap - 1 <= kmax)
                     ? es.seq.at(k_cap - 1)
                     : psicap_direct(op, z, k_cap - 1);
    Complex u0 = (k_cap >= kmin) ? es.seq.at(k_cap) : psicap_direct(op, z, k_cap);
    for (int k = k_cap; k + 1 <= kmax; ++k) {
      const Complex u1 = ((z - op.b(k)) * u0 - op.a(k - 1) * um) / op.a(k);
      if (k + 1 >= kmin) es.seq.ref(k + 1) = u1;
      um = u0;
      u0 = u1;
    }
  }
  return es;
}

Complex wronskian(const JacobiOperator& op, Complex z, int k) {
  const EigenSequence ps = psi_seq(op, z, k, k + 1);
  const EigenSequence cs = psicap_seq(op, z, k, k + 1);
  return op.a(k) * (ps.seq.at(k + 1) * cs.seq.at(k) - ps.seq.at(k) * cs.seq.at(k + 1));
}

Complex wronskian_closed(const QContext& ctx, double t, Complex z) {
  if (z == Complex(0.0)) return Complex(0.0);
  return -z * qpoch_inf(ctx, -t * z * ctx.q) * qpoch_inf(ctx, -1.0 / (t * z)) *
         qpoch_inf(ctx, Complex(1.0) / z);
}

Complex green(const JacobiOperator& op, Complex z, int j, int l) {
  const Complex W = wronskian_closed(op.ctx, op.t, z);
  if (std::abs(W) < 1e3 * op.ctx.tol * (1.0 + std::abs(z)))
    throw SpectralPointError("green: z is numerically at the spectrum");
  const int hi = std::max(j, l), lo = std::min(j, l);
  const Complex psi_hi = psi_seq(op, z, hi, hi).seq.at(hi);
  const Complex cap_lo = psicap_seq(op, z, lo, lo).seq.at(lo);
  return psi_hi * cap_lo / W;
}

Sequence resolvent_apply(const JacobiOperator& op, Complex z, const Sequence& v,
                         int kmin, int kmax) {
  if (z.imag() == 0.0)
    throw SpectralPointError("resolvent_apply: z must be non-real");
  const Complex W = wronskian_closed(op.ctx, op.t, z);
  const int lo = std::min(kmin, v.kmin) - 1;
  const int hi = std::max(kmax, v.kmax()) + 1;
  const EigenSequence ps = psi_seq(op, z, lo, hi);
  const EigenSequence cs = psicap_seq(op, z, lo, hi);

  Sequence u;
  u.kmin = kmin;
  u.v.assign(size_t(kmax - kmin + 1), Complex(0.0));
  for (int j = kmin; j <= kmax; ++j) {
    Complex below(0.0), above(0.0);
    for (int l = v.kmin; l <= v.kmax(); ++l) {
      if (v.at(l) == Complex(0.0)) continue;
      if (l <= j)
        below += cs.seq.at(l) * v.at(l);
      else
        above += ps.seq.at(l) * v.at(l);
    }
    u.ref(j) = (ps.seq.at(j) * below + cs.seq.at(j) * above) / W;
  }
  return u;
}

FiniteSection finite_section(const JacobiOperator& op, int kmin, int kmax) {
  if (kmax - kmin < 2)
    throw DomainError("finite_section: need at least 3 indices");
  FiniteSection s;
  s.kmin = kmin;
  s.kmax = kmax;
  s.diag.reserve(size_t(s.dim()));
  s.offdiag.reserve(size_t(s.dim() - 1));
  for (int k = kmin; k <= kmax; ++k) {
    s.diag.push_back(op.b(k));
    if (k < kmax) s.offdiag.push_back(op.a(k));
  }
  return s;
}

namespace {

// # eigenvalues of the section below sigma, via the LDL^T pivot signs
int sturm_count(const std::vector<long double>& d,
                const std::vector<long double>& e2, long double sigma,
                long double pivmin) {
  int cnt = 0;
  long double p = d[0] - sigma;
  if (std::fabs(p) < pivmin) p = -pivmin;
  if (p < 0) ++cnt;
  for (size_t i = 1; i < d.size(); ++i) {
    p = d[i] - sigma - e2[i - 1] / p;
    if (std::fabs(p) < pivmin) p = -pivmin;
    if (p < 0) ++cnt;
  }
  return cnt;
}

}  // namespace

std::vector<double> finite_section_spectrum(const JacobiOperator& op, int kmin,
                                            int kmax) {
  const FiniteSection s = finite_section(op, kmin, kmax);
  const int n = s.dim();
  std::vector<long double> d(s.diag.begin(), s.diag.end());
  std::vector<long double> e2(static_cast<size_t>(n - 1));
  long double e2max = 0.0L;
  for (int i = 0; i < n - 1; ++i) {
    e2[size_t(i)] = (long double)(s.offdiag[size_t(i)]) * s.offdiag[size_t(i)];
    e2max = std::max(e2max, e2[size_t(i)]);
  }
  const long double pivmin = std::max((long double)LDBL_MIN * 16.0L,
                                      e2max * LDBL_EPSILON * LDBL_EPSILON);
  long double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    long double rad = 0.0L;
    if (i > 0) rad += std::fabs((long double)s.offdiag[size_t(i - 1)]);
    if (i < n - 1) rad += std::fabs((long double)s.offdiag[size_t(i)]);
    lo = std::min(lo, d[size_t(i)] - rad);
    hi = std::max(hi, d[size_t(i)] + rad);
  }
  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double a = lo, b = hi;
    for (int it = 0; it < 140; ++it) {
      const long double mid = 0.5L * (a + b);
      if (sturm_count(d, e2, mid, pivmin) >= i + 1)
        b = mid;
      else
        a = mid;
      if (b - a <= LDBL_EPSILON * std::max({std::fabs(a), std::fabs(b), 1.0L}))
        break;
    }
    eig[size_t(i)] = double(0.5L * (a + b));
  }
  return eig;
}

std::vector<double> finite_section_eigenvector(const JacobiOperator& op,
                                               int kmin, int kmax,
                                               double lambda) {
  const FiniteSection s = finite_section(op, kmin, kmax);
  const int n = s.dim();
  // nearest eigenvalue, then inverse iteration with a slightly shifted solve
  const auto eigs = finite_section_spectrum(op, kmin, kmax);
  double best = eigs[0];
  for (double ev : eigs)
    if (std::fabs(ev - lambda) < std::fabs(best - lambda)) best = ev;
  long double sigma = best;
  long double scale = std::max(std::fabs((long double)best), 1.0L);
  sigma += 1e-13L * scale;

  std::vector<long double> x(static_cast<size_t>(n), 1.0L / std::sqrt((long double)n));
  for (int iter = 0; iter < 3; ++iter) {
    // solve (T - sigma) y = x, tridiagonal LU with partial pivoting
    std::vector<long double> dl(static_cast<size_t>(n), 0.0L), dm(static_cast<size_t>(n)), du(static_cast<size_t>(n), 0.0L),
        du2(static_cast<size_t>(n), 0.0L);
    for (int i = 0; i < n; ++i) {
      dm[size_t(i)] = (long double)s.diag[size_t(i)] - sigma;
      if (i < n - 1) du[size_t(i)] = s.offdiag[size_t(i)];
      if (i > 0) dl[size_t(i)] = s.offdiag[size_t(i - 1)];
    }
    std::vector<long double> y = x;
    for (int i = 0; i < n - 1; ++i) {
      if (std::fabs(dl[size_t(i + 1)]) > std::fabs(dm[size_t(i)])) {
        std::swap(dm[size_t(i)], dl[size_t(i + 1)]);
        std::swap(du[size_t(i)], dm[size_t(i + 1)]);
        if (i < n - 2) {
          du2[size_t(i)] = du[size_t(i + 1)];
          du[size_t(i + 1)] = 0.0L;
        }
        std::swap(y[size_t(i)], y[size_t(i + 1)]);
      }
      if (dm[size_t(i)] == 0.0L) dm[size_t(i)] = LDBL_MIN * 16.0L;
      const long double m = dl[size_t(i + 1)] / dm[size_t(i)];
      dm[size_t(i + 1)] -= m * du[size_t(i)];
      if (i < n - 2) du[size_t(i + 1)] -= m * du2[size_t(i)];
      y[size_t(i + 1)] -= m * y[size_t(i)];
    }
    if (dm[size_t(n - 1)] == 0.0L) dm[size_t(n - 1)] = LDBL_MIN * 16.0L;
    for (int i = n - 1; i >= 0; --i) {
      long double acc = y[size_t(i)];
      if (i < n - 1) acc -= du[size_t(i)] * y[size_t(i + 1)];
      if (i < n - 2) acc -= du2[size_t(i)] * y[size_t(i + 2)];
      y[size_t(i)] = acc / dm[size_t(i)];
    }
    long double nrm = 0.0L;
    for (auto v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (auto& v : y) v /= nrm;
    x = y;
  }
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[size_t(i)] = double(x[size_t(i)]);
  return out;
}

void write_section_csv(std::ostream& os, const JacobiOperator& op,
                       const std::vector<int>& windows) {
  os << "window,index,eigenvalue\n";
  char buf[64];
  for (int w : windows) {
    const auto eigs = finite_section_spectrum(op, -w, w);
    for (size_t i = 0; i < eigs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%zu,%.17g\n", w, i, eigs[i]);
      os << buf;
    }
  }
}

}  // namespace qsw
