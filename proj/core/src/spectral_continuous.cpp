#include "qsw/spectral_continuous.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qsw/detail/lattice_eval.hpp"
#include "qsw/eigenfunctions.hpp"
#include "qsw/qseries.hpp"
#include "qsw/quadrature.hpp"

namespace qsw {

int bucket_index(const QContext& ctx, double x) {
  if (!(x > 0.0)) throw DomainError("bucket_index: x must be positive");
  const double u = std::log(x) / ctx.log_q();
  int k = int(std::floor(u));
  if (u - double(k) > 1.0 - 1e-9) ++k;  // snap lattice points x = q^k
  return k;
}

double per_map(const QContext& ctx, const std::function<double(double)>& f,
               double x) {
  const int k = bucket_index(ctx, x);
  return f(x * std::pow(ctx.q, double(-k)));
}

double p_map(const QContext& ctx, const std::function<double(double)>& f,
             double x) {
  const int k = bucket_index(ctx, x);
  const double pref = std::exp(0.5 * k * std::log(x) -
                               0.25 * double(k) * (k + 1) * ctx.log_q());
  return pref * f(x * std::pow(ctx.q, double(-k)));
}

CompactFunction step_function(const QContext& ctx, int k_first,
                              std::vector<double> vals) {
  const double q = ctx.q;
  const int k_last = k_first + static_cast<int>(vals.size()) - 1;
  auto fn = [q, k_first, vals = std::move(vals)](double x) -> double {
    if (!(x > 0.0)) return 0.0;
    const double u = std::log(x) / std::log(q);
    int k = int(std::floor(u));
    if (u - double(k) > 1.0 - 1e-9) ++k;
    const int i = k - k_first;
    if (i < 0 || i >= int(vals.size())) return 0.0;
    return vals[size_t(i)];
  };
  return CompactFunction{fn, k_first, k_last};
}

SliceVector slice(const QContext& ctx, const WeightDensity& wd,
                  const CompactFunction& F, double t) {
  if (!(t > ctx.q && t <= 1.0)) throw DomainError("slice: t must lie in (q,1]");
  SliceVector sv;
  sv.t = t;
  sv.kmin = F.k_first;
  sv.values.resize(size_t(F.k_last - F.k_first + 1));
  for (int k = F.k_first; k <= F.k_last; ++k) {
    const double x = t * std::pow(ctx.q, double(k));
    sv.values[size_t(k - F.k_first)] =
        F(x) * std::pow(ctx.q, 0.5 * k) *
        std::sqrt(density_eval_normalized(wd, ctx, x));
  }
  return sv;
}

double slice_adjoint(const QContext& ctx, const WeightDensity& wd,
                     const std::function<double(int, double)>& h, double x) {
  const double w = density_eval_normalized(wd, ctx, x);
  if (w <= 0.0) throw ZeroWeightError("slice_adjoint: w(x) = 0");
  const int k = bucket_index(ctx, x);
  const double t = x * std::pow(ctx.q, double(-k));
  return h(k, t) / (std::pow(ctx.q, 0.5 * k) * std::sqrt(w));
}

double orthonormal_sw(const QContext& ctx, long n, double x) {
  return std::pow(ctx.q, 0.5 * double(n)) * std::sqrt(qq_n(ctx, n)) *
         sw_polynomial(ctx, n, x);
}

namespace {

double legendre_P(int n, double u) {
  double p0 = 1.0, p1 = u;
  if (n == 0) return p0;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * u * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double SliceBasis::eval(int i, double t) const {
  const double u = 2.0 * (t - q) / (1.0 - q) - 1.0;
  double acc = 0.0;
  for (size_t j = 0; j < coef[size_t(i)].size(); ++j)
    acc += coef[size_t(i)][j] * legendre_P(int(j), u);
  return acc;
}

SliceBasis make_slice_basis(const QContext& ctx, int imax, int nodes) {
  SliceBasis basis;
  basis.q = ctx.q;
  const auto& rule = gauss_legendre(nodes);
  const double a = ctx.q, b = 1.0;
  std::vector<double> ts(static_cast<size_t>(nodes)), ws(static_cast<size_t>(nodes)), rho(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    ts[size_t(i)] = 0.5 * (b - a) * rule.nodes[size_t(i)] + 0.5 * (a + b);
    ws[size_t(i)] = 0.5 * (b - a) * rule.weights[size_t(i)];
    rho[size_t(i)] = triple_product_norm(ctx, ts[size_t(i)]);
  }
  auto u_of = [&](double t) { return 2.0 * (t - a) / (b - a) - 1.0; };

  // values of the working vectors at the nodes
  std::vector<std::vector<double>> vecs;
  for (int i = 0; i <= imax; ++i) {
    std::vector<double> v(static_cast<size_t>(nodes));
    std::vector<double> c(size_t(imax + 1), 0.0);
    c[size_t(i)] = 1.0;
    for (int n = 0; n < nodes; ++n) v[size_t(n)] = legendre_P(i, u_of(ts[size_t(n)]));
    // modified Gram-Schmidt, two passes
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t j = 0; j < vecs.size(); ++j) {
        double pr = 0.0;
        for (int n = 0; n < nodes; ++n)
          pr += ws[size_t(n)] * rho[size_t(n)] * v[size_t(n)] * vecs[j][size_t(n)];
        for (int n = 0; n < nodes; ++n) v[size_t(n)] -= pr * vecs[j][size_t(n)];
        for (size_t m = 0; m < c.size(); ++m) c[m] -= pr * basis.coef[j][m];
      }
    }
    double nrm = 0.0;
    for (int n = 0; n < nodes; ++n)
      nrm += ws[size_t(n)] * rho[size_t(n)] * v[size_t(n)] * v[size_t(n)];
    nrm = std::sqrt(nrm);
    for (auto& x : v) x /= nrm;
    for (auto& x : c) x /= nrm;
    vecs.push_back(std::move(v));
    basis.coef.push_back(std::move(c));
  }
  return basis;
}

double per_basis_sn(const QContext& ctx, const WeightDensity& wd,
                    const SliceBasis& basis, int i, long n, double x) {
  const int k = bucket_index(ctx, x);
  const double t = x * std::pow(ctx.q, double(-k));
  return basis.eval(i, t) / std::sqrt(density_eval_normalized(wd, ctx, t)) *
         orthonormal_sw(ctx, n, x);
}

namespace {

struct LogVal {
  double lg;   // log magnitude
  double sgn;  // -1, 0, +1
};

// bucket of lambda < 0:  lambda in (-q^{l-1}, -q^l]
int lambda_bucket(const QContext& ctx, double lam) {
  const double u = std::log(-lam) / ctx.log_q();
  int l = int(std::ceil(u));
  if (double(l) - u > 1.0 - 1e-9) --l;
  return l;
}

// log-space summand of the transform:
// F(x_j) (-lam)^{-j} q^{C(j+1,2)} phi_lam(x_j) with x_j = t q^{j-l}
LogVal transform_summand(const QContext& ctx, double Fv, int j, int l, double t) {
  if (Fv == 0.0) return {-1e400, 0.0};
  const int k = j - l;
  double lg = (-double(l) * j + 0.5 * double(j) * (j + 1)) * ctx.log_q() +
              j * std::log(t) + std::log(std::fabs(Fv));
  double sgn = Fv > 0 ? 1.0 : -1.0;
  const double phi = detail::phi_neg_lattice(ctx, t, l, k);
  if (phi == 0.0) return {-1e400, 0.0};
  if (phi < 0) sgn = -sgn;
  lg += std::log(std::fabs(phi));
  return {lg, sgn};
}

LogVal transform_F_log(const QContext& ctx, const CompactFunction& F, double lam) {
  const int l = lambda_bucket(ctx, lam);
  const double t = std::pow(ctx.q, double(l)) / (-lam);
  double mx = -1e400;
  std::vector<LogVal> items;
  for (int kk = F.k_first; kk <= F.k_last; ++kk) {
    const double xj = t * std::pow(ctx.q, double(kk));
    const LogVal lv = transform_summand(ctx, F(xj), l + kk, l, t);
    if (lv.sgn != 0.0) {
      items.push_back(lv);
      mx = std::max(mx, lv.lg);
    }
  }
  if (items.empty()) return {-1e400, 0.0};
  double acc = 0.0;
  for (const auto& lv : items) acc += lv.sgn * std::exp(lv.lg - mx);
  if (acc == 0.0) return {-1e400, 0.0};
  return {mx + std::log(std::fabs(acc)), acc > 0 ? 1.0 : -1.0};
}

double from_log(const LogVal& lv) {
  if (lv.sgn == 0.0) return 0.0;
  return lv.sgn * std::exp(lv.lg);
}

}  // namespace

double transform_F(const QContext& ctx, const CompactFunction& F, double lam) {
  if (!(lam < 0.0)) throw DomainError("transform_F: lambda must be negative");
  return from_log(transform_F_log(ctx, F, lam));
}

double nu_log(const QContext& ctx, double lam) {
  if (!(lam < 0.0)) throw DomainError("nu_density: lambda must be negative");
  const int l = lambda_bucket(ctx, lam);
  const double t = std::pow(ctx.q, double(l)) / (-lam);
  const auto [lg_poch, sgn] = log_qpoch_finite(ctx, -ctx.q / t, l);
  (void)sgn;  // all factors positive for t > 0
  const double qq = qpoch_inf(ctx, ctx.q);
  const double lgN2 = lg_poch - l * ctx.log_q() +
                      std::log(qpoch_inf(ctx, -t)) + 2.0 * std::log(qq);
  return l * std::log(-lam) - 0.5 * double(l) * (l + 1) * ctx.log_q() - lgN2;
}

double nu_density(const QContext& ctx, double lam) {
  return std::exp(nu_log(ctx, lam));
}

std::vector<std::vector<double>> transform_discrete_coeffs(
    const QContext& ctx, const WeightDensity& wd, const SliceBasis& basis,
    const CompactFunction& F, int imax, int nmax, int nodes) {
  std::vector<std::vector<double>> out(size_t(imax + 1),
                                       std::vector<double>(size_t(nmax + 1), 0.0));
  for (int kk = F.k_first; kk <= F.k_last; ++kk) {
    const double a = std::pow(ctx.q, double(kk + 1));
    const double b = std::pow(ctx.q, double(kk));
    const auto& rule = gauss_legendre(nodes);
    for (int m = 0; m < nodes; ++m) {
      const double x = 0.5 * (b - a) * rule.nodes[size_t(m)] + 0.5 * (a + b);
      const double wq = 0.5 * (b - a) * rule.weights[size_t(m)];
      const double Fx = F(x);
      if (Fx == 0.0) continue;
      const double t = x * std::pow(ctx.q, double(-kk));
      const double wnorm = density_eval_normalized(wd, ctx, x);
      const double perw = 1.0 / std::sqrt(density_eval_normalized(wd, ctx, t));
      for (int i = 0; i <= imax; ++i) {
        const double fi = basis.eval(i, t) * perw;
        for (int n = 0; n <= nmax; ++n)
          out[size_t(i)][size_t(n)] +=
              wq * Fx * fi * orthonormal_sw(ctx, n, x) * wnorm;
      }
    }
  }
  return out;
}

double transform_F_adjoint(const QContext& ctx, const WeightDensity& wd,
                           const SliceBasis& basis,
                           const std::vector<std::vector<double>>& g_in,
                           const std::function<double(double)>& g_cont, double x,
                           const ContTruncation& trunc) {
  if (!(x > 0.0)) throw DomainError("transform_F_adjoint: x must be positive");
  double acc = 0.0;
  const int kx = bucket_index(ctx, x);
  const double t = x * std::pow(ctx.q, double(-kx));
  const double perw = 1.0 / std::sqrt(density_eval_normalized(wd, ctx, t));
  for (size_t i = 0; i < g_in.size() && int(i) <= trunc.imax; ++i)
    for (size_t n = 0; n < g_in[i].size() && int(n) <= trunc.nmax; ++n)
      if (g_in[i][n] != 0.0)
        acc += g_in[i][n] * basis.eval(int(i), t) * perw *
               orthonormal_sw(ctx, long(n), x);
  for (int j = -trunc.jmax; j <= trunc.jmax; ++j) {
    const double lam = -std::pow(ctx.q, double(j)) / x;
    const double g = g_cont(lam);
    if (g == 0.0) continue;
    const int l = j - kx;
    const double phi = detail::phi_neg_lattice(ctx, t, l, kx);
    if (phi == 0.0) continue;
    const double nl = nu_log(ctx, lam);
    const double mag = std::log(std::fabs(g)) + std::log(std::fabs(phi)) + nl;
    if (mag < -700.0) continue;
    const double sgn = ((g > 0) == (phi > 0)) ? 1.0 : -1.0;
    acc += sgn * std::exp(mag);
  }
  return acc;
}

PlancherelResult plancherel_check(const QContext& ctx, const WeightDensity& wd,
                                  const SliceBasis& basis, const CompactFunction& F,
                                  const CompactFunction& G,
                                  const ContTruncation& trunc) {
  PlancherelResult res{};
  // lhs over the union of supports
  const int k_first = std::min(F.k_first, G.k_first);
  const int k_last = std::max(F.k_last, G.k_last);
  res.lhs = 0.0;
  for (int kk = k_first; kk <= k_last; ++kk) {
    const double a = std::pow(ctx.q, double(kk + 1));
    const double b = std::pow(ctx.q, double(kk));
    res.lhs += integrate(
        [&](double x) {
          const double v = F(x) * G(x);
          return v == 0.0 ? 0.0 : v * density_eval_normalized(wd, ctx, x);
        },
        a, b, trunc.nodes);
  }

  const auto Fin = transform_discrete_coeffs(ctx, wd, basis, F, trunc.imax,
                                             trunc.nmax, trunc.nodes);
  const auto Gin = transform_discrete_coeffs(ctx, wd, basis, G, trunc.imax,
                                             trunc.nmax, trunc.nodes);
  res.rhs_discrete = 0.0;
  for (int i = 0; i <= trunc.imax; ++i)
    for (int n = 0; n <= trunc.nmax; ++n)
      res.rhs_discrete += Fin[size_t(i)][size_t(n)] * Gin[size_t(i)][size_t(n)];

  res.rhs_continuous = 0.0;
  const auto& rule = gauss_legendre(trunc.nodes);
  for (int l = -trunc.lmax; l <= trunc.lmax; ++l) {
    const double a = -std::pow(ctx.q, double(l - 1));
    const double b = -std::pow(ctx.q, double(l));
    if (!std::isfinite(a) || b == 0.0) continue;
    double bucket = 0.0;
    for (int m = 0; m < trunc.nodes; ++m) {
      const double lam = 0.5 * (b - a) * rule.nodes[size_t(m)] + 0.5 * (a + b);
      const LogVal lf = transform_F_log(ctx, F, lam);
      const LogVal lg = transform_F_log(ctx, G, lam);
      if (lf.sgn == 0.0 || lg.sgn == 0.0) continue;
      const double wv = density_eval_normalized(wd, ctx, -1.0 / lam);
      if (wv <= 0.0) continue;
      const double mag = lf.lg + lg.lg + nu_log(ctx, lam) + std::log(wv) -
                         2.0 * std::log(-lam);
      if (mag < -700.0) continue;
      bucket += rule.weights[size_t(m)] * lf.sgn * lg.sgn * std::exp(mag);
    }
    res.rhs_continuous += 0.5 * (b - a) * bucket;
  }
  res.defect = std::fabs(res.lhs - res.rhs_discrete - res.rhs_continuous);
  return res;
}

std::string plancherel_report_json(const PlancherelResult& res,
                                   const ContTruncation& trunc) {
  nlohmann::json j{{"lhs", res.lhs},
                   {"rhs_discrete", res.rhs_discrete},
                   {"rhs_continuous", res.rhs_continuous},
                   {"defect", res.defect},
                   {"truncation",
                    {{"imax", trunc.imax},
                     {"nmax", trunc.nmax},
                     {"lmax", trunc.lmax},
                     {"jmax", trunc.jmax},
                     {"nodes", trunc.nodes}}}};
  return j.dump();
}

}  // namespace qsw
