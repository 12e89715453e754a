#include "qsw/spectral_discrete.hpp"

#include <cmath>

#include <json.hpp>

#include "qsw/detail/lattice_eval.hpp"
#include "qsw/qseries.hpp"

namespace qsw {

double norm_sq_pos(const QContext& ctx, double t, long n) {
  if (n < 0) throw DomainError("norm_sq_pos: n must be >= 0");
  return qq_n(ctx, n) * std::pow(ctx.q, double(-n)) * triple_product_norm(ctx, t);
}

double norm_sq_neg(const QContext& ctx, double t, long r) {
  const double poch = qpoch_finite(ctx, -ctx.q / t, r);
  const double qq = qpoch_inf(ctx, ctx.q);
  return poch * std::pow(ctx.q, double(-r)) * qpoch_inf(ctx, -t) * qq * qq;
}

std::vector<SpectralPoint> spectrum_points(const QContext& ctx, double t,
                                           long nmax, long rmin, long rmax) {
  if (nmax < 0) throw DomainError("spectrum_points: nmax must be >= 0");
  if (rmin > rmax) throw DomainError("spectrum_points: rmin > rmax");
  std::vector<SpectralPoint> pts;
  pts.reserve(size_t(nmax + 1 + rmax - rmin + 1));
  for (long n = 0; n <= nmax; ++n)
    pts.push_back({SpectralPoint::Kind::Pos, n, std::pow(ctx.q, double(n)),
                   norm_sq_pos(ctx, t, n)});
  for (long r = rmin; r <= rmax; ++r)
    pts.push_back({SpectralPoint::Kind::Neg, r, -std::pow(ctx.q, double(r)) / t,
                   norm_sq_neg(ctx, t, r)});
  return pts;
}

double residue_inv_wronskian(const QContext& ctx, double t, const SpectralPoint& xi) {
  const double q = ctx.q;
  if (xi.kind == SpectralPoint::Kind::Pos) {
    const long n = xi.index;
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    return sgn * std::pow(t, double(n)) * std::pow(q, double(n) * (n + 1)) /
           (qq_n(ctx, n) * triple_product_norm(ctx, t));
  }
  const long r = xi.index;
  const double sgn = (r % 2 == 0) ? -1.0 : 1.0;  // (-1)^{r+1}
  const double qq = qpoch_inf(ctx, q);
  return sgn * std::pow(q, double(r) * (r + 1)) /
         (std::pow(t, double(r)) * qpoch_finite(ctx, -q / t, r) *
          qpoch_inf(ctx, -t) * qq * qq);
}

namespace {

// bilateral sum of products of stable psi windows, with boundary check
double psi_product_sum(const QContext& ctx, const std::vector<double>& u,
                       const std::vector<double>& v, const char* who) {
  double sum = 0.0;
  for (size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  const double bound = ctx.tol * (1.0 + std::fabs(sum));
  if (std::fabs(u.front() * v.front()) > bound ||
      std::fabs(u.back() * v.back()) > bound)
    throw WindowError(std::string(who) + ": boundary terms above tolerance");
  return sum;
}

}  // namespace

double verify_OR_Sn(const QContext& ctx, double t, long n, long m,
                    std::pair<int, int> window) {
  // sum_k t^k q^C(k+1,2) S_n S_m = sum_k psi_k(q^n) psi_k(q^m) / ((q;q)_n (q;q)_m)
  const auto pn = detail::psi_pos_window(ctx, t, n, window.first, window.second);
  const auto pm = detail::psi_pos_window(ctx, t, m, window.first, window.second);
  const double sum = psi_product_sum(ctx, pn, pm, "verify_OR_Sn") /
                     (qq_n(ctx, n) * qq_n(ctx, m));
  const double lhs = sum / triple_product_norm(ctx, t);
  const double target =
      (n == m) ? 1.0 / (std::pow(ctx.q, double(n)) * qq_n(ctx, n)) : 0.0;
  return std::fabs(lhs - target);
}

double verify_OR_Mr(const QContext& ctx, double t, long r, long s,
                    std::pair<int, int> window) {
  const auto pr = detail::psi_neg_window(ctx, t, r, window.first, window.second);
  const auto ps = detail::psi_neg_window(ctx, t, s, window.first, window.second);
  const double qq = qpoch_inf(ctx, ctx.q);
  const double sum = psi_product_sum(ctx, pr, ps, "verify_OR_Mr") / (qq * qq);
  const double lhs = sum / qpoch_inf(ctx, -t);
  const double target =
      (r == s) ? qpoch_finite(ctx, -ctx.q / t, r) * std::pow(ctx.q, double(-r)) : 0.0;
  return std::fabs(lhs - target);
}

double verify_OR_MS(const QContext& ctx, double t, long n, long r,
                    std::pair<int, int> window) {
  const auto pn = detail::psi_pos_window(ctx, t, n, window.first, window.second);
  const auto pr = detail::psi_neg_window(ctx, t, r, window.first, window.second);
  const double sum = psi_product_sum(ctx, pn, pr, "verify_OR_MS") /
                     (qq_n(ctx, n) * qpoch_inf(ctx, ctx.q));
  return std::fabs(sum);
}

ExpandResult expand(const QContext& ctx, double t, const Sequence& v, long nmax,
                    long rmin, long rmax, std::pair<int, int> window) {
  ExpandResult res;
  res.points = spectrum_points(ctx, t, nmax, rmin, rmax);
  res.coeffs.reserve(res.points.size());

  const int kmin = window.first, kmax = window.second;
  std::vector<std::vector<double>> basis;
  basis.reserve(res.points.size());
  for (const auto& p : res.points) {
    basis.push_back(p.kind == SpectralPoint::Kind::Pos
                        ? detail::psi_pos_window(ctx, t, p.index, kmin, kmax)
                        : detail::psi_neg_window(ctx, t, p.index, kmin, kmax));
  }

  double vnorm2 = 0.0;
  for (int k = v.kmin; k <= v.kmax(); ++k) vnorm2 += std::norm(v.at(k));

  double parseval = 0.0;
  for (size_t i = 0; i < res.points.size(); ++i) {
    double inner = 0.0;
    for (int k = v.kmin; k <= v.kmax(); ++k) {
      if (k < kmin || k > kmax) continue;
      inner += v.at(k).real() * basis[i][size_t(k - kmin)];
    }
    const double c = inner / res.points[i].norm_sq;
    res.coeffs.push_back(c);
    parseval += c * c * res.points[i].norm_sq;
  }
  res.parseval_defect = std::fabs(vnorm2 - parseval);

  double err2 = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    double rec = 0.0;
    for (size_t i = 0; i < res.points.size(); ++i)
      rec += res.coeffs[i] * basis[i][size_t(k - kmin)];
    err2 += std::norm(v.at(k) - rec);
  }
  res.reconstruction_error = std::sqrt(err2);
  return res;
}

std::string or_report_json(const std::string& relation, long i, long j,
                           double residual, double target,
                           std::pair<int, int> window) {
  nlohmann::json rep{{"relation", relation},
                     {"indices", {i, j}},
                     {"residual", residual},
                     {"target", target},
                     {"window", {window.first, window.second}}};
  return rep.dump();
}

}  // namespace qsw
