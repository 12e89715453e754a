#include "qsw/measures.hpp"

#include <cmath>

#include <json.hpp>

#include "qsw/detail/lattice_eval.hpp"
#include "qsw/qseries.hpp"
#include "qsw/quadrature.hpp"

namespace qsw {

LatticeMeasure::LatticeMeasure(const QContext& ctx, double t_)
    : t(t_), mass0(0.0), window(ctx.window) {
  if (!(t > 0.0)) throw DomainError("LatticeMeasure: t must be positive");
  mass0 = 1.0 / triple_product_norm(ctx, t);
}

LatticeMeasure::LatticeMeasure(const QContext& ctx, double t_, double mass0_)
    : t(t_), mass0(mass0_), window(ctx.window) {
  if (!(t > 0.0)) throw DomainError("LatticeMeasure: t must be positive");
  if (!(mass0 > 0.0)) throw DomainError("LatticeMeasure: mass0 must be positive");
}

double lattice_mass(const LatticeMeasure& mu, const QContext& ctx, long k) {
  // t^k q^(k(k+1)/2) mass0, in log space to dodge premature under/overflow
  const double lg = k * std::log(mu.t) +
                    0.5 * double(k) * double(k + 1) * ctx.log_q() +
                    std::log(mu.mass0);
  return std::exp(lg);
}

double lattice_moment(const LatticeMeasure& mu, const QContext& ctx, long n) {
  double sum = 0.0;
  const auto [kmin, kmax] = mu.window;
  auto summand = [&](long k) {
    // x^n m(k) combined in one exponent; either factor alone can overflow
    const double lg = double(n) * (std::log(mu.t) + k * ctx.log_q()) +
                      k * std::log(mu.t) +
                      0.5 * double(k) * double(k + 1) * ctx.log_q() +
                      std::log(mu.mass0);
    return std::exp(lg);
  };
  for (long k = kmin; k <= kmax; ++k) sum += summand(k);
  const double bound = ctx.tol * (1.0 + std::fabs(sum));
  if (std::fabs(summand(kmin)) > bound || std::fabs(summand(kmax)) > bound)
    throw WindowError("lattice_moment: boundary terms above tolerance");
  return sum;
}

double radon_nikodym_check(const QContext& ctx,
                           const std::function<double(long)>& mass, double t,
                           std::pair<int, int> window) {
  double worst = 0.0;
  for (long k = window.first; k < window.second; ++k) {
    const double ratio = mass(k + 1) / (mass(k) * t * std::pow(ctx.q, double(k + 1)));
    worst = std::max(worst, std::fabs(ratio - 1.0));
  }
  return worst;
}

double radon_nikodym_check(const LatticeMeasure& mu, const QContext& ctx) {
  // ratios cancel mass0, and the window is clipped where masses underflow
  auto m = [&](long k) { return lattice_mass(mu, ctx, k); };
  int lo = mu.window.first, hi = mu.window.second;
  while (lo < 0 && m(lo) == 0.0) ++lo;
  while (hi > 0 && m(hi) == 0.0) --hi;
  return radon_nikodym_check(ctx, m, mu.t, {lo, hi});
}

namespace {

double lognormal_raw(const QContext& ctx, double x) {
  const double lx = std::log(x);
  return std::exp(0.5 * lx * lx / ctx.log_q()) / std::sqrt(x);
}

double product_c_raw(const QContext& ctx, double c, double x) {
  // evaluate at the (q,1] representative and ride the q-Pearson recursion
  // out; the infinite products stay in their comfortable range
  const double u = std::log(x) / ctx.log_q();
  long k = long(std::floor(u));
  if (u - double(k) > 1.0 - 1e-9) ++k;
  const double t = x * std::pow(ctx.q, double(-k));
  const double base =
      std::pow(t, c - 1.0) / (qpoch_inf(ctx, -std::pow(ctx.q, 1.0 - c) * t) *
                              qpoch_inf(ctx, -std::pow(ctx.q, c) / t));
  const double lg = k * std::log(t) + 0.5 * double(k) * double(k - 1) * ctx.log_q();
  return base * std::exp(lg);
}

double total_mass(const QContext& ctx, const WeightDensity& wd) {
  double mass = 0.0;
  for (int k = ctx.window.first; k <= ctx.window.second; ++k) {
    const double a = std::pow(ctx.q, double(k + 1));
    const double b = std::pow(ctx.q, double(k));
    if (b == 0.0 || !std::isfinite(a)) continue;
    mass += integrate([&](double x) { return density_eval(wd, ctx, x); }, a, b,
                      wd.quad_nodes);
  }
  return mass;
}

}  // namespace

WeightDensity WeightDensity::log_normal(const QContext& ctx, int quad_nodes) {
  WeightDensity wd;
  wd.kind = Kind::LogNormal;
  wd.quad_nodes = quad_nodes;
  wd.normalization = total_mass(ctx, wd);
  return wd;
}

WeightDensity WeightDensity::product_c(const QContext& ctx, double c, int quad_nodes) {
  if (!(c > 0.0)) throw DomainError("WeightDensity: c must be positive");
  WeightDensity wd;
  wd.kind = Kind::ProductC;
  wd.c = c;
  wd.quad_nodes = quad_nodes;
  wd.normalization = total_mass(ctx, wd);
  return wd;
}

WeightDensity WeightDensity::custom(const QContext& ctx,
                                    std::function<double(double)> w, int quad_nodes) {
  WeightDensity wd;
  wd.kind = Kind::Custom;
  wd.callback = std::move(w);
  wd.quad_nodes = quad_nodes;
  wd.normalization = total_mass(ctx, wd);
  return wd;
}

double density_eval(const WeightDensity& wd, const QContext& ctx, double x) {
  if (!(x > 0.0)) throw DomainError("density_eval: x must be positive");
  switch (wd.kind) {
    case WeightDensity::Kind::LogNormal:
      return lognormal_raw(ctx, x);
    case WeightDensity::Kind::ProductC:
      return product_c_raw(ctx, wd.c, x);
    case WeightDensity::Kind::Custom:
      return wd.callback(x);
  }
  return 0.0;
}

double density_eval_normalized(const WeightDensity& wd, const QContext& ctx,
                               double x) {
  return density_eval(wd, ctx, x) / wd.normalization;
}

double pearson_residual(const WeightDensity& wd, const QContext& ctx, double x) {
  return density_eval(wd, ctx, x * ctx.q) - x * density_eval(wd, ctx, x);
}

double berg_bound(const QContext& ctx, double t, long r) {
  const double qqinf = qpoch_inf(ctx, ctx.q);
  double bound = 0.0;
  for (int k = ctx.window.first; k <= ctx.window.second; ++k)
    bound = std::max(bound,
                     std::fabs(detail::phi_neg_lattice(ctx, t, r, k)) / qqinf);
  return bound;
}

double berg_mass(const QContext& ctx, double s, double t, long r, long k) {
  if (std::fabs(s) > 1.0) throw DomainError("berg_mass: need |s| <= 1");
  if (!(t < std::pow(ctx.q, double(r))))
    throw DomainError("berg_mass: need t < q^r");
  const double M = detail::phi_neg_lattice(ctx, t, r, int(k)) / qpoch_inf(ctx, ctx.q);
  const double lg = k * std::log(t) + 0.5 * double(k) * double(k + 1) * ctx.log_q();
  const double mhat = std::exp(lg) / triple_product_norm(ctx, t);
  return mhat * (1.0 + s * M / berg_bound(ctx, t, r));
}

std::string to_json_string(const LatticeMeasure& mu, const QContext& ctx) {
  nlohmann::json j{{"kind", "lattice"},
                   {"t", mu.t},
                   {"q", ctx.q},
                   {"window", {mu.window.first, mu.window.second}},
                   {"mass0", mu.mass0}};
  return j.dump();
}

std::string to_json_string(const WeightDensity& wd, const QContext& ctx) {
  const char* kind = wd.kind == WeightDensity::Kind::LogNormal ? "log-normal"
                     : wd.kind == WeightDensity::Kind::ProductC ? "product-c"
                                                                : "custom";
  nlohmann::json j{{"kind", kind},
                   {"q", ctx.q},
                   {"window", {ctx.window.first, ctx.window.second}},
                   {"normalization", wd.normalization}};
  if (wd.kind == WeightDensity::Kind::ProductC) j["c"] = wd.c;
  return j.dump();
}

LatticeMeasure lattice_measure_from_json(const QContext& ctx, const std::string& s) {
  const auto j = nlohmann::json::parse(s);
  if (j.at("kind") != "lattice")
    throw DomainError("lattice_measure_from_json: wrong kind");
  LatticeMeasure mu(ctx, j.at("t").get<double>(), j.at("mass0").get<double>());
  if (j.contains("window"))
    mu.window = {j["window"][0].get<int>(), j["window"][1].get<int>()};
  return mu;
}

WeightDensity weight_density_from_json(const QContext& ctx, const std::string& s) {
  const auto j = nlohmann::json::parse(s);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "log-normal") return WeightDensity::log_normal(ctx);
  if (kind == "product-c")
    return WeightDensity::product_c(ctx, j.at("c").get<double>());
  throw DomainError("weight_density_from_json: custom densities are not portable");
}

}  // namespace qsw
