#ifndef QSW_MEASURES_HPP
#define QSW_MEASURES_HPP

#include <functional>
#include <string>
#include <utility>

#include "qsw/context.hpp"

namespace qsw {

// Discrete solution mu_t = sum_k m_t(k) delta_{t q^k} with
// m_t(k) = t^k q^(k(k+1)/2) m_t(0); the default m_t(0) makes mu_t a
// probability measure.
struct LatticeMeasure {
  double t;
  double mass0;
  std::pair<int, int> window;

  LatticeMeasure(const QContext& ctx, double t_);
  LatticeMeasure(const QContext& ctx, double t_, double mass0_);
};

double lattice_mass(const LatticeMeasure& mu, const QContext& ctx, long k);

// int x^n dmu over the window; equals q^{-n(n+1)/2} for every t when mass0
// takes its default.  Defined for negative n as well.
// Throws WindowError if a boundary summand is not negligible.
double lattice_moment(const LatticeMeasure& mu, const QContext& ctx, long n);

// max_k |m(k+1) / (m(k) t q^{k+1}) - 1| over the window: the discrete
// Radon-Nikodym criterion for symmetry of L.
double radon_nikodym_check(const LatticeMeasure& mu, const QContext& ctx);
double radon_nikodym_check(const QContext& ctx,
                           const std::function<double(long)>& mass,
                           double t, std::pair<int, int> window);

// Absolutely continuous weight on (0,infty) satisfying w(xq) = x w(x).
struct WeightDensity {
  enum class Kind { LogNormal, ProductC, Custom };

  Kind kind;
  double c = 1.0;                          // ProductC parameter
  std::function<double(double)> callback;  // Custom
  double normalization = 1.0;              // computed total mass
  int quad_nodes = 32;                     // per q-interval

  static WeightDensity log_normal(const QContext& ctx, int quad_nodes = 32);
  static WeightDensity product_c(const QContext& ctx, double c, int quad_nodes = 32);
  static WeightDensity custom(const QContext& ctx, std::function<double(double)> w,
                              int quad_nodes = 32);
};

// raw density value (the formulas of the built-in kinds; not normalized)
double density_eval(const WeightDensity& wd, const QContext& ctx, double x);

// density / total mass
double density_eval_normalized(const WeightDensity& wd, const QContext& ctx, double x);

// w(xq) - x w(x); identically zero exactly for the classical weights
double pearson_residual(const WeightDensity& wd, const QContext& ctx, double x);

// Berg-type perturbed solution nu_{s,t}: mass at t q^k of
//   m^_t(k) (1 + s M_r^{(t)}(t q^k)/M(r,t)),  valid for |s| <= 1, t < q^r.
double berg_mass(const QContext& ctx, double s, double t, long r, long k);
// windowed sup of |M_r^{(t)}(t q^k)| used as the bound M(r,t)
double berg_bound(const QContext& ctx, double t, long r);

// JSON round trip: {kind, t or c, q, window, mass0/normalization}
std::string to_json_string(const LatticeMeasure& mu, const QContext& ctx);
std::string to_json_string(const WeightDensity& wd, const QContext& ctx);
LatticeMeasure lattice_measure_from_json(const QContext& ctx, const std::string& s);
WeightDensity weight_density_from_json(const QContext& ctx, const std::string& s);

}  // namespace qsw

#endif
