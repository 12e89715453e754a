#ifndef QSW_SPECTRAL_CONTINUOUS_HPP
#define QSW_SPECTRAL_CONTINUOUS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qsw/context.hpp"
#include "qsw/measures.hpp"

namespace qsw {

// index k with x in (q^{k+1}, q^k]
int bucket_index(const QContext& ctx, double x);

// Per(f)(x) = f(x q^{-k}) on (q^{k+1}, q^k]: the q-periodic extension of a
// function on (q,1]
double per_map(const QContext& ctx, const std::function<double(double)>& f,
               double x);

// (Pf)(x) = x^{k/2} q^{-k(k+1)/4} f(x q^{-k}); satisfies (Pf)(xq) = sqrt(x)(Pf)(x)
double p_map(const QContext& ctx, const std::function<double(double)>& f,
             double x);

// function supported in (q^{k_last+1}, q^{k_first}]
struct CompactFunction {
  std::function<double(double)> f;
  int k_first;  // highest interval index M: support starts at (q^{M+1}, q^M]
  int k_last;   // lowest interval: (q^{k_last+1}, q^{k_last}]

  double operator()(double x) const { return f(x); }
};

// step function: value vals[i] on (q^{k_first+i+1}, q^{k_first+i}]
CompactFunction step_function(const QContext& ctx, int k_first,
                              std::vector<double> vals);

struct SliceVector {
  double t = 0.0;
  int kmin = 0;
  std::vector<double> values;
};

// (IF)(t) = sum_k F(t q^k) q^{k/2} sqrt(w(t q^k)) e_k  (normalized w)
SliceVector slice(const QContext& ctx, const WeightDensity& wd,
                  const CompactFunction& F, double t);

// I*(t -> sum_k h_k(t) e_k)(x) = h_k(x q^{-k}) / (q^{k/2} sqrt(w(x))),
// k the bucket of x.  h(k, t) gives the k-th component at t in (q,1].
double slice_adjoint(const QContext& ctx, const WeightDensity& wd,
                     const std::function<double(int, double)>& h, double x);

// orthonormal Stieltjes-Wigert polynomial s_n = q^{n/2} sqrt((q;q)_n) S_n
double orthonormal_sw(const QContext& ctx, long n, double x);

// Polynomial basis on (q,1], orthonormal against rho(t) dt with
// rho(t) = (-tq,-1/t,q;q)_inf, so that Per(f_i/sqrt w) s_n is orthonormal
// in L^2(w dx).  (The rho weight is forced by the t-dependence of the
// eigenvector norms N_{q^n}(t).)
struct SliceBasis {
  double q;
  std::vector<std::vector<double>> coef;  // f_i = sum_j coef[i][j] P_j(u(t))

  int size() const { return static_cast<int>(coef.size()); }
  double eval(int i, double t) const;
};

SliceBasis make_slice_basis(const QContext& ctx, int imax, int nodes = 96);

// Per(f_i/sqrt w)(x) * s_n(x)
double per_basis_sn(const QContext& ctx, const WeightDensity& wd,
                    const SliceBasis& basis, int i, long n, double x);

// (F F)(lambda) = sum_j F(-q^j/lambda) (-lambda)^{-j} q^C(j+1,2)
//                 phi_lambda(-q^j/lambda), lambda < 0
double transform_F(const QContext& ctx, const CompactFunction& F, double lam);

// spectral density nu(lambda) on (-infty, 0)
double nu_density(const QContext& ctx, double lam);
double nu_log(const QContext& ctx, double lam);  // log nu, safe for far buckets

// discrete coefficients F_in = int F Per(f_i/sqrt w) s_n w dx
std::vector<std::vector<double>> transform_discrete_coeffs(
    const QContext& ctx, const WeightDensity& wd, const SliceBasis& basis,
    const CompactFunction& F, int imax, int nmax, int nodes = 64);

struct ContTruncation {
  int imax = 10;
  int nmax = 10;
  int lmax = 25;  // lambda buckets |l| <= lmax
  int jmax = 30;  // adjoint continuous sum |j| <= jmax
  int nodes = 64; // Gauss-Legendre nodes per interval/bucket
};

// (F* g)(x) for g = (g_in, g_cont): the adjoint transform, truncated
double transform_F_adjoint(const QContext& ctx, const WeightDensity& wd,
                           const SliceBasis& basis,
                           const std::vector<std::vector<double>>& g_in,
                           const std::function<double(double)>& g_cont, double x,
                           const ContTruncation& trunc);

struct PlancherelResult {
  double lhs;
  double rhs_discrete;
  double rhs_continuous;
  double defect;
};

// int F G w dx  vs  sum_in F_in G_in + int FF FG nu(l) w(-1/l) dl/l^2
PlancherelResult plancherel_check(const QContext& ctx, const WeightDensity& wd,
                                  const SliceBasis& basis, const CompactFunction& F,
                                  const CompactFunction& G,
                                  const ContTruncation& trunc);

std::string plancherel_report_json(const PlancherelResult& res,
                                   const ContTruncation& trunc);

}  // namespace qsw

#endif
