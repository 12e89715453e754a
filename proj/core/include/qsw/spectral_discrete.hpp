#ifndef QSW_SPECTRAL_DISCRETE_HPP
#define QSW_SPECTRAL_DISCRETE_HPP

#include <string>
#include <utility>
#include <vector>

#include "qsw/context.hpp"
#include "qsw/jacobi.hpp"

namespace qsw {

// A point of sigma(J*) = -q^Z/t  u  {0}  u  q^{Z+}, excluding the
// accumulation point 0 (never part of the point spectrum).
struct SpectralPoint {
  enum class Kind { Pos, Neg };
  Kind kind;
  long index;      // n >= 0 for Pos (value q^n), r in Z for Neg (value -q^r/t)
  double value;
  double norm_sq;  // ||psi(value)||^2 from the closed forms
};

// ||psi(q^n)||^2 = (q;q)_n q^{-n} (-tq,-1/t,q;q)_inf
double norm_sq_pos(const QContext& ctx, double t, long n);

// ||psi(-q^r/t)||^2 = (-q/t;q)_r q^{-r} (-t,q,q;q)_inf
double norm_sq_neg(const QContext& ctx, double t, long r);

std::vector<SpectralPoint> spectrum_points(const QContext& ctx, double t,
                                           long nmax, long rmin, long rmax);

// res_{z=xi} 1/[psi(z),Psi(z)] in closed form
double residue_inv_wronskian(const QContext& ctx, double t, const SpectralPoint& xi);

// Orthogonality-relation residuals (absolute, against the closed-form
// targets).  Each sums over [window.first, window.second] and throws
// WindowError when a boundary summand is not negligible.
double verify_OR_Sn(const QContext& ctx, double t, long n, long m,
                    std::pair<int, int> window);
double verify_OR_Mr(const QContext& ctx, double t, long r, long s,
                    std::pair<int, int> window);
double verify_OR_MS(const QContext& ctx, double t, long n, long r,
                    std::pair<int, int> window);

struct ExpandResult {
  std::vector<SpectralPoint> points;
  std::vector<double> coeffs;  // <v, psi(xi)> / ||psi(xi)||^2, same order
  double reconstruction_error;
  double parseval_defect;
};

// Expansion of a finitely supported real sequence in the eigenbasis
// {psi(q^n)}_{n<=nmax} u {psi(-q^r/t)}_{rmin<=r<=rmax}, evaluated over
// [window.first, window.second].
ExpandResult expand(const QContext& ctx, double t, const Sequence& v, long nmax,
                    long rmin, long rmax, std::pair<int, int> window);

// one JSON verification report row: {relation, indices, residual, target, window}
std::string or_report_json(const std::string& relation, long i, long j,
                           double residual, double target,
                           std::pair<int, int> window);

}  // namespace qsw

#endif
