#ifndef QSW_QSERIES_HPP
#define QSW_QSERIES_HPP

#include <complex>

#include "qsw/context.hpp"

namespace qsw {

// (a;q)_n.  Negative n through the reciprocal extension
// (a;q)_{-m} = 1/(a q^{-m};q)_m; throws PoleError when a factor vanishes.
Complex qpoch_finite(const QContext& ctx, Complex a, long n);
double qpoch_finite(const QContext& ctx, double a, long n);

// (a;q)_inf, truncated once the factors are within ctx.tol of 1.
Complex qpoch_inf(const QContext& ctx, Complex a);
double qpoch_inf(const QContext& ctx, double a);

// log|(a;q)_n| plus sign, for real a and any integer n.  Used where the
// plain product would over/underflow.
std::pair<double, double> log_qpoch_finite(const QContext& ctx, double a, long n);

// (q;q)_n
double qq_n(const QContext& ctx, long n);

// [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}); 0 outside 0 <= k <= n.
double qbinomial(const QContext& ctx, long n, long k);

// 1phi1(a;0;q,y) = sum_n (a;q)_n / (q;q)_n (-1)^n q^(n(n-1)/2) y^n.
// Entire in y.  Terminates exactly when a = q^{-m}.
Complex phi11(const QContext& ctx, Complex a, Complex y);

// 0phi1(-;b;q,z) = sum_n q^(n(n-1)) z^n / ((q;q)_n (b;q)_n).
// Throws PoleError when a (b;q)_n factor vanishes.
Complex phi01(const QContext& ctx, Complex b, Complex z);

// (-tq,-1/t,q;q)_inf, the probability normalization of the lattice measure;
// equals the bilateral theta sum  sum_k t^k q^(k(k+1)/2).
double triple_product_norm(const QContext& ctx, double t);

}  // namespace qsw

#endif
