#ifndef QSW_EIGENFUNCTIONS_HPP
#define QSW_EIGENFUNCTIONS_HPP

#include <functional>

#include "qsw/context.hpp"
#include "qsw/qseries.hpp"

namespace qsw {

// Eigenfunctions of (Lf)(x) = f(xq) - f(x)/x + f(x/q)/x.

// phi_z(x) = 1phi1(1/z;0;q,-xzq); the z = 0 case is the 0phi1 limit.
// Entire in both x and z; L phi_z = z phi_z.
Complex phi_z(const QContext& ctx, Complex z, Complex x);

// Phi_z(x) = x^(ln z/ln q) 1phi1(1/z;0;q,-q/(xz)), principal branch,
// defined for x > 0 and z off the cut (-inf, 0].
Complex phi_cap_z(const QContext& ctx, Complex z, double x);

// phi_0(x) = sum_n (-1)^n q^(n^2) x^n / (q;q)_n, the entire
// Rogers-Ramanujan function.
Complex rogers_ramanujan(const QContext& ctx, Complex x);
double rogers_ramanujan(const QContext& ctx, double x);

// Stieltjes-Wigert polynomial S_n(x;q).
Complex sw_polynomial(const QContext& ctx, long n, Complex x);
double sw_polynomial(const QContext& ctx, long n, double x);

// M_r^{(t)}(x;q) = phi_{-q^r/t}(x)/(q;q)_inf, the q-Bessel eigenfunctions
// of the negative spectrum: L M_r = -(q^r/t) M_r.
double qbessel_M(const QContext& ctx, long r, double t, double x);

// Jackson's second q-Bessel function J^(2)_nu(z;q), integer order,
// via the 1phi1 form (z/2)^nu/(q;q)_inf 1phi1(-z^2/4;0;q,q^(nu+1)).
double jackson_J2(const QContext& ctx, long nu, double zarg);

// q-Fibonacci sequence F_0 = 0, F_1 = 1, F_{k+1} = F_k - t q^{k-1} F_{k-1};
// F_k -> phi_0(t) as k -> infinity.
double qfibonacci(const QContext& ctx, double t, long k);

// |f(xq) - f(x)/x + f(x/q)/x - z f(x)|
double check_eigen_residual(const QContext& ctx,
                            const std::function<Complex(double)>& f, Complex z,
                            double x);

// Residual of the two-sided 1phi1 identity
// (-c)^(m+k) 1phi1(-cq^-m;0;q,q^(1+m+k)) = q^(m(m+k)) 1phi1(-cq^-m;0;q,q^(1-m-k)).
double proportionality_check(const QContext& ctx, Complex c, long m, long k);

}  // namespace qsw

#endif
