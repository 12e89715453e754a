#ifndef QSW_DETAIL_LATTICE_EVAL_HPP
#define QSW_DETAIL_LATTICE_EVAL_HPP

#include <cmath>
#include <vector>

#include "qsw/context.hpp"

namespace qsw::detail {

// Stable evaluation of the eigenvector sequences on the lattice x = t q^k.
//
//   psi_k(z) = t^{k/2} q^{k(k+1)/4} phi_z(t q^k)
//
// evaluated at the spectral points z = q^n and z = -q^r/t, where the naive
// series loses ~ (k^2/4) log10(1/q) digits as k -> -infinity.  Strategy per
// index: pick whichever of the two series representations (the phi_z form,
// good for k >> 0, or the proportional Psi form, good for k << 0) has the
// smaller cancellation estimate; where both exceed the budget (only happens
// for r >> 0, in a band around k ~ -r) run the three-term recurrence inward
// from both sides.  Prefactors are combined in log space so neither factor
// over- nor underflows on its own.

// digits-lost budget: about 3 decimal digits
double cancel_budget(const QContext& ctx);

// psi_k(q^n) for k in [kmin, kmax], via the polynomial representation
// phi_{q^n} = (q;q)_n S_n (stable at every k).
std::vector<double> psi_pos_window(const QContext& ctx, double t, long n,
                                   int kmin, int kmax);

// psi_k(-q^r/t) for k in [kmin, kmax].
std::vector<double> psi_neg_window(const QContext& ctx, double t, long r,
                                   int kmin, int kmax);

// phi_{-q^r/t}(t q^k)  (the psi value with the lattice prefactor removed,
// combined in log space; safe for the k ranges used at desk scale).
double phi_neg_lattice(const QContext& ctx, double t, long r, int k);

// log |psi_k(-q^r/t)| cancellation estimates of the two series routes
double L_direct_neg(const QContext& ctx, double t, long r, int k);
double L_low_neg(const QContext& ctx, double t, long r, int k);

}  // namespace qsw::detail

#endif
