#ifndef QSW_JACOBI_HPP
#define QSW_JACOBI_HPP

#include <iosfwd>
#include <vector>

#include "qsw/context.hpp"
#include "qsw/eigenfunctions.hpp"

namespace qsw {

// The doubly infinite Jacobi operator J_t on l^2(Z),
//   J e_k = a_k e_{k+1} + b_k e_k + a_{k-1} e_{k-1},
//   a_k = 1/sqrt(t q^{k+1}),  b_k = -1/(t q^k).
struct JacobiOperator {
  double t;
  QContext ctx;

  JacobiOperator(double t_, QContext ctx_) : t(t_), ctx(std::move(ctx_)) {
    if (!(t > 0.0)) throw DomainError("JacobiOperator: t must be positive");
  }

  double a(int k) const;
  double b(int k) const;
};

// A window of a doubly infinite sequence; index k runs kmin..kmin+size-1.
struct Sequence {
  int kmin = 0;
  std::vector<Complex> v;

  int kmax() const { return kmin + static_cast<int>(v.size()) - 1; }
  Complex at(int k) const {
    return (k < kmin || k > kmax()) ? Complex(0.0) : v[size_t(k - kmin)];
  }
  Complex& ref(int k) { return v[size_t(k - kmin)]; }
};

enum class EigenKind { Psi, PsiCap };

// Window of values of a formal eigenvector of J (psi or Psi) at z.
struct EigenSequence {
  Complex z;
  EigenKind kind;
  Sequence seq;
};

// (J v)_k on [v.kmin, v.kmax()], treating v as zero-padded outside.
Sequence apply(const JacobiOperator& op, const Sequence& v);

// psi_k(z) = t^{k/2} q^{k(k+1)/4} phi_z(t q^k); l^2 as k -> +infinity.
EigenSequence psi_seq(const JacobiOperator& op, Complex z, int kmin, int kmax);

// Psi_k(z) = t^{k/2} q^{k(k+1)/4} z^k 1phi1(1/z;0;q,-q^{1-k}/(tz));
// the branch-free reduction of the paper's x^{ln z/ln q} normalization;
// l^2 as k -> -infinity.  z must be nonzero.
EigenSequence psicap_seq(const JacobiOperator& op, Complex z, int kmin, int kmax);

// [psi(z),Psi(z)]_k = a_k (psi_{k+1} Psi_k - psi_k Psi_{k+1}); k-independent.
Complex wronskian(const JacobiOperator& op, Complex z, int k = 0);

// closed form -z(-tzq, -1/(tz), 1/z; q)_inf
Complex wronskian_closed(const QContext& ctx, double t, Complex z);

// Green function G_z(j,l) = psi_max Psi_min / W(z); symmetric in (j,l).
// Throws SpectralPointError when W(z) is numerically zero.
Complex green(const JacobiOperator& op, Complex z, int j, int l);

// u = (J* - z)^{-1} v for finitely supported v, evaluated on
// [kmin, kmax]; requires Im z != 0.
Sequence resolvent_apply(const JacobiOperator& op, Complex z, const Sequence& v,
                         int kmin, int kmax);

// Symmetric tridiagonal section of J over indices [kmin, kmax].
struct FiniteSection {
  int kmin;
  int kmax;
  std::vector<double> diag;     // b_k
  std::vector<double> offdiag;  // a_k, size dim-1

  int dim() const { return kmax - kmin + 1; }
};

FiniteSection finite_section(const JacobiOperator& op, int kmin, int kmax);

// Eigenvalues of the section, ascending (Sturm bisection in long double;
// deterministic for fixed input).
std::vector<double> finite_section_spectrum(const JacobiOperator& op, int kmin,
                                            int kmax);

// Unit eigenvector of the section for the eigenvalue nearest lambda
// (inverse iteration).
std::vector<double> finite_section_eigenvector(const JacobiOperator& op,
                                               int kmin, int kmax,
                                               double lambda);

// CSV rows "window,index,eigenvalue" for each symmetric window [-w, w].
void write_section_csv(std::ostream& os, const JacobiOperator& op,
                       const std::vector<int>& windows);

}  // namespace qsw

#endif
