#ifndef QSW_CONTEXT_HPP
#define QSW_CONTEXT_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsw {

using Complex = std::complex<double>;

struct QswError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a factor of a q-Pochhammer product with negative index vanished
struct PoleError : QswError {
  using QswError::QswError;
};

// a basic hypergeometric series did not converge within ctx.max_terms
struct MaxTermsError : QswError {
  using QswError::QswError;
};

// spectral parameter on the branch cut (-inf, 0] of Phi_z
struct BranchError : QswError {
  using QswError::QswError;
};

// a bilateral sum was truncated with boundary terms above tolerance
struct WindowError : QswError {
  using QswError::QswError;
};

struct DomainError : QswError {
  using QswError::QswError;
};

// z = 0 passed where the Psi sequence is undefined
struct ZeroSpectralParam : QswError {
  using QswError::QswError;
};

// Green function / resolvent requested at (or too close to) the spectrum
struct SpectralPointError : QswError {
  using QswError::QswError;
};

struct ZeroWeightError : QswError {
  using QswError::QswError;
};

// Base q plus the numeric policy threaded through every computation.
struct QContext {
  double q;
  double tol = 1e-14;
  int max_terms = 500;
  std::pair<int, int> window = {-80, 80};

  explicit QContext(double q_, double tol_ = 1e-14, int max_terms_ = 500,
                    std::pair<int, int> window_ = {-80, 80})
      : q(q_), tol(tol_), max_terms(max_terms_), window(window_) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("QContext: q must be in (0,1)");
    if (!(tol > 0.0)) throw DomainError("QContext: tol must be positive");
    if (max_terms < 1) throw DomainError("QContext: max_terms must be >= 1");
    if (!(window.first < 0 && 0 < window.second))
      throw DomainError("QContext: window must straddle 0");
  }

  double log_q() const { return std::log(q); }
};

inline void require_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw DomainError(std::string(what) + ": non-finite input");
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite input");
}

}  // namespace qsw

#endif
