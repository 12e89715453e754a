#ifndef QSW_QUADRATURE_HPP
#define QSW_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qsw {

// Gauss-Legendre rule on [-1, 1]; nodes ascending.  Cached per n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int n);

// integral of f over [a, b] with an n-point Gauss-Legendre rule
double integrate(const std::function<double(double)>& f, double a, double b,
                 int n);

}  // namespace qsw

#endif
