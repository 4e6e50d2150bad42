#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace framesmith {

using Complex = std::complex<double>;

struct QuadratureResult {
    Complex value;
    double error = 0;
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 with bisection until the Kronrod-Gauss
/// difference of every panel is below its share of `abs_tol`.
QuadratureResult adaptive_gk15(const std::function<Complex(double)>& f, double lo, double hi, double abs_tol,
                               int max_depth = 40);

/// Integral of g over [lo, hi] where g may behave like sqrt(q - lo) or
/// sqrt(hi - q) at the ends. Each half is mapped by q = lo + t^2 or
/// q = hi - t^2, which turns the endpoint singularity into a smooth factor.
QuadratureResult integrate_sqrt_endpoints(const std::function<Complex(double)>& g, double lo, double hi,
                                          double abs_tol);

/// Closed form of the integral of (alpha q + beta) e^{i omega q} over [lo, hi].
Complex linear_times_phase(double alpha, double beta, double omega, double lo, double hi);

/// Nodes and weights of a composite 10-point Gauss-Legendre rule.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Rule composite_gauss(double lo, double hi, int panels);

}  // namespace framesmith
