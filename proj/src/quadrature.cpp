#include "framesmith/quadrature.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace framesmith {

namespace {

// Kronrod abscissae (descending, last is 0) and weights; Gauss weights for
// the odd-indexed abscissae. Values as in QUADPACK's qk15.
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 5> kGl10x = {0.1488743389816312108848260, 0.4333953941292471907992659,
                                          0.6794095682990244062343274, 0.8650633666889845107320967,
                                          0.9739065285171717200779640};
constexpr std::array<double, 5> kGl10w = {0.2955242247147528701738930, 0.2692667193099963550912269,
                                          0.2190863625159820439955349, 0.1494513491505805931457763,
                                          0.0666713443086881375935688};

struct Panel {
    Complex kronrod;
    double error;
};

Panel gk15(const std::function<Complex(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const Complex fc = f(c);
    Complex k = fc * kWgk[7], g = fc * kWg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const Complex s = f(c - dx) + f(c + dx);
        k += s * kWgk[i];
        if (i % 2 == 1) g += s * kWg[i / 2];
    }
    return {k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult adaptive_gk15(const std::function<Complex(double)>& f, double lo, double hi, double abs_tol,
                               int max_depth) {
    QuadratureResult out;
    if (!(hi > lo)) return out;
    // Depth-first bisection; each child inherits half the parent's tolerance.
    struct Item {
        double lo, hi, tol;
        int depth;
    };
    std::vector<Item> stack{{lo, hi, abs_tol, 0}};
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const Panel p = gk15(f, it.lo, it.hi);
        out.evaluations += 15;
        if (p.error <= it.tol || it.depth >= max_depth) {
            out.value += p.kronrod;
            out.error += p.error;
            continue;
        }
        const double mid = 0.5 * (it.lo + it.hi);
        stack.push_back({mid, it.hi, 0.5 * it.tol, it.depth + 1});
        stack.push_back({it.lo, mid, 0.5 * it.tol, it.depth + 1});
    }
    return out;
}

QuadratureResult integrate_sqrt_endpoints(const std::function<Complex(double)>& g, double lo, double hi,
                                          double abs_tol) {
    QuadratureResult out;
    if (!(hi > lo)) return out;
    const double mid = 0.5 * (lo + hi);
    const double span = std::sqrt(mid - lo);
    auto left = [&](double t) { return g(lo + t * t) * (2 * t); };
    auto right = [&](double t) { return g(hi - t * t) * (2 * t); };
    const auto a = adaptive_gk15(left, 0, span, 0.5 * abs_tol);
    const auto b = adaptive_gk15(right, 0, std::sqrt(hi - mid), 0.5 * abs_tol);
    return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
}

Complex linear_times_phase(double alpha, double beta, double omega, double lo, double hi) {
    if (std::abs(omega) * (hi - lo) < 0.5) {
        // Low frequency: the antiderivative cancels badly; 10-point Gauss is
        // exact to rounding for this analytic, slowly varying integrand.
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        Complex sum;
        for (int i = 0; i < 5; ++i)
            for (double s : {-1.0, 1.0}) {
                const double q = c + s * h * kGl10x[i];
                sum += kGl10w[i] * (alpha * q + beta) * std::polar(1.0, omega * q);
            }
        return sum * h;
    }
    const Complex iw(0, omega);
    auto antiderivative = [&](double q) {
        return std::polar(1.0, omega * q) * ((alpha * q + beta) / iw + alpha / (omega * omega));
    };
    return antiderivative(hi) - antiderivative(lo);
}

Rule composite_gauss(double lo, double hi, int panels) {
    Rule r;
    r.nodes.reserve(10 * panels);
    r.weights.reserve(10 * panels);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * width, h = 0.5 * width;
        for (int i = 4; i >= 0; --i) {
            r.nodes.push_back(c - h * kGl10x[i]);
            r.weights.push_back(h * kGl10w[i]);
        }
        for (int i = 0; i < 5; ++i) {
            r.nodes.push_back(c + h * kGl10x[i]);
            r.weights.push_back(h * kGl10w[i]);
        }
    }
    return r;
}

}  // namespace framesmith
