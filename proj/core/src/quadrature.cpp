#include "retpot/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace retpot {

void validate_spec(const QuadratureSpec& spec) {
    if (spec.n_radial < 4) throw std::invalid_argument("quadrature: n_radial must be >= 4");
    if (spec.n_polar < 4) throw std::invalid_argument("quadrature: n_polar must be >= 4");
    if (spec.n_azimuth < 8) throw std::invalid_argument("quadrature: n_azimuth must be >= 8");
    if (spec.n_regular < 8) throw std::invalid_argument("quadrature: n_regular must be >= 8");
    if (!(spec.fd_step > 0.0)) throw std::invalid_argument("quadrature: fd_step must be > 0");
}

QuadratureSpec refined(const QuadratureSpec& spec, int levels) {
    QuadratureSpec out = spec;
    for (int i = 0; i < levels; ++i) {
        out.n_radial *= 2;
        out.n_polar *= 2;
        out.n_azimuth *= 2;
        out.n_regular *= 2;
        out.fd_step *= 0.5;
    }
    return out;
}

namespace {

// Newton iteration on the Legendre polynomial, symmetric node pairs.
GaussLegendre build_gauss_legendre(int n) {
    GaussLegendre rule;
    rule.node.resize(n);
    rule.weight.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_n(x) and its derivative.
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.node[i] = -x;
        rule.weight[i] = w;
        rule.node[n - 1 - i] = x;
        rule.weight[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.node[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_gauss_legendre(n)).first;
    }
    return it->second;
}

}  // namespace retpot
