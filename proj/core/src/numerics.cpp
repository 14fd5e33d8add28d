#include "wgarch/numerics.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>

namespace wgarch::numerics {

double exp_neg_remainder(double x) {
    if (std::abs(x) >= 0.5) {
        return x + std::expm1(-x);
    }
    // sum_{k>=2} (-x)^k / k!
    double term = x * x / 2.0;
    double sum = 0.0;
    for (int k = 2; k < 40 && term != 0.0; ++k) {
        sum += term;
        term *= -x / (k + 1);
    }
    return sum;
}

double expm1_minus_linear(double y) {
    if (std::abs(y) >= 0.5) {
        return std::expm1(y) - y;
    }
    double term = y * y / 2.0;
    double sum = 0.0;
    for (int k = 2; k < 40 && term != 0.0; ++k) {
        sum += term;
        term *= y / (k + 1);
    }
    return sum;
}

double log1m_plus_linear(double q) {
    if (q >= 0.1) {
        return std::log1p(-q) + q;
    }
    // -sum_{k>=2} q^k / k
    double power = q * q;
    double sum = 0.0;
    for (int k = 2; k < 60 && power != 0.0; ++k) {
        sum -= power / k;
        power *= q;
    }
    return sum;
}

double aggregation_gap(double lambda, double n) {
    const double q = 1.0 - lambda;
    const double y = n * std::log(lambda);
    return n * log1m_plus_linear(q) + expm1_minus_linear(y);
}

double beta_feasibility_core(double x) {
    if (x >= 1.0) {
        const double e1 = std::exp(-x);
        return 3.0 * x * e1 - 2.0 * e1 + 2.5 * e1 * e1 - 0.5;
    }
    // sum_{k>=2} (-1)^k (2.5 * 2^k - 3k - 2) x^k / k!
    double sum = 0.0;
    double xk_over_fact = x * x / 2.0;  // x^k / k!
    double two_k = 4.0;
    for (int k = 2; k < 60; ++k) {
        const double coeff = 2.5 * two_k - 3.0 * k - 2.0;
        const double term = (k % 2 == 0 ? 1.0 : -1.0) * coeff * xk_over_fact;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        xk_over_fact *= x / (k + 1);
        two_k *= 2.0;
    }
    return sum;
}

std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi, std::uintmax_t max_iterations, int bits) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi)) return std::nullopt;
    if (flo == 0.0) return RootResult{lo, 0};
    if (fhi == 0.0) return RootResult{hi, 0};
    if ((flo < 0.0) == (fhi < 0.0)) return std::nullopt;

    std::uintmax_t iterations = max_iterations;
    try {
        const auto [a, b] = boost::math::tools::toms748_solve(
            f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(bits), iterations);
        if (iterations >= max_iterations) return std::nullopt;
        return RootResult{0.5 * (a + b), iterations};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace wgarch::numerics
