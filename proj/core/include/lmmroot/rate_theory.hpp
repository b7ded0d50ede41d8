#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/history.hpp"
#include "lmmroot/scalar.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lmmroot {

/// p^s - sum_{k<s} p^k (d + sigma_k), stored by ascending power.
///
/// Its largest real root is the convergence order of an s-step method that
/// uses d derivatives per point, with sigma_k = 1 where the value at history
/// point k enters the interpolation.
class RatePolynomial {
public:
    /// Validates the domain: s >= 1, d >= 0, sigma of length s with
    /// sigma[s-1] = 1, and at least two interpolated data.
    RatePolynomial(int s, int d, std::vector<int> sigma);

    static RatePolynomial full(int s, int d) { return {s, d, std::vector<int>(static_cast<std::size_t>(s), 1)}; }

    int s() const noexcept { return s_; }
    int d() const noexcept { return d_; }
    const std::vector<int>& sigma() const noexcept { return sigma_; }
    /// Ascending-power coefficients, degree s.
    const std::vector<long long>& coefficients() const noexcept { return coeffs_; }

    template <Real T>
    T operator()(const T& p) const {
        T r = T(coeffs_.back());
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;) r = r * p + T(coeffs_[k]);
        return r;
    }

    /// Coefficients of (p - 1) times this polynomial; for the all-ones mask
    /// this collapses to p^{s+1} - (d+2) p^s + (d+1).
    std::vector<long long> times_p_minus_one() const;

private:
    int s_;
    int d_;
    std::vector<int> sigma_;
    std::vector<long long> coeffs_;
};

/// Largest real root of the rate polynomial, by bisection on (1, d + 2).
template <Real T>
T predicted_rate(const RatePolynomial& poly) {
    T lo = T(1) + T(1e-12);
    T hi = T(poly.d() + 2);
    if (!(poly(lo) < 0) || !(poly(hi) > 0)) {
        throw Error(Errc::invalid_family, "rate polynomial has no sign change on (1, d+2)");
    }
    for (int i = 0; i < 200; ++i) {
        T mid = (lo + hi) / 2;
        if (poly(mid) > 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return (lo + hi) / 2;
}

template <Real T>
T predicted_rate(int s, int d, std::span<const int> sigma) {
    return predicted_rate<T>(RatePolynomial(s, d, std::vector<int>(sigma.begin(), sigma.end())));
}

/// Full-mask order for (s, d).
double predicted_rate(int s, int d);

enum class RateFamily { full, derivative_free, adams_bashforth };

struct RateCell {
    int s = 0;
    int d = 0;
    std::optional<double> value;  ///< empty where the method is undefined
};

/// Predicted orders for s = 1..s_max. `full` spans d = d_min..d_max; the two
/// single-column families ignore d (derivative-free uses d = 0, Adams-Bashforth
/// d = 1 with only the newest value).
std::vector<RateCell> rate_table(RateFamily family, int s_max, int d_min = 1, int d_max = 4);

/// Rounds half away from zero to `decimals` places and prints the result with
/// trailing zeros (and a bare trailing point) stripped.
std::string round_half_away(double value, int decimals);

/// p^(1/w), w = function evaluations per step.
template <Real T>
T efficiency_index(const T& p, int w) {
    if (w < 1) throw Error(Errc::invalid_argument, "evaluations per step must be positive");
    using std::pow;
    return pow(p, T(1) / T(w));
}

template <Real T>
struct RateEstimate {
    std::vector<T> per_step;  ///< p_l for each usable triple of errors
    T limit{};                ///< last usable estimate
    bool settled = false;     ///< last two estimates differ by less than 0.05
};

/// Order estimates p_l = log(e_{l+1}/e_l) / log(e_l/e_{l-1}) from a sequence of
/// absolute errors. The sequence is cut at the first error that is non-finite
/// or at most `noise_floor`; ratios that are not finite are skipped.
template <Real T>
RateEstimate<T> estimate_rate_from_errors(std::span<const T> errors, const T& noise_floor = T(0)) {
    using std::log;
    std::vector<T> e;
    for (const auto& v : errors) {
        if (!is_finite(v) || v <= noise_floor) break;
        e.push_back(v);
    }
    if (e.size() < 3) throw Error(Errc::too_few_iterates, "need three errors above the noise floor");
    RateEstimate<T> out;
    for (std::size_t l = 1; l + 1 < e.size(); ++l) {
        const T num = log(e[l + 1] / e[l]);
        const T den = log(e[l] / e[l - 1]);
        if (den == 0) continue;
        const T p = num / den;
        if (is_finite(p)) out.per_step.push_back(p);
    }
    if (out.per_step.empty()) throw Error(Errc::too_few_iterates, "no usable error triple");
    out.limit = out.per_step.back();
    if (out.per_step.size() >= 2) {
        using std::abs;
        out.settled = abs(out.per_step.back() - out.per_step[out.per_step.size() - 2]) < T(0.05);
    }
    return out;
}

/// Rate estimates from iterates against a known root. Needs four iterates.
template <Real T>
RateEstimate<T> estimate_rate(const IterateHistory<T>& history, const T& root, const T& noise_floor = T(0)) {
    if (history.size() < 4) throw Error(Errc::too_few_iterates, "rate estimation needs at least four iterates");
    using std::abs;
    std::vector<T> errors;
    errors.reserve(history.size());
    for (const auto& r : history.entries()) errors.push_back(abs(r.x - root));
    return estimate_rate_from_errors<T>(errors, noise_floor);
}

}  // namespace lmmroot
