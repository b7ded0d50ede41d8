#include "lmmroot/rate_theory.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace lmmroot {

RatePolynomial::RatePolynomial(int s, int d, std::vector<int> sigma)
    : s_(s), d_(d), sigma_(std::move(sigma)) {
    if (s < 1) throw Error(Errc::invalid_family, "s must be at least 1");
    if (d < 0) throw Error(Errc::invalid_family, "d must be non-negative");
    if (sigma_.size() != static_cast<std::size_t>(s)) {
        throw Error(Errc::invalid_family, "sigma must have length s");
    }
    int ones = 0;
    for (int v : sigma_) {
        if (v != 0 && v != 1) throw Error(Errc::invalid_family, "sigma entries are 0 or 1");
        ones += v;
    }
    if (sigma_.back() != 1) throw Error(Errc::invalid_family, "the newest value must be interpolated");
    if (ones + s * d < 2) throw Error(Errc::invalid_family, "fewer than two interpolation data");

    coeffs_.assign(static_cast<std::size_t>(s) + 1, 0);
    for (int k = 0; k < s; ++k) coeffs_[static_cast<std::size_t>(k)] = -(d + sigma_[static_cast<std::size_t>(k)]);
    coeffs_.back() = 1;
}

std::vector<long long> RatePolynomial::times_p_minus_one() const {
    std::vector<long long> out(coeffs_.size() + 1, 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        out[k + 1] += coeffs_[k];
        out[k] -= coeffs_[k];
    }
    return out;
}

double predicted_rate(int s, int d) {
    return predicted_rate<double>(RatePolynomial::full(s, d));
}

std::vector<RateCell> rate_table(RateFamily family, int s_max, int d_min, int d_max) {
    if (s_max < 1) throw Error(Errc::invalid_argument, "s_max must be at least 1");
    std::vector<RateCell> cells;
    auto cell = [](int s, int d, std::vector<int> sigma) {
        RateCell c{s, d, std::nullopt};
        try {
            c.value = predicted_rate<double>(RatePolynomial(s, d, std::move(sigma)));
        } catch (const Error&) {
            // undefined method, reported as n/a
        }
        return c;
    };
    switch (family) {
        case RateFamily::full:
            if (d_min < 0 || d_max < d_min) throw Error(Errc::invalid_argument, "bad derivative range");
            for (int s = 1; s <= s_max; ++s) {
                for (int d = d_min; d <= d_max; ++d) {
                    cells.push_back(cell(s, d, std::vector<int>(static_cast<std::size_t>(s), 1)));
                }
            }
            break;
        case RateFamily::derivative_free:
            for (int s = 1; s <= s_max; ++s) cells.push_back(cell(s, 0, std::vector<int>(static_cast<std::size_t>(s), 1)));
            break;
        case RateFamily::adams_bashforth:
            for (int s = 1; s <= s_max; ++s) {
                std::vector<int> sigma(static_cast<std::size_t>(s), 0);
                sigma.back() = 1;
                cells.push_back(cell(s, 1, std::move(sigma)));
            }
            break;
    }
    return cells;
}

std::string round_half_away(double value, int decimals) {
    if (decimals < 0 || decimals > 15) throw Error(Errc::invalid_argument, "decimals out of range");
    if (!std::isfinite(value)) return format_scalar(value, 17);
    const double scale = std::pow(10.0, decimals);
    const double rounded = std::round(value * scale) / scale;  // std::round ties away from zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    std::string out(buf);
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    if (out == "-0") out = "0";
    return out;
}

}  // namespace lmmroot
