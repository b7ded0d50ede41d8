#pragma once

// Test-side reference computations, written independently of the library:
// interpolation is set up in the monomial basis and solved by plain Gaussian
// elimination, and LMM weights are read off the interpolant instead of being
// solved from consistency/order conditions.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

struct Datum {
    double y;
    std::optional<double> x;      // value condition H(y) = x
    std::optional<double> slope;  // slope condition H'(y) = slope
};

/// Gaussian elimination with partial pivoting in long double.
inline std::vector<long double> gauss(std::vector<std::vector<long double>> m, std::vector<long double> r) {
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(m[i][k]) > std::fabs(m[p][k])) p = i;
        }
        if (m[p][k] == 0) throw std::runtime_error("oracle: singular system");
        std::swap(m[p], m[k]);
        std::swap(r[p], r[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            r[i] -= f * r[k];
        }
    }
    std::vector<long double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        long double acc = r[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= m[k][j] * x[j];
        x[k] = acc / m[k][k];
    }
    return x;
}

/// Monomial coefficients c_0..c_N of the polynomial meeting every condition.
inline std::vector<long double> monomial_interpolant(const std::vector<Datum>& data) {
    std::vector<std::vector<long double>> rows;
    std::vector<long double> rhs;
    std::size_t n = 0;
    for (const auto& d : data) n += (d.x ? 1 : 0) + (d.slope ? 1 : 0);
    for (const auto& d : data) {
        const long double y = d.y;
        if (d.x) {
            std::vector<long double> row(n);
            long double p = 1;
            for (std::size_t j = 0; j < n; ++j, p *= y) row[j] = p;
            rows.push_back(row);
            rhs.push_back(*d.x);
        }
        if (d.slope) {
            std::vector<long double> row(n, 0);
            long double p = 1;
            for (std::size_t j = 1; j < n; ++j, p *= y) row[j] = static_cast<long double>(j) * p;
            rows.push_back(row);
            rhs.push_back(*d.slope);
        }
    }
    return gauss(rows, rhs);
}

/// Interpolant evaluated at y = 0, i.e. its constant coefficient.
inline double root_estimate(const std::vector<Datum>& data) {
    return static_cast<double>(monomial_interpolant(data)[0]);
}

struct Weights {
    std::vector<double> a;
    std::vector<double> b;
};

/// LMM coefficients read off the interpolant. With the newest function value
/// normalised to 1 (so h = -1) and abscissae y_k = q_k, the root estimate is
/// linear in the data: H(0) = sum w_k x_k + sum v_k F_k, so a_k = -w_k and
/// b_k = -v_k. `sigma[k]` keeps the value at point k, `deriv[k]` its slope.
inline Weights lmm_weights(const std::vector<double>& q, const std::vector<bool>& sigma,
                           const std::vector<bool>& deriv) {
    const std::size_t s = sigma.size();
    auto ratio = [&](std::size_t k) { return k + 1 == s ? 1.0 : q[k]; };
    auto estimate = [&](std::size_t unit, bool unit_is_value) {
        std::vector<Datum> data;
        for (std::size_t k = 0; k < s; ++k) {
            if (!sigma[k] && !deriv[k]) continue;
            Datum d{ratio(k), std::nullopt, std::nullopt};
            if (sigma[k]) d.x = (unit_is_value && unit == k) ? 1.0 : 0.0;
            if (deriv[k]) d.slope = (!unit_is_value && unit == k) ? 1.0 : 0.0;
            data.push_back(d);
        }
        return root_estimate(data);
    };
    Weights w{std::vector<double>(s, 0.0), std::vector<double>(s, 0.0)};
    for (std::size_t k = 0; k < s; ++k) {
        if (sigma[k]) w.a[k] = -estimate(k, true);
        if (deriv[k]) w.b[k] = -estimate(k, false);
    }
    return w;
}

}  // namespace oracle
