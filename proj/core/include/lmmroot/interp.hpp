#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/history.hpp"
#include "lmmroot/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace lmmroot {

/// Sample of the inverse function: x = f^{-1}(y), optionally with the inverse
/// slope dx/dy = 1/f'(x).
template <Real T>
struct InverseNode {
    T y;
    T x;
    std::optional<T> slope;
};

/// Two abscissae closer than 4 eps max(|u|, |v|) are treated as one.
template <Real T>
bool coincident(const T& u, const T& v) {
    using std::abs;
    const T scale = std::max(abs(u), abs(v));
    return abs(u - v) <= 4 * machine_epsilon<T>() * scale;
}

/// Polynomial in Newton form over a (possibly repeated) abscissa sequence:
///   H(y) = c0 + c1 (y - z0) + c2 (y - z0)(y - z1) + ...
template <Real T>
class HermiteInterpolant {
public:
    HermiteInterpolant(std::vector<T> abscissae, std::vector<T> coefficients)
        : z_(std::move(abscissae)), c_(std::move(coefficients)) {}

    std::size_t degree() const noexcept { return c_.size() - 1; }
    const std::vector<T>& abscissae() const noexcept { return z_; }
    const std::vector<T>& coefficients() const noexcept { return c_; }

    T operator()(const T& y) const {
        T r = c_.back();
        for (std::size_t j = c_.size() - 1; j-- > 0;) {
            r = r * (y - z_[j]) + c_[j];
        }
        return r;
    }

    T derivative(const T& y) const {
        T p = c_.back();
        T dp = 0;
        for (std::size_t j = c_.size() - 1; j-- > 0;) {
            dp = dp * (y - z_[j]) + p;
            p = p * (y - z_[j]) + c_[j];
        }
        return dp;
    }

private:
    std::vector<T> z_;
    std::vector<T> c_;
};

/// Hermite interpolant of the inverse function through `nodes`: H(y_k) = x_k and,
/// where a slope is given, H'(y_k) = slope_k. Degree = (#values + #slopes) - 1.
template <Real T>
HermiteInterpolant<T> build_inverse_hermite(std::span<const InverseNode<T>> nodes) {
    std::size_t data = 0;
    for (const auto& n : nodes) {
        if (!is_finite(n.y) || !is_finite(n.x) || (n.slope && !is_finite(*n.slope))) {
            throw Error(Errc::invalid_node, "inverse interpolation node is not finite");
        }
        data += n.slope ? 2 : 1;
    }
    if (data < 2) {
        throw Error(Errc::invalid_argument, "inverse interpolation needs at least two data");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (coincident(nodes[i].y, nodes[j].y)) {
                throw Error(Errc::degenerate_nodes, "coincident function values");
            }
        }
    }

    std::vector<T> z;
    std::vector<std::size_t> owner;
    std::vector<T> d;
    z.reserve(data);
    owner.reserve(data);
    d.reserve(data);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const int reps = nodes[k].slope ? 2 : 1;
        for (int r = 0; r < reps; ++r) {
            z.push_back(nodes[k].y);
            owner.push_back(k);
            d.push_back(nodes[k].x);
        }
    }

    // In-place divided-difference table; after column j, d[j] is final.
    const std::size_t n = z.size();
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            if (owner[i] == owner[i - j]) {
                d[i] = *nodes[owner[i]].slope;
            } else {
                d[i] = (d[i] - d[i - 1]) / (z[i] - z[i - j]);
            }
        }
    }
    return HermiteInterpolant<T>(std::move(z), std::move(d));
}

template <Real T>
HermiteInterpolant<T> build_inverse_hermite(const std::vector<InverseNode<T>>& nodes) {
    return build_inverse_hermite(std::span<const InverseNode<T>>(nodes));
}

/// The root estimate H(0).
template <Real T>
T eval_interpolant_at_zero(const HermiteInterpolant<T>& h) {
    return h(T(0));
}

/// Inverse slope 1/f'(x); throws on a zero derivative.
template <Real T>
T inverse_slope(const T& dfx) {
    if (dfx == 0) throw Error(Errc::zero_derivative, "f'(x) = 0");
    return 1 / dfx;
}

/// Per-history-point flags: sigma[k] says a_k is free (else pinned to 0),
/// deriv[k] says 1/f'(x_k) enters the update (else b_k = 0).
struct SigmaMask {
    std::vector<bool> sigma;
    std::vector<bool> deriv;

    static SigmaMask full(std::size_t s) { return {std::vector<bool>(s, true), std::vector<bool>(s, true)}; }

    static SigmaMask derivative_free(std::size_t s) {
        return {std::vector<bool>(s, true), std::vector<bool>(s, false)};
    }

    static SigmaMask adams_bashforth(std::size_t s) {
        std::vector<bool> sigma(s, false);
        if (s > 0) sigma.back() = true;
        return {std::move(sigma), std::vector<bool>(s, true)};
    }

    std::size_t s() const noexcept { return sigma.size(); }

    /// Number of free coefficients = number of interpolated data = N + 1.
    std::size_t unknowns() const noexcept {
        return static_cast<std::size_t>(std::count(sigma.begin(), sigma.end(), true) +
                                        std::count(deriv.begin(), deriv.end(), true));
    }

    void validate() const {
        if (sigma.empty() || sigma.size() != deriv.size()) {
            throw Error(Errc::invalid_family, "sigma and derivative masks must have equal, nonzero length");
        }
        if (!sigma.back()) {
            throw Error(Errc::invalid_family, "the newest value coefficient must be free");
        }
        if (unknowns() < 2) {
            throw Error(Errc::invalid_family, "mask implies interpolation degree below 1");
        }
    }
};

/// Coefficients of x_{n+s} + sum a_k x_{n+k} = h sum b_k F(x_{n+k}).
/// q holds f(x_{n+k}) / f(x_{n+s-1}) for k < s-1 (q_{s-1} = 1 implicitly).
template <Real T>
struct LmmCoefficients {
    std::size_t s = 0;
    std::vector<T> a;
    std::vector<T> b;
    std::vector<T> q;

    /// q_k with the implicit trailing 1.
    T ratio(std::size_t k) const { return k + 1 == s ? T(1) : q[k]; }
};

namespace detail {

template <Real T>
void require_distinct_ratios(std::span<const T> q) {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (coincident(q[i], T(1))) {
            throw Error(Errc::degenerate_ratio, "step ratio q = 1 (repeated function value)");
        }
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (coincident(q[i], q[j])) {
                throw Error(Errc::degenerate_ratio, "coincident step ratios");
            }
        }
    }
}

/// Working type for coefficient systems: double systems are solved in long
/// double, since the monomial order conditions lose several digits to
/// conditioning when step ratios cluster.
template <Real T>
using SolveWork = std::conditional_t<std::is_same_v<T, double>, long double, T>;

/// Dense solve with column equilibration and partial pivoting.
template <typename T>
std::vector<T> solve_dense(std::vector<std::vector<T>> m, std::vector<T> rhs) {
    using std::abs;
    const std::size_t n = rhs.size();
    std::vector<T> colscale(n, T(0));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) colscale[c] = std::max(colscale[c], abs(m[r][c]));
        if (colscale[c] == 0) throw Error(Errc::degenerate_ratio, "singular coefficient system");
        for (std::size_t r = 0; r < n; ++r) m[r][c] /= colscale[c];
    }
    const T tiny = std::numeric_limits<T>::epsilon() * T(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (abs(m[r][k]) > abs(m[piv][k])) piv = r;
        }
        if (abs(m[piv][k]) <= tiny) throw Error(Errc::degenerate_ratio, "singular coefficient system");
        std::swap(m[piv], m[k]);
        std::swap(rhs[piv], rhs[k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const T factor = m[r][k] / m[k][k];
            if (factor == 0) continue;
            for (std::size_t c = k; c < n; ++c) m[r][c] -= factor * m[k][c];
            rhs[r] -= factor * rhs[k];
        }
    }
    std::vector<T> x(n);
    for (std::size_t k = n; k-- > 0;) {
        T acc = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) acc -= m[k][c] * x[c];
        x[k] = acc / m[k][k];
    }
    for (std::size_t c = 0; c < n; ++c) x[c] /= colscale[c];
    return x;
}

}  // namespace detail

/// Closed-form s = 2 coefficients (full mask). Requires q != 1.
template <Real T>
LmmCoefficients<T> lmm_coefficients_s2(const T& q) {
    if (!is_finite(q)) throw Error(Errc::invalid_argument, "non-finite step ratio");
    if (coincident(q, T(1))) {
        throw Error(Errc::degenerate_ratio, "s=2 coefficients need q != 1");
    }
    const T qm1 = q - 1;
    LmmCoefficients<T> c;
    c.s = 2;
    const T a0 = (1 - 3 * q) / (qm1 * qm1 * qm1);
    const T b0 = q / (qm1 * qm1);
    c.a = {a0, -1 - a0};
    c.b = {b0, q * b0};
    c.q = {q};
    return c;
}

/// Closed-form s = 3 coefficients (full mask) for ratios q0, q1 against the
/// newest value. Requires q0, q1 and 1 pairwise distinct.
template <Real T>
LmmCoefficients<T> lmm_coefficients_s3(const T& q0, const T& q1) {
    if (!is_finite(q0) || !is_finite(q1)) throw Error(Errc::invalid_argument, "non-finite step ratio");
    const T qs[] = {q0, q1};
    detail::require_distinct_ratios<T>(qs);

    const T d0 = q0 - 1;
    const T d1 = q1 - 1;
    const T d01 = q0 - q1;
    const T d0_2 = d0 * d0, d1_2 = d1 * d1, d01_2 = d01 * d01;
    const T d0_3 = d0_2 * d0, d1_3 = d1_2 * d1, d01_3 = d01_2 * d01;
    const T q0sq = q0 * q0, q1sq = q1 * q1;

    LmmCoefficients<T> c;
    c.s = 3;
    c.a = {
        q1sq * (q0 * (3 + 3 * q1 - 5 * q0) - q1) / (d0_3 * d01_3),
        q0sq * (q1 * (5 * q1 - 3 * q0 - 3) + q0) / (d1_3 * d01_3),
        q0sq * q1sq * (3 * q1 - q0 * (q1 - 3) - 5) / (d0_3 * d1_3),
    };
    c.b = {
        q0 * q1sq / (d0_2 * d01_2),
        q0sq * q1 / (d01_2 * d1_2),
        q0sq * q1sq / (d0_2 * d1_2),
    };
    c.q = {q0, q1};
    return c;
}

/// Consistency and order residuals of a coefficient set:
/// index 0 is sum(a) + 1, index 1 is sum(a q + b), index m-1 (m >= 2) is
/// sum(q^m a / m + q^(m-1) b).
template <Real T>
std::vector<T> order_residuals(const LmmCoefficients<T>& c, int max_order) {
    using std::pow;
    std::vector<T> out;
    T sum_a = 0;
    for (const auto& a : c.a) sum_a += a;
    out.push_back(sum_a + 1);
    T r1 = 0;
    for (std::size_t k = 0; k < c.s; ++k) r1 += c.a[k] * c.ratio(k) + c.b[k];
    out.push_back(r1);
    for (int m = 2; m <= max_order; ++m) {
        T r = 0;
        for (std::size_t k = 0; k < c.s; ++k) {
            const T qk = c.ratio(k);
            r += pow(qk, m) / m * c.a[k] + pow(qk, m - 1) * c.b[k];
        }
        out.push_back(r);
    }
    return out;
}

/// Solves the consistency rows plus order rows m = 2, 3, ... until the system
/// in the mask's free coefficients is square. Pinned a_k and absent b_k are 0.
template <Real T>
LmmCoefficients<T> solve_lmm_coefficients(std::span<const T> q, const SigmaMask& mask) {
    mask.validate();
    const std::size_t s = mask.s();
    if (q.size() + 1 != s) {
        throw Error(Errc::invalid_argument, "need s-1 step ratios");
    }
    for (const auto& v : q) {
        if (!is_finite(v)) throw Error(Errc::invalid_argument, "non-finite step ratio");
    }
    // Only history points that contribute data constrain the system.
    std::vector<T> used;
    for (std::size_t k = 0; k + 1 < s; ++k) {
        if (mask.sigma[k] || mask.deriv[k]) used.push_back(q[k]);
    }
    detail::require_distinct_ratios<T>(used);

    using W = detail::SolveWork<T>;
    auto ratio = [&](std::size_t k) { return k + 1 == s ? W(1) : W(q[k]); };

    struct Column {
        bool is_a;
        std::size_t k;
    };
    std::vector<Column> cols;
    for (std::size_t k = 0; k < s; ++k) {
        if (mask.sigma[k]) cols.push_back({true, k});
    }
    for (std::size_t k = 0; k < s; ++k) {
        if (mask.deriv[k]) cols.push_back({false, k});
    }
    const std::size_t n = cols.size();

    std::vector<std::vector<W>> m(n, std::vector<W>(n, W(0)));
    std::vector<W> rhs(n, W(0));
    for (std::size_t c = 0; c < n; ++c) {
        const W qk = ratio(cols[c].k);
        // row 0: sum a = -1
        m[0][c] = cols[c].is_a ? W(1) : W(0);
        // row 1: sum a q + b = 0
        m[1][c] = cols[c].is_a ? qk : W(1);
        // rows m = 2..n-1
        W qpow = qk;  // q^(m-1)
        for (std::size_t r = 2; r < n; ++r) {
            const W next = qpow * qk;  // q^m
            m[r][c] = cols[c].is_a ? next / W(static_cast<unsigned>(r)) : qpow;
            qpow = next;
        }
    }
    rhs[0] = W(-1);

        // One step of iterative refinement with the residual in the working type.
    std::vector<W> sol = detail::solve_dense(m, rhs);
    std::vector<W> resid(n);
    for (std::size_t r = 0; r < n; ++r) {
        W acc = rhs[r];
        for (std::size_t c = 0; c < n; ++c) acc -= m[r][c] * sol[c];
        resid[r] = acc;
    }
    const std::vector<W> corr = detail::solve_dense(std::move(m), std::move(resid));
    for (std::size_t c = 0; c < n; ++c) sol[c] += corr[c];

    LmmCoefficients<T> out;
    out.s = s;
    out.a.assign(s, T(0));
    out.b.assign(s, T(0));
    out.q.assign(q.begin(), q.end());
    for (std::size_t c = 0; c < n; ++c) {
        (cols[c].is_a ? out.a : out.b)[cols[c].k] = static_cast<T>(sol[c]);
    }
    return out;
}

template <Real T>
LmmCoefficients<T> solve_lmm_coefficients(const std::vector<T>& q, const SigmaMask& mask) {
    return solve_lmm_coefficients(std::span<const T>(q), mask);
}

/// Step ratios q_k = f_k / f_{s-1} of a history window.
template <Real T>
std::vector<T> step_ratios(std::span<const IterationRecord<T>> window) {
    std::vector<T> q;
    if (window.empty()) return q;
    const T& newest = *window.back().fx;
    if (newest == 0) throw Error(Errc::degenerate_ratio, "newest function value is zero");
    for (std::size_t k = 0; k + 1 < window.size(); ++k) q.push_back(*window[k].fx / newest);
    return q;
}

/// Coefficient-form update x_{n+s} = -sum a_k x_k + h sum b_k / f'(x_k),
/// with h = -f(x_{n+s-1}).
template <Real T>
T lmm_step(const LmmCoefficients<T>& c, std::span<const IterationRecord<T>> window) {
    if (window.size() != c.s) throw Error(Errc::invalid_argument, "window size does not match s");
    const T h = -*window.back().fx;
    T acc_x = 0;
    T acc_f = 0;
    for (std::size_t k = 0; k < c.s; ++k) {
        acc_x -= c.a[k] * window[k].x;
        if (c.b[k] != 0) {
            if (!window[k].dfx) throw Error(Errc::invalid_argument, "derivative missing for b_k != 0");
            acc_f += c.b[k] * inverse_slope(*window[k].dfx);
        }
    }
    return acc_x + h * acc_f;
}

/// Inverse-Hermite update through a history window; `with_slopes[k]` selects
/// which records contribute 1/f'.
template <Real T>
T hermite_step(std::span<const IterationRecord<T>> window, const std::vector<bool>& with_slopes) {
    std::vector<InverseNode<T>> nodes;
    nodes.reserve(window.size());
    for (std::size_t k = 0; k < window.size(); ++k) {
        std::optional<T> slope;
        if (with_slopes[k]) slope = inverse_slope(*window[k].dfx);
        nodes.push_back({*window[k].fx, window[k].x, std::move(slope)});
    }
    return eval_interpolant_at_zero(build_inverse_hermite<T>(nodes));
}

template <Real T>
struct StabilityReport {
    T a0;
    T principal_root;  ///< always 1
    T parasitic_root;  ///< equals a0
    bool stable;       ///< |a0| < 1
    T condition;       ///< sum |a_k| + |b_k|: amplification of rounding in one step
};

/// Roots of rho(lambda) = (lambda - 1)(lambda - a0) for the s = 2 method.
template <Real T>
StabilityReport<T> parasitic_analysis_s2(const T& q) {
    using std::abs;
    const auto c = lmm_coefficients_s2(q);
    T cond = 0;
    for (std::size_t k = 0; k < 2; ++k) cond += abs(c.a[k]) + abs(c.b[k]);
    return {c.a[0], T(1), c.a[0], abs(c.a[0]) < 1, cond};
}

}  // namespace lmmroot
