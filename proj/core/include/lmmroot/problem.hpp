#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace lmmroot {

/// A scalar equation f(x) = 0 together with its analytic derivative.
///
/// Immutable once built; share freely across solves. Evaluation counting lives
/// in `Evaluator`, not here.
template <Real T>
struct Problem {
    using Fn = std::function<T(const T&)>;

    std::string id;
    Fn f;
    Fn df;
    std::optional<T> known_root;
    T default_start{};
    std::optional<std::pair<T, T>> default_bracket;
};

template <Real T>
struct Evaluation {
    T fx;
    T dfx;
};

struct EvalCounts {
    long f = 0;
    long df = 0;

    friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

/// Counting front-end to a Problem. One instance per solve.
///
/// A non-finite f(x), or a NaN derivative, is a domain error. An infinite
/// derivative is allowed: it corresponds to a zero inverse slope (vertical
/// tangent, as for sqrt at 0).
template <Real T>
class Evaluator {
public:
    explicit Evaluator(const Problem<T>& problem) : problem_(&problem) {}

    const Problem<T>& problem() const noexcept { return *problem_; }
    const EvalCounts& counts() const noexcept { return counts_; }

    Evaluation<T> evaluate(const T& x) {
        T fx = value(x);
        ++counts_.df;
        T dfx = problem_->df(x);
        if (dfx != dfx) {
            throw Error(Errc::domain_error,
                        problem_->id + ": derivative undefined at x = " + format_scalar(x, 17));
        }
        return {std::move(fx), std::move(dfx)};
    }

    T value(const T& x) {
        if (!is_finite(x)) {
            throw Error(Errc::domain_error, problem_->id + ": non-finite argument");
        }
        ++counts_.f;
        T fx = problem_->f(x);
        if (!is_finite(fx)) {
            throw Error(Errc::domain_error,
                        problem_->id + ": f undefined at x = " + format_scalar(x, 17));
        }
        return fx;
    }

private:
    const Problem<T>* problem_;
    EvalCounts counts_;
};

/// One-shot evaluate, for callers that do not track counts.
template <Real T>
Evaluation<T> evaluate(const Problem<T>& problem, const T& x) {
    Evaluator<T> ev(problem);
    return ev.evaluate(x);
}

/// Relative discrepancy between df(x) and a central difference of f at x.
/// Used to spot-check analytic derivatives in double precision.
inline double derivative_check(const Problem<double>& problem, double x, double h = 1e-6) {
    const double scale = std::max(1.0, std::abs(x));
    const double step = h * scale;
    const double fd = (problem.f(x + step) - problem.f(x - step)) / (2 * step);
    const double an = problem.df(x);
    return std::abs(fd - an) / std::max(std::abs(an), 1e-300);
}

}  // namespace lmmroot
