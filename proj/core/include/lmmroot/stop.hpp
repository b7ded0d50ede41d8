#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/history.hpp"
#include "lmmroot/scalar.hpp"

#include <string>

namespace lmmroot {

enum class StopKind {
    absolute_increment,  ///< |x_{l+1} - x_l| <= threshold
    relative_bracket,    ///< |a - b| <= threshold * |b|
};

template <Real T>
struct StopCriterion {
    StopKind kind = StopKind::absolute_increment;
    T threshold{};

    static StopCriterion absolute_increment(T tol) {
        return {StopKind::absolute_increment, std::move(tol)};
    }
    static StopCriterion relative_bracket(T delta) {
        return {StopKind::relative_bracket, std::move(delta)};
    }
};

/// 10^-eta, the increment threshold used for extended-precision runs.
template <Real T>
T decimal_tolerance(int eta) {
    using std::pow;
    return pow(T(10), -eta);
}

/// Twice the machine epsilon of T.
template <Real T>
T two_epsilon() {
    return 2 * machine_epsilon<T>();
}

/// Increment test on the last two iterates; false with fewer than two.
template <Real T>
bool should_stop(const StopCriterion<T>& criterion, const IterateHistory<T>& history) {
    if (criterion.kind != StopKind::absolute_increment) {
        throw Error(Errc::invalid_argument, "relative-bracket criterion needs a bracket");
    }
    if (history.size() < 2) return false;
    using std::abs;
    const T& next = history[history.size() - 1].x;
    const T& prev = history[history.size() - 2].x;
    return abs(next - prev) <= criterion.threshold;
}

template <Real T>
bool should_stop(const StopCriterion<T>& criterion, const T& a, const T& b) {
    if (criterion.kind != StopKind::relative_bracket) {
        throw Error(Errc::invalid_argument, "absolute-increment criterion needs a history");
    }
    using std::abs;
    return abs(a - b) <= criterion.threshold * abs(b);
}

}  // namespace lmmroot
