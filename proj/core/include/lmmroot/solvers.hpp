#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/history.hpp"
#include "lmmroot/interp.hpp"
#include "lmmroot/problem.hpp"
#include "lmmroot/scalar.hpp"
#include "lmmroot/stop.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmmroot {

enum class Family { newton, secant, iqi, adams_bashforth, full_lmm };

std::string_view to_string(Family family) noexcept;

enum class SolveStatus { converged, max_iters, diverged, degenerate_stall, domain_error };

std::string_view to_string(SolveStatus status) noexcept;

template <Real T>
struct SolverSpec {
    Family family = Family::newton;
    std::size_t s = 1;
    int max_iters = 100;
    StopCriterion<T> stop = StopCriterion<T>::absolute_increment(two_epsilon<T>());
    Precision precision = std::is_same_v<T, double> ? Precision::native() : Precision::extended(extended_digits());

    static SolverSpec newton(StopCriterion<T> stop, int max_iters = 100) {
        return make(Family::newton, 1, std::move(stop), max_iters);
    }
    static SolverSpec secant(StopCriterion<T> stop, int max_iters = 100) {
        return make(Family::secant, 2, std::move(stop), max_iters);
    }
    static SolverSpec iqi(StopCriterion<T> stop, int max_iters = 100) {
        return make(Family::iqi, 3, std::move(stop), max_iters);
    }
    static SolverSpec adams_bashforth(std::size_t s, StopCriterion<T> stop, int max_iters = 100) {
        return make(Family::adams_bashforth, s, std::move(stop), max_iters);
    }
    static SolverSpec full_lmm(std::size_t s, StopCriterion<T> stop, int max_iters = 100) {
        return make(Family::full_lmm, s, std::move(stop), max_iters);
    }

    bool uses_derivatives() const noexcept {
        return family != Family::secant && family != Family::iqi;
    }

    void validate() const {
        bool ok = false;
        switch (family) {
            case Family::newton: ok = s == 1; break;
            case Family::secant: ok = s == 2; break;
            case Family::iqi: ok = s == 3; break;
            case Family::adams_bashforth: ok = s >= 2; break;
            case Family::full_lmm: ok = s >= 2; break;
        }
        if (!ok) {
            throw Error(Errc::invalid_family,
                        std::string(to_string(family)) + " does not admit s = " + std::to_string(s));
        }
        if (max_iters < 1) throw Error(Errc::invalid_argument, "max_iters must be positive");
        if (stop.kind != StopKind::absolute_increment) {
            throw Error(Errc::invalid_argument, "open solvers stop on the absolute increment");
        }
    }

private:
    static SolverSpec make(Family family, std::size_t s, StopCriterion<T> stop, int max_iters) {
        SolverSpec spec;
        spec.family = family;
        spec.s = s;
        spec.stop = std::move(stop);
        spec.max_iters = max_iters;
        spec.validate();
        return spec;
    }
};

template <Real T>
struct SolveReport {
    IterateHistory<T> history;
    SolveStatus status = SolveStatus::max_iters;
    long f_evals = 0;
    long df_evals = 0;
    T final_x{};
    /// Number of history points actually used for each new estimate.
    std::vector<std::size_t> steps_used;
    std::string detail;

    /// New root estimates produced, warm-up included.
    int iterations() const noexcept {
        return history.empty() ? 0 : static_cast<int>(history.size()) - 1;
    }
    bool converged() const noexcept { return status == SolveStatus::converged; }
};

/// x - f/f'. Returns x unchanged when f = 0.
template <Real T>
T newton_step(const T& x, const T& fx, const T& dfx) {
    if (fx == 0) return x;
    if (dfx == 0) throw Error(Errc::zero_derivative, "Newton step with f'(x) = 0");
    return x - fx / dfx;
}

/// Full LMM update from the last s records (all coefficients free, all
/// derivatives used). Closed forms for s = 2, 3; linear solve beyond.
template <Real T>
T full_lmm_step(std::span<const IterationRecord<T>> window) {
    if (window.empty()) throw Error(Errc::invalid_argument, "empty history window");
    for (const auto& r : window) {
        if (!r.fx || !r.dfx) throw Error(Errc::invalid_argument, "full LMM needs cached f and f'");
    }
    const auto& newest = window.back();
    if (window.size() == 1) return newton_step(newest.x, *newest.fx, *newest.dfx);
    if (*newest.fx == 0) return newest.x;

    const std::vector<T> q = step_ratios(window);
    LmmCoefficients<T> coeffs;
    switch (window.size()) {
        case 2: coeffs = lmm_coefficients_s2(q[0]); break;
        case 3: coeffs = lmm_coefficients_s3(q[0], q[1]); break;
        default: coeffs = solve_lmm_coefficients<T>(q, SigmaMask::full(window.size())); break;
    }
    return lmm_step(coeffs, window);
}

/// Update from a general mask via the coefficient solve.
template <Real T>
T masked_lmm_step(std::span<const IterationRecord<T>> window, const SigmaMask& mask) {
    if (window.size() != mask.s()) throw Error(Errc::invalid_argument, "mask/window size mismatch");
    const auto& newest = window.back();
    if (*newest.fx == 0) return newest.x;
    const std::vector<T> q = step_ratios(window);
    return lmm_step(solve_lmm_coefficients<T>(q, mask), window);
}

enum class FallbackKind { retry, stall };

struct FallbackAction {
    FallbackKind kind;
    std::size_t next_s;  ///< history points for the retry (meaningful for retry)
};

/// After a degenerate step with `s_current` points: drop the oldest point and
/// retry, down to `min_s`; below that the solve stalls.
FallbackAction fallback_policy(Errc failure, std::size_t s_current, std::size_t min_s = 1) noexcept;

namespace detail {

enum class StepMethod { newton, full_lmm, masked };

struct StepPlan {
    StepMethod method;
    SigmaMask mask;  // for masked
};

template <Real T>
StepPlan plan_step(const SolverSpec<T>& spec, std::size_t s_cur, bool warming) {
    if (s_cur == 1) return {StepMethod::newton, {}};
    switch (spec.family) {
        case Family::newton: return {StepMethod::newton, {}};
        case Family::full_lmm: return {StepMethod::full_lmm, {}};
        case Family::adams_bashforth:
            if (warming) return {StepMethod::newton, {}};
            return {StepMethod::masked, SigmaMask::adams_bashforth(s_cur)};
        case Family::secant:
        case Family::iqi:
            if (warming) return {StepMethod::full_lmm, {}};
            return {StepMethod::masked, SigmaMask::derivative_free(s_cur)};
    }
    return {StepMethod::newton, {}};
}

inline bool recoverable(Errc code) {
    return code == Errc::degenerate_ratio || code == Errc::zero_derivative ||
           code == Errc::degenerate_nodes;
}

}  // namespace detail

/// Runs an open iteration from x0.
///
/// Startup ladder: x1 by Newton, then history grows one point per step until
/// the family's s is reached (s = 2 full LMM fills the gap for families with
/// s >= 3; Adams-Bashforth warms up with Newton). One f and, when the family
/// needs it, one f' evaluation per new estimate. Never throws for numerical
/// failures: they end up in `status`.
template <Real T>
SolveReport<T> run(const Problem<T>& problem, const SolverSpec<T>& spec, const T& x0) {
    spec.validate();
    using std::abs;
    SolveReport<T> report;
    Evaluator<T> ev(problem);
    const T escape = T(1e10) * (1 + abs(x0));

    auto finish = [&](SolveStatus status, std::string detail = {}) {
        report.status = status;
        report.detail = std::move(detail);
        report.f_evals = ev.counts().f;
        report.df_evals = ev.counts().df;
        report.final_x = report.history.empty() ? x0 : report.history.back().x;
        return report;
    };

    if (!is_finite(x0)) return finish(SolveStatus::diverged, "non-finite start");

    try {
        auto e0 = ev.evaluate(x0);
        report.history.push(x0, e0.fx, e0.dfx);
    } catch (const Error& e) {
        report.history.push(x0, std::nullopt, std::nullopt);
        return finish(SolveStatus::domain_error, e.what());
    }

    const bool derivative_free = !spec.uses_derivatives();
    const std::size_t min_s_after_warmup = derivative_free ? 2 : 1;

    for (int it = 0; it < spec.max_iters; ++it) {
        const std::size_t available = report.history.size();
        const bool warming = available < spec.s;
        std::size_t s_cur = std::min(available, spec.s);
        const std::size_t min_s = warming ? 1 : min_s_after_warmup;

        T next{};
        bool have_next = false;
        while (!have_next) {
            const auto window = report.history.tail(s_cur);
            const auto plan = detail::plan_step(spec, s_cur, warming);
            try {
                switch (plan.method) {
                    case detail::StepMethod::newton: {
                        const auto& r = window.back();
                        if (spec.family == Family::newton && *r.dfx == 0 && *r.fx != 0) {
                            // A horizontal tangent sends the Newton iterate to infinity.
                            next = r.x - *r.fx / *r.dfx;
                        } else {
                            next = newton_step(r.x, *r.fx, *r.dfx);
                        }
                        break;
                    }
                    case detail::StepMethod::full_lmm: next = full_lmm_step(window); break;
                    case detail::StepMethod::masked: next = masked_lmm_step(window, plan.mask); break;
                }
                have_next = true;
            } catch (const Error& e) {
                if (!detail::recoverable(e.code())) throw;
                const auto action = fallback_policy(e.code(), s_cur, min_s);
                if (action.kind == FallbackKind::stall) {
                    return finish(SolveStatus::degenerate_stall, e.what());
                }
                s_cur = action.next_s;
            }
        }
        report.steps_used.push_back(s_cur);

        if (!is_finite(next) || abs(next) > escape) {
            report.history.push(next, std::nullopt, std::nullopt);
            return finish(SolveStatus::diverged, "iterate left the escape radius");
        }

        const bool need_df = !derivative_free || report.history.size() + 1 < spec.s;
        try {
            if (need_df) {
                auto e = ev.evaluate(next);
                report.history.push(next, e.fx, e.dfx);
            } else {
                T fx = ev.value(next);
                report.history.push(next, fx, std::nullopt);
            }
        } catch (const Error& e) {
            report.history.push(next, std::nullopt, std::nullopt);
            return finish(SolveStatus::domain_error, e.what());
        }

        if (should_stop(spec.stop, report.history)) return finish(SolveStatus::converged);
    }
    return finish(SolveStatus::max_iters);
}

}  // namespace lmmroot
