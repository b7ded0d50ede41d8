#include "lmmroot/solvers.hpp"

namespace lmmroot {

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::newton: return "newton";
        case Family::secant: return "secant";
        case Family::iqi: return "iqi";
        case Family::adams_bashforth: return "adams_bashforth";
        case Family::full_lmm: return "full_lmm";
    }
    return "unknown";
}

std::string_view to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::diverged: return "diverged";
        case SolveStatus::degenerate_stall: return "degenerate_stall";
        case SolveStatus::domain_error: return "domain_error";
    }
    return "unknown";
}

FallbackAction fallback_policy(Errc failure, std::size_t s_current, std::size_t min_s) noexcept {
    const bool recoverable = failure == Errc::degenerate_ratio || failure == Errc::zero_derivative ||
                             failure == Errc::degenerate_nodes;
    if (!recoverable || s_current <= min_s || s_current <= 1) return {FallbackKind::stall, s_current};
    return {FallbackKind::retry, s_current - 1};
}

}  // namespace lmmroot
