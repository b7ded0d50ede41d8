#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmmroot {

/// Failure categories raised by the numerical kernels.
///
/// Kernels throw; drivers (`run`, `solve_bracketed`) catch and translate
/// into a status on the report so a whole solve never aborts.
enum class Errc {
    degenerate_nodes,   ///< two interpolation abscissae coincide
    invalid_node,       ///< non-finite node data
    degenerate_ratio,   ///< coincident step ratios q (f values repeat)
    zero_derivative,    ///< f'(x) == 0 where 1/f'(x) is needed
    domain_error,       ///< f or f' undefined at x
    invalid_family,     ///< (s, d, sigma) outside the supported domain
    invalid_bracket,    ///< f(a) f(b) >= 0
    too_few_iterates,   ///< not enough data for a rate estimate
    invalid_argument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace lmmroot
