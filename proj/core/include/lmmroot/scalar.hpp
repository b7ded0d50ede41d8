#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

namespace lmmroot {

/// Arbitrary-precision real. The precision is process-wide and chosen once per
/// run through `PrecisionScope`; expression templates are disabled so that
/// `auto` in generic code always yields a value.
using Extended = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// The scalar contract: native double or `Extended`.
template <typename T>
concept Real = std::same_as<T, double> || std::same_as<T, Extended>;

enum class PrecisionKind { native_double, extended };

struct Precision {
    PrecisionKind kind = PrecisionKind::native_double;
    unsigned digits = 16;  // decimal digits; meaningful for extended only

    static Precision native() { return {PrecisionKind::native_double, 16}; }
    static Precision extended(unsigned d) { return {PrecisionKind::extended, d}; }
};

inline constexpr unsigned kDefaultExtendedDigits = 300;

/// Sets the working precision of `Extended` for the lifetime of the object.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    unsigned digits() const noexcept { return digits_; }

private:
    unsigned digits_;
    unsigned previous_;
};

unsigned extended_digits() noexcept;

template <Real T>
T machine_epsilon() {
    return std::numeric_limits<T>::epsilon();
}

template <Real T>
bool is_finite(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::isfinite(v);
    } else {
        return boost::multiprecision::isfinite(v);
    }
}

template <Real T>
T infinity() {
    return std::numeric_limits<T>::infinity();
}

template <Real T>
T quiet_nan() {
    return std::numeric_limits<T>::quiet_NaN();
}

template <Real T>
int sign(const T& v) {
    return (v > 0) - (v < 0);
}

/// Parses a decimal literal ("1.5", "-2e-3", "inf"). Throws Error on garbage.
template <Real T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
Extended parse_scalar<Extended>(std::string_view text);

/// Locale-independent general-format rendering with `significant` digits.
/// Non-finite values render as "Inf", "-Inf" and "NaN".
std::string format_scalar(double v, int significant);
std::string format_scalar(const Extended& v, int significant);

/// Converts between precisions (rounding to nearest).
template <Real To, Real From>
To convert(const From& v) {
    if constexpr (std::is_same_v<To, From>) {
        return v;
    } else if constexpr (std::is_same_v<To, double>) {
        return v.template convert_to<double>();
    } else {
        return To(v);
    }
}

}  // namespace lmmroot
