#include "lmmroot/scalar.hpp"

#include "lmmroot/error.hpp"

#include <charconv>
#include <iomanip>
#include <locale>
#include <sstream>

namespace lmmroot {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::degenerate_nodes: return "degenerate-nodes";
        case Errc::invalid_node: return "invalid-node";
        case Errc::degenerate_ratio: return "degenerate-ratio";
        case Errc::zero_derivative: return "zero-derivative";
        case Errc::domain_error: return "domain-error";
        case Errc::invalid_family: return "invalid-family";
        case Errc::invalid_bracket: return "invalid-bracket";
        case Errc::too_few_iterates: return "too-few-iterates";
        case Errc::invalid_argument: return "invalid-argument";
    }
    return "unknown";
}

PrecisionScope::PrecisionScope(unsigned digits10)
    : digits_(digits10), previous_(Extended::default_precision()) {
    if (digits10 == 0) {
        throw Error(Errc::invalid_argument, "precision must be positive");
    }
    Extended::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Extended::default_precision(previous_); }

unsigned extended_digits() noexcept { return Extended::default_precision(); }

namespace {

std::string trimmed(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

bool special_value(const std::string& s, int& which) {
    // which: +1 inf, -1 -inf, 0 nan
    if (s == "inf" || s == "Inf" || s == "+inf" || s == "+Inf") { which = 1; return true; }
    if (s == "-inf" || s == "-Inf") { which = -1; return true; }
    if (s == "nan" || s == "NaN") { which = 0; return true; }
    return false;
}

// [+-]digits[.digits][(e|E)[+-]digits], at least one mantissa digit.
bool decimal_syntax(const std::string& s) {
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        return i - start;
    };
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t mantissa = digits();
    if (i < s.size() && s[i] == '.') {
        ++i;
        mantissa += digits();
    }
    if (mantissa == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (digits() == 0) return false;
    }
    return i == s.size();
}

template <typename T>
std::string format_general(const T& v, int significant) {
    if (!is_finite(v)) {
        if (v != v) return "NaN";
        return v > 0 ? "Inf" : "-Inf";
    }
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(significant) << v;
    return os.str();
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view text) {
    const std::string s = trimmed(text);
    int which = 0;
    if (special_value(s, which)) {
        return which == 0 ? quiet_nan<double>() : which * infinity<double>();
    }
    if (!decimal_syntax(s)) {
        throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
    }
    double out = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (!s.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec == std::errc::result_out_of_range) {
        // from_chars leaves `out` untouched on overflow/underflow.
        const bool negative = s.front() == '-';
        const auto e = s.find_first_of("eE");
        const bool tiny = e != std::string::npos && e + 1 < s.size() && s[e + 1] == '-';
        const double magnitude = tiny ? 0.0 : infinity<double>();
        return negative ? -magnitude : magnitude;
    }
    if (ec != std::errc{} || ptr != end) {
        throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
    }
    return out;
}

template <>
Extended parse_scalar<Extended>(std::string_view text) {
    const std::string s = trimmed(text);
    int which = 0;
    if (special_value(s, which)) {
        return which == 0 ? quiet_nan<Extended>() : which * infinity<Extended>();
    }
    if (!decimal_syntax(s)) {
        throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
    }
    try {
        return Extended(s);
    } catch (const std::exception&) {
        throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
    }
}

std::string format_scalar(double v, int significant) { return format_general(v, significant); }

std::string format_scalar(const Extended& v, int significant) {
    return format_general(v, significant);
}

}  // namespace lmmroot
