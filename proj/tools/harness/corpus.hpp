#pragma once

#include "lmmroot/problem.hpp"
#include "lmmroot/scalar.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lmmroot::harness {

/// Reference bracket with the published iteration counts.
struct BracketRef {
    double a;
    double b;
    int brent_iters;  ///< published data, never recomputed
    int lmm_iters;
};

/// A corpus function: evaluators for both scalar types, the exact root to 320
/// significant digits, and the published reference data.
struct CorpusEntry {
    std::string id;                  ///< ASCII key, stable for CSV output
    std::string display;             ///< human-readable formula
    std::string published_root_display;  ///< root as printed in the reference tables
    std::string root_digits;         ///< high-precision root
    double start = 0;                ///< open-method start x0
    std::map<std::string, int> published_iters;     ///< "newton", "s2", "s3"
    std::map<std::string, double> published_rates;  ///< "s2", "s3"
    std::optional<BracketRef> bracket;

    std::function<double(const double&)> f_double;
    std::function<double(const double&)> df_double;
    std::function<Extended(const Extended&)> f_extended;
    std::function<Extended(const Extended&)> df_extended;

    /// Builds the problem at the current precision (the known root is parsed
    /// when this is called, so call it inside the PrecisionScope in use).
    template <Real T>
    Problem<T> problem() const {
        Problem<T> p;
        p.id = id;
        if constexpr (std::is_same_v<T, double>) {
            p.f = f_double;
            p.df = df_double;
        } else {
            p.f = f_extended;
            p.df = df_extended;
        }
        p.known_root = parse_scalar<T>(root_digits);
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, start);
        // Shortest round-trip decimal, so 1.3 is exactly 13/10 at any precision.
        p.default_start = parse_scalar<T>(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
        if (bracket) p.default_bracket = std::make_pair(T(bracket->a), T(bracket->b));
        return p;
    }
};

/// The 11 benchmark functions in table order, then tanh and the cube-root
/// Gaussian h(x) = cbrt(x) exp(-x^2).
const std::vector<CorpusEntry>& corpus();

/// The 11 benchmark functions only.
std::vector<const CorpusEntry*> benchmark_entries();

const CorpusEntry& find_entry(const std::string& id);

/// Published predicted-rate strings. Keys are (s, d); the derivative-free table
/// uses d = 0 and the Adams-Bashforth table stores its single column under d = 1.
const std::map<std::pair<int, int>, std::string>& published_rates_full();
const std::map<std::pair<int, int>, std::string>& published_rates_derivative_free();
const std::map<std::pair<int, int>, std::string>& published_rates_adams_bashforth();

/// Published transcripts for the pathological functions (4 significant digits).
struct PublishedTranscript {
    std::vector<std::string> newton;
    std::vector<std::string> s2;
    std::vector<std::string> s3;
};
const PublishedTranscript& published_transcript_tanh();
const PublishedTranscript& published_transcript_h();

/// Random polynomial with a sign-change bracket, for property sweeps.
struct RandomPolynomial {
    std::vector<double> coeffs;  ///< ascending powers
    double a;
    double b;

    double operator()(double x) const;
    double derivative(double x) const;
    Problem<double> problem(const std::string& id) const;
};

/// Deterministic given the seed: alternating cubic and quintic polynomials with
/// coefficients in [-10, 10] and a random bracket that changes sign.
std::vector<RandomPolynomial> random_polynomials(unsigned long long seed, int count);

}  // namespace lmmroot::harness
