#include "lmmroot/history.hpp"
#include "lmmroot/problem.hpp"
#include "lmmroot/scalar.hpp"
#include "lmmroot/stop.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace lmmroot;

namespace {

template <Real T>
Problem<T> x_plus_exp() {
    Problem<T> p;
    p.id = "x+exp(x)";
    p.f = [](const T& x) {
        using std::exp;
        return T(x + exp(x));
    };
    p.df = [](const T& x) {
        using std::exp;
        return T(1 + exp(x));
    };
    return p;
}

Problem<double> sqrt_minus_cos() {
    Problem<double> p;
    p.id = "sqrt(x)-cos(x)";
    p.f = [](const double& x) { return std::sqrt(x) - std::cos(x); };
    p.df = [](const double& x) { return 1 / (2 * std::sqrt(x)) + std::sin(x); };
    return p;
}

}  // namespace

TEST(Scalar, ParseAndFormatDouble) {
    EXPECT_EQ(parse_scalar<double>("1.5"), 1.5);
    EXPECT_EQ(parse_scalar<double>(" -2.5e-3 "), -2.5e-3);
    EXPECT_EQ(parse_scalar<double>("+4"), 4.0);
    EXPECT_TRUE(std::isinf(parse_scalar<double>("inf")));
    EXPECT_EQ(parse_scalar<double>("1e-400"), 0.0);
    EXPECT_TRUE(std::isinf(parse_scalar<double>("1e400")));
    EXPECT_THROW(parse_scalar<double>("1,5"), Error);
    EXPECT_THROW(parse_scalar<double>(""), Error);
    EXPECT_THROW(parse_scalar<double>("0x10"), Error);
    EXPECT_EQ(format_scalar(0.1, 17), "0.10000000000000001");
    EXPECT_EQ(format_scalar(infinity<double>(), 5), "Inf");
    EXPECT_EQ(format_scalar(-infinity<double>(), 5), "-Inf");
    EXPECT_EQ(format_scalar(quiet_nan<double>(), 5), "NaN");
}

TEST(Scalar, ExtendedRoundTripKeepsThreeHundredDigits) {
    PrecisionScope scope(310);
    std::string digits = "3.";
    for (int i = 0; i < 299; ++i) digits += static_cast<char>('0' + (i * 7 + 3) % 10);
    const Extended v = parse_scalar<Extended>(digits);
    EXPECT_EQ(format_scalar(v, 300), digits);
    EXPECT_THROW(parse_scalar<Extended>("1..2"), Error);
    EXPECT_GT(parse_scalar<Extended>("1e-400"), 0);
}

TEST(Scalar, PrecisionScopeRestores) {
    const unsigned before = extended_digits();
    {
        PrecisionScope outer(120);
        EXPECT_EQ(extended_digits(), 120u);
        {
            PrecisionScope inner(400);
            EXPECT_EQ(extended_digits(), 400u);
            EXPECT_LT(machine_epsilon<Extended>(), Extended("1e-390"));
        }
        EXPECT_EQ(extended_digits(), 120u);
    }
    EXPECT_EQ(extended_digits(), before);
    EXPECT_THROW(PrecisionScope(0), Error);
}

TEST(Scalar, ElementaryFunctionsAtBothPrecisions) {
    PrecisionScope scope(300);
    const Extended x("0.5");
    using std::abs;
    const Extended tol("1e-295");
    EXPECT_LT(abs(cbrt(x * x * x) - x), tol);
    EXPECT_LT(abs(exp(log(x)) - x), tol);
    EXPECT_LT(abs(sin(x) * sin(x) + cos(x) * cos(x) - 1), tol);
    EXPECT_LT(abs(tanh(x) - (exp(2 * x) - 1) / (exp(2 * x) + 1)), tol);
    EXPECT_LT(abs(pow(x, Extended(2)) - Extended("0.25")), tol);
    EXPECT_LT(abs(sqrt(x) * sqrt(x) - x), tol);
}

TEST(Problem, EvaluateExamples) {
    const auto p = x_plus_exp<double>();
    const auto e = evaluate(p, 0.0);
    EXPECT_EQ(e.fx, 1.0);
    EXPECT_EQ(e.dfx, 2.0);

    Problem<double> xc;
    xc.id = "x-cos(x)";
    xc.f = [](const double& x) { return x - std::cos(x); };
    xc.df = [](const double& x) { return 1 + std::sin(x); };
    const auto e2 = evaluate(xc, 0.0);
    EXPECT_EQ(e2.fx, -1.0);
    EXPECT_EQ(e2.dfx, 1.0);
}

TEST(Problem, DomainErrorIsStructured) {
    const auto p = sqrt_minus_cos();
    try {
        (void)evaluate(p, -1.0);
        FAIL() << "expected a domain error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::domain_error);
    }
    EXPECT_THROW((void)evaluate(p, infinity<double>()), Error);
}

TEST(Problem, InfiniteDerivativeIsAccepted) {
    const auto e = evaluate(sqrt_minus_cos(), 0.0);
    EXPECT_EQ(e.fx, -1.0);
    EXPECT_TRUE(std::isinf(e.dfx));
}

TEST(Problem, CountersMatchCalls) {
    const auto p = x_plus_exp<double>();
    Evaluator<double> ev(p);
    for (int i = 0; i < 5; ++i) (void)ev.evaluate(0.1 * i);
    for (int i = 0; i < 3; ++i) (void)ev.value(0.1 * i);
    EXPECT_EQ(ev.counts(), (EvalCounts{8, 5}));
}

TEST(Problem, DerivativeCheck) {
    EXPECT_LT(derivative_check(x_plus_exp<double>(), 1.5), 1e-6);
    Problem<double> wrong = x_plus_exp<double>();
    wrong.df = [](const double& x) { return std::exp(x); };
    EXPECT_GT(derivative_check(wrong, 1.5), 1e-3);
}

TEST(History, IndicesAndTail) {
    IterateHistory<double> h;
    EXPECT_TRUE(h.empty());
    for (int i = 0; i < 5; ++i) h.push(i, 2.0 * i, std::nullopt);
    EXPECT_EQ(h.size(), 5u);
    for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(h[i].index, i);
    const auto t = h.tail(3);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].x, 2.0);
    EXPECT_EQ(h.tail(10).size(), 5u);
    EXPECT_EQ(h.xs().back(), 4.0);
}

TEST(Stop, AbsoluteIncrementExamples) {
    PrecisionScope scope(300);
    const auto crit = StopCriterion<Extended>::absolute_increment(decimal_tolerance<Extended>(250));
    IterateHistory<Extended> h;
    h.push(Extended(1), Extended(0), std::nullopt);
    EXPECT_FALSE(should_stop(crit, h));
    h.push(Extended(1) + Extended("1e-260"), Extended(0), std::nullopt);
    EXPECT_TRUE(should_stop(crit, h));

    IterateHistory<Extended> g;
    g.push(Extended(1), Extended(0), std::nullopt);
    g.push(Extended(1) + Extended("1e-3"), Extended(0), std::nullopt);
    EXPECT_FALSE(should_stop(crit, g));
}

TEST(Stop, RelativeBracketExample) {
    PrecisionScope scope(50);
    const auto crit = StopCriterion<Extended>::relative_bracket(2 * Extended(std::numeric_limits<double>::epsilon()));
    EXPECT_TRUE(should_stop(crit, Extended(1), Extended(1) + Extended("1e-20")));
    EXPECT_FALSE(should_stop(crit, Extended(1), Extended("1.001")));

    const auto dcrit = StopCriterion<double>::relative_bracket(two_epsilon<double>());
    EXPECT_TRUE(should_stop(dcrit, 1.0, 1.0 + 1e-20));
    EXPECT_THROW((void)should_stop(dcrit, IterateHistory<double>{}), Error);
}

TEST(Stop, Tolerances) {
    EXPECT_EQ(two_epsilon<double>(), 2 * std::numeric_limits<double>::epsilon());
    EXPECT_DOUBLE_EQ(decimal_tolerance<double>(3), 1e-3);
}
