#include "harness/corpus.hpp"

#include "lmmroot/error.hpp"

#include <cmath>
#include <random>

namespace lmmroot::harness {

namespace {

template <typename T>
T f_x_plus_exp(const T& x) {
    using std::exp;
    return x + exp(x);
}
template <typename T>
T df_x_plus_exp(const T& x) {
    using std::exp;
    return 1 + exp(x);
}

template <typename T>
T f_sqrt_minus_cos(const T& x) {
    using std::cos;
    using std::sqrt;
    return sqrt(x) - cos(x);
}
template <typename T>
T df_sqrt_minus_cos(const T& x) {
    using std::sin;
    using std::sqrt;
    return 1 / (2 * sqrt(x)) + sin(x);
}

template <typename T>
T f_exp_quadratic(const T& x) {
    using std::exp;
    return exp(x) - x * x + 3 * x - 2;
}
template <typename T>
T df_exp_quadratic(const T& x) {
    using std::exp;
    return exp(x) - 2 * x + 3;
}

template <typename T>
T f_quartic(const T& x) {
    const T x2 = x * x;
    return x2 * x2 - 3 * x2 - 3;
}
template <typename T>
T df_quartic(const T& x) {
    return 4 * x * x * x - 6 * x;
}

template <typename T>
T f_cubic(const T& x) {
    return x * x * x - x - 1;
}
template <typename T>
T df_cubic(const T& x) {
    return 3 * x * x - 1;
}

template <typename T>
T f_exp_minus_cube(const T& x) {
    using std::exp;
    return exp(-x) - x * x * x;
}
template <typename T>
T df_exp_minus_cube(const T& x) {
    using std::exp;
    return -exp(-x) - 3 * x * x;
}

template <typename T>
T f_trig(const T& x) {
    using std::cos;
    using std::sin;
    return 5 * (sin(x) + cos(x)) - x;
}
template <typename T>
T df_trig(const T& x) {
    using std::cos;
    using std::sin;
    return 5 * (cos(x) - sin(x)) - 1;
}

template <typename T>
T f_x_minus_cos(const T& x) {
    using std::cos;
    return x - cos(x);
}
template <typename T>
T df_x_minus_cos(const T& x) {
    using std::sin;
    return 1 + sin(x);
}

template <typename T>
T f_log_cos(const T& x) {
    using std::cos;
    using std::log;
    return log(x - 1) + cos(x - 1);
}
template <typename T>
T df_log_cos(const T& x) {
    using std::sin;
    return 1 / (x - 1) - sin(x - 1);
}

template <typename T>
T f_sqrt_one_plus(const T& x) {
    using std::sqrt;
    return sqrt(1 + x) - x;
}
template <typename T>
T df_sqrt_one_plus(const T& x) {
    using std::sqrt;
    return 1 / (2 * sqrt(1 + x)) - 1;
}

template <typename T>
T f_sqrt_exp(const T& x) {
    using std::exp;
    using std::sqrt;
    return sqrt(exp(x) - x) - 2 * x;
}
template <typename T>
T df_sqrt_exp(const T& x) {
    using std::exp;
    using std::sqrt;
    const T ex = exp(x);
    return (ex - 1) / (2 * sqrt(ex - x)) - 2;
}

template <typename T>
T f_tanh(const T& x) {
    using std::tanh;
    return tanh(x);
}
template <typename T>
T df_tanh(const T& x) {
    using std::cosh;
    const T c = cosh(x);
    return 1 / (c * c);
}

template <typename T>
T f_cbrt_gauss(const T& x) {
    using std::cbrt;
    using std::exp;
    return cbrt(x) * exp(-x * x);
}
template <typename T>
T df_cbrt_gauss(const T& x) {
    using std::cbrt;
    using std::exp;
    const T r = cbrt(x);
    return exp(-x * x) * (1 / (3 * r * r) - 2 * x * r);
}

#define LMMROOT_FUNCS(name)                                          \
    [](const double& x) { return f_##name<double>(x); },             \
        [](const double& x) { return df_##name<double>(x); },        \
        [](const Extended& x) { return f_##name<Extended>(x); },     \
        [](const Extended& x) { return df_##name<Extended>(x); }

struct Row {
    const char* id;
    const char* display;
    const char* root_display;
    const char* root;
    double start;
    int its_n, its_2, its_3;
    double p2, p3;
    BracketRef bracket;
};

CorpusEntry make(const Row& r, std::function<double(const double&)> f, std::function<double(const double&)> df,
                 std::function<Extended(const Extended&)> fe, std::function<Extended(const Extended&)> dfe) {
    CorpusEntry e;
    e.id = r.id;
    e.display = r.display;
    e.published_root_display = r.root_display;
    e.root_digits = r.root;
    e.start = r.start;
    e.published_iters = {{"newton", r.its_n}, {"s2", r.its_2}, {"s3", r.its_3}};
    e.published_rates = {{"s2", r.p2}, {"s3", r.p3}};
    e.bracket = r.bracket;
    e.f_double = std::move(f);
    e.df_double = std::move(df);
    e.f_extended = std::move(fe);
    e.df_extended = std::move(dfe);
    return e;
}

std::vector<CorpusEntry> build_corpus() {
    // Roots to 320 significant digits (mpmath findroot at 360 digits).
    static const Row rows[] = {
        {"x+exp(x)", "x + e^x", "-0.57",
         "-0.5671432904097838729999686622103555497538157871865125081351310792230457930866845666932194469617522945"
         "5763802497286678978545235846594007299560851643928999461431157149295980359437669847463560613422684613"
         "5698957045397762485570786587733706356633301238430455635429786085090154290819208560557523748196584659"
         "50807273089050157336",
         1.5, 11, 8, 8, 2.73, 2.93, {-1, 1, 6, 4}},
        {"sqrt(x)-cos(x)", "sqrt(x) - cos(x)", "0.64",
         "0.6417143708728826583985653003165223718527178136038385256823576418465853191421654273097985764627240924"
         "9899600775537934568707369631066190261153125978190046421759182184037371521351899327688398491737550751"
         "9173143619538496658216301729278456023003560061736750180632439631712061634487118901648671220511152063"
         "16550156694505483001",
         0.5, 9, 7, 8, 2.74, 2.91, {0, 2, 8, 4}},
        {"exp(x)-x^2+3x-2", "e^x - x^2 + 3x - 2", "0.26",
         "0.2575302854398607604553673049372417813845369934702622881961202834065194424925176032474660657575121368"
         "9817148122441785203554160822665400610844954880290583904460383413402887438610485778858439557508262537"
         "8805447338584399133028317790461686393062808393014836913990724618329316622848820414350464511953983473"
         "61022624863290790063",
         0.0, 10, 8, 7, 2.72, 2.94, {-1, 1, 5, 3}},
        {"x^4-3x^2-3", "x^4 - 3x^2 - 3", "1.95",
         "1.9471229667070130892786552671303288610727401751520225367392923589686536611649025433045645604268981250"
         "8717038487089896299002208446990193963676818617512163489086877697586023925764510399128873980148489709"
         "2721238462770071406268437587032187064285129977281432546720236378393219640186012054674695642950012577"
         "0227210138072828575",
         1.3, 17, 14, 14, 2.73, 2.92, {1, 3, 10, 8}},
        {"x^3-x-1", "x^3 - x - 1", "1.32",
         "1.3247179572447460259609088544780973407344040569017333645340150503028278512455475940546993479817872803"
         "2991092099474220742510890263904589779559431475709672347175416683903886741875173693158425354990824662"
         "2354533727350458987990956815062774550980248621301216989415752457454862507562652461036893890483993226"
         "9952074975962828869",
         1.0, 12, 9, 9, 2.73, 2.64, {0, 2, 29, 6}},
        {"exp(-x)-x^3", "e^-x - x^3", "0.77",
         "0.7728829591492101128487486048782933727290779425096134746018534321989573878256131173789196638023007517"
         "4862502628591477974750767470738967953291764225327243071097741372537232055938836075866341506004864066"
         "1087153624732975247267606049937807625078889031368993333750135307352815243302387001391022724643358956"
         "71361503057174997917",
         2.0, 13, 10, 10, 2.73, 2.92, {0, 2, 9, 4}},
        {"5(sin(x)+cos(x))-x", "5(sin x + cos x) - x", "2.06",
         "2.0605050683249701960671881420185896914539381973787135042189848117693348981666881097407400122972125572"
         "8941392299095943700044703837223414724123342304726885136098881475501379221426174024634070533335012875"
         "3127931998415046847402977301924981931108899683550668161662388571024062322851261947984522145200767524"
         "0939672338517744837",
         1.5, 11, 9, 9, 2.73, 2.92, {0, 4, 45, 6}},
        {"x-cos(x)", "x - cos(x)", "0.74",
         "0.7390851332151606416553120876738734040134117589007574649656806357732846548835475945993761069317665318"
         "4980124664398716302771490369130842031578044057462077868852490389153928943884509523480133563127677223"
         "1580956353776572451204373419936433512538409780034340646700479402143478080271801883771136138204206631"
         "63350372779916967312",
         1.0, 9, 7, 7, 2.72, 2.93, {0, 1, 7, 3}},
        {"log(x-1)+cos(x-1)", "log(x - 1) + cos(x - 1)", "1.40",
         "1.3977484759587469823123883409256800302189965086886732602397679344958896381825363368987182889617096871"
         "6267168814002199455030248508138785061771031230247023240899809996525338316690527627325227968037249471"
         "5579540331060778388563625888576066700942809681077311176465464776497214633131164028442107972834894387"
         "7730592525185532596",
         1.6, 12, 9, 9, 2.73, 2.92, {1.2, 1.6, 31, 4}},
        {"sqrt(1+x)-x", "sqrt(1 + x) - x", "1.62",
         "1.6180339887498948482045868343656381177203091798057628621354486227052604628189024497072072041893911374"
         "8475408807538689175212663386222353693179318006076672635443338908659593958290563832266131992829026788"
         "0675208766892501711696207032221043216269548626296313614438149758701220340805887954454749246185695364"
         "8644492410443207713",
         1.0, 9, 7, 7, 2.73, 2.92, {0, 2, 5, 3}},
        {"sqrt(exp(x)-x)-2x", "sqrt(e^x - x) - 2x", "0.54",
         "0.5426594515740606156272447959003094945709685254114226246736580662004751045345753349652546786738768043"
         "1471009925744148695567729415937564971763538403828947833884975279467611043402755808142184388297738706"
         "4970160771880708766071442742138641055093185679775904706063139970463055166599564070923861449826860565"
         "36978441388849257958",
         1.0, 11, 8, 7, 2.73, 2.92, {-1, 2, 9, 4}},
    };

    std::vector<CorpusEntry> out;
    out.push_back(make(rows[0], LMMROOT_FUNCS(x_plus_exp)));
    out.push_back(make(rows[1], LMMROOT_FUNCS(sqrt_minus_cos)));
    out.push_back(make(rows[2], LMMROOT_FUNCS(exp_quadratic)));
    out.push_back(make(rows[3], LMMROOT_FUNCS(quartic)));
    out.push_back(make(rows[4], LMMROOT_FUNCS(cubic)));
    out.push_back(make(rows[5], LMMROOT_FUNCS(exp_minus_cube)));
    out.push_back(make(rows[6], LMMROOT_FUNCS(trig)));
    out.push_back(make(rows[7], LMMROOT_FUNCS(x_minus_cos)));
    out.push_back(make(rows[8], LMMROOT_FUNCS(log_cos)));
    out.push_back(make(rows[9], LMMROOT_FUNCS(sqrt_one_plus)));
    out.push_back(make(rows[10], LMMROOT_FUNCS(sqrt_exp)));

    auto pathological = [](const char* id, const char* display, double start, auto f, auto df, auto fe, auto dfe) {
        CorpusEntry e;
        e.id = id;
        e.display = display;
        e.published_root_display = "0";
        e.root_digits = "0";
        e.start = start;
        e.f_double = f;
        e.df_double = df;
        e.f_extended = fe;
        e.df_extended = dfe;
        return e;
    };
    out.push_back(pathological("tanh(x)", "tanh(x)", 1.239, LMMROOT_FUNCS(tanh)));
    out.push_back(pathological("cbrt(x)exp(-x^2)", "cbrt(x) e^(-x^2)", 0.1147, LMMROOT_FUNCS(cbrt_gauss)));
    return out;
}

#undef LMMROOT_FUNCS

}  // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

std::vector<const CorpusEntry*> benchmark_entries() {
    std::vector<const CorpusEntry*> out;
    for (const auto& e : corpus()) {
        if (!e.published_iters.empty()) out.push_back(&e);
    }
    return out;
}

const CorpusEntry& find_entry(const std::string& id) {
    for (const auto& e : corpus()) {
        if (e.id == id) return e;
    }
    throw Error(Errc::invalid_argument, "unknown corpus entry: " + id);
}

const std::map<std::pair<int, int>, std::string>& published_rates_full() {
    static const std::map<std::pair<int, int>, std::string> table = {
        {{1, 1}, "2"},    {{1, 2}, "3"},    {{1, 3}, "4"},    {{1, 4}, "5"},
        {{2, 1}, "2.73"}, {{2, 2}, "3.79"}, {{2, 3}, "4.82"}, {{2, 4}, "5.85"},
        {{3, 1}, "2.91"}, {{3, 2}, "3.95"}, {{3, 3}, "4.97"}, {{3, 4}, "5.98"},
        {{4, 1}, "2.97"}, {{4, 2}, "3.99"}, {{4, 3}, "4.99"}, {{4, 4}, "5.996"},
    };
    return table;
}

const std::map<std::pair<int, int>, std::string>& published_rates_derivative_free() {
    static const std::map<std::pair<int, int>, std::string> table = {
        {{2, 0}, "1.62"}, {{3, 0}, "1.84"}, {{4, 0}, "1.92"}, {{5, 0}, "1.97"},
    };
    return table;
}

const std::map<std::pair<int, int>, std::string>& published_rates_adams_bashforth() {
    static const std::map<std::pair<int, int>, std::string> table = {
        {{1, 1}, "2"}, {{2, 1}, "2.41"}, {{3, 1}, "2.55"}, {{4, 1}, "2.59"}, {{5, 1}, "2.61"},
    };
    return table;
}

const PublishedTranscript& published_transcript_tanh() {
    static const PublishedTranscript t = {
        {"1.239", "-1.719", "6.059", "-4.583e4", "Inf"},
        {"1.239", "-1.719", "0.8045", "0.7925", "-0.7386", "-6.783e-3", "9.323e-6", "<eps"},
        {"1.239", "-1.719", "0.8045", "-0.6806", "1.377", "-0.7730", "3.466e-2", "-3.032e-4", "1.831e-11", "<eps"},
    };
    return t;
}

const PublishedTranscript& published_transcript_h() {
    static const PublishedTranscript t = {
        {"0.1147", "0.2589", "1.0402", "1.6084", "1.9407", "2.2102", "2.4445", "2.6549", "2.8478", "3.0270",
         "3.1953", "3.3543", "3.5056", "3.6502", "3.7889", "3.9225"},
        {"0.1147", "-0.2589", "0.1016", "9.993e-2", "-0.2581", "9.840e-2", "9.810e-2", "-0.2344", "6.602e-2",
         "6.021e-2", "-4.939e-2", "-4.019e-4", "1.288e-4", "2.028e-10", "-5.308e-15", "<eps"},
        {"0.1147", "-0.2589", "0.1016", "-5.648e-2", "0.1959", "-0.1611", "5.021e-2", "-7.190e-2", "4.947e-2",
         "-3.777e-3", "3.027e-4", "-6.875e-6", "1.216e-9", "-4.652e-15", "<eps"},
    };
    return t;
}

double RandomPolynomial::operator()(double x) const {
    double r = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) r = r * x + coeffs[k];
    return r;
}

double RandomPolynomial::derivative(double x) const {
    double p = coeffs.back();
    double dp = 0;
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        dp = dp * x + p;
        p = p * x + coeffs[k];
    }
    return dp;
}

Problem<double> RandomPolynomial::problem(const std::string& id) const {
    Problem<double> p;
    p.id = id;
    p.f = [poly = *this](const double& x) { return poly(x); };
    p.df = [poly = *this](const double& x) { return poly.derivative(x); };
    p.default_bracket = std::make_pair(a, b);
    p.default_start = a;
    return p;
}

std::vector<RandomPolynomial> random_polynomials(unsigned long long seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-10.0, 10.0);
    std::uniform_real_distribution<double> point(-10.0, 10.0);
    std::vector<RandomPolynomial> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int degree = i % 2 == 0 ? 3 : 5;
        RandomPolynomial poly;
        poly.coeffs.resize(static_cast<std::size_t>(degree) + 1);
        for (auto& c : poly.coeffs) c = coef(rng);
        while (std::abs(poly.coeffs.back()) < 0.1) poly.coeffs.back() = coef(rng);

        bool found = false;
        for (int attempt = 0; attempt < 200 && !found; ++attempt) {
            double a = point(rng);
            double b = point(rng);
            if (std::abs(a - b) < 1e-3) continue;
            const double fa = poly(a);
            const double fb = poly(b);
            if (fa != 0 && fb != 0 && (fa < 0) != (fb < 0)) {
                poly.a = a;
                poly.b = b;
                found = true;
            }
        }
        if (!found) {
            // Odd degree: the Cauchy bound brackets every real root.
            double bound = 0;
            for (std::size_t k = 0; k + 1 < poly.coeffs.size(); ++k) {
                bound = std::max(bound, std::abs(poly.coeffs[k] / poly.coeffs.back()));
            }
            poly.a = -(1 + bound);
            poly.b = 1 + bound;
        }
        out.push_back(std::move(poly));
    }
    return out;
}

}  // namespace lmmroot::harness
