#include "lmmroot/robust.hpp"

namespace lmmroot {

std::string_view to_string(StepKind kind) noexcept {
    switch (kind) {
        case StepKind::interpolation: return "interpolation";
        case StepKind::bisection: return "bisection";
        case StepKind::tolerance: return "tolerance";
    }
    return "unknown";
}

std::string variant_label(int points, bool da, bool db, bool dc) {
    std::string which;
    auto add = [&](bool on, char name) {
        if (!on) return;
        if (!which.empty()) which += ',';
        which += name;
    };
    add(da, 'a');
    add(db, 'b');
    if (points == 3) add(dc, 'c');
    if (which.empty()) return points == 3 ? "s3 inverse-quadratic" : "s2 secant";
    return "s" + std::to_string(points) + " f'(" + which + ")";
}

}  // namespace lmmroot
