#include "stmg/strategy.hpp"

#include "stmg/core.hpp"

namespace stmg {

CoarseningStrategy parse_strategy(std::string_view name) {
    if (name == "time-semi-2" || name == "time-semi") return CoarseningStrategy::TimeSemi2;
    if (name == "time-semi-4") return CoarseningStrategy::TimeSemi4;
    if (name == "space-semi") return CoarseningStrategy::SpaceSemi;
    if (name == "full") return CoarseningStrategy::Full;
    if (name == "new") return CoarseningStrategy::New;
    if (name == "original") return CoarseningStrategy::Original;
    throw UsageError("unknown coarsening strategy '" + std::string(name) + "'");
}

std::string to_string(CoarseningStrategy s) {
    switch (s) {
        case CoarseningStrategy::TimeSemi2: return "time-semi-2";
        case CoarseningStrategy::TimeSemi4: return "time-semi-4";
        case CoarseningStrategy::SpaceSemi: return "space-semi";
        case CoarseningStrategy::Full: return "full";
        case CoarseningStrategy::New: return "new";
        case CoarseningStrategy::Original: return "original";
    }
    return "?";
}

int time_factor(CoarseningStrategy s) {
    switch (s) {
        case CoarseningStrategy::TimeSemi2: return 2;
        case CoarseningStrategy::TimeSemi4: return 4;
        case CoarseningStrategy::SpaceSemi: return 1;
        case CoarseningStrategy::Full: return 2;
        case CoarseningStrategy::New: return 4;
        case CoarseningStrategy::Original: return 2;
    }
    return 1;
}

int space_factor(CoarseningStrategy s) {
    switch (s) {
        case CoarseningStrategy::TimeSemi2:
        case CoarseningStrategy::TimeSemi4: return 1;
        default: return 2;
    }
}

}  // namespace stmg
