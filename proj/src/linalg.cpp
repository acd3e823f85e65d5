#include "eigenbound/linalg.hpp"

namespace eigenbound {

std::string_view to_string(NormKind kind) {
    switch (kind) {
        case NormKind::InducedOne: return "1";
        case NormKind::InducedTwo: return "2";
        case NormKind::InducedInf: return "inf";
    }
    return "?";
}

std::optional<NormKind> parse_norm(std::string_view text) {
    if (text == "1" || text == "one") return NormKind::InducedOne;
    if (text == "2" || text == "two") return NormKind::InducedTwo;
    if (text == "inf" || text == "infinity") return NormKind::InducedInf;
    return std::nullopt;
}

}  // namespace eigenbound
