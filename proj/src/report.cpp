#include "palindist/report.hpp"

namespace palindist {

const char* to_string(BoundId id) {
    switch (id) {
        case BoundId::lemma21: return "lemma21";
        case BoundId::lemma22: return "lemma22";
        case BoundId::lemma31: return "lemma31";
        case BoundId::lemma32: return "lemma32";
        case BoundId::prop41: return "prop41";
        case BoundId::prop42: return "prop42";
        case BoundId::cor45: return "cor45";
        case BoundId::cor46: return "cor46";
    }
    return "unknown";
}

} // namespace palindist
