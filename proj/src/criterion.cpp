#include "spinq/criterion.hpp"

namespace spinq {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::None: return "none";
        case Verdict::Entanglement: return "entanglement";
        case Verdict::EPRSteering: return "epr-steering";
        case Verdict::BellNonlocality: return "bell-nonlocality";
        case Verdict::GenuineEntanglement: return "genuine-entanglement";
        case Verdict::GenuineBell: return "genuine-bell";
    }
    return "unknown";
}

}  // namespace spinq
