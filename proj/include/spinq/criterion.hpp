#pragma once

#include <string>

namespace spinq {

enum class Verdict {
    None,
    Entanglement,
    EPRSteering,
    BellNonlocality,
    GenuineEntanglement,
    GenuineBell,
};

// Outcome of one inequality evaluation. `ratio` is the violation measure:
// it exceeds 1 exactly when the inequality is violated. For left>right
// inequalities that is lhs/rhs; for the reversed (lhs<rhs certifies) criteria
// such as the EPR inference product it is rhs/lhs.
struct CriterionResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Verdict verdict = Verdict::None;
    std::string inequality_id;
};

const char* verdict_name(Verdict v);

}  // namespace spinq
