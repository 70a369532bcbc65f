#pragma once

namespace circsep {

/// Which input set a record refers to.
enum class SideSet { P, Q };

/// Contact configurations certifying local maximality: C1/C2 are the generic
/// three-tangency and two-plus-hull-vertex cases; the primed variants cover
/// diametral and antipodal degeneracies.
enum class ConditionTag { C1, C1p, C1pp, C2, C2p, C2pp };

inline const char* to_string(ConditionTag t) {
    switch (t) {
        case ConditionTag::C1: return "C1";
        case ConditionTag::C1p: return "C1p";
        case ConditionTag::C1pp: return "C1pp";
        case ConditionTag::C2: return "C2";
        case ConditionTag::C2p: return "C2p";
        case ConditionTag::C2pp: return "C2pp";
    }
    return "?";
}

inline const char* to_string(SideSet s) { return s == SideSet::P ? "P" : "Q"; }

}  // namespace circsep
