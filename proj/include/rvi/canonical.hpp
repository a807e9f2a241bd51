#pragma once

#include "rvi/diagram.hpp"
#include "rvi/positivity.hpp"

namespace rvi {

// Frozen reference data for the test classes, selected by offline beam
// search and re-certified on load.
//
// The running d = 4 example class (8256 vertices) carries the certified
// loop below; its cylinder is far too thin for feasible first-return
// simulation (the class is large, so the unconditional return probability
// is about 1e-8 per step), so flow experiments run on the canonical section
// of the d = 3 four-pole class (96 vertices), whose loop is the shortest
// strongly positive neat loop of the class (length 12, cylinder
// probability 3.7e-3 at its base).
inline constexpr const char* kExampleRow = "D iB iD C iC * A iA B";
inline constexpr const char* kExampleSectionBase = "C iC iD A * D iB B iA";
inline constexpr const char* kExampleSectionWord = "LRRLLRLLLRRLLRRLL";

inline constexpr const char* kSectionClassRow = "A iA B iB * C iC";
inline constexpr const char* kCanonicalSectionBase = "A iA B iB * C iC";
inline constexpr const char* kCanonicalSectionWord = "RRLLRRLLRRLL";

inline SectionSpec make_certified_section(const char* base, const char* word) {
    Path loop = Path::from_word(MarkedPermutation::parse(base), word);
    if (!is_neat(loop))
        throw numeric_error("stored section loop failed certification");
    return SectionSpec(std::move(loop));
}

// the canonical section used by the flow experiments
inline SectionSpec canonical_section() {
    return make_certified_section(kCanonicalSectionBase, kCanonicalSectionWord);
}

// the certified section of the d = 4 example class
inline SectionSpec example_class_section() {
    return make_certified_section(kExampleSectionBase, kExampleSectionWord);
}

}  // namespace rvi
