#pragma once

#include <span>
#include <string>

#include "citefield/corpus.hpp"

namespace citefield {

struct ImpactReport {
    std::string journal;
    int year = 0;
    double impact_factor = 0.0;
    double quasi_impact_factor = 0.0;  // self-citations removed from the numerator
    // Integers retained for audit.
    Count numerator = 0;
    Count quasi_numerator = 0;
    Count denominator = 0;
};

// Citations in year `t` to items published in the `window` preceding years,
// divided by the citable items of those years. The classic indicator uses
// window = 2 (ages 1 and 2). Throws MissingDataError when a window year has
// no record and UndefinedIndicatorError when the denominator is zero.
ImpactReport impact_factor(const CitableHistory& history, int year, int window = 2);

// Largest h such that at least h entries are >= h. Counting-bucket route,
// O(n); the tests check it against an independent sort-and-scan oracle.
Count h_index(std::span<const Count> citation_counts);

}  // namespace citefield
