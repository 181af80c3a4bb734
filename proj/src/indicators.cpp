#include "citefield/indicators.hpp"

#include <algorithm>
#include <vector>

#include "citefield/errors.hpp"

namespace citefield {

ImpactReport impact_factor(const CitableHistory& history, int year, int window) {
    if (window < 1)
        throw Error("impact factor window must be >= 1");
    ImpactReport report;
    report.year = year;
    for (int age = 1; age <= window; ++age) {
        const int pub_year = year - age;
        auto it = history.find(pub_year);
        if (it == history.end())
            throw MissingDataError("no citable record for publication year " +
                                   std::to_string(pub_year));
        const CitableRecord& rec = it->second;
        if (report.journal.empty()) report.journal = rec.journal;
        report.denominator += rec.citable_items;

        auto cites = rec.cites_by_age.find(age);
        const Count c = cites == rec.cites_by_age.end() ? 0 : cites->second;
        auto self = rec.self_cites_by_age.find(age);
        const Count s = self == rec.self_cites_by_age.end() ? 0 : self->second;
        report.numerator += c;
        report.quasi_numerator += c - s;
    }
    if (report.denominator == 0)
        throw UndefinedIndicatorError("no citable items in the " + std::to_string(window) +
                                      "-year window before " + std::to_string(year));
    report.impact_factor =
        static_cast<double>(report.numerator) / static_cast<double>(report.denominator);
    report.quasi_impact_factor =
        static_cast<double>(report.quasi_numerator) / static_cast<double>(report.denominator);
    return report;
}

Count h_index(std::span<const Count> citation_counts) {
    const Count n = static_cast<Count>(citation_counts.size());
    if (n == 0) return 0;
    // at_least[c] = number of entries with exactly min(count, n) citations.
    // h can never exceed n, so larger counts saturate at n.
    std::vector<Count> bucket(static_cast<size_t>(n) + 1, 0);
    for (Count c : citation_counts) {
        if (c < 0) throw Error("negative citation count");
        ++bucket[static_cast<size_t>(std::min(c, n))];
    }
    Count running = 0;
    for (Count h = n; h >= 1; --h) {
        running += bucket[static_cast<size_t>(h)];
        if (running >= h) return h;
    }
    return 0;
}

}  // namespace citefield
