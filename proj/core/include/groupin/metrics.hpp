#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "groupin/cluster.hpp"

namespace groupin {

struct PairwiseResult {
    double score = 1.0;
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t population = 0;
};

/// (TP + TN) / C(|P|, 2) over all device pairs. Both labelings must cover
/// the same device set. With fewer than two devices there are no pairs to
/// misclassify and the score is defined as 1.
PairwiseResult pairwise_score(const GroupLabeling& predicted, const GroupLabeling& truth);

/// Fraction of devices whose predicted group was matched to their truth
/// group, under one-to-one greedy matching by descending intersection size
/// (ties: larger predicted group, then lexicographic smallest member).
double jaccard_score(const GroupLabeling& predicted, const GroupLabeling& truth);

struct IntervalAccuracy {
    std::int64_t interval_index = 0;
    double pairwise = 0.0;
    double jaccard = 0.0;
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t population = 0;
};

struct AccuracyReport {
    std::vector<IntervalAccuracy> intervals;
    double pairwise_mean = 0.0;
    double pairwise_std = 0.0;
    double jaccard_mean = 0.0;
    double jaccard_std = 0.0;

    static AccuracyReport from_intervals(std::vector<IntervalAccuracy> rows);
};

/// CSV with fixed columns: interval_index,pairwise,jaccard,tp,tn,population.
void write_accuracy_csv(std::ostream& out, const AccuracyReport& report);

}  // namespace groupin
