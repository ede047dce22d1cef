#include "groupin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "groupin/io.hpp"

namespace groupin {

namespace {

void check_same_domain(const GroupLabeling& predicted, const GroupLabeling& truth) {
    if (predicted.size() != truth.size()) {
        throw InputError("labelings cover different device sets");
    }
    for (const auto& [device, label] : truth) {
        (void)label;
        if (!predicted.count(device)) {
            throw InputError("labelings cover different device sets");
        }
    }
}

std::map<int, std::set<DeviceId>> groups_of(const GroupLabeling& labeling) {
    std::map<int, std::set<DeviceId>> groups;
    for (const auto& [device, label] : labeling) {
        groups[label].insert(device);
    }
    return groups;
}

}  // namespace

PairwiseResult pairwise_score(const GroupLabeling& predicted, const GroupLabeling& truth) {
    check_same_domain(predicted, truth);
    PairwiseResult result;
    result.population = truth.size();
    if (truth.size() < 2) {
        result.score = 1.0;
        return result;
    }
    std::size_t pairs = 0;
    for (auto it_a = truth.begin(); it_a != truth.end(); ++it_a) {
        for (auto it_b = std::next(it_a); it_b != truth.end(); ++it_b) {
            ++pairs;
            const bool same_truth = it_a->second == it_b->second;
            const bool same_pred =
                predicted.at(it_a->first) == predicted.at(it_b->first);
            if (same_truth && same_pred) ++result.tp;
            if (!same_truth && !same_pred) ++result.tn;
        }
    }
    result.score = static_cast<double>(result.tp + result.tn) / static_cast<double>(pairs);
    return result;
}

double jaccard_score(const GroupLabeling& predicted, const GroupLabeling& truth) {
    check_same_domain(predicted, truth);
    if (truth.empty()) return 1.0;

    auto pred_groups = groups_of(predicted);
    auto truth_groups = groups_of(truth);

    std::size_t matched = 0;
    while (!pred_groups.empty() && !truth_groups.empty()) {
        // Best (pred, truth) pair by descending intersection, then larger
        // predicted group, then lexicographic members on both sides.
        std::size_t best_inter = 0;
        const std::set<DeviceId>* best_pred = nullptr;
        const std::set<DeviceId>* best_truth = nullptr;
        int best_pred_label = 0;
        int best_truth_label = 0;
        for (const auto& [pl, pg] : pred_groups) {
            for (const auto& [tl, tg] : truth_groups) {
                std::vector<DeviceId> inter;
                std::set_intersection(pg.begin(), pg.end(), tg.begin(), tg.end(),
                                      std::back_inserter(inter));
                const std::size_t size = inter.size();
                bool better = false;
                if (best_pred == nullptr) {
                    better = true;
                } else if (size != best_inter) {
                    better = size > best_inter;
                } else if (pg.size() != best_pred->size()) {
                    better = pg.size() > best_pred->size();
                } else if (pg != *best_pred) {
                    better = std::lexicographical_compare(pg.begin(), pg.end(),
                                                          best_pred->begin(),
                                                          best_pred->end());
                } else if (tg != *best_truth) {
                    better = std::lexicographical_compare(tg.begin(), tg.end(),
                                                          best_truth->begin(),
                                                          best_truth->end());
                }
                if (better) {
                    best_inter = size;
                    best_pred = &pg;
                    best_truth = &tg;
                    best_pred_label = pl;
                    best_truth_label = tl;
                }
            }
        }
        if (best_inter == 0) break;  // remaining groups share no members
        matched += best_inter;
        pred_groups.erase(best_pred_label);
        truth_groups.erase(best_truth_label);
    }
    return static_cast<double>(matched) / static_cast<double>(truth.size());
}

AccuracyReport AccuracyReport::from_intervals(std::vector<IntervalAccuracy> rows) {
    AccuracyReport report;
    report.intervals = std::move(rows);
    if (report.intervals.empty()) return report;
    const auto n = static_cast<double>(report.intervals.size());
    for (const auto& row : report.intervals) {
        report.pairwise_mean += row.pairwise;
        report.jaccard_mean += row.jaccard;
    }
    report.pairwise_mean /= n;
    report.jaccard_mean /= n;
    for (const auto& row : report.intervals) {
        report.pairwise_std += (row.pairwise - report.pairwise_mean) *
                               (row.pairwise - report.pairwise_mean);
        report.jaccard_std += (row.jaccard - report.jaccard_mean) *
                              (row.jaccard - report.jaccard_mean);
    }
    report.pairwise_std = std::sqrt(report.pairwise_std / n);
    report.jaccard_std = std::sqrt(report.jaccard_std / n);
    return report;
}

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report) {
    out << "interval_index,pairwise,jaccard,tp,tn,population\n";
    for (const auto& row : report.intervals) {
        out << row.interval_index << ',' << format_double(row.pairwise) << ','
            << format_double(row.jaccard) << ',' << row.tp << ',' << row.tn << ','
            << row.population << '\n';
    }
}

}  // namespace groupin
