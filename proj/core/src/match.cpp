#include "groupin/match.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace groupin {

MatchScoreVector::MatchScoreVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw ConfigError("match score vector must be non-empty");
    }
    if (weights_.front() <= 0.0) {
        throw ConfigError("match score vector head must be > 0");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < 0.0 || (i > 0 && weights_[i] > weights_[i - 1])) {
            throw ConfigError("match score vector must be non-increasing and non-negative");
        }
    }
}

MatchScoreVector MatchScoreVector::resized(std::size_t n) const {
    std::vector<double> w(weights_.begin(),
                          weights_.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(n, weights_.size())));
    while (w.size() < n) w.push_back(weights_.back());
    return MatchScoreVector(std::move(w));
}

double MatchScoreVector::total() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double mdd_slot(std::span<const WirelessTrace> slot_a,
                std::span<const WirelessTrace> slot_b,
                const MddParams& params) {
    params.validate();
    if (slot_a.empty() && slot_b.empty()) {
        throw InputError("mdd_slot requires at least one non-empty slot list");
    }

    // Union of scanner dimensions present in this slot.
    std::vector<ScannerId> dims;
    for (const auto& t : slot_a) dims.push_back(t.scanner);
    for (const auto& t : slot_b) dims.push_back(t.scanner);
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    const auto xi = static_cast<double>(dims.size());
    const double psi = std::sqrt(xi * params.zeta * params.zeta);

    const auto lookup = [](std::span<const WirelessTrace> traces, const ScannerId& scanner)
        -> std::optional<double> {
        for (const auto& t : traces) {
            if (t.scanner == scanner) return t.nrssi;
        }
        return std::nullopt;
    };

    double mu = 0.0;
    for (const auto& scanner : dims) {
        const auto na = lookup(slot_a, scanner);
        const auto nb = lookup(slot_b, scanner);
        if (na && nb) {
            mu += std::abs(std::pow(10.0, *na) - std::pow(10.0, *nb));
        } else if (na) {
            mu += std::pow(10.0, *na);
        } else if (nb) {
            mu += std::pow(10.0, *nb);
        }
    }

    const double root = std::sqrt(mu);
    if (root >= psi) {
        return psi / xi;
    }
    return root / (psi * xi);
}

std::optional<PairScore> mdd_interval(const WirelessFingerprint& a,
                                      const WirelessFingerprint& b,
                                      const MddParams& params) {
    double sum = 0.0;
    std::size_t support = 0;
    const int slots = std::max(a.slot_count(), b.slot_count());
    for (int slot = 0; slot < slots; ++slot) {
        const bool has_a = slot < a.slot_count() && a.present_in_slot(slot);
        const bool has_b = slot < b.slot_count() && b.present_in_slot(slot);
        if (!has_a && !has_b) continue;
        sum += mdd_slot(has_a ? std::span<const WirelessTrace>(a.slot(slot))
                              : std::span<const WirelessTrace>{},
                        has_b ? std::span<const WirelessTrace>(b.slot(slot))
                              : std::span<const WirelessTrace>{},
                        params);
        ++support;
    }
    if (support == 0) return std::nullopt;
    PairScore score{a.device(), b.device(), sum / static_cast<double>(support), support};
    if (score.b < score.a) std::swap(score.a, score.b);
    return score;
}

double wfm_slot(std::span<const WirelessTrace> slot_a,
                std::span<const WirelessTrace> slot_b,
                std::size_t scanner_count, const MatchScoreVector& v) {
    if (slot_a.empty() || slot_b.empty()) {
        throw InputError("wfm_slot requires both slot lists non-empty");
    }
    const MatchScoreVector weights = v.resized(scanner_count);
    const double eta = weights.total();
    double mu = 0.0;
    const std::size_t positions = std::min({slot_a.size(), slot_b.size(), scanner_count});
    for (std::size_t i = 0; i < positions; ++i) {
        if (slot_a[i].scanner == slot_b[i].scanner) {
            mu += weights.weights()[i];
        }
    }
    return mu / eta;
}

std::optional<PairScore> wfm_interval(const WirelessFingerprint& a,
                                      const WirelessFingerprint& b,
                                      std::size_t scanner_count,
                                      const MatchScoreVector& v) {
    double sum = 0.0;
    std::size_t support = 0;
    const int slots = std::min(a.slot_count(), b.slot_count());
    for (int slot = 0; slot < slots; ++slot) {
        if (!a.present_in_slot(slot) || !b.present_in_slot(slot)) continue;
        sum += wfm_slot(a.slot(slot), b.slot(slot), scanner_count, v);
        ++support;
    }
    if (support == 0) return std::nullopt;
    PairScore score{a.device(), b.device(), sum / static_cast<double>(support), support};
    if (score.b < score.a) std::swap(score.a, score.b);
    return score;
}

double mdd_to_similarity(double distance, double d_max) {
    if (distance < 0.0) {
        throw InputError("mdd_to_similarity requires a non-negative distance");
    }
    if (!(d_max > 0.0)) {
        throw ConfigError("d_max must be > 0");
    }
    return 1.0 - std::clamp(distance / d_max, 0.0, 1.0);
}

std::vector<PairScore> match_interval(const FingerprintSet& fingerprints,
                                      std::size_t scanner_count,
                                      const MatcherConfig& cfg) {
    std::vector<PairScore> scores;
    for (auto it_a = fingerprints.begin(); it_a != fingerprints.end(); ++it_a) {
        for (auto it_b = std::next(it_a); it_b != fingerprints.end(); ++it_b) {
            std::optional<PairScore> score;
            if (cfg.matcher == Matcher::kWfm) {
                score = wfm_interval(it_a->second, it_b->second, scanner_count, cfg.upsilon);
            } else {
                score = mdd_interval(it_a->second, it_b->second, cfg.mdd);
                if (score) {
                    score->value = mdd_to_similarity(score->value, cfg.mdd.zeta);
                }
            }
            if (score) scores.push_back(std::move(*score));
        }
    }
    return scores;
}

}  // namespace groupin
