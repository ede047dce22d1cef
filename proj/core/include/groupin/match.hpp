#pragma once

#include <optional>
#include <span>
#include <vector>

#include "groupin/preprocess.hpp"

namespace groupin {

/// Max-possible-distance parameter for the multi-dimensional RSSI distance.
struct MddParams {
    double zeta = 7.0;

    void validate() const {
        if (!(zeta > 1.0 && zeta <= 10.0)) {
            throw ConfigError("zeta must satisfy 1 < zeta <= 10");
        }
    }
};

/// Position weights for the fingerprint match score. weights must be
/// non-increasing, non-negative, with weights[0] > 0. resized(n) pads with
/// the smallest weight or truncates so the vector covers n positions.
class MatchScoreVector {
public:
    MatchScoreVector() : weights_{5.0, 2.0, 1.0} {}
    explicit MatchScoreVector(std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    MatchScoreVector resized(std::size_t n) const;

    double total() const;

private:
    std::vector<double> weights_;
};

/// Canonically ordered pair score (a < b). For similarity values the range
/// is [0, 1]; MDD values are distances in [0, zeta].
struct PairScore {
    DeviceId a;
    DeviceId b;
    double value = 0.0;
    std::size_t support = 0;  // contributing sampling slots
};

/// Multi-dimensional RSSI distance between two slot trace lists. At least
/// one list must be non-empty; a missing side contributes 10^nrssi of the
/// present side. Returns psi/xi when sqrt(mu) >= psi, else sqrt(mu)/(psi*xi).
double mdd_slot(std::span<const WirelessTrace> slot_a,
                std::span<const WirelessTrace> slot_b,
                const MddParams& params);

/// Mean slot distance over the sampling times where at least one of the two
/// devices is observed. Returns nullopt when no such slot exists.
std::optional<PairScore> mdd_interval(const WirelessFingerprint& a,
                                      const WirelessFingerprint& b,
                                      const MddParams& params);

/// Positional match score of two ordered slot lists. Both lists must be
/// non-empty; eta sums the first n weights regardless of how many scanners
/// reported in the slot. Returns a value in [0, 1].
double wfm_slot(std::span<const WirelessTrace> slot_a,
                std::span<const WirelessTrace> slot_b,
                std::size_t scanner_count, const MatchScoreVector& v);

/// Mean slot score over the sampling times where both devices are observed.
/// Returns nullopt when the devices are never co-observed.
std::optional<PairScore> wfm_interval(const WirelessFingerprint& a,
                                      const WirelessFingerprint& b,
                                      std::size_t scanner_count,
                                      const MatchScoreVector& v);

/// Maps a distance into a similarity weight: 1 - clamp(d / d_max, 0, 1).
double mdd_to_similarity(double distance, double d_max);

enum class Matcher { kWfm, kMdd };

struct MatcherConfig {
    Matcher matcher = Matcher::kWfm;
    MddParams mdd;
    MatchScoreVector upsilon;
};

/// Runs the configured matcher over every canonical device pair of the
/// interval. Output is sorted by (a, b) and contains similarity values in
/// [0, 1] (MDD distances are converted via mdd_to_similarity with
/// d_max = zeta).
std::vector<PairScore> match_interval(const FingerprintSet& fingerprints,
                                      std::size_t scanner_count,
                                      const MatcherConfig& cfg);

}  // namespace groupin
