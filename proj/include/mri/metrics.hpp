#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mri/image.hpp"

namespace mri {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
};

/// Per-image scores. The positive class is mask value 1 (tumor).
struct MetricsReport {
    std::string id;
    ConfusionCounts counts;
    double accuracy = 0.0;
    double loss = 0.0;
    double mse = 0.0;
    double jaccard = 0.0;
    double dice = 0.0;
};

/// Dataset-level summary. Mean-over-images and pooled-counts variants of the
/// count-based metrics generally differ; both are reported.
struct AggregateReport {
    std::size_t images = 0;
    ConfusionCounts pooled_counts;
    double mean_accuracy = 0.0, mean_loss = 0.0, mean_mse = 0.0;
    double mean_jaccard = 0.0, mean_dice = 0.0;
    double pooled_accuracy = 0.0, pooled_jaccard = 0.0, pooled_dice = 0.0;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth);

/// (TP+TN) / total.
double accuracy(const ConfusionCounts& c);

/// Binary cross-entropy, natural log, predictions clamped to [1e-7, 1-1e-7].
double bce_loss(const ProbabilityMap& pred, const BinaryMask& truth);

/// Mean squared per-pixel difference, mask values read as reals in {0,1}.
double mse(const ProbabilityMap& pred, const BinaryMask& truth);

/// TP / (TP+FP+FN); 1.0 when both masks are empty.
double jaccard(const ConfusionCounts& c);

/// 2TP / (2TP+FP+FN); 1.0 when both masks are empty.
double dice(const ConfusionCounts& c);

MetricsReport score(const std::string& id, const ProbabilityMap& pred,
                    const BinaryMask& truth, float threshold_t);

/// Unweighted mean of each metric over reports sorted by id; counts summed.
AggregateReport aggregate(std::vector<MetricsReport> reports);

}  // namespace mri
