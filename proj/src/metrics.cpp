#include "mri/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mri/kernels.hpp"

namespace mri {
namespace {

constexpr double kBceEps = 1e-7;

void require_same_dims(int wa, int ha, int wb, int hb, const char* what) {
    if (wa != wb || ha != hb)
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(wa) + "x" +
                                std::to_string(ha) + " vs " + std::to_string(wb) + "x" +
                                std::to_string(hb));
}

}  // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_dims(pred.width, pred.height, truth.width, truth.height, "confusion");
    auto t = kernels::active_ops().confusion(pred.data.data(), truth.data.data(), pred.size());
    return {t.tp, t.tn, t.fp, t.fn};
}

double accuracy(const ConfusionCounts& c) {
    if (c.total() == 0) throw EmptyInput("accuracy: zero pixels");
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

double bce_loss(const ProbabilityMap& pred, const BinaryMask& truth) {
    require_same_dims(pred.width, pred.height, truth.width, truth.height, "bce_loss");
    if (pred.size() == 0) throw EmptyInput("bce_loss: zero pixels");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double p = std::clamp(static_cast<double>(pred.data[i]), kBceEps, 1.0 - kBceEps);
        sum += truth.data[i] ? std::log(p) : std::log(1.0 - p);
    }
    return -sum / static_cast<double>(pred.size());
}

double mse(const ProbabilityMap& pred, const BinaryMask& truth) {
    require_same_dims(pred.width, pred.height, truth.width, truth.height, "mse");
    if (pred.size() == 0) throw EmptyInput("mse: zero pixels");
    double sum = kernels::active_ops().sum_sq_diff(pred.data.data(), truth.data.data(),
                                                   pred.size());
    return sum / static_cast<double>(pred.size());
}

double jaccard(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fp + c.fn;
    if (denom == 0) return 1.0;  // both masks empty: correct negative result
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double dice(const ConfusionCounts& c) {
    const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) return 1.0;
    return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

MetricsReport score(const std::string& id, const ProbabilityMap& pred,
                    const BinaryMask& truth, float threshold_t) {
    MetricsReport r;
    r.id = id;
    r.counts = confusion(threshold(pred, threshold_t), truth);
    r.accuracy = accuracy(r.counts);
    r.loss = bce_loss(pred, truth);
    r.mse = mse(pred, truth);
    r.jaccard = jaccard(r.counts);
    r.dice = dice(r.counts);
    return r;
}

AggregateReport aggregate(std::vector<MetricsReport> reports) {
    if (reports.empty()) throw EmptyInput("aggregate: no reports");
    // fixed summation order for determinism
    std::sort(reports.begin(), reports.end(),
              [](const MetricsReport& a, const MetricsReport& b) { return a.id < b.id; });

    AggregateReport agg;
    agg.images = reports.size();
    for (const auto& r : reports) {
        agg.pooled_counts.tp += r.counts.tp;
        agg.pooled_counts.tn += r.counts.tn;
        agg.pooled_counts.fp += r.counts.fp;
        agg.pooled_counts.fn += r.counts.fn;
        agg.mean_accuracy += r.accuracy;
        agg.mean_loss += r.loss;
        agg.mean_mse += r.mse;
        agg.mean_jaccard += r.jaccard;
        agg.mean_dice += r.dice;
    }
    const auto n = static_cast<double>(reports.size());
    agg.mean_accuracy /= n;
    agg.mean_loss /= n;
    agg.mean_mse /= n;
    agg.mean_jaccard /= n;
    agg.mean_dice /= n;
    agg.pooled_accuracy = accuracy(agg.pooled_counts);
    agg.pooled_jaccard = jaccard(agg.pooled_counts);
    agg.pooled_dice = dice(agg.pooled_counts);
    return agg;
}

}  // namespace mri
