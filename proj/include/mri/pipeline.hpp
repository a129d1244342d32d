#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mri/clahe.hpp"
#include "mri/metrics.hpp"

namespace mri {

class EmptyDataset : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateStem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Method { None, He, Clahe, Blend, HeClahe, ClaheHe };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct ManifestEntry {
    std::string stem;
    std::filesystem::path image;
    std::optional<std::filesystem::path> mask;
    std::optional<std::filesystem::path> pred;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;  // lexicographic by stem
    std::vector<std::string> warnings;   // unpaired masks/predictions
};

enum class OutputFormat { Pgm, Png };

struct RunConfig {
    Method method = Method::None;
    int out_w = 256;
    int out_h = 256;
    ClaheParams clahe;
    double alpha = 0.5;
    float threshold_t = 0.5f;
    std::filesystem::path out_dir;
    OutputFormat format = OutputFormat::Pgm;
    bool export_histograms = false;
    int workers = 0;  // 0 = resolve from MRI_ENHANCE_THREADS / hardware
};

/// Pair files across directories by file stem. Every image is listed;
/// unpaired masks and predictions only produce warnings.
DatasetManifest ingest(const std::filesystem::path& image_dir,
                       const std::optional<std::filesystem::path>& mask_dir,
                       const std::optional<std::filesystem::path>& pred_dir);

struct FileStatus {
    std::string stem;
    bool ok = false;
    std::string output;  // path written, or error message
};

struct RunSummary {
    std::vector<FileStatus> files;
    int failed = 0;
};

/// decode -> resize -> enhance -> write, per entry, on a bounded worker
/// pool. Output is bit-identical regardless of worker count. A run manifest
/// JSON is written to out_dir at the end; per-file failures are recorded
/// there without aborting the batch.
RunSummary run_enhance(const DatasetManifest& manifest, const RunConfig& cfg);

struct EvalSummary {
    std::vector<MetricsReport> per_image;
    std::vector<FileStatus> failures;
    std::optional<AggregateReport> agg;  // absent when no image scored
};

/// Score predictions (8-bit values / 255, thresholded at cfg.threshold_t)
/// against ground-truth masks (binarized at >= 128).
EvalSummary run_evaluate(const DatasetManifest& manifest, const RunConfig& cfg);

nlohmann::json evaluation_json(const EvalSummary& s);
std::string evaluation_csv(const EvalSummary& s);

GrayImage enhance_image(const GrayImage& img, const RunConfig& cfg);

int resolve_workers(const RunConfig& cfg);

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mri
