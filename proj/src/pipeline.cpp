#include "mri/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "mri/codec.hpp"
#include "mri/hybrid.hpp"
#include "mri/resize.hpp"

namespace fs = std::filesystem;

namespace mri {
namespace {

const std::map<std::string, Method> kMethodNames = {
    {"none", Method::None},      {"he", Method::He},
    {"clahe", Method::Clahe},    {"blend", Method::Blend},
    {"he-clahe", Method::HeClahe}, {"clahe-he", Method::ClaheHe},
};

bool decodable_extension(const fs::path& p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm";
}

std::map<std::string, fs::path> stems_of(const fs::path& dir) {
    std::map<std::string, fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || !decodable_extension(e.path())) continue;
        auto stem = e.path().stem().string();
        auto [it, inserted] = out.emplace(stem, e.path());
        if (!inserted)
            throw DuplicateStem("duplicate stem '" + stem + "' in " + dir.string() + " (" +
                                it->second.filename().string() + " vs " +
                                e.path().filename().string() + ")");
    }
    return out;
}

BinaryMask binarize_mask(const GrayImage& img) {
    BinaryMask m(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) m.data[i] = img.data[i] >= 128 ? 1 : 0;
    return m;
}

ProbabilityMap to_probability(const GrayImage& img) {
    ProbabilityMap p(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) p.data[i] = img.data[i] / 255.0f;
    return p;
}

// Static partition of [0, n) across workers: identical results for any count.
template <typename Fn>
void parallel_for_index(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, n);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace

Method parse_method(const std::string& name) {
    auto it = kMethodNames.find(name);
    if (it == kMethodNames.end()) throw std::invalid_argument("unknown method '" + name + "'");
    return it->second;
}

std::string method_name(Method m) {
    for (const auto& [name, method] : kMethodNames)
        if (method == m) return name;
    return "?";
}

int resolve_workers(const RunConfig& cfg) {
    int workers = cfg.workers;
    if (const char* env = std::getenv("MRI_ENHANCE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) workers = workers > 0 ? std::min(workers, cap) : cap;
    }
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(workers, 1);
}

DatasetManifest ingest(const fs::path& image_dir, const std::optional<fs::path>& mask_dir,
                       const std::optional<fs::path>& pred_dir) {
    if (!fs::is_directory(image_dir))
        throw EmptyDataset("image directory not found: " + image_dir.string());
    auto images = stems_of(image_dir);
    if (images.empty()) throw EmptyDataset("no decodable images in " + image_dir.string());

    std::map<std::string, fs::path> masks, preds;
    if (mask_dir) masks = stems_of(*mask_dir);
    if (pred_dir) preds = stems_of(*pred_dir);

    DatasetManifest m;
    for (const auto& [stem, path] : images) {
        ManifestEntry e;
        e.stem = stem;
        e.image = path;
        if (auto it = masks.find(stem); it != masks.end()) {
            e.mask = it->second;
            masks.erase(it);
        }
        if (auto it = preds.find(stem); it != preds.end()) {
            e.pred = it->second;
            preds.erase(it);
        }
        m.entries.push_back(std::move(e));
    }
    for (const auto& [stem, path] : masks)
        m.warnings.push_back("unpaired mask: " + path.string());
    for (const auto& [stem, path] : preds)
        m.warnings.push_back("unpaired prediction: " + path.string());
    return m;
}

GrayImage enhance_image(const GrayImage& img, const RunConfig& cfg) {
    HybridSpec spec;
    spec.clahe = cfg.clahe;
    spec.alpha = cfg.alpha;
    switch (cfg.method) {
        case Method::None:
            return img;
        case Method::He:
            return equalize(img);
        case Method::Clahe:
            return apply_clahe(img, cfg.clahe);
        case Method::Blend:
            spec.mode = HybridMode::WeightedBlend;
            return blend(img, spec);
        case Method::HeClahe:
            spec.mode = HybridMode::HeThenClahe;
            return compose(img, spec);
        case Method::ClaheHe:
            spec.mode = HybridMode::ClaheThenHe;
            return compose(img, spec);
    }
    throw std::logic_error("unreachable");
}

RunSummary run_enhance(const DatasetManifest& manifest, const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    const char* ext = cfg.format == OutputFormat::Png ? ".png" : ".pgm";

    RunSummary summary;
    summary.files.resize(manifest.entries.size());

    parallel_for_index(manifest.entries.size(), resolve_workers(cfg), [&](std::size_t i) {
        const auto& entry = manifest.entries[i];
        FileStatus& st = summary.files[i];
        st.stem = entry.stem;
        try {
            GrayImage img = resize(load_image(entry.image), cfg.out_w, cfg.out_h);
            if (cfg.export_histograms) {
                std::ofstream pre(cfg.out_dir / (entry.stem + ".pre.csv"));
                pre << histogram_csv(compute_histogram(img));
            }
            GrayImage enhanced = enhance_image(img, cfg);
            if (cfg.export_histograms) {
                std::ofstream post(cfg.out_dir / (entry.stem + ".post.csv"));
                post << histogram_csv(compute_histogram(enhanced));
            }
            fs::path out = cfg.out_dir / (entry.stem + ext);
            save_image(out, enhanced);
            st.ok = true;
            st.output = out.string();
        } catch (const std::exception& ex) {
            st.ok = false;
            st.output = ex.what();
        }
    });

    nlohmann::json files = nlohmann::json::array();
    for (const auto& st : summary.files) {
        if (!st.ok) ++summary.failed;
        files.push_back({{"stem", st.stem},
                         {"status", st.ok ? "ok" : "error"},
                         {st.ok ? "output" : "error", st.output}});
    }
    nlohmann::json run = {
        {"schema_version", kSchemaVersion},
        {"tool_version", kToolVersion},
        {"config",
         {{"method", method_name(cfg.method)},
          {"size", {cfg.out_w, cfg.out_h}},
          {"tiles", {cfg.clahe.tiles_x, cfg.clahe.tiles_y}},
          {"clip_limit", cfg.clahe.clip_limit},
          {"alpha", cfg.alpha},
          {"format", cfg.format == OutputFormat::Png ? "png" : "pgm"},
          {"export_histograms", cfg.export_histograms}}},
        {"files", files},
    };
    std::ofstream out(cfg.out_dir / "run_manifest.json");
    out << run.dump(2) << "\n";
    return summary;
}

EvalSummary run_evaluate(const DatasetManifest& manifest, const RunConfig& cfg) {
    EvalSummary summary;
    std::vector<std::optional<MetricsReport>> reports(manifest.entries.size());
    std::vector<std::optional<FileStatus>> failures(manifest.entries.size());

    parallel_for_index(manifest.entries.size(), resolve_workers(cfg), [&](std::size_t i) {
        const auto& entry = manifest.entries[i];
        try {
            if (!entry.mask) throw EmptyInput("missing ground-truth mask");
            if (!entry.pred) throw EmptyInput("missing prediction");
            BinaryMask truth = binarize_mask(load_image(*entry.mask));
            ProbabilityMap pred = to_probability(load_image(*entry.pred));
            reports[i] = score(entry.stem, pred, truth, cfg.threshold_t);
        } catch (const std::exception& ex) {
            failures[i] = FileStatus{entry.stem, false, ex.what()};
        }
    });

    for (auto& r : reports)
        if (r) summary.per_image.push_back(std::move(*r));
    for (auto& f : failures)
        if (f) summary.failures.push_back(std::move(*f));
    if (!summary.per_image.empty()) summary.agg = aggregate(summary.per_image);
    return summary;
}

nlohmann::json evaluation_json(const EvalSummary& s) {
    nlohmann::json per_image = nlohmann::json::array();
    for (const auto& r : s.per_image) {
        per_image.push_back({{"id", r.id},
                             {"tp", r.counts.tp},
                             {"tn", r.counts.tn},
                             {"fp", r.counts.fp},
                             {"fn", r.counts.fn},
                             {"accuracy", r.accuracy},
                             {"loss", r.loss},
                             {"mse", r.mse},
                             {"jaccard", r.jaccard},
                             {"dice", r.dice}});
    }
    nlohmann::json j = {{"schema_version", kSchemaVersion}, {"images", per_image}};
    if (s.agg) {
        const auto& a = *s.agg;
        j["aggregate"] = {{"images", a.images},
                          {"mean_accuracy", a.mean_accuracy},
                          {"mean_loss", a.mean_loss},
                          {"mean_mse", a.mean_mse},
                          {"mean_jaccard", a.mean_jaccard},
                          {"mean_dice", a.mean_dice},
                          {"pooled_accuracy", a.pooled_accuracy},
                          {"pooled_jaccard", a.pooled_jaccard},
                          {"pooled_dice", a.pooled_dice},
                          {"pooled_tp", a.pooled_counts.tp},
                          {"pooled_tn", a.pooled_counts.tn},
                          {"pooled_fp", a.pooled_counts.fp},
                          {"pooled_fn", a.pooled_counts.fn}};
    }
    if (!s.failures.empty()) {
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& f : s.failures) fails.push_back({{"stem", f.stem}, {"error", f.output}});
        j["failures"] = fails;
    }
    return j;
}

std::string evaluation_csv(const EvalSummary& s) {
    std::string out = "id,tp,tn,fp,fn,accuracy,loss,mse,jaccard,dice\n";
    char line[512];
    for (const auto& r : s.per_image) {
        std::snprintf(line, sizeof line, "%s,%llu,%llu,%llu,%llu,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      r.id.c_str(), static_cast<unsigned long long>(r.counts.tp),
                      static_cast<unsigned long long>(r.counts.tn),
                      static_cast<unsigned long long>(r.counts.fp),
                      static_cast<unsigned long long>(r.counts.fn), r.accuracy, r.loss, r.mse,
                      r.jaccard, r.dice);
        out += line;
    }
    return out;
}

}  // namespace mri
