#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mri/codec.hpp"
#include "mri/histogram.hpp"
#include "mri/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string method = "none";
    std::string tiles = "8,8";
    double clip_limit = 2.0;
    double alpha = 0.5;
    double threshold_t = 0.5;
    std::string size = "256x256";
    std::string format = "pgm";
    bool export_histograms = false;
};

void parse_pair(const std::string& s, char sep, int& a, int& b, const char* what) {
    auto pos = s.find(sep);
    if (pos == std::string::npos) throw CLI::ValidationError(std::string(what) + ": expected two values");
    a = std::stoi(s.substr(0, pos));
    b = std::stoi(s.substr(pos + 1));
    if (a < 1 || b < 1) throw CLI::ValidationError(std::string(what) + ": values must be >= 1");
}

// JSON config mirrors the CLI flags 1:1; flags given on the command line win.
void apply_config_file(CLI::App* cmd, CommonOpts& opts) {
    if (opts.config_path.empty()) return;
    std::ifstream in(opts.config_path);
    if (!in) throw CLI::ValidationError("config: cannot open " + opts.config_path);
    json cfg = json::parse(in);
    auto take = [&](const char* key, const char* flag, auto& dst) {
        if (cfg.contains(key) && cmd->count(flag) == 0) dst = cfg[key].get<std::decay_t<decltype(dst)>>();
    };
    take("method", "--method", opts.method);
    take("tiles", "--tiles", opts.tiles);
    take("clip_limit", "--clip-limit", opts.clip_limit);
    take("alpha", "--alpha", opts.alpha);
    take("threshold", "--threshold", opts.threshold_t);
    take("size", "--size", opts.size);
    take("format", "--format", opts.format);
    take("export_histograms", "--export-histograms", opts.export_histograms);
}

mri::RunConfig build_config(const CommonOpts& opts) {
    mri::RunConfig cfg;
    cfg.method = mri::parse_method(opts.method);
    parse_pair(opts.tiles, ',', cfg.clahe.tiles_x, cfg.clahe.tiles_y, "--tiles");
    parse_pair(opts.size, 'x', cfg.out_w, cfg.out_h, "--size");
    cfg.clahe.clip_limit = opts.clip_limit;
    cfg.alpha = opts.alpha;
    cfg.threshold_t = static_cast<float>(opts.threshold_t);
    cfg.export_histograms = opts.export_histograms;
    if (opts.format == "png")
        cfg.format = mri::OutputFormat::Png;
    else if (opts.format == "pgm")
        cfg.format = mri::OutputFormat::Pgm;
    else
        throw CLI::ValidationError("--format must be pgm or png");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw CLI::ValidationError("--alpha must be in [0,1]");
    if (cfg.threshold_t < 0.f || cfg.threshold_t > 1.f)
        throw CLI::ValidationError("--threshold must be in [0,1]");
    if (cfg.clahe.clip_limit < 1.0) throw CLI::ValidationError("--clip-limit must be >= 1");
    return cfg;
}

int cmd_enhance(CLI::App* cmd, CommonOpts& opts, const std::string& in_dir,
                const std::string& out_dir) {
    apply_config_file(cmd, opts);
    mri::RunConfig cfg = build_config(opts);
    cfg.out_dir = out_dir;
    auto manifest = mri::ingest(in_dir, std::nullopt, std::nullopt);
    for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    auto summary = mri::run_enhance(manifest, cfg);
    int ok = 0;
    for (const auto& f : summary.files) {
        if (f.ok)
            ++ok;
        else
            std::cerr << "error: " << f.stem << ": " << f.output << "\n";
    }
    std::cout << ok << "/" << summary.files.size() << " images enhanced ("
              << mri::method_name(cfg.method) << ") -> " << out_dir << "\n";
    return summary.failed > 0 ? 1 : 0;
}

int cmd_evaluate(CLI::App* cmd, CommonOpts& opts, const std::string& truth_dir,
                 const std::string& pred_dir, const std::string& out_path,
                 const std::string& csv_path) {
    apply_config_file(cmd, opts);
    mri::RunConfig cfg = build_config(opts);
    // truth images double as the manifest's image list so stems pair 1:1
    auto manifest = mri::ingest(truth_dir, truth_dir, pred_dir);
    for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    auto summary = mri::run_evaluate(manifest, cfg);
    for (const auto& f : summary.failures)
        std::cerr << "error: " << f.stem << ": " << f.output << "\n";

    json report = mri::evaluation_json(summary);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << report.dump(2) << "\n";
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << mri::evaluation_csv(summary);
    }
    if (summary.agg)
        std::cout << summary.per_image.size() << " images scored, mean dice "
                  << summary.agg->mean_dice << " -> " << out_path << "\n";
    return summary.failures.empty() ? 0 : 1;
}

int cmd_histogram(const std::string& in_path, const std::string& out_path) {
    auto img = mri::load_image(in_path);
    auto h = mri::compute_histogram(img);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    if (fs::path(out_path).extension() == ".json")
        out << mri::histogram_json(h).dump(2) << "\n";
    else
        out << mri::histogram_csv(h);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brain MRI contrast enhancement and segmentation scoring"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string in_dir, out_dir, truth_dir, pred_dir, report_path, csv_path;
    std::string hist_in, hist_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config file (flags override)");
        cmd->add_option("--method", opts.method, "none|he|clahe|blend|he-clahe|clahe-he");
        cmd->add_option("--tiles", opts.tiles, "CLAHE tile grid, e.g. 8,8");
        cmd->add_option("--clip-limit", opts.clip_limit, "CLAHE clip limit (>= 1)");
        cmd->add_option("--alpha", opts.alpha, "blend weight toward HE, in [0,1]");
        cmd->add_option("--threshold", opts.threshold_t, "probability threshold in [0,1]");
        cmd->add_option("--size", opts.size, "resize target, e.g. 256x256");
        cmd->add_option("--format", opts.format, "output format: pgm|png");
        cmd->add_flag("--export-histograms", opts.export_histograms,
                      "write pre/post histogram CSVs per image");
    };

    auto* enhance = app.add_subcommand("enhance", "Batch-enhance an image directory");
    enhance->add_option("--in", in_dir, "input image directory")->required();
    enhance->add_option("--out", out_dir, "output directory")->required();
    add_common(enhance);

    auto* evaluate = app.add_subcommand("evaluate", "Score predicted masks against ground truth");
    evaluate->add_option("--truth", truth_dir, "ground-truth mask directory")->required();
    evaluate->add_option("--pred", pred_dir, "predicted mask/probability directory")->required();
    evaluate->add_option("--out", report_path, "JSON report path")->required();
    evaluate->add_option("--csv", csv_path, "optional CSV report path");
    add_common(evaluate);

    auto* histogram = app.add_subcommand("histogram", "Export an image's histogram");
    histogram->add_option("--in", hist_in, "input image")->required();
    histogram->add_option("--out", hist_out, "output .csv or .json path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enhance->parsed()) return cmd_enhance(enhance, opts, in_dir, out_dir);
        if (evaluate->parsed())
            return cmd_evaluate(evaluate, opts, truth_dir, pred_dir, report_path, csv_path);
        if (histogram->parsed()) return cmd_histogram(hist_in, hist_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
