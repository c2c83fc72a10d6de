// dvr: sample datasets, compute persistence diagrams and compare them.
//
// Exit codes: 0 success, 2 usage error, 3 input error, 4 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dvr/datasets.hpp"
#include "dvr/diagram_metrics.hpp"
#include "dvr/errors.hpp"
#include "dvr/filtration.hpp"
#include "dvr/io.hpp"
#include "dvr/persistence.hpp"
#include "dvr/scaled_metric.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kInput = 3, kNumeric = 4 };

// Thrown for unusable files (as opposed to bad flags).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PhConfig {
    std::string input;
    std::string filtration = "dvr";
    int intrinsic_dim = 1;
    std::string k = "10";
    int ell = 5;
    int k_max = 0;
    std::string kernel = "biweight";
    int field = dvr::kDefaultField;
    int max_dim = 1;
    std::optional<double> cap;
    bool force_kde = false;
    std::string out;
    std::string svg;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw InputError("write to " + path + " failed");
}

int run_sample(const std::string& dataset, std::uint64_t seed, std::size_t n, const std::string& out) {
    const auto cloud = dvr::sample_named(dataset, seed, n);
    std::ostringstream csv;
    dvr::write_point_cloud_csv(csv, cloud);
    write_text(out, csv.str());
    return kOk;
}

std::string json_string(std::string_view s) { return "\"" + std::string(s) + "\""; }

int run_ph(const PhConfig& cfg) {
    const auto cloud = dvr::load_point_cloud(cfg.input);
    if (cloud.empty()) throw InputError(cfg.input + ": no points");
    const auto family = dvr::parse_filtration_family(cfg.filtration);
    if (!dvr::is_prime(cfg.field)) throw std::invalid_argument("--field must be prime");
    if (cfg.max_dim < 0) throw std::invalid_argument("--max-dim must be >= 0");
    if (cfg.intrinsic_dim < 1) throw std::invalid_argument("--n must be >= 1");

    std::string meta = "\"run\": {\"filtration\": " + json_string(cfg.filtration) +
                       ", \"points\": " + std::to_string(cloud.size());
    dvr::PersistenceDiagram dgm;
    switch (family) {
        case dvr::FiltrationFamily::vr:
            dgm = dvr::flag_persistence(dvr::vr_flag(dvr::DistanceMatrix::euclidean(cloud), cfg.cap), cfg.max_dim,
                                        cfg.field);
            break;
        case dvr::FiltrationFamily::dvr: {
            dvr::DvrOptions opt;
            opt.intrinsic_dim = cfg.intrinsic_dim;
            opt.kernel = dvr::parse_kernel_family(cfg.kernel);
            opt.use_oracle_density = !cfg.force_kde;
            if (cfg.k == "auto") {
                if (cfg.ell < 1) throw std::invalid_argument("--ell must be >= 1");
                const int k_max = cfg.k_max > 0 ? cfg.k_max : static_cast<int>(std::min<std::size_t>(cloud.size() - 1, 50));
                opt.k = dvr::select_k(cloud, cfg.ell, k_max);
                meta += ", \"k_mode\": \"auto\", \"ell\": " + std::to_string(cfg.ell);
            } else {
                try {
                    std::size_t used = 0;
                    opt.k = std::stoi(cfg.k, &used);
                    if (used != cfg.k.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw std::invalid_argument("--k must be an integer or 'auto'");
                }
            }
            meta += ", \"n\": " + std::to_string(cfg.intrinsic_dim) + ", \"k\": " + std::to_string(opt.k) +
                    ", \"kernel\": " + json_string(cfg.kernel) +
                    ", \"density\": " + json_string(opt.use_oracle_density && cloud.oracle_density() ? "oracle" : "kde");
            dgm = dvr::flag_persistence(dvr::dvr_flag(cloud, opt, cfg.cap), cfg.max_dim, cfg.field);
            break;
        }
        case dvr::FiltrationFamily::wvr: {
            dvr::DvrOptions opt;
            opt.intrinsic_dim = cfg.intrinsic_dim;
            opt.kernel = dvr::parse_kernel_family(cfg.kernel);
            opt.use_oracle_density = !cfg.force_kde;
            const auto density = dvr::dvr_densities(cloud, opt);
            meta += ", \"n\": " + std::to_string(cfg.intrinsic_dim) + ", \"kernel\": " + json_string(cfg.kernel);
            dgm = dvr::flag_persistence(dvr::weighted_vr_flag(cloud, density, cfg.intrinsic_dim, cfg.cap), cfg.max_dim,
                                        cfg.field);
            break;
        }
        case dvr::FiltrationFamily::knn: {
            std::optional<int> k_cap;
            if (cfg.cap) k_cap = static_cast<int>(*cfg.cap);
            dgm = dvr::flag_persistence(dvr::knn_flag(cloud, k_cap), cfg.max_dim, cfg.field);
            break;
        }
        case dvr::FiltrationFamily::cech:
            dgm = dvr::compute_persistence(dvr::cech_filtration_euclidean(cloud, cfg.max_dim, cfg.cap), cfg.max_dim,
                                           cfg.field);
            break;
    }
    meta += "}";
    write_text(cfg.out, dvr::diagram_to_json(dgm, meta));
    if (!cfg.svg.empty()) write_text(cfg.svg, dvr::diagram_to_svg(dgm));
    return kOk;
}

int run_knn_diag(const std::string& input, int k_max, const std::string& out) {
    const auto cloud = dvr::load_point_cloud(input);
    std::string csv = "k,components\n";
    for (const auto& [k, count] : dvr::component_counts(cloud, k_max))
        csv += std::to_string(k) + "," + std::to_string(count) + "\n";
    write_text(out, csv);
    return kOk;
}

int run_bottleneck(const std::string& a, const std::string& b, int dim) {
    const double d = dvr::bottleneck(dvr::load_diagram(a), dvr::load_diagram(b), dim);
    if (std::isinf(d)) {
        std::cout << "inf\n";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", d);
        std::cout << buf << '\n';
    }
    return kOk;
}

int run_plot(const std::string& input, const std::string& out) {
    write_text(out, dvr::diagram_to_svg(dvr::load_diagram(input)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-scaled Vietoris-Rips persistent homology"};
    app.require_subcommand(1);

    std::string dataset, out;
    std::uint64_t seed = 0;
    std::size_t n_points = 0;
    auto* sample = app.add_subcommand("sample", "Write a seeded dataset as CSV");
    sample->add_option("dataset", dataset, "two-circles | cassini | noisy-circle | two-squares | lorenz-delay")->required();
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--n", n_points, "Number of points (circle points for noisy-circle); 0 = dataset default");
    sample->add_option("--out", out, "Output path (default stdout)");

    PhConfig ph_cfg;
    auto* ph = app.add_subcommand("ph", "Persistence diagram of a point cloud CSV");
    ph->add_option("input", ph_cfg.input, "Point cloud CSV")->required();
    ph->add_option("--filtration", ph_cfg.filtration, "vr | dvr | wvr | knn | cech")
        ->check(CLI::IsMember({"vr", "dvr", "wvr", "knn", "cech"}));
    ph->add_option("--n", ph_cfg.intrinsic_dim, "Intrinsic dimension");
    ph->add_option("--k", ph_cfg.k, "kNN parameter, or 'auto'");
    ph->add_option("--ell", ph_cfg.ell, "Plateau length for --k auto");
    ph->add_option("--k-max", ph_cfg.k_max, "Largest k examined by --k auto (default min(N-1, 50))");
    ph->add_option("--kernel", ph_cfg.kernel, "biweight | epanechnikov | triweight")
        ->check(CLI::IsMember({"biweight", "epanechnikov", "triweight"}));
    ph->add_option("--field", ph_cfg.field, "Prime coefficient field");
    ph->add_option("--max-dim", ph_cfg.max_dim, "Largest homology dimension");
    ph->add_option("--cap", ph_cfg.cap, "Largest retained filtration value (knn: largest k)");
    ph->add_flag("--kde", ph_cfg.force_kde, "Use the kernel estimate even when the CSV has a density column");
    ph->add_option("--out", ph_cfg.out, "Diagram JSON path (default stdout)");
    ph->add_option("--svg", ph_cfg.svg, "Also write an SVG plot");

    std::string knn_input, knn_out;
    int k_max = 20;
    auto* knn = app.add_subcommand("knn-diag", "Component count of the kNN graph for k = 1..k_max");
    knn->add_option("input", knn_input, "Point cloud CSV")->required();
    knn->add_option("--k-max", k_max, "Largest k");
    knn->add_option("--out", knn_out, "Output CSV (default stdout)");

    std::string diag_a, diag_b;
    int dim = 0;
    auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between two diagrams");
    bn->add_option("a", diag_a, "Diagram JSON")->required();
    bn->add_option("b", diag_b, "Diagram JSON")->required();
    bn->add_option("--dim", dim, "Homology dimension");

    std::string plot_input, plot_out;
    auto* plot = app.add_subcommand("plot", "Render a diagram as SVG");
    plot->add_option("input", plot_input, "Diagram JSON")->required();
    plot->add_option("--out", plot_out, "Output SVG (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*sample) return run_sample(dataset, seed, n_points, out);
        if (*ph) return run_ph(ph_cfg);
        if (*knn) return run_knn_diag(knn_input, k_max, knn_out);
        if (*bn) return run_bottleneck(diag_a, diag_b, dim);
        if (*plot) return run_plot(plot_input, plot_out);
    } catch (const dvr::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const dvr::DegenerateInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const dvr::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
