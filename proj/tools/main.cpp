#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "passopt/assessment.hpp"
#include "passopt/core.hpp"
#include "passopt/data_io.hpp"
#include "passopt/dc_profile.hpp"
#include "passopt/montecarlo.hpp"
#include "passopt/performance.hpp"
#include "passopt/randomization.hpp"
#include "passopt/segmentation.hpp"
#include "passopt/stats.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string fmt(double v, int precision = 10) {
    std::ostringstream out;
    out << std::setprecision(precision) << v;
    return out.str();
}

std::string hex_digest(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << body;
    if (!out) throw std::runtime_error("failed writing: " + path.string());
}

struct Options {
    std::string data_path;
    bool synthetic = false;
    std::string config_path;
    std::string out_dir = ".";
    std::string course;
    int year = 0;
    int semester = 0;
    std::string apv = "pass";
    std::string method = "sa";
    int iterations = 800;
    std::uint64_t seed = 1;
    int threads = 0;
    int min_obs = 30;
    bool holdout = false;
};

passopt::ApvKind parse_apv(const std::string& s) {
    return s == "grade" ? passopt::ApvKind::Grade : passopt::ApvKind::PassFail;
}

passopt::Method parse_method(const std::string& s) {
    return s == "ia" ? passopt::Method::IA : passopt::Method::SA;
}

// Dataset selection: --data loads a CSV log, --synthetic (default when
// neither is given) generates the built-in calibrated corpus.
passopt::DatasetHandle resolve_dataset(const Options& opt, nlohmann::json& manifest) {
    if (!opt.data_path.empty() && opt.synthetic)
        throw CLI::ValidationError("--data and --synthetic are mutually exclusive");
    if (!opt.data_path.empty()) {
        manifest["dataset"] = opt.data_path;
        return passopt::load_dataset(opt.data_path);
    }
    manifest["dataset"] = "synthetic:default";
    return passopt::generate_synthetic(passopt::SyntheticConfig::defaults());
}

void write_manifest(const Options& opt, const std::string& subcommand, nlohmann::json manifest) {
    manifest["subcommand"] = subcommand;
    manifest["version"] = kToolVersion;
    write_text(std::filesystem::path(opt.out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

std::filesystem::path ensure_out_dir(const Options& opt) {
    std::filesystem::path out(opt.out_dir);
    std::filesystem::create_directories(out);
    return out;
}

int run_gen_synthetic(const Options& opt, bool seed_given) {
    const auto out = ensure_out_dir(opt);
    passopt::SyntheticConfig cfg = passopt::SyntheticConfig::defaults();
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + opt.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        cfg = passopt::synthetic_config_from_json(buffer.str());
    }
    if (seed_given) cfg.seed = opt.seed;

    const passopt::DatasetHandle data = passopt::generate_synthetic(cfg);
    passopt::write_dataset(data, out / "dataset.csv");

    nlohmann::json manifest;
    manifest["seed"] = cfg.seed;
    manifest["generator"] = nlohmann::json::parse(passopt::synthetic_config_to_json(cfg));
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    write_manifest(opt, "gen-synthetic", std::move(manifest));

    std::cout << "wrote " << data.records.size() << " records to "
              << (out / "dataset.csv").string() << " (fingerprint "
              << hex_digest(passopt::dataset_fingerprint(data)) << ")\n";
    return 0;
}

int run_correlate(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    nlohmann::json manifest;
    const passopt::DatasetHandle data = resolve_dataset(opt, manifest);
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    manifest["course"] = opt.course;

    const auto subset = passopt::filter(
        data, opt.course, opt.year > 0 ? std::optional<int>(opt.year) : std::nullopt,
        opt.semester > 0 ? std::optional<int>(opt.semester) : std::nullopt);
    std::vector<std::string> names = {"section_capacity", "age",      "academic_age",
                                      "enrolled_count",   "grade",    "cancellations",
                                      "attempts",         "gpa",      "pass",
                                      "gender"};
    std::vector<bool> binary = {false, false, false, false, false, false, false, false,
                                true,  true};
    std::vector<std::vector<double>> columns(names.size());
    for (const auto& r : subset.records) {
        if (r.cancelled) continue;
        columns[0].push_back(r.section_capacity);
        columns[1].push_back(r.age);
        columns[2].push_back(r.academic_age);
        columns[3].push_back(r.enrolled_count);
        columns[4].push_back(r.grade());
        columns[5].push_back(r.cancellations);
        columns[6].push_back(r.attempts);
        columns[7].push_back(r.gpa());
        columns[8].push_back(r.pass ? 1.0 : 0.0);
        columns[9].push_back(r.gender);
    }
    const passopt::CorrelationReport report =
        passopt::correlation_report(names, columns, binary);

    std::string csv = "variable";
    for (const auto& n : report.variables()) csv += "," + n;
    csv += "\n";
    const int k = static_cast<int>(report.variables().size());
    for (int i = 0; i < k; ++i) {
        csv += report.variables()[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j) csv += "," + fmt(report.matrix()(i, j), 6);
        csv += "\n";
    }
    write_text(out / "correlations.csv", csv);
    write_manifest(opt, "correlate", std::move(manifest));
    std::cout << csv;
    return 0;
}

int run_segment(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    nlohmann::json manifest;
    const passopt::DatasetHandle data = resolve_dataset(opt, manifest);
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    manifest["course"] = opt.course;
    if (opt.year > 0) manifest["year"] = opt.year;
    if (opt.semester > 0) manifest["semester"] = opt.semester;

    const auto subset = passopt::filter(
        data, opt.course, opt.year > 0 ? std::optional<int>(opt.year) : std::nullopt,
        opt.semester > 0 ? std::optional<int>(opt.semester) : std::nullopt);
    const std::vector<double> gpas = passopt::completed_gpas(subset);
    if (gpas.empty()) throw std::runtime_error("no completed registrations to segment");
    const passopt::SegmentationScheme scheme = passopt::segment(gpas);
    const auto populations = passopt::segment_populations(scheme, gpas);

    std::string csv = "segment,lower,upper,population\n";
    std::cout << "cut points:";
    for (double c : scheme.cut_points()) std::cout << " " << fmt(c, 6);
    std::cout << "\n";
    for (int l = 0; l < scheme.segment_count(); ++l) {
        const auto [lo, hi] = scheme.interval(l);
        csv += std::to_string(l + 1) + "," + fmt(lo, 6) + "," + fmt(hi, 6) + "," +
               std::to_string(populations[static_cast<std::size_t>(l)]) + "\n";
        std::cout << "interval " << (l + 1) << " (" << fmt(lo, 6) << ", " << fmt(hi, 6)
                  << "]: " << populations[static_cast<std::size_t>(l)] << " students\n";
    }
    write_text(out / "segments.csv", csv);
    write_manifest(opt, "segment", std::move(manifest));
    return 0;
}

int run_performance(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    nlohmann::json manifest;
    const passopt::DatasetHandle data = resolve_dataset(opt, manifest);
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    manifest["course"] = opt.course;
    manifest["apv"] = opt.apv;
    manifest["min_obs"] = opt.min_obs;

    const std::vector<double> gpas = passopt::completed_gpas(passopt::filter(data, opt.course));
    if (gpas.empty()) throw std::runtime_error("no completed registrations for the course");
    const passopt::SegmentationScheme scheme = passopt::segment(gpas);
    const passopt::PerformanceTable table =
        passopt::estimate(data, opt.course, scheme, parse_apv(opt.apv), opt.min_obs);

    std::string csv = "instructor,tenured,segment,count,mean,entry,source\n";
    for (const auto& [id, profile] : table.profiles) {
        for (int l = 0; l < table.segment_count; ++l) {
            const auto s = static_cast<std::size_t>(l);
            csv += id + "," + (profile.tenured ? "1" : "0") + "," + std::to_string(l + 1) + "," +
                   std::to_string(profile.counts[s]) + ",";
            if (profile.counts[s] > 0) csv += fmt(profile.means[s], 6);
            csv += "," + fmt(profile.entries[s], 6) + "," +
                   passopt::to_string(profile.sources[s]) + "\n";
        }
    }
    write_text(out / "performance.csv", csv);
    write_manifest(opt, "performance", std::move(manifest));
    std::cout << "estimated " << table.profiles.size() << " instructor profiles over "
              << table.segment_count << " segments (course mean "
              << fmt(table.baseline.course_mean, 6) << ")\n";
    return 0;
}

int run_assess(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    nlohmann::json manifest;
    const passopt::DatasetHandle data = resolve_dataset(opt, manifest);
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    manifest["course"] = opt.course;
    manifest["apv"] = opt.apv;
    manifest["method"] = opt.method;
    manifest["min_obs"] = opt.min_obs;
    manifest["holdout"] = opt.holdout;

    const passopt::HistoryAssessment history =
        passopt::assess_history(data, opt.course, parse_apv(opt.apv), parse_method(opt.method),
                                opt.min_obs, opt.holdout);

    std::string csv = "year,semester,rho\n";
    for (const auto& rec : history.records) {
        csv += std::to_string(rec.year) + "," + std::to_string(rec.semester) + "," +
               fmt(rec.rho, 10) + "\n";
    }
    csv += "mean,," + fmt(history.mean_rho, 10) + "\n";
    write_text(out / "assess.csv", csv);
    write_manifest(opt, "assess", std::move(manifest));

    std::cout << "assessed " << history.records.size() << " terms; mean enhancement "
              << fmt(history.mean_rho, 6) << "%\n";
    if (opt.course == "DC" && parse_apv(opt.apv) == passopt::ApvKind::PassFail) {
        std::cout << "reference means from the original institutional records (not "
                     "reproducible from synthetic data): ia "
                  << passopt::dc::kReferenceHistoricalRhoIA << "%, sa "
                  << passopt::dc::kReferenceHistoricalRhoSA << "%\n";
    }
    return 0;
}

int run_gen_semester(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    passopt::RandomSemesterConfig cfg = passopt::RandomSemesterConfig::dc_defaults();
    cfg.seed = opt.seed;
    const passopt::RandomSemester semester =
        passopt::generate_semester(cfg, passopt::Rng(cfg.seed));

    nlohmann::json manifest;
    manifest["seed"] = cfg.seed;
    manifest["course"] = opt.course;
    manifest["calibration_profile"] = "DC";
    write_manifest(opt, "gen-semester", std::move(manifest));

    const auto& plan = semester.plan;
    std::string plan_csv = "section,capacity\n";
    for (int j = 0; j < plan.sections(); ++j)
        plan_csv += std::to_string(j + 1) + "," +
                    std::to_string(plan.capacities[static_cast<std::size_t>(j)]) + "\n";
    write_text(out / "plan.csv", plan_csv);

    const auto& G = semester.G;
    std::string g_csv = "segment,lower,upper";
    for (int j = 0; j < G.sections(); ++j) g_csv += ",s" + std::to_string(j + 1);
    g_csv += ",total\n";
    for (int l = 0; l < G.segments(); ++l) {
        const auto [lo, hi] = semester.scheme.interval(l);
        g_csv += std::to_string(l + 1) + "," + fmt(lo, 6) + "," + fmt(hi, 6);
        for (int j = 0; j < G.sections(); ++j) g_csv += "," + std::to_string(G.at(l, j));
        g_csv += "," + std::to_string(
                           semester.G.segment_populations()[static_cast<std::size_t>(l)]) +
                 "\n";
    }
    g_csv += "capacity,,";
    for (int j = 0; j < G.sections(); ++j)
        g_csv += "," + std::to_string(G.section_capacities()[static_cast<std::size_t>(j)]);
    g_csv += "," + std::to_string(G.total()) + "\n";
    write_text(out / "gmatrix.csv", g_csv);

    std::cout << "enrollment " << semester.ne << ", sections " << plan.sections()
              << ", segments " << semester.scheme.segment_count() << "\n"
              << "capacity fit distances: " << plan.df_initial << " -> " << plan.df_resized
              << " -> " << plan.df_final << "\n"
              << g_csv;
    return 0;
}

int run_simulate(const Options& opt) {
    const auto out = ensure_out_dir(opt);
    nlohmann::json manifest;
    const passopt::DatasetHandle data = resolve_dataset(opt, manifest);
    manifest["dataset_fingerprint"] = hex_digest(passopt::dataset_fingerprint(data));
    manifest["course"] = opt.course;
    manifest["apv"] = opt.apv;
    manifest["method"] = opt.method;
    manifest["iterations"] = opt.iterations;
    manifest["seed"] = opt.seed;
    manifest["min_obs"] = opt.min_obs;
    const int threads = opt.threads > 0
                            ? opt.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    manifest["threads"] = threads;

    passopt::RandomSemesterConfig cfg = passopt::RandomSemesterConfig::dc_defaults();
    cfg.seed = opt.seed;
    const passopt::SimulationResult result =
        passopt::run_simulation(cfg, data, opt.course, parse_method(opt.method),
                                parse_apv(opt.apv), opt.iterations, opt.min_obs, threads);

    std::string samples_csv = "n,v,rho,gamma\n";
    std::vector<double> rhos, gammas;
    rhos.reserve(result.samples.size());
    gammas.reserve(result.samples.size());
    for (const auto& s : result.samples) {
        samples_csv += std::to_string(s.iteration) + "," + fmt(s.v, 10) + "," +
                       fmt(s.rho, 10) + "," + fmt(s.gamma, 10) + "\n";
        rhos.push_back(s.rho);
        gammas.push_back(s.gamma);
    }
    write_text(out / "samples.csv", samples_csv);

    const auto rho_means = passopt::cesaro_series(rhos);
    const auto gamma_means = passopt::cesaro_series(gammas);
    std::string cesaro_csv = "n,mean_rho,mean_gamma\n";
    for (std::size_t i = 0; i < rho_means.size(); ++i)
        cesaro_csv += std::to_string(i + 1) + "," + fmt(rho_means[i], 10) + "," +
                      fmt(gamma_means[i], 10) + "\n";
    write_text(out / "cesaro.csv", cesaro_csv);

    std::string summary_csv =
        "course,method,apv,iterations,enrollment,sections,tenured,mean_rho,mean_gamma\n";
    summary_csv += opt.course + "," + opt.method + "," + opt.apv + "," +
                   std::to_string(opt.iterations) + "," + std::to_string(result.enrollment) +
                   "," + std::to_string(result.sections) + "," +
                   std::to_string(result.tenured) + "," + fmt(result.tracker.mean_rho(), 10) +
                   "," + fmt(result.tracker.mean_gamma(), 10) + "\n";
    write_text(out / "summary.csv", summary_csv);
    write_manifest(opt, "simulate", std::move(manifest));

    std::cout << summary_csv;
    if (opt.course == "DC" && parse_apv(opt.apv) == passopt::ApvKind::PassFail) {
        const bool sa = parse_method(opt.method) == passopt::Method::SA;
        std::cout << "reference simulated means from the original institutional records "
                     "(not reproducible from synthetic data): rho "
                  << (sa ? passopt::dc::kReferenceSimulatedRhoSA
                         : passopt::dc::kReferenceSimulatedRhoIA)
                  << ", gamma "
                  << (sa ? passopt::dc::kReferenceSimulatedGammaSA
                         : passopt::dc::kReferenceSimulatedGammaIA)
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"passopt: section composition and instructor assignment optimization"};
    app.require_subcommand(1);

    Options gen_opt, cor_opt, seg_opt, perf_opt, ass_opt, sem_opt, sim_opt;

    auto* gen = app.add_subcommand("gen-synthetic", "generate a calibrated synthetic course log");
    gen->add_option("--config", gen_opt.config_path, "generator config JSON");
    auto* gen_seed = gen->add_option("--seed", gen_opt.seed, "generator seed override");
    gen->add_option("--out", gen_opt.out_dir, "output directory");

    const auto add_dataset_flags = [](CLI::App* sub, Options& opt) {
        sub->add_option("--data", opt.data_path, "course log CSV");
        sub->add_flag("--synthetic", opt.synthetic, "use the built-in synthetic corpus");
        sub->add_option("--out", opt.out_dir, "output directory");
    };

    auto* cor = app.add_subcommand("correlate", "pairwise correlations of the record variables");
    add_dataset_flags(cor, cor_opt);
    cor->add_option("--course", cor_opt.course, "course code")->required();
    cor->add_option("--year", cor_opt.year, "restrict to a year");
    cor->add_option("--semester", cor_opt.semester, "restrict to a semester");

    auto* seg = app.add_subcommand("segment", "GPA decile segmentation of a course population");
    add_dataset_flags(seg, seg_opt);
    seg->add_option("--course", seg_opt.course, "course code")->required();
    seg->add_option("--year", seg_opt.year, "restrict to a year");
    seg->add_option("--semester", seg_opt.semester, "restrict to a semester");

    auto* perf = app.add_subcommand("performance", "per-instructor conditional performance table");
    add_dataset_flags(perf, perf_opt);
    perf->add_option("--course", perf_opt.course, "course code")->required();
    perf->add_option("--apv", perf_opt.apv, "performance variable")
        ->check(CLI::IsMember({"grade", "pass"}));
    perf->add_option("--min-obs", perf_opt.min_obs, "observations needed for a personal entry");

    auto* ass = app.add_subcommand("assess", "historical enhancement per recorded term");
    add_dataset_flags(ass, ass_opt);
    ass->add_option("--course", ass_opt.course, "course code")->required();
    ass->add_option("--apv", ass_opt.apv, "performance variable")
        ->check(CLI::IsMember({"grade", "pass"}));
    ass->add_option("--method", ass_opt.method, "optimization route")
        ->check(CLI::IsMember({"ia", "sa"}));
    ass->add_option("--min-obs", ass_opt.min_obs, "observations needed for a personal entry");
    ass->add_flag("--holdout", ass_opt.holdout, "exclude the assessed term from estimation");

    auto* sem = app.add_subcommand("gen-semester", "draw one random semester realization");
    sem->add_option("--course", sem_opt.course, "course code")->default_val("DC");
    sem->add_option("--seed", sem_opt.seed, "draw seed");
    sem->add_option("--out", sem_opt.out_dir, "output directory");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo enhancement simulation");
    add_dataset_flags(sim, sim_opt);
    sim->add_option("--course", sim_opt.course, "course code")->default_val("DC");
    sim->add_option("--apv", sim_opt.apv, "performance variable")
        ->check(CLI::IsMember({"grade", "pass"}));
    sim->add_option("--method", sim_opt.method, "optimization route")
        ->check(CLI::IsMember({"ia", "sa"}));
    sim->add_option("--iterations", sim_opt.iterations, "iteration count")
        ->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_opt.seed, "simulation seed");
    sim->add_option("--threads", sim_opt.threads, "worker threads (default: hardware)");
    sim->add_option("--min-obs", sim_opt.min_obs, "observations needed for a personal entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(gen)) return run_gen_synthetic(gen_opt, gen_seed->count() > 0);
        if (app.got_subcommand(cor)) return run_correlate(cor_opt);
        if (app.got_subcommand(seg)) return run_segment(seg_opt);
        if (app.got_subcommand(perf)) return run_performance(perf_opt);
        if (app.got_subcommand(ass)) return run_assess(ass_opt);
        if (app.got_subcommand(sem)) return run_gen_semester(sem_opt);
        if (app.got_subcommand(sim)) return run_simulate(sim_opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
