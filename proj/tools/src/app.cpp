#include "qlik/cli/app.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlik/cli/config.hpp"
#include "qlik/cli/io.hpp"
#include "qlik/cli/verify.hpp"
#include "qlik/geometry.hpp"

namespace qlik::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> mc_count;
    std::optional<std::string> only;
    std::string out;
    bool ignore_quantization = false;
};

template <class T>
const T& need(const std::optional<T>& v, const char* what)
{
    if (!v) throw InputError(std::string("config is missing ") + what);
    return *v;
}

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
    return rows;
}

json model_json(const LocationScaleModel& m)
{
    return {{"S", matrix_json(m.S())}, {"x", vec_json(m.x())}, {"scale", json::parse(scale_to_json(m.scale()))}};
}

json fit_json(const FitReport& r)
{
    json traj = json::array();
    for (const TrajectoryPoint& p : r.trajectory) traj.push_back({p.iteration, p.value});
    return {{"mode", std::string(to_string(r.mode))},
            {"x_hat", vec_json(r.x_hat)},
            {"scale_hat", json::parse(scale_to_json(r.scale_hat))},
            {"final_loglik", r.final_loglik},
            {"iterations", r.iterations},
            {"gradient_norm", r.gradient_norm},
            {"converged", r.converged},
            {"diverging", r.diverging},
            {"line_search_failed", r.line_search_failed},
            {"initialization_attempts", r.initialization_attempts},
            {"std_errors", vec_json(r.std_errors)},
            {"std_errors_approximate", true},
            {"trajectory", traj}};
}

std::optional<fs::path> output_path(const Flags& f, const RunConfig& cfg)
{
    if (!f.out.empty()) return fs::path(f.out);
    return cfg.output;
}

void emit(const std::string& text, const std::optional<fs::path>& path, std::ostream& out)
{
    if (path) write_file_atomic(*path, text);
    else out << text;
}

int cmd_simulate(const Flags& f, const RunConfig& cfg, std::ostream& out)
{
    const NoiseFamily family = need(cfg.noise, "\"noise\"");
    const Quantizer& q = need(cfg.quantizer, "\"quantizer\"");
    const LocationScaleModel& model = need(cfg.model, "\"model\"");
    const std::int64_t count = need(cfg.simulate_count, "\"simulate.count\"");
    if (count < 1) throw InputError("simulate.count must be positive");
    const std::optional<std::uint64_t> seed = f.seed ? f.seed : cfg.simulate_seed;
    if (!seed) throw InputError("simulate needs a seed (--seed or \"simulate.seed\")");
    const auto path = output_path(f, cfg);
    if (!path) throw InputError("simulate needs --out or \"output\"");
    if (q.dimension() != model.n()) throw InputError("quantizer dimension does not match the model");

    Matrix w = NoiseModel(family, model.n()).sample_matrix(count, *seed);
    w.colwise() += model.location();
    const Matrix y = model.solve_scale(w);
    std::vector<Code> codes;
    codes.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < y.cols(); ++i) codes.push_back(q.quantize(y.col(i)));

    std::ostringstream csv;
    write_codes_csv(csv, codes);
    write_file_atomic(*path, csv.str());
    const json sidecar = {{"noise", std::string(to_string(family))},
                          {"quantizer", json::parse(quantizer_to_json(q))},
                          {"model", model_json(model)},
                          {"count", count},
                          {"seed", *seed}};
    fs::path side = *path;
    side += ".json";
    write_file_atomic(side, sidecar.dump(2) + "\n");
    out << path->string() << '\n';
    return 0;
}

std::vector<Code> load_codes(const RunConfig& cfg)
{
    return parse_codes_csv(read_text_file(need(cfg.data, "\"data\"")));
}

int cmd_eval(const Flags& f, const RunConfig& cfg, std::ostream& out)
{
    const NoiseFamily family = need(cfg.noise, "\"noise\"");
    const Quantizer& q = need(cfg.quantizer, "\"quantizer\"");
    const LocationScaleModel& model = need(cfg.model, "\"model\"");
    const std::vector<Code> codes = load_codes(cfg);

    std::optional<McOptions> mc;
    if (f.mc_count || cfg.mc_count) {
        const std::optional<std::uint64_t> seed = f.seed ? f.seed : cfg.mc_seed;
        if (!seed) throw InputError("Monte Carlo evaluation needs a seed (--seed or \"mc.seed\")");
        mc = McOptions{f.mc_count ? *f.mc_count : *cfg.mc_count, *seed};
    }
    LikelihoodValue v;
    try {
        v = dataset_loglik(model, NoiseModel(family, model.n()), q, codes, mc);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const json doc = {{"log_value", v.log_value},
                      {"std_error", v.std_error},
                      {"method", v.method == LikelihoodMethod::ExactBox ? "exact_box" : "monte_carlo"},
                      {"underflow", v.underflow},
                      {"observations", codes.size()}};
    emit(doc.dump(2) + "\n", output_path(f, cfg), out);
    return 0;
}

int cmd_fit(const Flags& f, const RunConfig& cfg, std::ostream& out)
{
    const NoiseFamily family = need(cfg.noise, "\"noise\"");
    const Quantizer& q = need(cfg.quantizer, "\"quantizer\"");
    const LocationScaleModel& model = need(cfg.model, "\"model\"");
    const std::vector<Code> codes = load_codes(cfg);

    FitConfig fc;
    const Scale scale0 = cfg.fit.scale0.value_or(model.scale());
    if (cfg.fit.mode) {
        fc.mode = *cfg.fit.mode;
    } else {
        switch (scale_kind(scale0)) {
        case ScaleKind::Fixed: fc.mode = FitMode::LocationOnly; break;
        case ScaleKind::Scalar: fc.mode = FitMode::LocationScalarScale; break;
        case ScaleKind::Diagonal: fc.mode = FitMode::LocationDiagScale; break;
        }
    }
    fc.x0 = cfg.fit.x0.value_or(model.x());
    fc.scale0 = scale0;
    if (cfg.fit.grad_tol) fc.grad_tol = *cfg.fit.grad_tol;
    if (cfg.fit.max_iters) fc.max_iters = *cfg.fit.max_iters;
    const FitProblem problem{model.S(), family, q};

    json doc;
    FitReport report;
    try {
        report = fit(problem, codes, fc);
        doc["fit"] = fit_json(report);
        if (f.ignore_quantization) doc["baseline"] = fit_json(fit_ignoring_quantization(problem, codes, fc));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
    emit(doc.dump(2) + "\n", output_path(f, cfg), out);
    return report.converged ? 0 : 2;
}

int cmd_verify(const Flags& f, const RunConfig& cfg, std::ostream& out)
{
    VerifyOptions vo;
    if (f.seed) vo.seed = *f.seed;
    else if (cfg.verify_seed) vo.seed = *cfg.verify_seed;
    vo.mc_count = f.mc_count;
    vo.only = f.only;
    const auto outcomes = run_verify(vo);
    emit(verify_report_json(outcomes, vo), output_path(f, cfg), out);
    for (const CheckOutcome& c : outcomes)
        if (!c.passed) return 2;
    return 0;
}

int cmd_figures(const Flags& f, const RunConfig& cfg, std::ostream& out)
{
    const std::uint64_t seed = f.seed ? *f.seed : cfg.figure_seed.value_or(1);
    const std::int64_t count = cfg.figure_count.value_or(2000);
    const fs::path dir = output_path(f, cfg).value_or(fs::path("."));
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());

    auto write = [&](const char* name, const std::vector<SampledSet>& sets) {
        std::ostringstream ss;
        write_point_cloud_csv(ss, sets);
        write_file_atomic(dir / name, ss.str());
        out << (dir / name).string() << '\n';
    };
    write("figure2.csv", minkowski_figure(count, seed));
    write("figure3a.csv", {diagonal_combination_figure(count, seed)});
    write("figure3b.csv", {psd_combination_figure(count, seed)});
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantized-data likelihoods under logconcave noise", "qlik"};
    Flags f;
    app.add_option("--config", f.config, "JSON run configuration");
    app.add_option("--seed", f.seed, "seed for simulate, verify, figures or Monte Carlo eval");
    app.add_option("--mc-count", f.mc_count, "Monte Carlo draws per observation");
    app.add_option("--only", f.only, "run a single verify check by id");
    app.add_option("--out", f.out, "output file (directory for figures)");
    app.add_flag("--ignore-quantization", f.ignore_quantization, "also fit the midpoint baseline");
    app.require_subcommand(1);
    CLI::App* simulate = app.add_subcommand("simulate", "simulate quantized observations");
    CLI::App* eval = app.add_subcommand("eval", "evaluate the log-likelihood of a data file");
    CLI::App* fitc = app.add_subcommand("fit", "maximum-likelihood fit");
    CLI::App* verify = app.add_subcommand("verify", "run the property suite");
    CLI::App* figures = app.add_subcommand("figures", "write figure point clouds");
    for (CLI::App* s : {simulate, eval, fitc, verify, figures}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (!f.config.empty()) cfg = load_config(f.config);
        if (f.mc_count && *f.mc_count < 100) throw InputError("--mc-count must be at least 100");
        if (simulate->parsed()) return cmd_simulate(f, cfg, out);
        if (eval->parsed()) return cmd_eval(f, cfg, out);
        if (fitc->parsed()) return cmd_fit(f, cfg, out);
        if (verify->parsed()) return cmd_verify(f, cfg, out);
        return cmd_figures(f, cfg, out);
    } catch (const InputError& e) {
        err << "qlik: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "qlik: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qlik::cli
