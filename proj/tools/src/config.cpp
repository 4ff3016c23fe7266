#include "qlik/cli/config.hpp"

#include <json.hpp>

#include "qlik/cli/io.hpp"

namespace qlik::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Vector to_vector(const json& j, const char* what)
{
    if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a nonempty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw InputError(std::string(what) + ": non-numeric entry");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

Matrix to_matrix(const json& j, const char* what)
{
    if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected an array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const Vector row = to_vector(j[r], what);
        if (static_cast<std::size_t>(row.size()) != cols) throw InputError(std::string(what) + ": ragged rows");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

Scale scale_from(const json& j)
{
    if (j.is_number()) return ScalarScale{j.get<double>()};
    if (!j.is_object() || !j.contains("kind")) throw InputError("scale: expected a number or an object with \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "scalar") return ScalarScale{j.at("value").get<double>()};
    if (kind == "diagonal") return DiagonalScale{to_vector(j.at("values"), "scale.values")};
    if (kind == "fixed") return FixedScale{to_matrix(j.at("matrix"), "scale.matrix")};
    throw InputError("scale: unknown kind \"" + kind + "\"");
}

json scale_json(const Scale& s)
{
    json out;
    if (const auto* sc = std::get_if<ScalarScale>(&s)) {
        out = {{"kind", "scalar"}, {"value", sc->value}};
    } else if (const auto* d = std::get_if<DiagonalScale>(&s)) {
        out = {{"kind", "diagonal"}, {"values", std::vector<double>(d->values.begin(), d->values.end())}};
    } else {
        const Matrix& m = std::get<FixedScale>(s).matrix;
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
            rows.push_back(row);
        }
        out = {{"kind", "fixed"}, {"matrix", rows}};
    }
    return out;
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <class T>
std::optional<T> opt(const json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return obj.at(key).get<T>();
}

}  // namespace

Scale parse_scale(const std::string& text)
{
    try {
        return scale_from(json::parse(text));
    } catch (const json::exception& e) {
        throw InputError(std::string("scale: ") + e.what());
    }
}

std::string scale_to_json(const Scale& scale) { return scale_json(scale).dump(); }

RunConfig parse_config(const std::string& text, const fs::path& base_dir)
{
    RunConfig cfg;
    cfg.base_dir = base_dir;
    try {
        const json doc = json::parse(text);
        if (!doc.is_object()) throw InputError("config: expected a JSON object");

        if (auto name = opt<std::string>(doc, "noise")) {
            try {
                cfg.noise = parse_noise_family(*name);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }

        if (doc.contains("quantizer")) {
            const json& q = doc.at("quantizer");
            const std::string qtext = q.is_string() ? read_text_file(resolve(base_dir, q.get<std::string>())) : q.dump();
            try {
                cfg.quantizer = quantizer_from_json(qtext);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }

        if (doc.contains("model")) {
            const json& m = doc.at("model");
            Matrix S;
            if (m.contains("S")) S = to_matrix(m.at("S"), "model.S");
            else if (m.contains("S_csv"))
                S = parse_matrix_csv(read_text_file(resolve(base_dir, m.at("S_csv").get<std::string>())));
            else throw InputError("model: needs \"S\" or \"S_csv\"");
            const Vector x = to_vector(m.at("x"), "model.x");
            const Scale scale = m.contains("scale") ? scale_from(m.at("scale")) : Scale{ScalarScale{1.0}};
            try {
                cfg.model.emplace(S, x, scale);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("model: ") + e.what());
            }
        }

        if (doc.contains("mc")) {
            cfg.mc_count = opt<std::int64_t>(doc.at("mc"), "count");
            cfg.mc_seed = opt<std::uint64_t>(doc.at("mc"), "seed");
        }
        if (doc.contains("simulate")) {
            cfg.simulate_count = opt<std::int64_t>(doc.at("simulate"), "count");
            cfg.simulate_seed = opt<std::uint64_t>(doc.at("simulate"), "seed");
        }
        if (auto d = opt<std::string>(doc, "data")) cfg.data = resolve(base_dir, *d);
        if (doc.contains("fit")) {
            const json& f = doc.at("fit");
            if (auto mode = opt<std::string>(f, "mode")) {
                try {
                    cfg.fit.mode = parse_fit_mode(*mode);
                } catch (const std::invalid_argument& e) {
                    throw InputError(e.what());
                }
            }
            if (f.contains("x0")) cfg.fit.x0 = to_vector(f.at("x0"), "fit.x0");
            if (f.contains("scale0")) cfg.fit.scale0 = scale_from(f.at("scale0"));
            cfg.fit.grad_tol = opt<double>(f, "grad_tol");
            cfg.fit.max_iters = opt<int>(f, "max_iters");
        }
        if (doc.contains("verify")) cfg.verify_seed = opt<std::uint64_t>(doc.at("verify"), "seed");
        if (doc.contains("figures")) {
            cfg.figure_count = opt<std::int64_t>(doc.at("figures"), "count");
            cfg.figure_seed = opt<std::uint64_t>(doc.at("figures"), "seed");
        }
        if (auto o = opt<std::string>(doc, "output")) cfg.output = resolve(base_dir, *o);
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const fs::path& path)
{
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    return parse_config(read_text_file(path), dir);
}

}  // namespace qlik::cli
