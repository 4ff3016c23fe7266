#ifndef QLIK_CLI_CONFIG_HPP_
#define QLIK_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "qlik/estimate.hpp"

namespace qlik::cli {

// Bad flags, config or data. Maps to exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitSection {
    std::optional<FitMode> mode;
    std::optional<Vector> x0;
    std::optional<Scale> scale0;
    std::optional<double> grad_tol;
    std::optional<int> max_iters;
};

// Relative paths inside the config resolve against the config's directory.
struct RunConfig {
    std::filesystem::path base_dir = ".";
    std::optional<NoiseFamily> noise;
    std::optional<Quantizer> quantizer;
    std::optional<LocationScaleModel> model;
    std::optional<std::int64_t> mc_count;
    std::optional<std::uint64_t> mc_seed;
    std::optional<std::int64_t> simulate_count;
    std::optional<std::uint64_t> simulate_seed;
    std::optional<std::filesystem::path> data;
    FitSection fit;
    std::optional<std::uint64_t> verify_seed;
    std::optional<std::int64_t> figure_count;
    std::optional<std::uint64_t> figure_seed;
    std::optional<std::filesystem::path> output;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

// Scale from JSON text: a bare number (scalar) or
// {"kind": "scalar"|"diagonal"|"fixed", "value"|"values"|"matrix": ...}.
Scale parse_scale(const std::string& text);
std::string scale_to_json(const Scale& scale);

}  // namespace qlik::cli

#endif  // QLIK_CLI_CONFIG_HPP_
