#ifndef QLIK_CLI_VERIFY_HPP_
#define QLIK_CLI_VERIFY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlik::cli {

struct CheckOutcome {
    std::string id;
    std::string claim;             // the statement being exercised
    bool negative_control = false; // expected to find a violation
    bool passed = false;           // for negative controls: the violation was found
    std::string detail;
    std::map<std::string, double> metrics;
    std::map<std::string, std::vector<double>> series;
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    std::optional<std::int64_t> mc_count;
    std::optional<std::string> only;
};

std::vector<std::string> check_ids();

// Throws InputError when `only` names no check.
std::vector<CheckOutcome> run_verify(const VerifyOptions& options);

std::string verify_report_json(const std::vector<CheckOutcome>& outcomes, const VerifyOptions& options);

}  // namespace qlik::cli

#endif  // QLIK_CLI_VERIFY_HPP_
