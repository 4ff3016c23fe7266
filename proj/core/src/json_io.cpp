#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlik/quantizer.hpp"

namespace qlik {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw std::invalid_argument(std::string("quantizer JSON: missing \"") + key + "\"");
    return *it;
}

Vector to_vector(const json& arr)
{
    if (!arr.is_array() || arr.empty()) throw std::invalid_argument("quantizer JSON: expected a nonempty number array");
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw std::invalid_argument("quantizer JSON: non-numeric entry");
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

json from_vector(const Vector& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Quantizer parse(const json& doc)
{
    if (!doc.is_object()) throw std::invalid_argument("quantizer JSON: expected an object");
    const std::string kind = field(doc, "kind").get<std::string>();
    if (kind == "adc") {
        const json& th = field(doc, "thresholds");
        if (!th.is_array()) throw std::invalid_argument("quantizer JSON: thresholds must be an array");
        std::vector<std::vector<double>> out;
        for (const json& row : th) {
            const Vector v = to_vector(row);
            out.emplace_back(v.data(), v.data() + v.size());
        }
        return AdcBank(std::move(out));
    }
    if (kind == "hex") return HexagonalQuantizer(field(doc, "pitch").get<double>());
    if (kind == "polytopes") {
        const json& regions = field(doc, "regions");
        if (!regions.is_array() || regions.empty())
            throw std::invalid_argument("quantizer JSON: regions must be a nonempty array");
        std::vector<PolytopeQuantizer::Cell> cells;
        for (const json& r : regions) {
            std::vector<Halfspace> hs;
            for (const json& h : field(r, "halfspaces")) hs.push_back({to_vector(field(h, "normal")), field(h, "offset").get<double>()});
            cells.push_back({field(r, "code").get<std::int64_t>(), Polytope(std::move(hs))});
        }
        return PolytopeQuantizer(std::move(cells));
    }
    throw std::invalid_argument("quantizer JSON: unknown kind \"" + kind + "\"");
}

}  // namespace

Quantizer quantizer_from_json(const std::string& text)
{
    try {
        return parse(json::parse(text));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("quantizer JSON: ") + e.what());
    }
}

std::string quantizer_to_json(const Quantizer& q)
{
    json doc;
    if (const AdcBank* adc = q.adc()) {
        doc["kind"] = "adc";
        doc["thresholds"] = adc->thresholds();
    } else if (const HexagonalQuantizer* hex = q.hex()) {
        doc["kind"] = "hex";
        doc["pitch"] = hex->pitch();
    } else {
        doc["kind"] = "polytopes";
        json regions = json::array();
        for (const auto& cell : q.polytopes()->cells()) {
            json hs = json::array();
            for (const Halfspace& h : cell.polytope.halfspaces())
                hs.push_back({{"normal", from_vector(h.normal)}, {"offset", h.offset}});
            regions.push_back({{"code", cell.code}, {"halfspaces", hs}});
        }
        doc["regions"] = regions;
    }
    return doc.dump(2);
}

}  // namespace qlik
