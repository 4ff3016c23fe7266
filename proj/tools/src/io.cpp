#include "qlik/cli/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qlik/cli/config.hpp"

namespace qlik::cli {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw InputError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void write_codes_csv(std::ostream& out, const std::vector<Code>& codes)
{
    const std::size_t k = codes.empty() ? 0 : codes.front().size();
    for (std::size_t j = 0; j < k; ++j) out << (j ? "," : "") << 'c' << j;
    out << '\n';
    for (const Code& c : codes) {
        for (std::size_t j = 0; j < c.size(); ++j) out << (j ? "," : "") << c[j];
        out << '\n';
    }
}

std::vector<Code> parse_codes_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || blank(line)) throw InputError("codes CSV: missing header");
    const auto header = split_line(line);
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] != "c" + std::to_string(j))
            throw InputError("codes CSV: header must be c0,c1,...");
    std::vector<Code> codes;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (blank(line)) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw InputError("codes CSV: row " + std::to_string(row) + " has the wrong number of fields");
        std::vector<std::int64_t> v(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string& s = cells[j];
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v[j]);
            if (ec != std::errc() || p != s.data() + s.size())
                throw InputError("codes CSV: row " + std::to_string(row) + ": bad integer \"" + s + "\"");
        }
        codes.emplace_back(std::move(v));
    }
    if (codes.empty()) throw InputError("codes CSV: no observations");
    return codes;
}

Matrix parse_matrix_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        std::vector<double> r;
        for (const std::string& s : split_line(line)) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || p != s.data() + s.size()) throw InputError("matrix CSV: bad number \"" + s + "\"");
            r.push_back(v);
        }
        if (!rows.empty() && r.size() != rows.front().size()) throw InputError("matrix CSV: ragged rows");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw InputError("matrix CSV: empty");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

}  // namespace qlik::cli
