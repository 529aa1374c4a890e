#include "foldpam/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "foldpam/errors.hpp"

namespace foldpam {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    auto tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw io_error("cannot rename " + tmp.string() + " to " + path.string() +
                       ": " + ec.message());
    }
}

std::string curve_to_csv(const ForceStrainCurve& curve) {
    std::ostringstream out;
    out << "strain,force_n\n";
    for (const auto& p : curve.points)
        out << format_double(p.strain) << "," << format_double(p.force) << "\n";
    return out.str();
}

ForceStrainCurve curve_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty curve file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "strain,force_n")
        throw parse_error("expected header 'strain,force_n', got '" + line + "'", 1);
    ForceStrainCurve curve;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw parse_error("expected 'strain,force' pair", lineno);
        try {
            curve.points.push_back({std::stod(line.substr(0, comma)),
                                    std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw parse_error("malformed number in '" + line + "'", lineno);
        }
    }
    if (curve.points.size() < 2) throw parse_error("curve needs at least 2 rows");
    return curve;
}

std::string curve_to_json(const ForceStrainCurve& curve) {
    nlohmann::json j;
    j["label"] = curve.label;
    j["pressure_kpa"] = curve.pressure / 1000.0;
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : curve.points) pts.push_back({{"strain", p.strain}, {"force_n", p.force}});
    return j.dump(2) + "\n";
}

std::string curves_to_json(const std::vector<ForceStrainCurve>& curves) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : curves) j.push_back(nlohmann::json::parse(curve_to_json(c)));
    return j.dump(2) + "\n";
}

std::string region_report_to_json(const RegionReport& report) {
    nlohmann::json j;
    j["area_n"] = report.area_n;
    j["a_d_prime"] = report.a_d_prime;
    j["curve_labels"] = report.curve_labels;
    return j.dump(2) + "\n";
}

}  // namespace foldpam
