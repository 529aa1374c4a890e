#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "foldpam/curve.hpp"

namespace foldpam {

// Writes content to a temporary file in the target directory and renames it
// into place, so a failed run never leaves a partial file.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Curve CSV, header `strain,force_n`.
std::string curve_to_csv(const ForceStrainCurve& curve);
ForceStrainCurve curve_from_csv(std::istream& in);

std::string curve_to_json(const ForceStrainCurve& curve);
std::string curves_to_json(const std::vector<ForceStrainCurve>& curves);

// Design-space region report.
struct RegionReport {
    double area_n;
    double a_d_prime;
    std::vector<std::string> curve_labels;
};
std::string region_report_to_json(const RegionReport& report);

}  // namespace foldpam
