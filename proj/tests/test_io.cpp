#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "foldpam/errors.hpp"
#include "foldpam/io.hpp"

using namespace foldpam;
namespace fs = std::filesystem;

namespace {

ForceStrainCurve sample() {
    ForceStrainCurve c;
    c.pressure = 12.4e3;
    c.label = "fr=0.2";
    c.points = {{0.0, 5.0}, {0.1, 2.5}, {0.2, 0.0}};
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("atomic_write_file: writes content, leaves no temporaries") {
    const fs::path dir = fs::temp_directory_path() / "foldpam_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.csv";

    atomic_write_file(target, "hello\n");
    CHECK(slurp(target) == "hello\n");

    atomic_write_file(target, "replaced\n");
    CHECK(slurp(target) == "replaced\n");

    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);  // no stray temp files

    CHECK_THROWS_AS(atomic_write_file(dir / "missing" / "out.csv", "x"), io_error);
    fs::remove_all(dir);
}

TEST_CASE("curve CSV: exact header and round trip") {
    const auto c = sample();
    const std::string csv = curve_to_csv(c);
    CHECK(csv.rfind("strain,force_n\n", 0) == 0);

    std::istringstream in(csv);
    const auto back = curve_from_csv(in);
    REQUIRE(back.points.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(back.points[i].strain == doctest::Approx(c.points[i].strain).epsilon(1e-12));
        CHECK(back.points[i].force == doctest::Approx(c.points[i].force).epsilon(1e-12));
    }

    std::istringstream bad("nope\n0,1\n");
    CHECK_THROWS_AS(curve_from_csv(bad), parse_error);
    std::istringstream bad_row("strain,force_n\n0.0\n");
    try {
        curve_from_csv(bad_row);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("curve JSON carries pressure, label and points") {
    const std::string j = curve_to_json(sample());
    CHECK(j.find("\"label\"") != std::string::npos);
    CHECK(j.find("fr=0.2") != std::string::npos);
    CHECK(j.find("\"pressure_kpa\"") != std::string::npos);
    CHECK(j.find("\"points\"") != std::string::npos);

    const std::string family = curves_to_json({sample(), sample()});
    CHECK(family.front() == '[');  // family serializes as a JSON array
}

TEST_CASE("region report JSON has the contract fields") {
    RegionReport r{0.75, 0.06, {"fr=0", "fr=0.67"}};
    const std::string j = region_report_to_json(r);
    CHECK(j.find("\"area_n\"") != std::string::npos);
    CHECK(j.find("\"a_d_prime\"") != std::string::npos);
    CHECK(j.find("\"curve_labels\"") != std::string::npos);
    CHECK(j.find("fr=0.67") != std::string::npos);
}
