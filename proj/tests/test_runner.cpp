#include <doctest.h>

#include "config.hpp"
#include "runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace {

constexpr double pi = std::numbers::pi;

std::filesystem::path out_dir() {
    const auto dir =
        std::filesystem::temp_directory_path() / "catmew_runner_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::vector<double>> data_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    for (const std::string& line : split_lines(text)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            row.push_back(std::stod(field));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Value of a "# key=value" header comment, or an empty string.
std::string header_value(const std::string& text, std::string_view key) {
    const std::string prefix = "# " + std::string(key) + "=";
    for (const std::string& line : split_lines(text)) {
        if (line.starts_with(prefix)) {
            return line.substr(prefix.size());
        }
    }
    return {};
}

catmew::cli::RunConfig parsed(const std::string& text,
                              const std::string& file_name) {
    auto cfg = catmew::cli::parse_config(text);
    cfg.output_path = (out_dir() / file_name).string();
    return cfg;
}

} // namespace

TEST_CASE("simulate writes the documented table") {
    const auto cfg = parsed(
        "mode=simulate\nkappa=0.5\ntheta_start=0\n"
        "theta_end=12.566370614359172\npoints=9\nchi=0\n",
        "simulate.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);
    CHECK(log.str().find("wrote ") != std::string::npos);

    const std::string text = slurp(cfg.output_path);
    CHECK(text.starts_with("# catmew output\n# mode=simulate\n"));
    CHECK(header_value(text, "kappa") == "0.5");
    CHECK(header_value(text, "points") == "9");
    CHECK(header_value(text, "chi") == "0");
    CHECK(text.find("# columns: theta,chi,i_c,i_d,re_coh,im_coh,re_cross,"
                    "im_cross,envelope\n") != std::string::npos);

    const auto rows = data_rows(text);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 9);
        CHECK(std::abs(row[2] + row[3] - 1.0) < 1e-12);
    }

    // Grid midpoint lands exactly on the first revival.
    const auto& revival = rows[4];
    CHECK(revival[0] == 2.0 * pi);
    CHECK(revival[1] == 0.0);
    CHECK(revival[2] < 1e-9);
    CHECK(revival[3] > 1.0 - 1e-9);
    CHECK(std::abs(revival[4]) < 1e-12);
    CHECK(std::abs(revival[5] - 0.5) < 1e-12);
    CHECK(std::abs(revival[8] - 1.0) < 1e-12);
}

TEST_CASE("output bytes do not depend on the destination path") {
    const std::string base =
        "mode=simulate\nkappa=0.7\ntheta_start=0\ntheta_end=7\npoints=41\n"
        "chi=1.25\n";
    const auto first = parsed(base, "det_a.csv");
    const auto second = parsed(base, "det_b.csv");
    std::ostringstream log;
    REQUIRE(catmew::cli::run(first, log) == 0);
    REQUIRE(catmew::cli::run(second, log) == 0);
    CHECK(slurp(first.output_path) == slurp(second.output_path));
}

TEST_CASE("revival table lists both tuning rules") {
    const auto cfg =
        parsed("mode=revival\nkappa=0.5\nn_max=3\n", "revival.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);

    const std::string text = slurp(cfg.output_path);
    CHECK(text.find("# columns: n,theta_n,chi_paper,chi_exact,i_c_at_exact\n") !=
          std::string::npos);
    const auto rows = data_rows(text);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 5);
        CHECK(rows[i][0] == static_cast<double>(i + 1));
        CHECK(std::abs(rows[i][1] - 2.0 * pi * static_cast<double>(i + 1)) <
              1e-12);
        CHECK(std::abs(rows[i][4] - 1.0) < 1e-12);
    }
    CHECK(std::abs(rows[0][2] - pi) < 1e-12);
    CHECK(std::abs(rows[0][3] - pi) < 1e-12);
    CHECK(std::abs(rows[1][3] - pi / 2.0) < 1e-12);
}

TEST_CASE("scan run writes the curve and the summary") {
    const auto cfg = parsed(
        "mode=scan-chi\nkappa=0.3\ntheta=6.283185307179586\n", "scan.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);

    const std::string text = slurp(cfg.output_path);
    CHECK(std::abs(std::stod(header_value(text, "chi_star")) -
                   4.14690230273853) < 1e-8);
    CHECK(std::abs(std::stod(header_value(text, "contrast_at_star")) - 1.0) <
          1e-9);
    CHECK(std::abs(std::stod(header_value(text, "kappa_sq_estimate")) - 0.09) <
          1e-9);
    CHECK(header_value(text, "estimate_valid") == "1");
    CHECK(data_rows(text).size() > 6000);
}

TEST_CASE("coupling estimation run") {
    const auto cfg = parsed(
        "mode=estimate-kappa\nkappa=0.3\ntheta=6.283185307179586\n",
        "estimate.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);

    const auto rows = data_rows(slurp(cfg.output_path));
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].size() == 7);
    CHECK(std::abs(rows[0][0] - 0.3) < 1e-6);
    CHECK(std::abs(rows[0][1] - 0.09) < 1e-6);
    CHECK(rows[0][6] == 0.0);
}

TEST_CASE("coupling estimation rejects a non-revival time defensively") {
    // Bypasses the parser, which fences this earlier.
    catmew::cli::RunConfig cfg;
    cfg.mode = catmew::cli::RunMode::estimate_kappa;
    cfg.kappa = 0.5;
    cfg.theta = pi;
    cfg.output_path = (out_dir() / "estimate_bad.csv").string();
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 2);
    CHECK(log.str().find("not a positive revival time") != std::string::npos);
}

TEST_CASE("oracle comparison passes at the sized truncation") {
    const auto cfg = parsed(
        "mode=oracle-compare\nkappa=0.5\ntheta_start=0\n"
        "theta_end=12.566370614359172\npoints=51\nchi=0\n",
        "compare.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);

    const std::string text = slurp(cfg.output_path);
    CHECK(header_value(text, "oracle_dim") == "11");
    CHECK(header_value(text, "oracle_propagator") == "eigendecomposition");
    CHECK(header_value(text, "within_tolerance") == "1");
    const double max_dev = std::stod(header_value(text, "max_deviation"));
    CHECK(max_dev < 1e-6);
    CHECK(max_dev > 0.0);
    CHECK(data_rows(text).size() == 51);
}

TEST_CASE("oracle comparison fails an unreachable tolerance") {
    auto cfg = parsed(
        "mode=oracle-compare\nkappa=0.5\ntheta_start=0\n"
        "theta_end=12.566370614359172\npoints=51\ntolerance=1e-12\n",
        "compare_tight.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 3);
    CHECK(log.str().find("exceeds tolerance") != std::string::npos);

    // The report is still written for inspection.
    const std::string text = slurp(cfg.output_path);
    CHECK(header_value(text, "within_tolerance") == "0");
}

TEST_CASE("a starved stepping oracle reports the truncation leak") {
    const auto cfg = parsed(
        "mode=oracle-compare\nkappa=2\ntheta_start=0\n"
        "theta_end=12.566370614359172\npoints=5\noracle_dim=26\n"
        "oracle_propagator=fixed-step-4th-order\nsteps_per_period=110\n",
        "compare_starved.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 3);
    CHECK(log.str().find("numerical error") != std::string::npos);
}

TEST_CASE("missing output path") {
    catmew::cli::RunConfig cfg = catmew::cli::parse_config(
        "mode=revival\nkappa=0.5\n");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 2);
    CHECK(log.str().find("output_path is required") != std::string::npos);
}

TEST_CASE("unwritable output path") {
    auto cfg = catmew::cli::parse_config("mode=revival\nkappa=0.5\n");
    cfg.output_path = "/nonexistent_dir_for_catmew_tests/out.csv";
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 4);
    CHECK(log.str().find("cannot open") != std::string::npos);
}

TEST_CASE("invalid numeric state surfaces as a validation failure") {
    catmew::cli::RunConfig cfg;
    cfg.mode = catmew::cli::RunMode::simulate;
    cfg.kappa = std::nan("");
    cfg.theta_start = 0.0;
    cfg.theta_end = 1.0;
    cfg.points = 2;
    cfg.output_path = (out_dir() / "nan.csv").string();
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 2);
    CHECK(log.str().find("validation error") != std::string::npos);
}

TEST_CASE("hardware sanity warning reaches the log") {
    const auto cfg = parsed(
        "mode=revival\nmass_kg=1e-12\nomega_m=1e15\nomega_c=1000\n"
        "cavity_length_m=0.01\n",
        "warn.csv");
    std::ostringstream log;
    CHECK(catmew::cli::run(cfg, log) == 0);
    CHECK(log.str().find("warning:") != std::string::npos);
}
