#include "intravol/csv.hpp"

#include "intravol/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

using namespace intravol;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("intravol_csv_" + std::to_string(++counter) + "_" +
                std::to_string(static_cast<unsigned>(std::rand())));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an intravol::Error");
}

} // namespace

TEST_CASE("format_double keeps at least 12 significant digits") {
    const double v = -9.437281905172345;
    const double back = std::strtod(format_double(v).c_str(), nullptr);
    CHECK(back == doctest::Approx(v).epsilon(1e-13));
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("atomic writes leave no temp file behind") {
    TempDir tmp;
    const fs::path target = tmp.path / "out.csv";
    write_file_atomic(target, "a,b\n1,2\n");
    CHECK(read_text(target) == "a,b\n1,2\n");
    CHECK_FALSE(fs::exists(tmp.path / "out.csv.tmp"));
}

TEST_CASE("tick CSV: ISO timestamps") {
    TempDir tmp;
    const fs::path p = tmp.path / "ticks.csv";
    write_text(p,
               "timestamp,price\n"
               "1997-03-14T09:00:00,100.5\n"
               "1997-03-14T09:03:12,101\n"
               "1997-03-14 09:07:00.250,102.25\n");
    const TickSeries ticks = read_tick_csv(p);
    REQUIRE(ticks.size() == 3);
    CHECK(ticks.records()[0].price == 100.5);
    CHECK(ticks.records()[0].ts.date() == Date::from_ymd(1997, 3, 14));
    CHECK(ticks.records()[2].ts.time_of_day_ms() ==
          (9 * 3600 + 7 * 60) * 1000 + 250);
}

TEST_CASE("tick CSV: epoch milliseconds are auto-detected per file") {
    TempDir tmp;
    const fs::path p = tmp.path / "ticks.csv";
    const Timestamp base = Timestamp::at(Date::from_ymd(1997, 3, 14),
                                         TimeOfDay::from_hms(9, 0));
    write_text(p, "timestamp,price\n" + std::to_string(base.ms) + ",100\n" +
                      std::to_string(base.ms + 60'000) + ",101\n");
    const TickSeries ticks = read_tick_csv(p);
    REQUIRE(ticks.size() == 2);
    CHECK(ticks.records()[0].ts == base);
    CHECK(ticks.records()[1].price == 101.0);
}

TEST_CASE("tick CSV errors carry line numbers") {
    TempDir tmp;
    const fs::path p = tmp.path / "ticks.csv";

    write_text(p, "timestamp,price\n1997-03-14T09:00:00,100\nnot-a-time,101\n");
    try {
        read_tick_csv(p);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }

    write_text(p, "timestamp,price\n1997-03-14T09:00:00,100\n1997-03-14T09:01:00,-5\n");
    CHECK(code_of([&] { read_tick_csv(p); }) == ErrorCode::non_positive_price);

    write_text(p, "timestamp,price\n1997-03-14T09:05:00,100\n1997-03-14T09:01:00,101\n");
    CHECK(code_of([&] { read_tick_csv(p); }) == ErrorCode::unordered_timestamps);

    write_text(p, "");
    CHECK(code_of([&] { read_tick_csv(p); }) == ErrorCode::empty_input);

    write_text(p, "timestamp,price\n");
    CHECK(code_of([&] { read_tick_csv(p); }) == ErrorCode::empty_input);
}

TEST_CASE("gridded CSV round trip preserves panels") {
    TempDir tmp;
    const fs::path p = tmp.path / "gridded.csv";

    std::vector<ReturnPanel> panels;
    for (int d = 0; d < 4; ++d) {
        ReturnPanel panel;
        panel.date = Date(10957 + d);
        panel.returns = oracles::seeded_normals(100 + static_cast<unsigned>(d), 84, 1e-3);
        panels.push_back(std::move(panel));
    }
    write_gridded_csv(p, panels, "# test provenance");

    const GriddedData got = read_gridded_csv(p);
    CHECK(got.returns_per_day == 84);
    REQUIRE(got.panels.size() == 4);
    for (std::size_t d = 0; d < 4; ++d) {
        CHECK(got.panels[d].date == panels[d].date);
        for (std::size_t i = 0; i < 84; ++i) {
            CHECK(got.panels[d].returns[i] ==
                  doctest::Approx(panels[d].returns[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("gridded CSV validation failures") {
    TempDir tmp;
    const fs::path p = tmp.path / "gridded.csv";

    write_text(p, "date,r1,r2\n2000-01-03,0.1\n");
    CHECK(code_of([&] { read_gridded_csv(p); }) == ErrorCode::parse_error);

    write_text(p, "date,r1,r3\n");
    CHECK(code_of([&] { read_gridded_csv(p); }) == ErrorCode::parse_error);

    write_text(p, "date,r1,r2\n2000-01-04,0.1,0.2\n2000-01-03,0.1,0.2\n");
    CHECK(code_of([&] { read_gridded_csv(p); }) == ErrorCode::unordered_timestamps);

    // nan is a legal cell; the day is rejected later by validation, not here
    write_text(p, "date,r1,r2\n2000-01-03,nan,0.2\n");
    const GriddedData data = read_gridded_csv(p);
    CHECK(std::isnan(data.panels[0].returns[0]));
}

TEST_CASE("metrics CSV round trip and header parsing") {
    TempDir tmp;
    const fs::path p = tmp.path / "metrics.csv";

    DailyMetrics m;
    m.q_levels = {2, 3, 4, 5, 6};
    m.vr.resize(5);
    for (int d = 0; d < 6; ++d) {
        m.dates.push_back(Date(10957 + d));
        m.log_rv.push_back(-9.4 + 0.01 * d);
        for (std::size_t k = 0; k < 5; ++k) m.vr[k].push_back(1.0 + 0.001 * d + 0.01 * static_cast<double>(k));
    }
    write_metrics_csv(p, m, "# prov");

    const DailyMetrics got = read_metrics_csv(p);
    CHECK(got.q_levels == m.q_levels);
    REQUIRE(got.size() == 6);
    for (std::size_t d = 0; d < 6; ++d) {
        CHECK(got.dates[d] == m.dates[d]);
        CHECK(got.log_rv[d] == doctest::Approx(m.log_rv[d]).epsilon(1e-13));
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(got.vr[k][d] == doctest::Approx(m.vr[k][d]).epsilon(1e-13));
        }
    }

    write_text(p, "date,log_rv,vrX\n");
    CHECK(code_of([&] { read_metrics_csv(p); }) == ErrorCode::parse_error);
}

TEST_CASE("full-sample CSV carries the published-table cell structure") {
    // layout fixture only: the cell values echo a published table, the
    // assertions are about schema, not reproduction
    TempDir tmp;
    const fs::path p = tmp.path / "full.csv";

    RegressionResult simple{"simple", 2, {"b", "c"}, {0.9, -0.242}, {0.1, 0.805},
                            0.0140, 4344};
    RegressionResult lagged{"lagged", 2, {"b", "c0", "c1"},
                            {0.9, 9.026, -11.851}, {0.1, 1.506, 1.461}, 0.0382,
                            4344};
    RegressionResult decomposed{"decomposed", 2,
                                {"b", "coef_expected", "coef_unexpected"},
                                {0.9, -6.376, 12.707}, {0.1, 0.958, 1.702},
                                0.0485, 4344};
    const std::vector<RegressionResult> rows{simple, lagged, decomposed};
    write_full_sample_csv(p, rows, "# prov");

    const CsvTable table = read_csv_table(p);
    REQUIRE(table.header == std::vector<std::string>{"q", "spec", "coef_name",
                                                     "estimate", "std_error",
                                                     "adj_r2_pct", "n_obs"});
    REQUIRE(table.rows.size() == 8); // 2 + 3 + 3 coefficient rows
    CHECK(table.rows[1][2] == "c");
    CHECK(table.rows[1][3] == "-0.242");
    CHECK(table.rows[1][4] == "0.805");
    CHECK(table.rows[1][5] == "1.4"); // adjusted R^2 in percent
    CHECK(table.rows[4][2] == "c1");
    CHECK(table.rows[4][3] == "-11.851");
    CHECK(table.rows[6][2] == "coef_expected");
    CHECK(table.rows[7][3] == "12.707");
}

TEST_CASE("rejections CSV") {
    TempDir tmp;
    const fs::path p = tmp.path / "rej.csv";
    const std::vector<DayRejection> rejections{{Date(10957), "DegenerateDay"},
                                               {Date(10958), "NonFinite"}};
    write_rejections_csv(p, rejections, "");
    const CsvTable table = read_csv_table(p);
    CHECK(table.header == std::vector<std::string>{"date", "reason"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][0] == "2000-01-01");
    CHECK(table.rows[0][1] == "DegenerateDay");
}
