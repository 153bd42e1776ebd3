#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "entri/report.hpp"

using namespace entri;

namespace {

ReportRow sample_row() {
    ReportRow r;
    r.dataset = "toy";
    r.transform = "log+pca";
    r.i = 2;
    r.side = "XY";
    r.h_u_bits = 14.25;
    r.delta_prime = 0.5;
    r.info_prime = 0.25;
    r.vi_prime = 0.25;
    r.delta_bits = 7.125;
    r.info_bits = 3.5625;
    r.vi_bits = 3.5625;
    return r;
}

}  // namespace

TEST_CASE("report serialization starts with the fixed header") {
    const std::string csv = report_to_csv({sample_row()});
    CHECK_THAT(csv, Catch::Matchers::StartsWith(
                        "dataset,transform,i,side,H_U_bits,DeltaH_prime,Info_prime,"
                        "VI_prime,DeltaH_bits,Info_bits,VI_bits\n"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("toy,log+pca,2,XY,14.25,0.5,"));
}

TEST_CASE("report rows round-trip through a file") {
    ReportRow second = sample_row();
    second.side = "X";
    second.dataset = "data, with comma";
    const std::vector<ReportRow> rows{sample_row(), second};

    const std::string path =
        (std::filesystem::temp_directory_path() / "report_rt.csv").string();
    write_report(rows, path);
    const std::vector<ReportRow> back = read_report(path);
    std::remove(path.c_str());

    REQUIRE(back.size() == 2);
    CHECK(back[0].dataset == "toy");
    CHECK(back[0].i == 2);
    CHECK(back[0].side == "XY");
    CHECK(back[0].h_u_bits == 14.25);
    CHECK(back[0].info_prime == 0.25);
    CHECK(back[1].dataset == "data, with comma");
    CHECK(back[1].side == "X");
}

TEST_CASE("foreign csv files are rejected by header") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "foreign.csv").string();
    {
        std::ofstream out(path);
        out << "a,b,c\n1,2,3\n";
    }
    CHECK_THROWS_WITH(read_report(path),
                      Catch::Matchers::ContainsSubstring("not a coordinates report"));
    std::remove(path.c_str());
}

TEST_CASE("malformed report rows carry line numbers") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "badrow.csv").string();
    {
        std::ofstream out(path);
        out << kReportHeader << "\n";
        out << "d,t,1,Q,1,0,0,1,0,0,1\n";
    }
    CHECK_THROWS_WITH(read_report(path),
                      Catch::Matchers::ContainsSubstring("line 2") &&
                          Catch::Matchers::ContainsSubstring("side"));
    std::remove(path.c_str());
}
