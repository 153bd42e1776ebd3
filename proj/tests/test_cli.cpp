#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string("\"") + ENTRI_CLI_PATH + "\" " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string data_file(const char* name) {
    return std::string(ENTRI_TEST_DATA_DIR) + "/" + name;
}

std::string temp_file(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("help exits cleanly and lists the verbs") {
    const CliResult res = run_cli("--help");
    CHECK(res.code == 0);
    CHECK_THAT(res.out, ContainsSubstring("measure"));
    CHECK_THAT(res.out, ContainsSubstring("sweep"));
    CHECK_THAT(res.out, ContainsSubstring("compare"));
    CHECK_THAT(res.out, ContainsSubstring("plot"));
}

TEST_CASE("missing subcommand and unknown flags are usage errors") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("measure --no-such-flag").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("bad argument values exit 2") {
    CHECK(run_cli("measure --builtin iris --transform quantile").code == 2);
    CHECK(run_cli("measure --builtin iris --disc magic").code == 2);
    CHECK(run_cli("measure --builtin nope").code == 2);
    CHECK(run_cli("plot --kind aggregate").code == 2);
}

TEST_CASE("data problems exit 3") {
    CHECK(run_cli("measure --input /nonexistent/missing.csv --class y").code == 3);
    const std::string bad = temp_file("cli_bad_conf.csv");
    {
        std::ofstream out(bad);
        out << "1,2\n3,x\n";
    }
    CHECK(run_cli("measure --confusion \"" + bad + "\"").code == 3);
    std::remove(bad.c_str());
}

TEST_CASE("measure prints the report to stdout by default") {
    const CliResult res = run_cli("measure --confusion \"" + data_file("conf_diag.csv") + "\"");
    CHECK(res.code == 0);
    CHECK_THAT(res.out, StartsWith("dataset,transform,i,side,H_U_bits"));
    CHECK_THAT(res.out, ContainsSubstring("conf_diag,none,0,XY,"));
}

TEST_CASE("measure writes files instead when asked") {
    const std::string report = temp_file("cli_measure_report.csv");
    const std::string svg = temp_file("cli_measure.svg");
    const CliResult res = run_cli("measure --builtin iris --out-report \"" + report +
                                  "\" --out-svg \"" + svg + "\"");
    CHECK(res.code == 0);
    CHECK(res.out.empty());
    CHECK_THAT(slurp(report), StartsWith("dataset,transform,i,side"));
    CHECK_THAT(slurp(svg), StartsWith("<svg"));
    std::remove(report.c_str());
    std::remove(svg.c_str());
}

TEST_CASE("repeated sweeps are byte-identical") {
    const std::string r1 = temp_file("cli_sweep1.csv"), r2 = temp_file("cli_sweep2.csv");
    const std::string s1 = temp_file("cli_sweep1.svg"), s2 = temp_file("cli_sweep2.svg");
    const std::string base = "sweep --builtin iris --transform log+pca";
    CHECK(run_cli(base + " --out-report \"" + r1 + "\" --out-svg \"" + s1 + "\"").code == 0);
    CHECK(run_cli(base + " --out-report \"" + r2 + "\" --out-svg \"" + s2 + "\"").code == 0);
    CHECK(slurp(r1) == slurp(r2));
    CHECK(slurp(s1) == slurp(s2));
    for (const std::string& p : {r1, r2, s1, s2}) std::remove(p.c_str());
}

TEST_CASE("config files feed the run and flags override them") {
    const std::string config = temp_file("cli_config.json");
    {
        std::ofstream out(config);
        out << R"({"builtin": "iris", "transform": "log", "bins": 9})";
    }
    const CliResult from_config = run_cli("measure --config \"" + config + "\"");
    CHECK(from_config.code == 0);
    CHECK_THAT(from_config.out, ContainsSubstring("iris,log,4,"));

    const CliResult overridden =
        run_cli("measure --config \"" + config + "\" --transform none");
    CHECK(overridden.code == 0);
    CHECK_THAT(overridden.out, ContainsSubstring("iris,none,0,"));

    const std::string badkey = temp_file("cli_badkey.json");
    {
        std::ofstream out(badkey);
        out << R"({"builtin": "iris", "bogus": 1})";
    }
    CHECK(run_cli("measure --config \"" + badkey + "\"").code == 2);
    std::remove(config.c_str());
    std::remove(badkey.c_str());
}

TEST_CASE("compare requires methods and merges them") {
    CHECK(run_cli("compare --builtin iris").code == 2);
    const CliResult res =
        run_cli("compare --builtin iris --methods log+pca,log+ica");
    CHECK(res.code == 0);
    CHECK_THAT(res.out, ContainsSubstring("iris,log+pca,1,"));
    CHECK_THAT(res.out, ContainsSubstring("iris,log+ica,4,"));
    CHECK_THAT(res.out, ContainsSubstring("iris,log,4,"));
}

TEST_CASE("plot renders a report to stdout") {
    const std::string report = temp_file("cli_plot_report.csv");
    CHECK(run_cli("sweep --builtin iris --transform log+pca --out-report \"" + report +
                  "\"").code == 0);
    const CliResult res = run_cli("plot --report \"" + report + "\" --kind split");
    CHECK(res.code == 0);
    CHECK_THAT(res.out, StartsWith("<svg"));
    CHECK_THAT(res.out, ContainsSubstring("log+pca_2"));
    CHECK(run_cli("plot --report \"" + report + "\" --kind both").code == 2);
    std::remove(report.c_str());
}
