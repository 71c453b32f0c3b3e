#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#include "memskit/channels.hpp"
#include "memskit/mems.hpp"

using nlohmann::json;
using namespace memskit;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;
};

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "memskit_cli_tests";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& out_name) {
    const fs::path out = scratch_dir() / out_name;
    std::error_code ec;
    fs::remove(out, ec);
    const std::string cmd =
        std::string(MEMSKIT_CLI_PATH) + " " + args + " --out " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    result.output = buf.str();
    return result;
}

int run_cli_bare(const std::string& args) {
    const std::string cmd = std::string(MEMSKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("gen emits the state and its report", "[cli]") {
    const RunResult r = run_cli("gen --family I --p 0.8", "gen.json");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    REQUIRE(report.at("command") == "gen");
    REQUIRE(report.at("exit_code") == 0);
    const CMatrix state = matrix_from_json(report.at("outputs").at("state"));
    REQUIRE((state - mems1_state(0.8).matrix()).norm() < 1e-12);
    REQUIRE(report.at("outputs").at("report").at("concurrence").get<double>() ==
            Catch::Approx(0.8).margin(1e-9));
    REQUIRE(report.at("outputs").at("report").at("family").at("tag") == "I");
}

TEST_CASE("gen family II at p = 0", "[cli]") {
    const RunResult r = run_cli("gen --family II --p 0", "gen2.json");
    REQUIRE(r.exit_code == 0);
    const CMatrix state = matrix_from_json(json::parse(r.output).at("outputs").at("state"));
    REQUIRE((state - mems2_state(0.0).matrix()).norm() < 1e-12);
}

TEST_CASE("gen rejects out-of-range parameters", "[cli]") {
    REQUIRE(run_cli_bare("gen --family I --p 0.5") == 2);
    REQUIRE(run_cli_bare("gen --family II --p 0.9") == 2);
    REQUIRE(run_cli_bare("gen --family X --p 0.8") == 2);
}

TEST_CASE("audit of the builtin maps", "[cli]") {
    const RunResult r = run_cli("audit --builtin mems1:0.8", "audit.json");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    const json& outputs = report.at("outputs");
    REQUIRE(outputs.at("is_trace_preserving") == false);
    REQUIRE(outputs.at("audit").at("is_cp") == true);
    const CMatrix ks = matrix_from_json(outputs.at("kraus_sum"));
    CMatrix expected(2, 2);
    expected << 1.2, 0, 0, 0.8;
    REQUIRE((ks - expected).norm() < 1e-12);

    const RunResult r2 = run_cli("audit --builtin mems2:0.5", "audit2.json");
    REQUIRE(r2.exit_code == 0);
    const CMatrix ks2 =
        matrix_from_json(json::parse(r2.output).at("outputs").at("kraus_sum"));
    CMatrix expected2(2, 2);
    expected2 << 4.0 / 3.0, 0, 0, 2.0 / 3.0;
    REQUIRE((ks2 - expected2).norm() < 1e-12);
}

TEST_CASE("audit of a map file", "[cli]") {
    const fs::path map_path = scratch_dir() / "identity_map.json";
    {
        KrausMap id_map;
        id_map.label = "identity";
        id_map.dim = 2;
        id_map.ops.push_back(identity(2));
        std::ofstream f(map_path);
        f << kraus_to_json(id_map).dump(2);
    }
    const RunResult r = run_cli("audit --map-file " + map_path.string(), "audit_file.json");
    REQUIRE(r.exit_code == 0);
    const json outputs = json::parse(r.output).at("outputs");
    REQUIRE(outputs.at("audit").at("kraus_sum_defect").get<double>() == 0.0);
    REQUIRE(outputs.at("audit").at("unital_defect").get<double>() == 0.0);
    REQUIRE(outputs.at("is_trace_preserving") == true);
}

TEST_CASE("audit rejects malformed input", "[cli]") {
    const fs::path bad_path = scratch_dir() / "bad_map.json";
    {
        std::ofstream f(bad_path);
        f << "{not json";
    }
    REQUIRE(run_cli_bare("audit --map-file " + bad_path.string()) == 2);
    REQUIRE(run_cli_bare("audit") == 2);
    REQUIRE(run_cli_bare("audit --builtin mems3:0.5") == 2);
}

TEST_CASE("verify passes on the default grid", "[cli]") {
    const RunResult r = run_cli("verify --trials 20 --seed 1", "verify.json");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    REQUIRE(report.at("exit_code") == 0);
    REQUIRE(report.at("outputs").at("max_defect").get<double>() < 1e-9);
    for (const auto& check : report.at("checks")) {
        REQUIRE(check.at("pass") == true);
    }
}

TEST_CASE("verify routes p = 1 to the four-mode model", "[cli]") {
    const RunResult r = run_cli("verify --p 1.0 --trials 5 --seed 1", "verify_p1.json");
    REQUIRE(r.exit_code == 0);
    bool found_skip_note = false;
    bool found_qed_leg = false;
    const json report = json::parse(r.output);
    for (const auto& check : report.at("checks")) {
        const std::string name = check.at("name").get<std::string>();
        if (name == "optics_equivalence(p=1)") {
            found_skip_note = check.contains("note") &&
                              check.at("note").get<std::string>().find("skipped") == 0;
        }
        if (name == "qed_regression(T=0)") {
            found_qed_leg = check.at("pass").get<bool>();
        }
    }
    REQUIRE(found_skip_note);
    REQUIRE(found_qed_leg);
}

TEST_CASE("verify output is deterministic for a fixed seed", "[cli]") {
    const RunResult a = run_cli("verify --trials 10 --seed 42", "verify_a.json");
    const RunResult b = run_cli("verify --trials 10 --seed 42", "verify_b.json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output == b.output);
    const RunResult c = run_cli("verify --trials 10 --seed 43", "verify_c.json");
    REQUIRE(c.exit_code == 0);  // different seed still passes, content may differ
}

TEST_CASE("verify rejects a bad grid", "[cli]") {
    REQUIRE(run_cli_bare("verify --p 0.5") == 2);
    REQUIRE(run_cli_bare("verify --p 1.2") == 2);
}

TEST_CASE("frontier CSV", "[cli]") {
    const RunResult r = run_cli("frontier --samples 50 --seed 3", "frontier.csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    REQUIRE(line == "S_L,C,source");
    int randoms = 0;
    int mems1_rows = 0;
    int mems2_rows = 0;
    bool saw_pure_bell = false;
    bool saw_p08_row = false;
    while (std::getline(lines, line)) {
        const auto last_comma = line.rfind(',');
        const std::string source = line.substr(last_comma + 1);
        if (source == "random") {
            ++randoms;
        } else if (source == "mems1") {
            ++mems1_rows;
            const double sl = std::stod(line);
            const double conc = std::stod(line.substr(line.find(',') + 1));
            if (std::abs(sl) < 1e-12 && std::abs(conc - 1.0) < 1e-9) {
                saw_pure_bell = true;  // the p = 1 row is (0, 1)
            }
            if (std::abs(sl - 4.0 / 3.0 * 0.32) < 1e-9 && std::abs(conc - 0.8) < 1e-9) {
                saw_p08_row = true;  // the p = 0.8 row is (0.42667, 0.8)
            }
        } else if (source == "mems2") {
            ++mems2_rows;
        }
    }
    REQUIRE(randoms == 50);
    REQUIRE(mems1_rows == 35);
    REQUIRE(mems2_rows == 68);
    REQUIRE(saw_pure_bell);
    REQUIRE(saw_p08_row);

    const RunResult again = run_cli("frontier --samples 50 --seed 3", "frontier_b.csv");
    REQUIRE(again.output == r.output);
}

TEST_CASE("frontier rejects nonpositive sample counts", "[cli]") {
    REQUIRE(run_cli_bare("frontier --samples 0") == 2);
}
