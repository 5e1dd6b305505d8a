#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = NULLGEO_SCRATCH_DIR;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run cli(const std::string& args, const std::string& env = "")
{
    fs::create_directories(kScratch);
    const fs::path out = kScratch / "stdout.txt";
    const fs::path err = kScratch / "stderr.txt";
    const std::string command =
        env + " '" + std::string(NULLGEO_CLI_PATH) + "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(command.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string scratch(const std::string& name) { return (kScratch / name).string(); }

std::vector<nlohmann::json> json_lines(const std::string& text)
{
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

/// "key=value key=value" summary line printed by the deprolong command.
std::map<std::string, std::string> summary_fields(const std::string& line)
{
    std::map<std::string, std::string> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        out[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text)
{
    fs::create_directories(kScratch);
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("geodesic command")
{
    const std::string path = scratch("line.jsonl");
    const Run r = cli("geodesic --metric minkowski3 --x0 0,0,0 --theta 0 --smax 1 --out " + path);
    REQUIRE(r.code == 0);
    const auto records = json_lines(slurp(path));
    REQUIRE(records.size() == 1002);
    CHECK(records[0]["kind"] == "geodesic");
    CHECK(records[0]["truncated"] == false);
    const auto& last = records.back();
    CHECK(last["s"].get<double>() == 1.0);
    CHECK(std::abs(last["x1"].get<double>() - 1.0) < 1e-12);
    CHECK(last["x2"].get<double>() == 0.0);
    CHECK(std::abs(last["x3"].get<double>() - 1.0) < 1e-12);

    const std::string null_path = scratch("gc.jsonl");
    REQUIRE(cli("geodesic --metric s2s1:c=2 --x0 0.3,-0.2,0 --theta 0.7 --smax 6.283185307179586 --out " + null_path)
                .code == 0);
    const auto header = json_lines(slurp(null_path)).front();
    CHECK(std::stod(header["params"]["max_abs_norm_sq"].get<std::string>()) < 1e-8);

    const Run csv = cli("geodesic --metric minkowski3 --x0 0,0,0 --v0 1,0,1 --smax 0.01 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.find("# kind=geodesic\n") == 0);
    CHECK(csv.out.find("s,x1,x2,x3,v1,v2,v3\n") != std::string::npos);

    const std::string exit_path = scratch("exit.jsonl");
    REQUIRE(cli("geodesic --metric round-sphere --x0 19,0,0 --theta 0 --smax 5 --out " + exit_path).code == 0);
    CHECK(json_lines(slurp(exit_path)).front()["truncated"] == true);
}

TEST_CASE("geodesic command usage errors")
{
    CHECK(cli("geodesic --metric anti-de-sitter --x0 0,0,0 --theta 0").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --x0 0,0,0").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --x0 0,0,0 --theta 0 --v0 1,0,1").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --theta 0").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --x0 0,0 --theta 0").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --x0 0,0,0 --theta 0 --smax -1").code == 2);
    CHECK(cli("geodesic --metric minkowski3 --x0 0,0,0 --theta 0 --format xml").code == 2);
    CHECK(cli("geodesic --metric round-sphere --x0 50,0,0 --theta 0").code == 2);

    const std::string bad = scratch("bad.metric");
    write_text(bad, "g11 = 1 +\ng22 = 1\ng33 = -1\n");
    const Run r = cli("geodesic --metric file:" + bad + " --x0 0,0,0 --theta 0");
    CHECK(r.code == 2);
    CHECK(r.err.find("line 1") != std::string::npos);
    CHECK(cli("geodesic --metric " + bad + " --x0 0,0,0 --theta 0").code == 2);

    CHECK(cli("--help").code == 0);
    CHECK(cli("").code == 2);
}

TEST_CASE("geodesic command reads a config file")
{
    const std::string cfg = scratch("flat.metric");
    write_text(cfg, "id = flat\ng11 = 1\ng22 = 1\ng33 = -1\n");
    const std::string path = scratch("flat.jsonl");
    REQUIRE(cli("geodesic --metric " + cfg + " --x0 0,0,0 --theta 0 --smax 1 --out " + path).code == 0);
    const auto records = json_lines(slurp(path));
    CHECK(records.front()["metric_id"] == "flat");
    CHECK(std::abs(records.back()["x1"].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("verify command")
{
    const std::string path = scratch("intersections.json");
    REQUIRE(cli("verify intersections --c 3 --n 50 --out " + path).code == 0);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["check_id"] == "intersections");
    CHECK(j["n_samples"] == 50);
    CHECK(j["pass"] == true);
    CHECK(j["max_residual"].get<double>() < 1e-9);

    CHECK(cli("verify lens-descent --c 4 --n 100").code == 0);
    CHECK(cli("verify contact-Nc --c 1 --n 100").code == 0);

    const Run failing = cli("verify cone --n 5 --tol 1e-300");
    CHECK(failing.code == 1);
    CHECK(nlohmann::json::parse(failing.out)["pass"] == false);

    CHECK(cli("verify no-such-check").code == 2);
    CHECK(cli("verify kernel-invariance --metric anti-de-sitter --n 3").code == 2);
    CHECK(cli("verify").code == 2);

    const Run csv = cli("verify commuting --n 20 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.find("# check_id=commuting\n") == 0);
}

TEST_CASE("deprolong command")
{
    const std::string flat = scratch("flat_kernel.jsonl");
    const Run r = cli("deprolong --metric minkowski3 --x0 0.5,0,0 --theta 0.3 --smax 2 --out " + flat);
    REQUIRE(r.code == 0);
    auto fields = summary_fields(r.out);
    CHECK(std::stod(fields["max_distance"]) < 1e-12);
    CHECK(fs::exists(scratch("flat_kernel.geodesic.jsonl")));
    const auto distance = json_lines(slurp(scratch("flat_kernel.distance.jsonl")));
    REQUIRE(distance.size() > 1);
    for (std::size_t i = 1; i < distance.size(); ++i) {
        CHECK(distance[i]["distance"].get<double>() < 1e-12);
    }
    CHECK(json_lines(slurp(flat)).front()["kind"] == "kernel_flow");

    const Run gc = cli("deprolong --metric s2s1:c=1 --x0 0.2,-0.1,0 --theta 1.0");
    REQUIRE(gc.code == 0);
    fields = summary_fields(gc.out);
    CHECK(std::stod(fields["max_distance"]) < 1e-6);
    CHECK(fields["truncated"] == "false");

    const std::string cfg = scratch("warped.metric");
    write_text(cfg, "id = warped\n"
                    "g11 = 4/(1+x1^2+x2^2)^2\n"
                    "g22 = 4/(1+x1^2+x2^2)^2\n"
                    "g33 = -(1 + x3^2/4)\n"
                    "domain = -20 20 -20 20 -1000 1000\n");
    const Run warped = cli("deprolong --metric file:" + cfg + " --x0 0.2,-0.1,0 --theta 1.0 --format csv --out " +
                           scratch("warped.csv"));
    REQUIRE(warped.code == 0);
    fields = summary_fields(warped.out);
    CHECK(std::stod(fields["hausdorff"]) < 1e-5);
    const std::string series = slurp(scratch("warped.distance.csv"));
    CHECK(series.find("# summary.hausdorff=") != std::string::npos);
    CHECK(series.find("# summary.max_distance=") != std::string::npos);

    CHECK(cli("deprolong --metric skew-test --x0 0,0,0 --theta 0").code == 2);
    const std::string mixed = scratch("mixed.metric");
    write_text(mixed, "g11 = 1 + x3^2\ng22 = 1\ng33 = -1\n");
    CHECK(cli("deprolong --metric " + mixed + " --x0 0,0,0 --theta 0").code == 2);
}

TEST_CASE("outputs are byte-identical across runs and worker counts")
{
    const std::string a = scratch("det_a.json");
    const std::string b = scratch("det_b.json");
    REQUIRE(cli("verify kernel-invariance --c 2 --n 40 --seed 9 --out " + a, "NULLGEO_THREADS=1").code == 0);
    REQUIRE(cli("verify kernel-invariance --c 2 --n 40 --seed 9 --out " + b, "NULLGEO_THREADS=6").code == 0);
    CHECK(slurp(a) == slurp(b));

    REQUIRE(cli("verify contact-Nc --c 3 --n 30 --seed 4 --format csv --out " + a).code == 0);
    REQUIRE(cli("verify contact-Nc --c 3 --n 30 --seed 4 --format csv --out " + b).code == 0);
    CHECK(slurp(a) == slurp(b));

    const std::string k1 = scratch("det1.jsonl");
    const std::string k2 = scratch("det2.jsonl");
    REQUIRE(cli("deprolong --metric s2s1:c=2 --x0 0.1,0.2,0 --theta 2.0 --out " + k1).code == 0);
    REQUIRE(cli("deprolong --metric s2s1:c=2 --x0 0.1,0.2,0 --theta 2.0 --out " + k2).code == 0);
    CHECK(slurp(k1) == slurp(k2));
    CHECK(slurp(scratch("det1.distance.jsonl")) == slurp(scratch("det2.distance.jsonl")));
}
