#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "tmac/cli.hpp"

using namespace tmac;
using namespace tmac::testing;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string ref(const char* file) { return reference_path(file); }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "tmac-cli-tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

}  // namespace

TEST_CASE("assess the reference model") {
    const auto o = run({"assess", ref("smart-home.tma")});
    CHECK(o.code == cli::kExitOk);
    CHECK(o.out.find("| T11 | 1 | 4 | 5 | 13 | 0.37143 | 1.86 | High |") != std::string::npos);
    CHECK(o.out.find("| T2 | 1 | 2 | 3 | 11 | 0.31429 | 0.94 | Moderate |") != std::string::npos);
    CHECK(o.err.empty());
}

TEST_CASE("what-if with diff") {
    const auto o = run({"what-if", ref("smart-home.tma"), "--scenario", "masking+e2ee", "--diff"});
    CHECK(o.code == cli::kExitOk);
    CHECK(o.out.find("| T1 | 1 | 1 | 2 | 0 | 0.00000 | 0.00 | Low |") != std::string::npos);
    CHECK(o.out.find("- T11: High -> Low (PIA 1.86 -> 0.43)") != std::string::npos);
    std::size_t bullets = 0;
    std::istringstream in(o.out.substr(o.out.find("## Band transitions")));
    for (std::string line; std::getline(in, line);) bullets += line.rfind("- ", 0) == 0 ? 1 : 0;
    CHECK(bullets == 6);
    // the scenario file can also be passed explicitly
    const auto explicit_file = run({"what-if", ref("smart-home.tma"), ref("masking-e2ee.tma"), "--scenario", "masking+e2ee", "--diff"});
    CHECK(explicit_file.out == o.out);
}

TEST_CASE("diff command and formats") {
    const auto md = run({"diff", ref("smart-home.tma"), "--scenario", "masking+e2ee"});
    CHECK(md.code == 0);
    CHECK(md.out.rfind("# Scenario comparison", 0) == 0);
    const auto csv = run({"diff", ref("smart-home.tma"), "--scenario", "masking+e2ee", "--format", "csv"});
    CHECK(csv.out.find("T11,13,3,10,1.86,0.43,High,Low,yes") != std::string::npos);
    const auto json = run({"assess", ref("smart-home.tma"), "--format", "json"});
    CHECK(json.out.find("\"ti\": 35") != std::string::npos);
    CHECK(run({"assess", ref("smart-home.tma"), "--format", "xml"}).code == cli::kExitUsage);
}

TEST_CASE("interactions command") {
    const auto o = run({"interactions", ref("smart-home.tma"), "--scope", "device-commissioning"});
    CHECK(o.code == 0);
    CHECK(o.out.find("| Total (device-commissioning) | | | 6 | 0 | 4 | 2 | 0 | 0 | 6 | 0 | 0 | 1 | 7 |") != std::string::npos);
    const auto all = run({"interactions", ref("smart-home.tma")});
    CHECK(all.out.find("Interactions: 35") != std::string::npos);
    const auto after = run({"interactions", ref("smart-home.tma"), "--scenario", "masking+e2ee"});
    CHECK(after.out.find("| Total (Tn) | | | 0 | 5 | 1 | 1 | 1 | 7 | 0 | 5 | 1 | 1 | 3 |") != std::string::npos);
    CHECK(run({"interactions", ref("smart-home.tma"), "--scope", "nowhere"}).code == cli::kExitValidation);
}

TEST_CASE("validate bundled files") {
    const auto o = run({"validate", ref("smart-home.tma"), ref("linddun-sh.tma"), ref("masking-e2ee.tma")});
    CHECK(o.code == 0);
    CHECK(o.out.find("0 error(s)") != std::string::npos);
    for (const auto* f : {"smart-home.tma", "linddun-sh.tma", "masking-e2ee.tma"}) {
        CHECK(run({"validate", ref(f)}).code == 0);
    }
}

TEST_CASE("validate reports a dangling endpoint") {
    const auto path = temp_file("dangling.tma", "model \"m\" {\n  element a kind=process\n  flow f from=a to=ghost\n}\n");
    const auto o = run({"validate", path.string()});
    CHECK(o.code == cli::kExitValidation);
    CHECK(o.out.find("1 error(s)") != std::string::npos);
    CHECK(o.out.find(":3:3: error: flow 'f' references undeclared element 'ghost'") != std::string::npos);
    const auto a = run({"assess", path.string()});
    CHECK(a.code == cli::kExitValidation);
    CHECK(a.err.find("ghost") != std::string::npos);
    CHECK(a.out.empty());
}

TEST_CASE("parse errors exit with 2") {
    const auto path = temp_file("broken.tma", "model \"m\" {\n  element u kinde=entity\n}\n");
    const auto o = run({"assess", path.string()});
    CHECK(o.code == cli::kExitParse);
    CHECK(o.err.find(":2:13: error:") != std::string::npos);
    CHECK(run({"fmt", path.string()}).code == cli::kExitParse);
}

TEST_CASE("usage errors exit with 3") {
    CHECK(run({"assess", "/nonexistent/file.tma"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"what-if", ref("smart-home.tma")}).code == cli::kExitUsage);
    CHECK(run({"what-if", ref("smart-home.tma"), "--scenario", "nope"}).code == cli::kExitUsage);
    CHECK(run({"assess", ref("smart-home.tma"), "--bands", "low:1"}).code == cli::kExitUsage);
}

TEST_CASE("duplicate model across files is an error") {
    const auto o = run({"assess", ref("smart-home.tma"), ref("smart-home.tma")});
    CHECK(o.code == cli::kExitValidation);
    CHECK(o.err.find("duplicate model") != std::string::npos);
}

TEST_CASE("custom bands") {
    const auto o = run({"assess", ref("smart-home.tma"), "--bands", "low:0,moderate:0.5,high:1", "--format", "csv"});
    CHECK(o.code == 0);
    CHECK(o.out.find("T11,1,4,5,13,0.37143,1.86,high") != std::string::npos);
}

TEST_CASE("fmt is canonical and idempotent") {
    const auto once = run({"fmt", ref("smart-home.tma")});
    CHECK(once.code == 0);
    const auto path = temp_file("formatted.tma", once.out);
    const auto twice = run({"fmt", path.string()});
    CHECK(twice.out == once.out);
    const auto messy = temp_file("messy.tma", "# c\nmodel \"m\"{element u kind=entity flow f from=u to=u}");
    CHECK(run({"fmt", messy.string()}).out == "model \"m\" {\n  element u kind=entity\n  flow f from=u to=u\n}\n");
}

TEST_CASE("--out writes to a file") {
    const auto target = std::filesystem::temp_directory_path() / "tmac-cli-tests" / "out.md";
    std::filesystem::remove(target);
    const auto o = run({"assess", ref("smart-home.tma"), "--out", target.string()});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    CHECK(read_text(target.string()) == run({"assess", ref("smart-home.tma")}).out);
}

TEST_CASE("help exits cleanly") {
    const auto o = run({"--help"});
    CHECK(o.code == 0);
    CHECK(o.out.find("what-if") != std::string::npos);
}
