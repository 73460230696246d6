#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigver/catalog.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace rigver;
namespace fs = std::filesystem;

namespace {
const std::string kData = RIGVER_TEST_DATA_DIR;

Catalog pristine() { return load_catalog(kData); }

// Copies the data directory, applying a text substitution to one file.
std::string mutated_data_dir(const std::string& file, const std::string& from,
                             const std::string& to) {
    fs::path dst = fs::temp_directory_path() / "rigver_mutated_data";
    fs::remove_all(dst);
    fs::create_directories(dst);
    fs::copy(kData, dst, fs::copy_options::recursive);
    fs::path target = dst / file;
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    std::ofstream out(target);
    out << text;
    return dst.string();
}
}  // namespace

TEST_CASE("the full suite passes on a fresh checkout") {
    RunReport rep = run_verify_all(pristine());
    CHECK(rep.pass);
    for (const auto& r : rep.records) {
        INFO(r.id << ": expected " << r.expected << ", got " << r.actual);
        CHECK(r.pass);
    }
    CHECK(rep.records.size() > 30);
}

TEST_CASE("a perturbed bound fails and the failure is localized") {
    // Loosening one coefficient of the linear-case system shifts its
    // threshold; every other family of checks must stay green.
    std::string dir = mutated_data_dir("systems/case_1_1.sys", "4*M/(M-3)", "5*M/(M-3)");
    RunReport rep = run_verify_all(load_catalog(dir));
    CHECK(!rep.pass);
    bool case11_failed = false;
    for (const auto& r : rep.records) {
        if (r.id.rfind("case_1_1/", 0) == 0) {
            if (!r.pass) case11_failed = true;
        } else {
            INFO(r.id);
            CHECK(r.pass);
        }
    }
    CHECK(case11_failed);
    fs::remove_all(fs::temp_directory_path() / "rigver_mutated_data");
}

TEST_CASE("reports are deterministic and machine readable") {
    Catalog cat = pristine();
    RunReport a = run_verify_all(cat);
    RunReport b = run_verify_all(cat);
    CHECK(a.to_json("T0") == b.to_json("T0"));
    CHECK(a.to_text() == b.to_text());
    // JSON output parses and carries one entry per check.
    auto j = nlohmann::json::parse(a.to_json("T0"));
    CHECK(j["verdict"] == "PASS");
    CHECK(j["checks"].size() == a.records.size());
    CHECK(j["generated_at"] == "T0");
    // Timestamps differ, everything else is byte-identical.
    std::string x = a.to_json("T0"), y = a.to_json("T1");
    CHECK(x != y);
    auto strip = [](std::string s) {
        auto p = s.find("generated_at");
        s.erase(p, s.find('\n', p) - p);
        return s;
    };
    CHECK(strip(x) == strip(y));
}

TEST_CASE("data directory resolution prefers the explicit override") {
    CHECK(resolve_data_dir("/explicit") == "/explicit");
    setenv("RIGVER_DATA_DIR", "/from_env", 1);
    CHECK(resolve_data_dir() == "/from_env");
    CHECK(resolve_data_dir("/explicit") == "/explicit");
    unsetenv("RIGVER_DATA_DIR");
}

TEST_CASE("catalog lookups") {
    Catalog cat = pristine();
    CHECK(cat.find_system("case_1_1") != nullptr);
    CHECK(cat.find_system("nope") == nullptr);
    CHECK(cat.find_chain("sec1_5") != nullptr);
    CHECK_THROWS_AS(load_system(cat, "nope"), Error);
}
