#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "eigenbound/cli.hpp"
#include "eigenbound/io.hpp"
#include "test_support.hpp"

using namespace eigenbound;

namespace {

const std::string kData = EIGENBOUND_TEST_DATA;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "eigenbound");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("eigenbound_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream(path, std::ios::binary) << body;
    return path.string();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("text format parsing") {
    const auto poly = io::parse_polynomial(
        "# a comment\n"
        "n = 2\nm = 1\n"
        "A0:\n 1 (2,-3)\n 0 +4.5e0  # trailing\n"
        "A1:\n1 0\n0 1\n");
    CHECK(poly.dim() == 2);
    CHECK(poly.degree() == 1);
    CHECK(poly[0](0, 1) == Complex(2, -3));
    CHECK(poly[0](1, 1) == Complex(4.5, 0));
    CHECK(poly[1] == testing::identity(2));

    const auto file = io::read_polynomial(kData + "/identity_quadratic.txt");
    CHECK(file.degree() == 2);
    for (int j = 0; j <= 2; ++j) CHECK(file[j] == testing::identity(2));
}

TEST_CASE("malformed inputs are rejected") {
    const char* bad[] = {
        "",
        "n = 2\n",
        "n = 1\nm = 1\nA0:\n1\n",
        "n = 1\nm = 1\nA0:\n1\nA1:\nabc\n",
        "n = 1\nm = 1\nA0:\n1\nA1:\n(1,2\n",
        "n = 2\nm = 1\nA0:\n1 0\n0 1\nA1:\n1 0\n",
        "n = 1\nm = 0\nA0:\n1\n",
        "n = 1\nm = 1\nA0:\n1\nA1:\n0\n",
        "n = 1\nm = 1\nA0:\n1\nA1:\n1\nA2:\n1\n",
        "n = 1\nm = 1\nA0:\n1\nA1:\nnan\n",
        "1 2 3\n",
        "n = 1\nm = 1\nk = 3\n",
        "{\"n\": 1, \"m\": 1}",
        "{\"n\": 1, \"m\": 1, \"coefficients\": [[[[1, 0]]], [[[0, 0]]]]}",
        "{\"n\": 1, \"m\": 1, \"coefficients\": [[[[1, 0]]], [[1]]]}",
        "{\"n\": 1, \"m\": 0, \"coefficients\": [[[[1, 0]]]]}",
        "{broken",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(io::parse_polynomial(text), ParseError);
    }
    CHECK_THROWS_AS(io::read_polynomial(kData + "/does_not_exist.txt"), ParseError);
}

TEST_CASE("text and JSON round trips are bit-exact") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> exponent(-300, 300);
    for (int trial = 0; trial < 100; ++trial) {
        auto poly = testing::random_polynomial(rng, 1 + trial % 4, 1 + trial % 5);
        if (trial % 3 == 0) poly = poly.scaled(std::pow(10.0, exponent(rng) / 3));
        CHECK(io::parse_polynomial(io::polynomial_to_text(poly)) == poly);
        CHECK(io::parse_polynomial(io::polynomial_to_json(poly).dump()) == poly);
        CHECK(io::polynomial_from_json(io::polynomial_to_json(poly)) == poly);
    }
}

TEST_CASE("cli bounds") {
    const auto text = run_cli({"bounds", kData + "/identity_quadratic.txt"});
    CHECK(text.code == cli::kOk);
    CHECK(text.out.find("norm: inf") != std::string::npos);
    CHECK(text.out.find("T1[corrected](p=2)") != std::string::npos);
    CHECK(text.out.find("1.6180") != std::string::npos);
    CHECK(text.out.find("as-stated") == std::string::npos);

    const auto both = run_cli({"bounds", kData + "/identity_quadratic.txt", "--variant", "both", "--norm", "all",
                               "--format", "json", "--p", "2,inf"});
    REQUIRE(both.code == cli::kOk);
    const auto doc = nlohmann::json::parse(both.out);
    CHECK(doc["tables"].size() == 3);
    bool saw_as_stated = false;
    for (const auto& b : doc["tables"][0]["bounds"]) {
        if (b["label"] == "T1[as-stated](p=2)") saw_as_stated = true;
        if (b["label"] == "C") CHECK(b["radius"].get<double>() == doctest::Approx(2.0));
    }
    CHECK(saw_as_stated);
}

TEST_CASE("cli eigs") {
    const auto r = run_cli({"eigs", kData + "/identity_quadratic.txt"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("eigenvalues: 4") != std::string::npos);
    CHECK(r.out.find("certified: yes") != std::string::npos);

    const auto j = run_cli({"eigs", kData + "/identity_quadratic.txt", "--format", "json"});
    REQUIRE(j.code == cli::kOk);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["max_modulus"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("cli exit codes") {
    const auto dir = temp_dir("exit_codes");
    CHECK(run_cli({}).code == cli::kInput);
    CHECK(run_cli({"bounds"}).code == cli::kInput);
    CHECK(run_cli({"frobnicate"}).code == cli::kInput);
    CHECK(run_cli({"bounds", kData + "/identity_quadratic.txt", "--norm", "3"}).code == cli::kInput);
    CHECK(run_cli({"bounds", kData + "/identity_quadratic.txt", "--p", "1"}).code == cli::kInput);
    CHECK(run_cli({"bounds", kData + "/identity_quadratic.txt", "--format", "xml"}).code == cli::kInput);

    const auto garbage = write_file(dir / "garbage.txt", "n = 2\nm = 1\nA0:\n1 2\n");
    const auto g = run_cli({"bounds", garbage});
    CHECK(g.code == cli::kInput);
    CHECK(g.err.find("garbage.txt") != std::string::npos);

    const auto singular = write_file(dir / "singular.txt", "n = 2\nm = 1\nA0:\n1 0\n0 1\nA1:\n1 0\n0 0\n");
    for (const char* command : {"bounds", "eigs", "check", "plotdata"}) {
        const auto s = run_cli({command, singular});
        CHECK(s.code == cli::kSingularLeading);
        CHECK(s.err.find("nonsingular") != std::string::npos);
    }

    CHECK(run_cli({"random", "--samples", "2"}).code == cli::kInput);
    CHECK(run_cli({"random", "--samples", "0", "--out-dir", (dir / "r").string()}).code == cli::kInput);
    CHECK(run_cli({"random", "--n", "2:1", "--out-dir", (dir / "r").string()}).code == cli::kInput);
    CHECK(run_cli({"random", "--distribution", "cauchy", "--out-dir", (dir / "r").string()}).code == cli::kInput);
}

TEST_CASE("cli check") {
    const auto ok = run_cli({"check", kData + "/identity_quadratic.txt"});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out.find("violations: 0 gated, 0 as-stated") != std::string::npos);

    const auto witness = kData + "/as_stated_t4_witness.json";
    const auto lenient = run_cli({"check", witness});
    CHECK(lenient.code == cli::kOk);
    CHECK(lenient.out.find("violation (as-stated, not gated)") != std::string::npos);
    CHECK(lenient.out.find("evidence: {") != std::string::npos);

    const auto strict = run_cli({"check", witness, "--strict-as-stated", "--format", "json"});
    CHECK(strict.code == cli::kViolation);
    const auto doc = nlohmann::json::parse(strict.out);
    CHECK(doc["violations"] == 0);
    CHECK(doc["as_stated_violations"].get<int>() > 0);
    CHECK(io::polynomial_from_json(doc["evidence"]) == io::read_polynomial(witness));

    const auto dir = temp_dir("check");
    const auto a0 = write_file(dir / "a0.txt", "n = 2\nm = 1\nA0:\n0 1\n0 0\nA1:\n1 0\n0 1\n");
    const auto note = run_cli({"check", a0});
    CHECK(note.code == cli::kOk);
    CHECK(note.out.find("A_0 is singular") != std::string::npos);
}

TEST_CASE("cli check honours the tolerance override") {
    // With a negative-margin allowance of 100% every row passes.
    setenv("EIGENBOUND_TOL", "1", 1);
    CHECK(run_cli({"check", kData + "/as_stated_t4_witness.json", "--strict-as-stated"}).code == cli::kOk);
    setenv("EIGENBOUND_TOL", "oops", 1);
    CHECK(run_cli({"check", kData + "/identity_quadratic.txt"}).code == cli::kInput);
    unsetenv("EIGENBOUND_TOL");
}

TEST_CASE("cli random is reproducible") {
    const auto a = temp_dir("random_a");
    const auto b = temp_dir("random_b");
    const std::vector<std::string> common{"random", "--seed", "7", "--samples", "40", "--threads"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"1", "--out-dir", a.string()});
    auto args_b = common;
    args_b.insert(args_b.end(), {"3", "--out-dir", b.string()});
    const auto ra = run_cli(args_a);
    const auto rb = run_cli(args_b);
    CHECK(ra.code == cli::kOk);
    CHECK(rb.code == cli::kOk);
    CHECK(ra.out.find("gated violations: 0") != std::string::npos);
    const std::string report = slurp(a / "report.json");
    CHECK(report == slurp(b / "report.json"));
    const auto doc = nlohmann::json::parse(report);
    CHECK(doc.contains("tightness"));

    const auto c = temp_dir("random_c");
    CHECK(run_cli({"random", "--seed", "7", "--samples", "40", "--out-dir", c.string(), "--n", "2", "--m", "3"})
              .code == cli::kOk);
    CHECK(slurp(c / "report.json") != report);
}

TEST_CASE("cli random with zero tolerance writes no violation files") {
    const auto dir = temp_dir("random_violation");
    setenv("EIGENBOUND_TOL", "0", 1);
    const auto r = run_cli({"random", "--samples", "10", "--out-dir", dir.string()});
    unsetenv("EIGENBOUND_TOL");
    CHECK(r.code == cli::kOk);
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        CHECK(entry.path().filename().string().rfind("violation_", 0) != 0);
    }
}

TEST_CASE("cli plotdata") {
    const auto r = run_cli({"plotdata", kData + "/identity_quadratic.txt", "--theorem", "t2", "--p", "2"});
    REQUIRE(r.code == cli::kOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "record,label,norm,strict,center_re,center_im,radius,re,im");
    int disks = 0, eigs = 0;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
        if (line.rfind("disk,T2(p=2),inf,1,0,0,", 0) == 0) ++disks;
        if (line.rfind("eigenvalue,,,,,,,", 0) == 0) ++eigs;
    }
    CHECK(disks == 1);
    CHECK(eigs == 4);
    CHECK(run_cli({"plotdata", kData + "/identity_quadratic.txt", "--theorem", "t9"}).code == cli::kInput);
}
