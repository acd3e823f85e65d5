#include "eigenbound/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eigenbound/bounds.hpp"
#include "eigenbound/harness.hpp"
#include "eigenbound/io.hpp"
#include "eigenbound/oracle.hpp"

namespace eigenbound::cli {

namespace {

using nlohmann::json;

/// Raised for bad flag values found after CLI11 parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string input;
    std::string norm;
    std::string p_list = "2,4,16";
    std::string variant = "corrected";
    std::string format = "text";
    std::string theorem;
    double zero_tol = 0.0;
    bool strict_as_stated = false;

    std::uint64_t seed = 42;
    int samples = 500;
    std::string n = "1:4";
    std::string m = "1:5";
    std::string distribution = "complex-gaussian";
    double scale = 1.0;
    std::string out_dir;
    unsigned threads = 0;
};

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        double p = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), p);
        if (ec != std::errc() || ptr != item.data() + item.size() || !(p > 1)) {
            throw UsageError("--p expects a comma list of exponents > 1 (or inf), got '" + item + "'");
        }
        out.push_back(p);
    }
    if (out.empty()) throw UsageError("--p needs at least one exponent");
    return out;
}

std::vector<NormKind> parse_norms(const std::string& text, const std::string& fallback) {
    const std::string& value = text.empty() ? fallback : text;
    if (value == "all") return {NormKind::InducedOne, NormKind::InducedTwo, NormKind::InducedInf};
    if (auto kind = parse_norm(value)) return {*kind};
    throw UsageError("--norm must be 1, 2, inf or all");
}

VariantSelection parse_selection(const std::string& text) {
    if (text == "corrected") return VariantSelection::Corrected;
    if (text == "as-stated") return VariantSelection::AsStated;
    if (text == "both") return VariantSelection::Both;
    throw UsageError("--variant must be as-stated, corrected or both");
}

IntRange parse_range(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    auto to_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw UsageError(std::string(flag) + " expects an integer or lo:hi");
        }
        return v;
    };
    if (colon == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    return {to_int(std::string_view(text).substr(0, colon)), to_int(std::string_view(text).substr(colon + 1))};
}

double inclusion_tolerance() {
    const char* env = std::getenv("EIGENBOUND_TOL");
    if (!env || !*env) return kDefaultInclusionTolerance;
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(value) || value < 0) {
        throw UsageError("EIGENBOUND_TOL must be a nonnegative number");
    }
    return value;
}

bool json_format(const Options& opt) {
    if (opt.format == "json") return true;
    if (opt.format == "text") return false;
    throw UsageError("--format must be text or json");
}

std::string detail_text(const EigenvalueBound& bound) {
    std::string out;
    for (const auto& [key, value] : bound.detail) {
        if (!out.empty()) out += " ";
        out += key + "=" + io::fixed(value, 6);
    }
    return out;
}

void print_table(std::ostream& out, const BoundTable& table, NormKind norm) {
    out << "norm: " << to_string(norm) << "\n";
    out << std::left << std::setw(26) << "bound" << std::setw(14) << "radius" << std::setw(8) << "disk"
        << "detail\n";
    for (const auto& bound : table.bounds) {
        out << std::left << std::setw(26) << bound.label() << std::setw(14) << io::fixed(bound.radius)
            << std::setw(8) << (bound.strict ? "open" : "closed") << detail_text(bound) << "\n";
    }
    for (const auto& skip : table.skipped) out << "skipped " << skip.label << ": " << skip.reason << "\n";
}

json table_json(const BoundTable& table, NormKind norm) {
    json bounds = json::array();
    for (const auto& b : table.bounds) bounds.push_back(io::bound_to_json(b));
    json skipped = json::array();
    for (const auto& s : table.skipped) skipped.push_back({{"label", s.label}, {"reason", s.reason}});
    return {{"norm", std::string(to_string(norm))}, {"bounds", std::move(bounds)}, {"skipped", std::move(skipped)}};
}

int cmd_bounds(const Options& opt, std::ostream& out) {
    const bool as_json = json_format(opt);
    const auto norms = parse_norms(opt.norm, "inf");
    const auto p_grid = parse_p_list(opt.p_list);
    const auto selection = parse_selection(opt.variant);
    const MatrixPolynomial poly = io::read_polynomial(opt.input);

    json doc = {{"input", opt.input}, {"n", poly.dim()}, {"m", poly.degree()}, {"tables", json::array()}};
    for (NormKind norm : norms) {
        const BoundTable table = all_bounds(poly, norm, p_grid, selection, opt.zero_tol);
        if (as_json) {
            doc["tables"].push_back(table_json(table, norm));
        } else {
            print_table(out, table, norm);
        }
    }
    if (as_json) out << doc.dump(2) << "\n";
    return kOk;
}

int cmd_eigs(const Options& opt, std::ostream& out) {
    const bool as_json = json_format(opt);
    const MatrixPolynomial poly = io::read_polynomial(opt.input);
    const Spectrum spectrum = eigenvalues(poly);
    if (as_json) {
        out << io::spectrum_to_json(spectrum).dump(2) << "\n";
        return kOk;
    }
    out << "eigenvalues: " << spectrum.eigenvalues.size() << " (n=" << poly.dim() << ", m=" << poly.degree()
        << ")\n";
    out << std::left << std::setw(26) << "re" << std::setw(26) << "im" << std::setw(26) << "modulus"
        << "residual\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        const Complex& z = spectrum.eigenvalues[i];
        out << std::left << std::setw(26) << io::exact(z.real()) << std::setw(26) << io::exact(z.imag())
            << std::setw(26) << io::exact(std::abs(z)) << io::exact(spectrum.residuals[i]) << "\n";
    }
    out << "max modulus: " << io::exact(spectrum.max_modulus) << "\n";
    out << "certified: " << (spectrum.certified() ? "yes" : "no") << "\n";
    return kOk;
}

int cmd_check(const Options& opt, std::ostream& out) {
    const bool as_json = json_format(opt);
    const auto norms = parse_norms(opt.norm, "all");
    const auto p_grid = parse_p_list(opt.p_list);
    const double tolerance = inclusion_tolerance();
    const MatrixPolynomial poly = io::read_polynomial(opt.input);
    const Spectrum spectrum = eigenvalues(poly);
    const auto records = check_polynomial(poly, norms, p_grid, tolerance, spectrum.max_modulus, opt.zero_tol);

    std::size_t violations = 0;
    std::size_t as_stated_violations = 0;
    for (const auto& r : records) {
        if (r.pass) continue;
        if (r.counted) ++violations; else ++as_stated_violations;
    }
    const bool failed = violations > 0 || (opt.strict_as_stated && as_stated_violations > 0);
    const bool a0_singular = [&] {
        try {
            (void)inverse(poly[0]);
            return false;
        } catch (const SingularError&) {
            return true;
        }
    }();

    if (as_json) {
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back({{"label", r.label}, {"norm", std::string(to_string(r.norm))}, {"radius", r.radius},
                            {"margin", r.margin}, {"pass", r.pass}, {"counted", r.counted}});
        }
        json doc = {{"input", opt.input},
                    {"max_modulus", spectrum.max_modulus},
                    {"certified", spectrum.certified()},
                    {"tolerance", tolerance},
                    {"a0_singular", a0_singular},
                    {"violations", violations},
                    {"as_stated_violations", as_stated_violations},
                    {"records", std::move(rows)}};
        if (violations + as_stated_violations > 0) doc["evidence"] = io::polynomial_to_json(poly);
        out << doc.dump(2) << "\n";
    } else {
        out << "max |lambda| = " << io::exact(spectrum.max_modulus) << " over " << spectrum.eigenvalues.size()
            << " eigenvalues (certified: " << (spectrum.certified() ? "yes" : "no") << ")\n";
        if (a0_singular) out << "note: A_0 is singular, so 0 is an eigenvalue\n";
        out << std::left << std::setw(26) << "bound" << std::setw(6) << "norm" << std::setw(14) << "radius"
            << std::setw(16) << "margin" << "status\n";
        for (const auto& r : records) {
            std::string status = r.pass ? "ok" : (r.counted ? "VIOLATION" : "violation (as-stated, not gated)");
            out << std::left << std::setw(26) << r.label << std::setw(6) << to_string(r.norm) << std::setw(14)
                << io::fixed(r.radius) << std::setw(16) << io::fixed(r.margin, 8) << status << "\n";
        }
        out << "violations: " << violations << " gated, " << as_stated_violations << " as-stated\n";
        if (violations + as_stated_violations > 0) {
            out << "evidence: " << io::polynomial_to_json(poly).dump() << "\n";
        }
    }
    return failed ? kViolation : kOk;
}

int cmd_random(const Options& opt, std::ostream& out) {
    EnsembleConfig config;
    config.seed = opt.seed;
    config.samples = opt.samples;
    config.n_range = parse_range(opt.n, "--n");
    config.m_range = parse_range(opt.m, "--m");
    config.coefficient_scale = opt.scale;
    const auto distribution = parse_distribution(opt.distribution);
    if (!distribution) throw UsageError("--distribution must be complex-gaussian, uniform-disk or integer-small");
    config.distribution = *distribution;
    try {
        config.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto norms = parse_norms(opt.norm, "all");
    const auto p_grid = parse_p_list(opt.p_list);
    RunOptions run_options;
    run_options.tolerance = inclusion_tolerance();
    run_options.zero_tol = opt.zero_tol;
    run_options.threads = opt.threads;

    const std::filesystem::path dir(opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw UsageError("cannot create output directory " + opt.out_dir);

    const InclusionReport report = run_inclusion(config, norms, p_grid, run_options);
    json doc = io::report_to_json(report);
    doc["tightness"] = io::tightness_to_json(tightness_table(report));
    {
        std::ofstream file(dir / "report.json", std::ios::binary);
        file << doc.dump(2) << "\n";
        if (!file) throw Error("failed to write report.json");
    }
    std::size_t last_written = std::numeric_limits<std::size_t>::max();
    for (const auto& r : report.records) {
        if (r.pass || !r.counted || r.sample == last_written) continue;
        std::ofstream file(dir / ("violation_" + std::to_string(r.sample) + ".json"), std::ios::binary);
        file << json::parse(r.evidence).dump(2) << "\n";
        last_written = r.sample;
    }

    out << "samples: " << report.samples.size() << " (skipped " << report.skip_count() << ")\n";
    out << std::left << std::setw(26) << "bound" << std::setw(8) << "count" << std::setw(12) << "violations"
        << std::setw(16) << "min margin" << "mean tightness\n";
    for (const auto& [label, agg] : report.aggregate) {
        out << std::left << std::setw(26) << label << std::setw(8) << agg.count << std::setw(12) << agg.violations
            << std::setw(16) << io::fixed(agg.min_margin, 6) << io::fixed(agg.mean_tightness, 4) << "\n";
    }
    out << "gated violations: " << report.violation_count() << ", as-stated violations: "
        << report.as_stated_violation_count() << "\n";
    out << "report: " << (dir / "report.json").string() << "\n";
    return report.violation_count() > 0 ? kViolation : kOk;
}

std::optional<Theorem> parse_theorem_filter(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "b") return Theorem::B;
    if (lower == "c") return Theorem::C;
    if (lower == "1" || lower == "t1") return Theorem::T1;
    if (lower == "2" || lower == "t2") return Theorem::T2;
    if (lower == "3" || lower == "t3") return Theorem::T3;
    if (lower == "4" || lower == "t4") return Theorem::T4;
    throw UsageError("--theorem must be one of b, c, t1, t2, t3, t4");
}

int cmd_plotdata(const Options& opt, std::ostream& out) {
    const auto norms = parse_norms(opt.norm, "inf");
    const auto p_grid = parse_p_list(opt.p_list);
    const auto selection = parse_selection(opt.variant);
    const auto filter = parse_theorem_filter(opt.theorem);
    const MatrixPolynomial poly = io::read_polynomial(opt.input);
    const Spectrum spectrum = eigenvalues(poly);

    out << "record,label,norm,strict,center_re,center_im,radius,re,im\n";
    for (NormKind norm : norms) {
        const BoundTable table = all_bounds(poly, norm, p_grid, selection, opt.zero_tol);
        for (const auto& bound : table.bounds) {
            if (filter && bound.theorem != *filter) continue;
            out << "disk," << bound.label() << "," << to_string(norm) << "," << (bound.strict ? 1 : 0)
                << ",0,0," << io::exact(bound.radius) << ",,\n";
        }
    }
    for (const Complex& z : spectrum.eigenvalues) {
        out << "eigenvalue,,,,,,," << io::exact(z.real()) << "," << io::exact(z.imag()) << "\n";
    }
    return kOk;
}

void add_input(CLI::App* sub, Options& opt) {
    sub->add_option("input", opt.input, "Polynomial file (text or JSON)")->required();
}

void add_bound_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--p", opt.p_list, "Comma list of Hoelder exponents (inf allowed)");
    sub->add_option("--zero-tol", opt.zero_tol, "Gap detection threshold on ||A_j||_inf");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Eigenvalue inclusion disks for matrix polynomials"};
    app.require_subcommand(1);

    auto* bounds = app.add_subcommand("bounds", "Print every applicable bound radius");
    add_input(bounds, opt);
    bounds->add_option("--norm", opt.norm, "Induced norm: 1, 2, inf or all (default inf)");
    add_bound_flags(bounds, opt);
    bounds->add_option("--variant", opt.variant, "Theorems 1/4: as-stated, corrected or both");
    bounds->add_option("--format", opt.format, "text or json");

    auto* eigs = app.add_subcommand("eigs", "Print the eigenvalues with residual certificates");
    add_input(eigs, opt);
    eigs->add_option("--format", opt.format, "text or json");

    auto* check = app.add_subcommand("check", "Compare every bound with the computed spectrum");
    add_input(check, opt);
    check->add_option("--norm", opt.norm, "Induced norm: 1, 2, inf or all (default all)");
    add_bound_flags(check, opt);
    check->add_flag("--strict-as-stated", opt.strict_as_stated, "Also fail on as-stated violations");
    check->add_option("--format", opt.format, "text or json");

    auto* random = app.add_subcommand("random", "Run the inclusion check on a seeded random ensemble");
    random->add_option("--seed", opt.seed, "Ensemble seed");
    random->add_option("--samples", opt.samples, "Number of samples");
    random->add_option("--n", opt.n, "Dimension or lo:hi range");
    random->add_option("--m", opt.m, "Degree or lo:hi range");
    random->add_option("--distribution", opt.distribution, "complex-gaussian, uniform-disk or integer-small");
    random->add_option("--scale", opt.scale, "Coefficient scale");
    random->add_option("--norm", opt.norm, "Induced norm: 1, 2, inf or all (default all)");
    random->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    add_bound_flags(random, opt);
    random->add_option("--out-dir", opt.out_dir, "Directory for report.json and violation samples")->required();

    auto* plot = app.add_subcommand("plotdata", "Emit disks and eigenvalues as CSV");
    add_input(plot, opt);
    plot->add_option("--norm", opt.norm, "Induced norm: 1, 2, inf or all (default inf)");
    add_bound_flags(plot, opt);
    plot->add_option("--variant", opt.variant, "Theorems 1/4: as-stated, corrected or both");
    plot->add_option("--theorem", opt.theorem, "Only this theorem: b, c, t1, t2, t3, t4");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(opt, out);
        if (eigs->parsed()) return cmd_eigs(opt, out);
        if (check->parsed()) return cmd_check(opt, out);
        if (random->parsed()) return cmd_random(opt, out);
        if (plot->parsed()) return cmd_plotdata(opt, out);
    } catch (const SingularLeading& e) {
        err << "error: " << e.what() << "; every bound requires nonsingular A_m (and the theory assumes "
            << "nonsingular A_0 as well)\n";
        return kSingularLeading;
    } catch (const ParseError& e) {
        err << "error: " << opt.input << ": " << e.what() << "\n";
        return kInput;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InvalidHolder& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

}  // namespace eigenbound::cli
