#include "eigenbound/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eigenbound::io {

namespace {

using nlohmann::json;

double parse_double(std::string_view token, int line) {
    double value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Splits one grid row into complex entries: bare reals or (re,im).
std::vector<Complex> parse_row(std::string_view row, int line) {
    std::vector<Complex> out;
    std::size_t i = 0;
    while (i < row.size()) {
        if (std::isspace(static_cast<unsigned char>(row[i]))) {
            ++i;
            continue;
        }
        if (row[i] == '(') {
            const auto close = row.find(')', i);
            if (close == std::string_view::npos) {
                throw ParseError("line " + std::to_string(line) + ": unterminated '('");
            }
            const std::string_view inner = row.substr(i + 1, close - i - 1);
            const auto comma = inner.find(',');
            if (comma == std::string_view::npos) {
                throw ParseError("line " + std::to_string(line) + ": expected (re,im)");
            }
            out.emplace_back(parse_double(trim(inner.substr(0, comma)), line),
                             parse_double(trim(inner.substr(comma + 1)), line));
            i = close + 1;
        } else {
            std::size_t end = i;
            while (end < row.size() && !std::isspace(static_cast<unsigned char>(row[end]))) ++end;
            out.emplace_back(parse_double(row.substr(i, end - i), line), 0.0);
            i = end;
        }
    }
    return out;
}

int parse_int(std::string_view token, int line, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad integer for " + what);
    }
    return value;
}

MatrixPolynomial build(int n, int m, std::vector<Matrix> coeffs) {
    if (m < 1) throw ParseError("degree m must be at least 1");
    if (static_cast<int>(coeffs.size()) != m + 1) {
        throw ParseError("expected " + std::to_string(m + 1) + " coefficients, found " +
                         std::to_string(coeffs.size()));
    }
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].rows() != n || coeffs[j].cols() != n) {
            throw ParseError("coefficient A" + std::to_string(j) + " is not " + std::to_string(n) + "x" +
                             std::to_string(n));
        }
    }
    try {
        return MatrixPolynomial(std::move(coeffs));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

MatrixPolynomial parse_text(std::string_view text) {
    std::optional<int> n;
    std::optional<int> m;
    std::map<int, std::vector<std::vector<Complex>>> blocks;
    std::optional<int> current;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (const auto eq = line.find('='); eq != std::string_view::npos) {
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (key == "n") n = parse_int(value, line_no, "n");
            else if (key == "m") m = parse_int(value, line_no, "m");
            else throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
            current.reset();
            continue;
        }
        if (line.front() == 'A' && line.back() == ':') {
            const int j = parse_int(line.substr(1, line.size() - 2), line_no, "coefficient index");
            if (j < 0 || blocks.count(j)) {
                throw ParseError("line " + std::to_string(line_no) + ": bad or repeated block A" + std::to_string(j));
            }
            blocks[j];
            current = j;
            continue;
        }
        if (!current) throw ParseError("line " + std::to_string(line_no) + ": matrix row outside a block");
        blocks[*current].push_back(parse_row(line, line_no));
    }

    if (!n || !m) throw ParseError("missing 'n = ...' or 'm = ...'");
    if (*n < 1) throw ParseError("dimension n must be at least 1");
    if (*m < 1) throw ParseError("degree m must be at least 1");
    std::vector<Matrix> coeffs;
    for (int j = 0; j <= *m; ++j) {
        const auto it = blocks.find(j);
        if (it == blocks.end()) throw ParseError("missing block A" + std::to_string(j));
        const auto& rows = it->second;
        if (static_cast<int>(rows.size()) != *n) throw ParseError("block A" + std::to_string(j) + " needs n rows");
        Matrix a(*n, *n);
        for (int r = 0; r < *n; ++r) {
            if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != *n) {
                throw ParseError("block A" + std::to_string(j) + " row " + std::to_string(r) + " needs n entries");
            }
            for (int c = 0; c < *n; ++c) a(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        coeffs.push_back(std::move(a));
    }
    if (blocks.size() != coeffs.size()) throw ParseError("blocks beyond A_m present");
    return build(*n, *m, std::move(coeffs));
}

double json_number(const json& value) {
    if (!value.is_number()) throw ParseError("expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) throw ParseError("non-finite number");
    return x;
}

json optional_number(const std::optional<double>& value) {
    if (!value) return nullptr;
    if (std::isinf(*value)) return "inf";
    return *value;
}

}  // namespace

MatrixPolynomial polynomial_from_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw ParseError("polynomial document must be an object");
        if (!doc.contains("n") || !doc.contains("m") || !doc.contains("coefficients")) {
            throw ParseError("polynomial document needs n, m and coefficients");
        }
        if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer()) {
            throw ParseError("n and m must be integers");
        }
        const int n = doc["n"].get<int>();
        const int m = doc["m"].get<int>();
        if (n < 1) throw ParseError("dimension n must be at least 1");
        if (m < 1) throw ParseError("degree m must be at least 1");
        const json& list = doc["coefficients"];
        if (!list.is_array()) throw ParseError("coefficients must be an array");
        std::vector<Matrix> coeffs;
        for (const json& grid : list) {
            if (!grid.is_array() || static_cast<int>(grid.size()) != n) throw ParseError("coefficient grid needs n rows");
            Matrix a(n, n);
            for (int r = 0; r < n; ++r) {
                const json& row = grid[static_cast<std::size_t>(r)];
                if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("grid row needs n entries");
                for (int c = 0; c < n; ++c) {
                    const json& entry = row[static_cast<std::size_t>(c)];
                    if (!entry.is_array() || entry.size() != 2) throw ParseError("entries are [re, im] pairs");
                    a(r, c) = Complex(json_number(entry[0]), json_number(entry[1]));
                }
            }
            coeffs.push_back(std::move(a));
        }
        return build(n, m, std::move(coeffs));
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

MatrixPolynomial parse_polynomial(std::string_view text) {
    const auto body = trim(text);
    if (body.empty()) throw ParseError("empty polynomial file");
    if (body.front() == '{') {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::exception& e) {
            throw ParseError(e.what());
        }
        return polynomial_from_json(doc);
    }
    return parse_text(body);
}

MatrixPolynomial read_polynomial(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_polynomial(buffer.str());
}

nlohmann::json polynomial_to_json(const MatrixPolynomial& poly) {
    json coeffs = json::array();
    for (const Matrix& a : poly.coefficients()) {
        json grid = json::array();
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
            grid.push_back(std::move(row));
        }
        coeffs.push_back(std::move(grid));
    }
    return {{"n", poly.dim()}, {"m", poly.degree()}, {"coefficients", std::move(coeffs)}};
}

std::string exact(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

std::string polynomial_to_text(const MatrixPolynomial& poly) {
    std::string out = "n = " + std::to_string(poly.dim()) + "\nm = " + std::to_string(poly.degree()) + "\n";
    for (int j = 0; j <= poly.degree(); ++j) {
        out += "A" + std::to_string(j) + ":\n";
        const Matrix& a = poly[j];
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            out += " ";
            for (Eigen::Index c = 0; c < a.cols(); ++c) {
                out += " (" + exact(a(r, c).real()) + "," + exact(a(r, c).imag()) + ")";
            }
            out += "\n";
        }
    }
    return out;
}

nlohmann::json bound_to_json(const EigenvalueBound& bound) {
    json doc = {{"label", bound.label()},
                {"theorem", std::string(to_string(bound.theorem))},
                {"norm", std::string(to_string(bound.norm))},
                {"radius", bound.radius},
                {"strict", bound.strict}};
    doc["variant"] = bound.variant ? json(std::string(to_string(*bound.variant))) : json(nullptr);
    doc["p"] = optional_number(bound.holder ? std::optional(bound.holder->p) : std::nullopt);
    doc["q"] = optional_number(bound.holder ? std::optional(bound.holder->q) : std::nullopt);
    json detail = json::object();
    for (const auto& [key, value] : bound.detail) detail[key] = value;
    doc["detail"] = std::move(detail);
    return doc;
}

nlohmann::json spectrum_to_json(const Spectrum& spectrum) {
    json eigs = json::array();
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        const Complex& z = spectrum.eigenvalues[i];
        eigs.push_back({{"re", z.real()},
                        {"im", z.imag()},
                        {"modulus", std::abs(z)},
                        {"residual", spectrum.residuals[i]},
                        {"tolerance", spectrum.tolerances[i]}});
    }
    return {{"count", spectrum.eigenvalues.size()},
            {"max_modulus", spectrum.max_modulus},
            {"converged", spectrum.converged},
            {"certified", spectrum.certified()},
            {"eigenvalues", std::move(eigs)}};
}

nlohmann::json report_to_json(const InclusionReport& report) {
    const auto& cfg = report.config;
    json config = {{"seed", cfg.seed},
                   {"samples", cfg.samples},
                   {"n_range", {cfg.n_range.lo, cfg.n_range.hi}},
                   {"m_range", {cfg.m_range.lo, cfg.m_range.hi}},
                   {"coefficient_scale", cfg.coefficient_scale},
                   {"distribution", std::string(to_string(cfg.distribution))},
                   {"enforce_nonsingular", cfg.enforce_nonsingular}};
    json norms = json::array();
    for (NormKind k : report.norms) norms.push_back(std::string(to_string(k)));
    json p_grid = json::array();
    for (double p : report.p_grid) p_grid.push_back(optional_number(p));

    json samples = json::array();
    for (const auto& s : report.samples) {
        json entry = {{"sample", s.sample}, {"n", s.n}, {"m", s.m}, {"max_modulus", s.max_modulus},
                      {"certified", s.certified}};
        if (!s.skip_reason.empty()) entry["skip_reason"] = s.skip_reason;
        if (!s.notes.empty()) entry["notes"] = s.notes;
        samples.push_back(std::move(entry));
    }
    json records = json::array();
    for (const auto& r : report.records) {
        json entry = {{"sample", r.sample},
                      {"label", r.label},
                      {"theorem", std::string(to_string(r.theorem))},
                      {"norm", std::string(to_string(r.norm))},
                      {"radius", r.radius},
                      {"max_modulus", r.max_modulus},
                      {"margin", r.margin},
                      {"pass", r.pass},
                      {"counted", r.counted}};
        entry["variant"] = r.variant ? json(std::string(to_string(*r.variant))) : json(nullptr);
        entry["p"] = optional_number(r.p);
        if (!r.evidence.empty()) entry["evidence"] = json::parse(r.evidence);
        records.push_back(std::move(entry));
    }
    json aggregate = json::object();
    for (const auto& [label, agg] : report.aggregate) {
        aggregate[label] = {{"count", agg.count},
                            {"violations", agg.violations},
                            {"min_margin", agg.min_margin},
                            {"mean_tightness", agg.mean_tightness}};
    }
    return {{"config", std::move(config)},
            {"norms", std::move(norms)},
            {"p_grid", std::move(p_grid)},
            {"tolerance", report.tolerance},
            {"violations", report.violation_count()},
            {"as_stated_violations", report.as_stated_violation_count()},
            {"skipped", report.skip_count()},
            {"aggregate", std::move(aggregate)},
            {"samples", std::move(samples)},
            {"records", std::move(records)}};
}

nlohmann::json tightness_to_json(const std::vector<TightnessRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back({{"label", row.label},
                       {"count", row.count},
                       {"mean_ratio", row.mean_ratio},
                       {"min_ratio", row.min_ratio},
                       {"max_ratio", row.max_ratio},
                       {"wins", row.wins}});
    }
    return out;
}

}  // namespace eigenbound::io
