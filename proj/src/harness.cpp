#include "eigenbound/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "eigenbound/io.hpp"
#include "eigenbound/oracle.hpp"

namespace eigenbound {

namespace {

constexpr int kMaxRedraws = 100;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Distributions are written out by hand so that samples are identical
// across standard library implementations.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(engine_() % span);
    }

    Complex draw(Distribution distribution) {
        switch (distribution) {
            case Distribution::ComplexGaussian: {
                // Box-Muller with E|z|^2 = 1.
                const double radius = std::sqrt(-std::log(1.0 - uniform()));
                const double angle = 2.0 * std::numbers::pi * uniform();
                return std::polar(radius, angle);
            }
            case Distribution::UniformDisk: {
                const double radius = std::sqrt(uniform());
                const double angle = 2.0 * std::numbers::pi * uniform();
                return std::polar(radius, angle);
            }
            case Distribution::IntegerSmall:
                return {static_cast<double>(integer(-3, 3)), 0.0};
        }
        return {};
    }

    Matrix matrix(Eigen::Index n, Distribution distribution, double scale) {
        Matrix a(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = scale * draw(distribution);
        }
        return a;
    }

private:
    std::mt19937_64 engine_;
};

bool invertible(const Matrix& a) {
    try {
        (void)inverse(a);
        return true;
    } catch (const SingularError&) {
        return false;
    }
}

Matrix redraw_until(SampleRng& rng, const EnsembleConfig& config, Eigen::Index n, const char* which,
                    bool need_invertible) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        Matrix a = rng.matrix(n, config.distribution, config.coefficient_scale);
        if (need_invertible ? invertible(a) : !a.isZero(0.0)) return a;
    }
    throw GenerationExhausted(std::string("could not draw a usable ") + which + " in " +
                              std::to_string(kMaxRedraws) + " attempts");
}

struct SampleOutcome {
    SampleSummary summary;
    std::vector<InclusionRecord> records;
};

SampleOutcome evaluate_sample(const EnsembleConfig& config, std::size_t index, std::span<const NormKind> norms,
                              std::span<const double> p_grid, const RunOptions& options) {
    SampleOutcome outcome;
    outcome.summary.sample = index;
    try {
        const MatrixPolynomial poly = generate_sample(config, index);
        outcome.summary.n = static_cast<int>(poly.dim());
        outcome.summary.m = poly.degree();
        const Spectrum spectrum = eigenvalues(poly);
        outcome.summary.max_modulus = spectrum.max_modulus;
        outcome.summary.certified = spectrum.certified();
        if (!outcome.summary.certified) outcome.summary.notes.push_back("residual certificate failed");
        outcome.records = check_polynomial(poly, norms, p_grid, options.tolerance, spectrum.max_modulus,
                                           options.zero_tol);
        for (auto& record : outcome.records) record.sample = index;
    } catch (const NoConvergence& e) {
        outcome.summary.skip_reason = std::string("NoConvergence: ") + e.what();
        outcome.records.clear();
    } catch (const GenerationExhausted& e) {
        outcome.summary.skip_reason = std::string("GenerationExhausted: ") + e.what();
    } catch (const SingularLeading& e) {
        outcome.summary.skip_reason = std::string("SingularLeading: ") + e.what();
    } catch (const std::exception& e) {
        outcome.summary.skip_reason = std::string("Error: ") + e.what();
        outcome.records.clear();
    }
    return outcome;
}

}  // namespace

std::string_view to_string(Distribution distribution) {
    switch (distribution) {
        case Distribution::ComplexGaussian: return "complex-gaussian";
        case Distribution::UniformDisk: return "uniform-disk";
        case Distribution::IntegerSmall: return "integer-small";
    }
    return "?";
}

std::optional<Distribution> parse_distribution(std::string_view text) {
    if (text == "complex-gaussian") return Distribution::ComplexGaussian;
    if (text == "uniform-disk") return Distribution::UniformDisk;
    if (text == "integer-small") return Distribution::IntegerSmall;
    return std::nullopt;
}

void EnsembleConfig::validate() const {
    if (samples < 1) throw Error("ensemble needs at least one sample");
    if (n_range.lo < 1 || n_range.hi < n_range.lo) throw Error("invalid dimension range");
    if (m_range.lo < 1 || m_range.hi < m_range.lo) throw Error("invalid degree range");
    if (!std::isfinite(coefficient_scale) || !(coefficient_scale > 0)) {
        throw Error("coefficient scale must be positive and finite");
    }
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

MatrixPolynomial generate_sample(const EnsembleConfig& config, std::size_t index) {
    config.validate();
    SampleRng rng(sample_seed(config.seed, index));
    const int n = rng.integer(config.n_range.lo, config.n_range.hi);
    const int m = rng.integer(config.m_range.lo, config.m_range.hi);
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<std::size_t>(m + 1));
    for (int j = 0; j <= m; ++j) {
        const bool end = j == 0 || j == m;
        if (end && config.enforce_nonsingular) {
            coeffs.push_back(redraw_until(rng, config, n, j == 0 ? "A_0" : "A_m", true));
        } else if (j == m) {
            coeffs.push_back(redraw_until(rng, config, n, "A_m", false));
        } else {
            coeffs.push_back(rng.matrix(n, config.distribution, config.coefficient_scale));
        }
    }
    return MatrixPolynomial(std::move(coeffs));
}

EnsembleStream::EnsembleStream(EnsembleConfig config) : config_(std::move(config)) { config_.validate(); }

std::optional<MatrixPolynomial> EnsembleStream::next() {
    if (index_ >= static_cast<std::size_t>(config_.samples)) return std::nullopt;
    return generate_sample(config_, index_++);
}

std::vector<MatrixPolynomial> generate(const EnsembleConfig& config) {
    std::vector<MatrixPolynomial> out;
    EnsembleStream stream(config);
    while (auto poly = stream.next()) out.push_back(std::move(*poly));
    return out;
}

std::size_t InclusionReport::violation_count() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return r.counted && !r.pass; }));
}

std::size_t InclusionReport::as_stated_violation_count() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.counted && !r.pass; }));
}

std::size_t InclusionReport::skip_count() const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.skip_reason.empty(); }));
}

std::vector<InclusionRecord> check_polynomial(const MatrixPolynomial& poly, std::span<const NormKind> norms,
                                              std::span<const double> p_grid, double tolerance,
                                              double max_modulus, double zero_tol) {
    std::vector<InclusionRecord> records;
    std::string evidence;
    for (NormKind norm : norms) {
        const BoundTable table = all_bounds(poly, norm, p_grid, VariantSelection::Both, zero_tol);
        for (const EigenvalueBound& bound : table.bounds) {
            InclusionRecord record;
            record.label = bound.label();
            record.theorem = bound.theorem;
            record.variant = bound.variant;
            record.norm = norm;
            if (bound.holder) record.p = bound.holder->p;
            record.radius = bound.radius;
            record.max_modulus = max_modulus;
            record.margin = bound.radius - max_modulus;
            record.pass = record.margin >= -tolerance * bound.radius;
            record.counted = bound.variant != Variant::AsStated;
            if (!record.pass) {
                if (evidence.empty()) evidence = io::polynomial_to_json(poly).dump();
                record.evidence = evidence;
            }
            records.push_back(std::move(record));
        }
    }
    return records;
}

InclusionReport run_inclusion(const EnsembleConfig& config, std::span<const NormKind> norms,
                              std::span<const double> p_grid, const RunOptions& options) {
    config.validate();
    for (double p : p_grid) (void)HolderPair::from_p(p);

    const auto total = static_cast<std::size_t>(config.samples);
    std::vector<SampleOutcome> outcomes(total);
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            outcomes[i] = evaluate_sample(config, i, norms, p_grid, options);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }

    InclusionReport report;
    report.config = config;
    report.norms.assign(norms.begin(), norms.end());
    report.p_grid.assign(p_grid.begin(), p_grid.end());
    report.tolerance = options.tolerance;
    std::map<std::string, double> tightness_sums;
    for (auto& outcome : outcomes) {
        report.samples.push_back(std::move(outcome.summary));
        for (auto& record : outcome.records) {
            auto& agg = report.aggregate[record.label];
            agg.min_margin = agg.count == 0 ? record.margin : std::min(agg.min_margin, record.margin);
            ++agg.count;
            if (!record.pass) ++agg.violations;
            tightness_sums[record.label] += record.max_modulus / record.radius;
            report.records.push_back(std::move(record));
        }
    }
    for (auto& [label, agg] : report.aggregate) agg.mean_tightness = tightness_sums[label] / agg.count;
    return report;
}

std::vector<TightnessRow> tightness_table(const InclusionReport& report) {
    if (report.records.empty()) throw EmptyReport("tightness table needs at least one record");

    std::map<std::string, TightnessRow> rows;
    std::map<std::string, double> sums;
    for (const auto& record : report.records) {
        auto& row = rows[record.label];
        const double ratio = record.max_modulus / record.radius;
        if (row.count == 0) {
            row.label = record.label;
            row.min_ratio = row.max_ratio = ratio;
        }
        row.min_ratio = std::min(row.min_ratio, ratio);
        row.max_ratio = std::max(row.max_ratio, ratio);
        sums[record.label] += ratio;
        ++row.count;
    }

    // Records of one (sample, norm) case are contiguous.
    auto begin = report.records.begin();
    while (begin != report.records.end()) {
        auto end = std::find_if(begin, report.records.end(), [&](const auto& r) {
            return r.sample != begin->sample || r.norm != begin->norm;
        });
        double best = std::numeric_limits<double>::infinity();
        for (auto it = begin; it != end; ++it) {
            if (it->counted) best = std::min(best, it->radius);
        }
        for (auto it = begin; it != end; ++it) {
            if (it->counted && it->radius <= best * (1.0 + 1e-12)) ++rows[it->label].wins;
        }
        begin = end;
    }

    std::vector<TightnessRow> out;
    for (auto& [label, row] : rows) {
        row.mean_ratio = sums[label] / static_cast<double>(row.count);
        out.push_back(row);
    }
    return out;
}

}  // namespace eigenbound
