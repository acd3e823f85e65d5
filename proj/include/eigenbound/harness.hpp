#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenbound/bounds.hpp"
#include "eigenbound/polynomial.hpp"

namespace eigenbound {

enum class Distribution { ComplexGaussian, UniformDisk, IntegerSmall };

std::string_view to_string(Distribution distribution);
/// "complex-gaussian", "uniform-disk", "integer-small".
std::optional<Distribution> parse_distribution(std::string_view text);

struct IntRange {
    int lo = 1;
    int hi = 1;
};

struct EnsembleConfig {
    std::uint64_t seed = 42;
    int samples = 500;
    IntRange n_range{1, 4};
    IntRange m_range{1, 5};
    double coefficient_scale = 1.0;
    Distribution distribution = Distribution::ComplexGaussian;
    bool enforce_nonsingular = true;

    /// Throws eigenbound::Error on empty ranges, n < 1, m < 1 or samples < 1.
    void validate() const;
};

/// Seed of sample `index`: splitmix64 of (seed ^ golden-ratio * index), so
/// every sample can be drawn independently of the others.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Sample `index` of the ensemble. Throws GenerationExhausted if A_0 or A_m
/// stays singular (or A_m zero) after 100 redraws.
MatrixPolynomial generate_sample(const EnsembleConfig& config, std::size_t index);

/// Sequential view over the ensemble; yields config.samples polynomials.
class EnsembleStream {
public:
    explicit EnsembleStream(EnsembleConfig config);
    std::optional<MatrixPolynomial> next();
    std::size_t position() const { return index_; }

private:
    EnsembleConfig config_;
    std::size_t index_ = 0;
};

std::vector<MatrixPolynomial> generate(const EnsembleConfig& config);

inline constexpr double kDefaultInclusionTolerance = 1e-8;

struct InclusionRecord {
    std::size_t sample = 0;
    std::string label;
    Theorem theorem = Theorem::C;
    std::optional<Variant> variant;
    NormKind norm = NormKind::InducedInf;
    std::optional<double> p;
    double radius = 0;
    double max_modulus = 0;
    double margin = 0;  ///< radius - max |lambda|
    bool pass = true;
    /// False for as-stated rows, which are reported but not gated.
    bool counted = true;
    /// Serialized polynomial file, only for failing rows.
    std::string evidence;
};

struct SampleSummary {
    std::size_t sample = 0;
    int n = 0;
    int m = 0;
    double max_modulus = 0;
    bool certified = false;
    /// Set when the sample produced no records (generation or oracle failure).
    std::string skip_reason;
    std::vector<std::string> notes;
};

struct TheoremAggregate {
    std::size_t count = 0;
    std::size_t violations = 0;
    double min_margin = 0;
    double mean_tightness = 0;  ///< mean of max|lambda| / radius
};

struct InclusionReport {
    EnsembleConfig config;
    std::vector<NormKind> norms;
    std::vector<double> p_grid;
    double tolerance = kDefaultInclusionTolerance;
    std::vector<SampleSummary> samples;
    std::vector<InclusionRecord> records;
    std::map<std::string, TheoremAggregate> aggregate;

    /// Failing rows among the gated (corrected-variant) bounds.
    std::size_t violation_count() const;
    /// Failing rows among the as-stated rows.
    std::size_t as_stated_violation_count() const;
    std::size_t skip_count() const;
};

struct RunOptions {
    double tolerance = kDefaultInclusionTolerance;
    double zero_tol = 0.0;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Evaluate every bound on every sample and check it against the oracle spectrum.
InclusionReport run_inclusion(const EnsembleConfig& config, std::span<const NormKind> norms,
                              std::span<const double> p_grid, const RunOptions& options = {});

/// Records for a single polynomial, as run_inclusion produces them per sample.
std::vector<InclusionRecord> check_polynomial(const MatrixPolynomial& poly, std::span<const NormKind> norms,
                                              std::span<const double> p_grid, double tolerance,
                                              double max_modulus, double zero_tol = 0.0);

struct TightnessRow {
    std::string label;
    std::size_t count = 0;
    double mean_ratio = 0;
    double min_ratio = 0;
    double max_ratio = 0;
    /// Number of (sample, norm) cases where this bound had the smallest
    /// radius among the gated bounds; ties credit every tied bound.
    std::size_t wins = 0;
};

/// One row per bound label, sorted by label. Throws EmptyReport without records.
std::vector<TightnessRow> tightness_table(const InclusionReport& report);

}  // namespace eigenbound
