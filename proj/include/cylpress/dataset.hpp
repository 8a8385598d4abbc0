#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cylpress {

// Which pressure statistic the target column of a dataset holds.
enum class TargetKind { mean_cp, rms_cp };

std::string to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& name);

// One pressure observation: (Re, Ti, theta) -> Cp.
//   re     Reynolds number, dimensionless, > 0
//   ti     turbulence intensity in percent, 0..100
//   theta  circumferential angle in degrees, 0..180
//   target pressure coefficient, finite
struct Sample {
    double re = 0.0;
    double ti = 0.0;
    double theta = 0.0;
    double target = 0.0;
};

// Empty string when valid, otherwise the name of the offending field
// plus a short reason.
std::string validate_sample(const Sample& s);

// Model inputs. Reynolds number enters as log10(re): the data span four
// decades and midpoint thresholds in log space partition them evenly.
// This is the library's single data transform.
struct FeatureVector {
    static constexpr std::size_t count = 3;
    std::array<double, count> values{};

    double operator[](std::size_t i) const { return values[i]; }
};

FeatureVector featurize(const Sample& s);

// Feature names indexed by FeatureVector position, for reports.
extern const std::array<const char*, FeatureVector::count> feature_names;

// An ordered, immutable-after-construction collection of samples.
// Sample order is ingestion order; splits and folds depend on it.
class Dataset {
public:
    Dataset() = default;
    Dataset(TargetKind kind, std::vector<Sample> samples)
        : kind_(kind), samples_(std::move(samples)) {}

    TargetKind target_kind() const { return kind_; }
    const std::vector<Sample>& samples() const { return samples_; }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    // New dataset holding the given rows (in the order given).
    Dataset subset(const std::vector<std::size_t>& indices) const;

private:
    TargetKind kind_ = TargetKind::mean_cp;
    std::vector<Sample> samples_;
};

// Reads the `re,ti,theta,cp` CSV schema. The header row is mandatory.
// Decimal or scientific notation, '#'-prefixed comment lines skipped.
// Throws std::runtime_error on malformed rows (with line number) and
// std::domain_error on field values outside the Sample domain (naming
// the field and line).
Dataset load_csv(const std::string& path, TargetKind target_kind);

// Deterministic disjoint split; test gets round(n * test_fraction) samples
// chosen by a seeded permutation. Each side preserves ingestion order.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed);

// Same split, but as index sets into the original dataset (ascending).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed);

// k disjoint folds covering all samples, sizes differing by at most one.
struct FoldAssignment {
    std::size_t k = 0;
    std::vector<std::size_t> membership;  // per-sample fold index in [0, k)

    std::vector<std::size_t> fold_indices(std::size_t fold) const;
    std::vector<std::size_t> complement_indices(std::size_t fold) const;
};

// Deterministic in (n, k, seed). Requires 2 <= k <= n.
FoldAssignment kfold(std::size_t n, std::size_t k, std::uint64_t seed);
FoldAssignment kfold(const Dataset& ds, std::size_t k, std::uint64_t seed);

// FNV-1a over the target kind and the raw bytes of every sample field,
// recorded in model files so a model can be matched to its training data.
std::uint64_t dataset_hash(const Dataset& ds);

}  // namespace cylpress
