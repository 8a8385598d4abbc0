#include "cylpress/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cylpress/rng.hpp"

namespace cylpress {

const std::array<const char*, FeatureVector::count> feature_names = {"log10_re", "ti", "theta"};

std::string to_string(TargetKind kind) {
    return kind == TargetKind::mean_cp ? "mean_cp" : "rms_cp";
}

TargetKind target_kind_from_string(const std::string& name) {
    if (name == "mean_cp") return TargetKind::mean_cp;
    if (name == "rms_cp") return TargetKind::rms_cp;
    throw std::invalid_argument("unknown target kind: '" + name + "' (expected mean_cp or rms_cp)");
}

std::string validate_sample(const Sample& s) {
    if (!(s.re > 0.0) || !std::isfinite(s.re)) return "re must be finite and > 0";
    if (!(s.ti >= 0.0 && s.ti <= 100.0)) return "ti must be in [0, 100]";
    if (!(s.theta >= 0.0 && s.theta <= 180.0)) return "theta must be in [0, 180]";
    if (!std::isfinite(s.target)) return "cp must be finite";
    return {};
}

FeatureVector featurize(const Sample& s) {
    return FeatureVector{{std::log10(s.re), s.ti, s.theta}};
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    std::vector<Sample> rows;
    rows.reserve(indices.size());
    for (std::size_t i : indices) rows.push_back(samples_[i]);
    return Dataset(kind_, std::move(rows));
}

namespace {

bool parse_double(std::string_view text, double& out) {
    // Trim surrounding spaces; from_chars itself accepts no whitespace.
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string strip_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

}  // namespace

Dataset load_csv(const std::string& path, TargetKind target_kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");

    std::string line;
    std::size_t line_no = 0;

    // Header first, comments allowed above it.
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        auto fields = split_fields(line);
        if (fields.size() != 4 || strip_ws(fields[0]) != "re" || strip_ws(fields[1]) != "ti" ||
            strip_ws(fields[2]) != "theta" || strip_ws(fields[3]) != "cp") {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected header 're,ti,theta,cp'");
        }
        have_header = true;
        break;
    }
    if (!have_header) throw std::runtime_error(path + ": missing header 're,ti,theta,cp'");

    std::vector<Sample> samples;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') continue;

        auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        }
        Sample s;
        static constexpr const char* column_names[4] = {"re", "ti", "theta", "cp"};
        double* slots[4] = {&s.re, &s.ti, &s.theta, &s.target};
        for (int i = 0; i < 4; ++i) {
            if (!parse_double(fields[i], *slots[i])) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": field '" +
                                         column_names[i] + "' is not a number: '" +
                                         strip_ws(fields[i]) + "'");
            }
        }
        if (std::string err = validate_sample(s); !err.empty()) {
            throw std::domain_error(path + ":" + std::to_string(line_no) + ": " + err);
        }
        samples.push_back(s);
    }
    return Dataset(target_kind, std::move(samples));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
        throw std::invalid_argument("test_fraction must be in [0, 1]");
    }
    std::size_t n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * test_fraction));
    if (n_test > n) n_test = n;

    std::vector<std::size_t> perm = iota_indices(n);
    Rng rng(seed);
    rng.shuffle(perm);

    std::vector<std::size_t> test(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed) {
    auto [train_idx, test_idx] = train_test_split_indices(ds.size(), test_fraction, seed);
    return {ds.subset(train_idx), ds.subset(test_idx)};
}

std::vector<std::size_t> FoldAssignment::fold_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < membership.size(); ++i)
        if (membership[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldAssignment::complement_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < membership.size(); ++i)
        if (membership[i] != fold) out.push_back(i);
    return out;
}

FoldAssignment kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("kfold: k must be >= 2");
    if (k > n) throw std::invalid_argument("kfold: k exceeds sample count");

    std::vector<std::size_t> perm = iota_indices(n);
    Rng rng(seed);
    rng.shuffle(perm);

    // First n % k folds take one extra sample.
    FoldAssignment fa;
    fa.k = k;
    fa.membership.resize(n);
    std::size_t base = n / k;
    std::size_t extra = n % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t len = base + (f < extra ? 1 : 0);
        for (std::size_t j = 0; j < len; ++j) fa.membership[perm[pos++]] = f;
    }
    return fa;
}

FoldAssignment kfold(const Dataset& ds, std::size_t k, std::uint64_t seed) {
    return kfold(ds.size(), k, seed);
}

std::uint64_t dataset_hash(const Dataset& ds) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    std::uint8_t kind_byte = ds.target_kind() == TargetKind::mean_cp ? 0 : 1;
    mix(&kind_byte, 1);
    for (const Sample& s : ds.samples()) {
        double fields[4] = {s.re, s.ti, s.theta, s.target};
        mix(fields, sizeof(fields));
    }
    return h;
}

}  // namespace cylpress
