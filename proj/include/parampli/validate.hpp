// validate.hpp: the property suite behind `parampli validate` and the
// acceptance gate: oracle equivalences, structural invariants, threshold
// agreement, and windowed time-series statistics, each reported with its
// worst residual and the tolerance it was held to.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace parampli {

struct PropertyResult {
    std::string name;
    bool passed{};
    double worst{};     // worst residual (<= tolerance passes)
    double tolerance{};
    std::string detail; // deterministic one-liner: sample counts, key stats
};

struct ValidationOptions {
    std::uint64_t seed = 42;
    // Replaces every property tolerance when set; exists to exercise the
    // failure path (e.g. 1e-30 must fail and exit nonzero).
    std::optional<double> tolerance_override;
};

struct ValidationReport {
    std::uint64_t seed{};
    std::vector<PropertyResult> results;
    // Range accumulator over every Y evaluated anywhere in the suite.
    double y_min{};
    double y_max{};
    std::size_t y_count{};

    bool all_passed() const;
};

ValidationReport run_validation(const ValidationOptions& options = {});

} // namespace parampli
