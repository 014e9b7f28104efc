#pragma once

// Exhaustive scan of 3-forms with coefficients in [-M, M] on a rank-b module,
// recording every realized value of h with its least witness.
//
// The coefficient vector is read as base-(2M+1) digits in lex triple order.
// A fixed-length prefix of digits names a unit of work; shard i of K owns the
// prefixes congruent to i mod K. Per h the witness with the smallest
// serialized form wins, so merging is order independent and any shard
// schedule produces the same result.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuphom/forms.hpp"
#include "cuphom/report.hpp"

namespace cuphom {

struct GeographyResult {
    int b = 0;
    int coeff_max = 0;
    std::uint64_t enumerated_count = 0;
    /// h -> witness, ascending in h.
    std::map<std::uint64_t, ThreeForm> realized;

    /// Set only on a result covering a single shard.
    struct ShardInfo {
        int index = 0;
        int count = 1;
    };
    std::optional<ShardInfo> shard;

    bool operator==(const GeographyResult& other) const;
};

struct ScanOptions {
    int shards = 1;
    /// Run only this shard; otherwise every shard runs and the results merge.
    std::optional<int> shard_index;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 1;
    /// Sidecar file recording completed prefixes and the partial result.
    std::optional<std::filesystem::path> checkpoint;
    /// Minimum seconds between checkpoint writes; 0 writes after every prefix.
    double checkpoint_interval = 10.0;
    /// Stop after this many prefixes (testing resumption); 0 = no limit.
    std::uint64_t max_prefixes = 0;
};

inline constexpr int kMaxGeographyRank = 6;

/// Throws std::invalid_argument unless 1 <= b <= 6 and coeff_max >= 1.
GeographyResult geography_scan(int b, int coeff_max, const ScanOptions& options = {});

/// Number of leading coefficients that identify a unit of work.
int prefix_length(int b, int coeff_max);

/// Folds shard results for the same (b, coeff_max) into one.
GeographyResult merge_results(const std::vector<GeographyResult>& parts);

std::string serialize_result(const GeographyResult& r);
GeographyResult parse_result(std::string_view text);

/// Writes to a temporary sibling and renames it into place.
void write_result_atomic(const std::filesystem::path& path, const GeographyResult& r);
GeographyResult read_result(const std::filesystem::path& path);

/// Index sets of a block decomposition: every term lies inside one block.
/// Returns the block holding index 1 (as a mask), or nullopt when the support
/// does not split.
std::optional<std::uint64_t> block_split(const ThreeForm& f);

/// Restriction of f to the indices in `mask`, relabelled 1..popcount(mask).
ThreeForm restrict_form(const ThreeForm& f, std::uint64_t mask);

/// Every witness re-verifies to its h and respects the general bounds.
CheckReport verify_result(const GeographyResult& r);

/// Block-structured witnesses must satisfy the product law and land in the
/// set of values allowed for their summand ranks; odd-h witnesses are listed
/// as rationally irreducible.
CheckReport check_reducible_constraints(const GeographyResult& r);

}  // namespace cuphom
