#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cuphom/forms.hpp"
#include "cuphom/geography.hpp"
#include "cuphom/homology.hpp"

using namespace cuphom;
namespace fs = std::filesystem;

namespace {

std::vector<std::uint64_t> keys(const GeographyResult& r)
{
    std::vector<std::uint64_t> out;
    for (const auto& [h, f] : r.realized)
        out.push_back(h);
    return out;
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "cuphom_geography_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("b=3 realizes exactly 3 and 4")
{
    const GeographyResult r = geography_scan(3, 2);
    CHECK(r.enumerated_count == 5);
    CHECK(keys(r) == std::vector<std::uint64_t>{3, 4});
    CHECK(r.realized.at(4) == trivial_form(3));
    // Least serialized witness among the nonzero forms.
    CHECK(r.realized.at(3) == torus3(-1));
    CHECK_FALSE(r.shard.has_value());
}

TEST_CASE("b=4 coeff_max=1")
{
    const GeographyResult r = geography_scan(4, 1);
    CHECK(r.enumerated_count == 81);
    CHECK(keys(r) == std::vector<std::uint64_t>{6, 8});
    CHECK(verify_result(r).ok());
    CHECK(check_reducible_constraints(r).ok());
}

TEST_CASE("small ranks")
{
    CHECK(keys(geography_scan(1, 3)) == std::vector<std::uint64_t>{1});
    CHECK(keys(geography_scan(2, 3)) == std::vector<std::uint64_t>{2});
    CHECK(geography_scan(2, 3).enumerated_count == 1);
}

TEST_CASE("scan argument errors")
{
    CHECK_THROWS_AS(geography_scan(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(geography_scan(7, 1), std::invalid_argument);
    CHECK_THROWS_AS(geography_scan(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(geography_scan(3, 1, {.shards = 0}), std::invalid_argument);
    CHECK_THROWS_AS(geography_scan(3, 1, {.shards = 2, .shard_index = 2}), std::invalid_argument);
    CHECK_THROWS_AS(geography_scan(6, 1000), std::invalid_argument);
}

TEST_CASE("shard schedules give identical results")
{
    const GeographyResult whole = geography_scan(4, 2);
    const std::string text = serialize_result(whole);
    for (int k : {2, 3, 8, 1000}) {
        CHECK(serialize_result(geography_scan(4, 2, {.shards = k})) == text);
        std::vector<GeographyResult> parts;
        for (int i = 0; i < k; ++i) {
            parts.push_back(geography_scan(4, 2, {.shards = k, .shard_index = i}));
            CHECK(parts.back().shard->index == i);
        }
        std::reverse(parts.begin(), parts.end());
        CHECK(serialize_result(merge_results(parts)) == text);
    }
    CHECK(serialize_result(geography_scan(4, 2, {.threads = 4})) == text);
}

TEST_CASE("merge errors")
{
    const auto a = geography_scan(3, 1, {.shards = 2, .shard_index = 0});
    const auto b = geography_scan(4, 1, {.shards = 2, .shard_index = 1});
    CHECK_THROWS_AS(merge_results({}), std::invalid_argument);
    CHECK_THROWS_AS(merge_results({a, b}), std::invalid_argument);
    CHECK_THROWS_AS(merge_results({a, a}), std::invalid_argument);
}

TEST_CASE("result serialization round-trips")
{
    const GeographyResult r = geography_scan(4, 1);
    const std::string text = serialize_result(r);
    CHECK(text.starts_with("{\n  \"b\": 4,\n  \"coeff_max\": 1,\n  \"enumerated_count\": 81,\n  \"realized\": ["));
    CHECK(text.find("\"shard\"") == std::string::npos);
    CHECK(parse_result(text) == r);

    const GeographyResult part = geography_scan(4, 1, {.shards = 3, .shard_index = 1});
    CHECK(parse_result(serialize_result(part)) == part);
    CHECK(serialize_result(part).find("\"shard\"") != std::string::npos);

    CHECK_THROWS_AS(parse_result("{}"), std::runtime_error);
    CHECK_THROWS_AS(parse_result("nonsense"), std::runtime_error);

    const fs::path p = scratch("result.json");
    write_result_atomic(p, r);
    CHECK(read_result(p) == r);
    CHECK_THROWS_AS(read_result(scratch("missing.json")), std::runtime_error);
}

TEST_CASE("checkpoint resume reproduces the full scan")
{
    const GeographyResult full = geography_scan(4, 2);
    const fs::path ck = scratch("scan.ckpt");
    ScanOptions opts{.checkpoint = ck, .checkpoint_interval = 0.0, .max_prefixes = 3};
    const GeographyResult first = geography_scan(4, 2, opts);
    CHECK(fs::exists(ck));
    CHECK(first.enumerated_count < full.enumerated_count);

    opts.max_prefixes = 0;
    const GeographyResult resumed = geography_scan(4, 2, opts);
    CHECK(serialize_result(resumed) == serialize_result(full));

    // A checkpoint from a different scan is refused.
    CHECK_THROWS_AS(geography_scan(4, 1, {.checkpoint = ck}), std::runtime_error);
    fs::remove(ck);
}

TEST_CASE("prefix_length")
{
    CHECK(prefix_length(3, 1) == 1);
    CHECK(prefix_length(4, 1) == 4);
    CHECK(prefix_length(5, 1) == 6);
    CHECK(prefix_length(6, 1) == 6);
    CHECK(prefix_length(6, 7) == 3);
}

TEST_CASE("block_split and restrict_form")
{
    CHECK_FALSE(block_split(torus3(2)).has_value());
    CHECK(block_split(connected_sum(torus3(1), trivial_form(2))) == 0b111U);
    CHECK(block_split(connected_sum(trivial_form(1), torus3(1))) == 0b1U);
    CHECK_FALSE(block_split(trivial_form(1)).has_value());
    CHECK(block_split(trivial_form(3)) == 0b1U);
    // Index 1 meets both triples, so the support is connected.
    CHECK_FALSE(block_split(surface_circle(2)).has_value());

    const ThreeForm f = connected_sum(torus3(3), torus3(5));
    CHECK(restrict_form(f, 0b000111) == torus3(3));
    CHECK(restrict_form(f, 0b111000) == torus3(5));
    CHECK(restrict_form(f, 0b101010) == trivial_form(3));
}

TEST_CASE("verify_result catches a forged witness")
{
    GeographyResult r = geography_scan(4, 1);
    CHECK(verify_result(r).ok());
    r.realized[6] = trivial_form(4);
    const CheckReport bad = verify_result(r);
    CHECK_FALSE(bad.ok());
    REQUIRE(bad.failures().size() == 1);
    CHECK(bad.failures()[0].name == "h=6 witness re-verifies");

    GeographyResult odd;
    odd.b = 4;
    odd.coeff_max = 1;
    odd.realized[7] = connected_sum(torus3(1), trivial_form(1));
    CHECK_FALSE(verify_result(odd).ok());
    CHECK_FALSE(check_reducible_constraints(odd).ok());
}
