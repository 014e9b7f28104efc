#include "cuphom/geography.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cuphom/combinatorics.hpp"
#include "cuphom/homology.hpp"

namespace cuphom {

using nlohmann::json;

namespace {

struct Triple {
    int i, j, k;
};

std::vector<Triple> lex_triples(int b)
{
    std::vector<Triple> out;
    for (int i = 1; i <= b; ++i)
        for (int j = i + 1; j <= b; ++j)
            for (int k = j + 1; k <= b; ++k)
                out.push_back({i, j, k});
    return out;
}

std::uint64_t ipow(std::uint64_t base, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= base;
    return r;
}

struct Entry {
    std::string key;
    ThreeForm form;
};

// Accumulates per-h least witnesses.
class WitnessTable {
public:
    void offer(std::uint64_t h, const ThreeForm& f)
    {
        std::string key = serialize_form(f);
        auto it = table_.find(h);
        if (it == table_.end())
            table_.emplace(h, Entry{std::move(key), f});
        else if (key < it->second.key)
            it->second = Entry{std::move(key), f};
    }

    void absorb(const WitnessTable& other)
    {
        for (const auto& [h, e] : other.table_) {
            auto it = table_.find(h);
            if (it == table_.end() || e.key < it->second.key)
                table_[h] = e;
        }
    }

    void absorb(const std::map<std::uint64_t, ThreeForm>& realized)
    {
        for (const auto& [h, f] : realized)
            offer(h, f);
    }

    std::map<std::uint64_t, ThreeForm> realized() const
    {
        std::map<std::uint64_t, ThreeForm> out;
        for (const auto& [h, e] : table_)
            out.emplace(h, e.form);
        return out;
    }

private:
    std::map<std::uint64_t, Entry> table_;
};

class Scanner {
public:
    Scanner(int b, int coeff_max) : b_(b), coeff_max_(coeff_max), triples_(lex_triples(b))
    {
        base_ = static_cast<std::uint64_t>(2 * coeff_max + 1);
        prefix_len_ = prefix_length(b, coeff_max);
    }

    std::uint64_t prefix_count() const { return ipow(base_, prefix_len_); }

    // Enumerates every form whose leading digits spell `prefix`.
    std::uint64_t scan_prefix(std::uint64_t prefix, WitnessTable& table) const
    {
        std::vector<std::int64_t> coeffs(triples_.size());
        std::uint64_t q = prefix;
        for (int n = prefix_len_ - 1; n >= 0; --n) {
            coeffs[n] = static_cast<std::int64_t>(q % base_) - coeff_max_;
            q /= base_;
        }
        for (int n = prefix_len_; n < static_cast<int>(coeffs.size()); ++n)
            coeffs[n] = -coeff_max_;

        std::uint64_t count = 0;
        std::vector<Term> terms;
        while (true) {
            terms.clear();
            for (std::size_t n = 0; n < coeffs.size(); ++n)
                if (coeffs[n] != 0)
                    terms.push_back({triples_[n].i, triples_[n].j, triples_[n].k, coeffs[n]});
            ThreeForm f(b_, terms);
            table.offer(h_invariant(f).get_num().get_ui(), f);
            ++count;

            int n = static_cast<int>(coeffs.size()) - 1;
            while (n >= prefix_len_ && coeffs[n] == coeff_max_) {
                coeffs[n] = -coeff_max_;
                --n;
            }
            if (n < prefix_len_)
                break;
            ++coeffs[n];
        }
        return count;
    }

    int prefix_len() const { return prefix_len_; }

private:
    int b_;
    int coeff_max_;
    std::vector<Triple> triples_;
    std::uint64_t base_ = 3;
    int prefix_len_ = 0;
};

json result_to_json(const GeographyResult& r)
{
    json j;
    j["b"] = r.b;
    j["coeff_max"] = r.coeff_max;
    j["enumerated_count"] = r.enumerated_count;
    json realized = json::array();
    for (const auto& [h, f] : r.realized)
        realized.push_back({{"h", h}, {"witness", json::parse(serialize_form(f))}});
    j["realized"] = realized;
    if (r.shard)
        j["shard"] = {{"index", r.shard->index}, {"count", r.shard->count}};
    return j;
}

GeographyResult result_from_json(const json& j)
{
    GeographyResult r;
    try {
        r.b = j.at("b").get<int>();
        r.coeff_max = j.at("coeff_max").get<int>();
        r.enumerated_count = j.at("enumerated_count").get<std::uint64_t>();
        for (const auto& e : j.at("realized"))
            r.realized.emplace(e.at("h").get<std::uint64_t>(), parse_form(e.at("witness").dump()));
        if (j.contains("shard"))
            r.shard = GeographyResult::ShardInfo{j["shard"].at("index").get<int>(), j["shard"].at("count").get<int>()};
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed geography result: ") + e.what());
    }
    return r;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CheckpointHeader {
    int b, coeff_max, prefix_len, shards, shard;
    bool operator==(const CheckpointHeader&) const = default;
};

json header_json(const CheckpointHeader& h)
{
    return {{"b", h.b}, {"coeff_max", h.coeff_max}, {"prefix_len", h.prefix_len}, {"shards", h.shards}, {"shard", h.shard}};
}

}  // namespace

bool GeographyResult::operator==(const GeographyResult& other) const
{
    const bool same_shard = shard.has_value() == other.shard.has_value() &&
                            (!shard || (shard->index == other.shard->index && shard->count == other.shard->count));
    return b == other.b && coeff_max == other.coeff_max && enumerated_count == other.enumerated_count &&
           realized == other.realized && same_shard;
}

int prefix_length(int b, int coeff_max)
{
    const int total = b * (b - 1) * (b - 2) / 6;
    const auto base = static_cast<std::uint64_t>(2 * coeff_max + 1);
    int len = 0;
    std::uint64_t count = 1;
    while (len < total && count < 256) {
        count *= base;
        ++len;
    }
    return len;
}

GeographyResult geography_scan(int b, int coeff_max, const ScanOptions& options)
{
    if (b < 1 || b > kMaxGeographyRank)
        throw std::invalid_argument("geography scan supports 1 <= b <= " + std::to_string(kMaxGeographyRank));
    if (coeff_max < 1)
        throw std::invalid_argument("coeff_max must be >= 1");
    if (options.shards < 1)
        throw std::invalid_argument("shard count must be >= 1");
    if (options.shard_index && (*options.shard_index < 0 || *options.shard_index >= options.shards))
        throw std::invalid_argument("shard index out of range");
    if (std::log2(2.0 * coeff_max + 1.0) * (b * (b - 1) * (b - 2) / 6) >= 63.0)
        throw std::invalid_argument("enumeration size does not fit in 64 bits");

    const Scanner scanner(b, coeff_max);
    const CheckpointHeader header{b, coeff_max, scanner.prefix_len(), options.shards,
                                  options.shard_index.value_or(-1)};

    std::vector<std::uint64_t> todo;
    for (std::uint64_t q = 0; q < scanner.prefix_count(); ++q) {
        const auto owner = static_cast<int>(q % static_cast<std::uint64_t>(options.shards));
        if (!options.shard_index || owner == *options.shard_index)
            todo.push_back(q);
    }

    WitnessTable accumulated;
    std::uint64_t enumerated = 0;
    std::set<std::uint64_t> completed;

    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        const json ck = json::parse(read_text(*options.checkpoint));
        if (ck.at("header") != header_json(header))
            throw std::runtime_error("checkpoint " + options.checkpoint->string() + " belongs to a different scan");
        for (const auto& q : ck.at("completed"))
            completed.insert(q.get<std::uint64_t>());
        const GeographyResult partial = result_from_json(ck.at("partial"));
        accumulated.absorb(partial.realized);
        enumerated = partial.enumerated_count;
    }
    std::erase_if(todo, [&](std::uint64_t q) { return completed.count(q) != 0; });
    if (options.max_prefixes && todo.size() > options.max_prefixes)
        todo.resize(options.max_prefixes);

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto last_write = std::chrono::steady_clock::now();

    auto snapshot = [&]() {
        GeographyResult r;
        r.b = b;
        r.coeff_max = coeff_max;
        r.enumerated_count = enumerated;
        r.realized = accumulated.realized();
        if (options.shard_index)
            r.shard = GeographyResult::ShardInfo{*options.shard_index, options.shards};
        return r;
    };
    auto write_checkpoint = [&]() {
        json ck;
        ck["header"] = header_json(header);
        ck["completed"] = completed;
        ck["partial"] = result_to_json(snapshot());
        write_text_atomic(*options.checkpoint, ck.dump() + "\n");
    };

    auto worker = [&]() {
        while (true) {
            const std::size_t n = next.fetch_add(1);
            if (n >= todo.size())
                return;
            WitnessTable local;
            const std::uint64_t count = scanner.scan_prefix(todo[n], local);
            std::lock_guard lock(mu);
            accumulated.absorb(local);
            enumerated += count;
            completed.insert(todo[n]);
            if (options.checkpoint) {
                const auto now = std::chrono::steady_clock::now();
                if (std::chrono::duration<double>(now - last_write).count() >= options.checkpoint_interval) {
                    write_checkpoint();
                    last_write = now;
                }
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(todo.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (options.checkpoint)
        write_checkpoint();
    return snapshot();
}

GeographyResult merge_results(const std::vector<GeographyResult>& parts)
{
    if (parts.empty())
        throw std::invalid_argument("nothing to merge");
    GeographyResult out;
    out.b = parts.front().b;
    out.coeff_max = parts.front().coeff_max;
    WitnessTable table;
    std::set<int> seen_shards;
    for (const auto& p : parts) {
        if (p.b != out.b || p.coeff_max != out.coeff_max)
            throw std::invalid_argument("cannot merge scans with different b or coeff_max");
        if (p.shard && !seen_shards.insert(p.shard->index).second)
            throw std::invalid_argument("shard " + std::to_string(p.shard->index) + " appears twice");
        out.enumerated_count += p.enumerated_count;
        table.absorb(p.realized);
    }
    out.realized = table.realized();
    return out;
}

std::string serialize_result(const GeographyResult& r)
{
    auto indent = [](const std::string& doc, const std::string& pad) {
        std::string out;
        std::size_t start = 0;
        bool first = true;
        while (start < doc.size()) {
            std::size_t end = doc.find('\n', start);
            if (end == std::string::npos)
                end = doc.size();
            if (!first)
                out += "\n" + pad;
            out.append(doc, start, end - start);
            first = false;
            start = end + 1;
        }
        return out;
    };

    std::ostringstream os;
    os << "{\n";
    os << "  \"b\": " << r.b << ",\n";
    os << "  \"coeff_max\": " << r.coeff_max << ",\n";
    os << "  \"enumerated_count\": " << r.enumerated_count << ",\n";
    os << "  \"realized\": [";
    bool first = true;
    for (const auto& [h, f] : r.realized) {
        os << (first ? "\n" : ",\n");
        os << "    {\n      \"h\": " << h << ",\n      \"witness\": " << indent(serialize_form(f), "      ")
           << "\n    }";
        first = false;
    }
    if (!r.realized.empty())
        os << "\n  ";
    os << "]";
    if (r.shard)
        os << ",\n  \"shard\": {\"index\": " << r.shard->index << ", \"count\": " << r.shard->count << "}";
    os << "\n}\n";
    return os.str();
}

GeographyResult parse_result(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("invalid geography result: ") + e.what());
    }
    return result_from_json(j);
}

void write_result_atomic(const std::filesystem::path& path, const GeographyResult& r)
{
    write_text_atomic(path, serialize_result(r));
}

GeographyResult read_result(const std::filesystem::path& path)
{
    return parse_result(read_text(path));
}

std::optional<std::uint64_t> block_split(const ThreeForm& f)
{
    const int b = f.rank();
    if (b < 2)
        return std::nullopt;
    // Grow the component of index 1 through shared terms.
    std::uint64_t component = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Term& t : f.terms()) {
            const std::uint64_t m = t.mask();
            if ((m & component) && (m & ~component)) {
                component |= m;
                grew = true;
            }
        }
    }
    const std::uint64_t all = b == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1;
    if (component == all)
        return std::nullopt;
    return component;
}

ThreeForm restrict_form(const ThreeForm& f, std::uint64_t mask)
{
    std::vector<int> relabel(f.rank() + 1, 0);
    int next = 0;
    for (int i = 1; i <= f.rank(); ++i)
        if ((mask >> (i - 1)) & 1U)
            relabel[i] = ++next;
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        if ((t.mask() & mask) != t.mask())
            continue;
        terms.push_back({relabel[t.i], relabel[t.j], relabel[t.k], t.coeff});
    }
    return ThreeForm(next, std::move(terms));
}

CheckReport verify_result(const GeographyResult& r)
{
    CheckReport report;
    const Integer lower = lower_bound_L(r.b);
    const Integer upper = upper_bound(r.b);
    for (const auto& [h, f] : r.realized) {
        const std::string tag = "h=" + std::to_string(h);
        report.add(tag + " witness rank", f.rank() == r.b);
        const Integer actual = h_invariant(f).get_num();
        report.add(tag + " witness re-verifies", actual == h, "recomputed " + actual.get_str());
        const Integer hv = static_cast<unsigned long>(h);
        report.add(tag + " within [L(b), 2^(b-1)]", lower <= hv && hv <= upper);
        if (r.b >= 4)
            report.add(tag + " is not 2^(b-1) - 1", hv != upper - 1);
    }
    return report;
}

namespace {

// Values of h permitted for rank n by the general bounds alone.
std::vector<std::uint64_t> admissible_values(int n)
{
    std::vector<std::uint64_t> out;
    const std::uint64_t lo = lower_bound_L(n).get_ui();
    const std::uint64_t hi = upper_bound(n).get_ui();
    for (std::uint64_t v = lo; v <= hi; ++v)
        if (!(n >= 4 && v == hi - 1))
            out.push_back(v);
    return out;
}

}  // namespace

CheckReport check_reducible_constraints(const GeographyResult& r)
{
    CheckReport report;
    for (const auto& [h, f] : r.realized) {
        const std::string tag = "h=" + std::to_string(h);
        if (h % 2 == 1)
            report.add(tag + " odd: witness is rationally irreducible", !block_split(f).has_value());
        const auto split = block_split(f);
        if (!split)
            continue;
        const ThreeForm left = restrict_form(f, *split);
        const std::uint64_t all = (std::uint64_t{1} << r.b) - 1;
        const ThreeForm right = restrict_form(f, all & ~*split);
        const std::uint64_t h1 = h_invariant(left).get_num().get_ui();
        const std::uint64_t h2 = h_invariant(right).get_num().get_ui();
        report.add(tag + " block witness obeys h = 2 h1 h2", h == 2 * h1 * h2,
                   "blocks of rank " + std::to_string(left.rank()) + "+" + std::to_string(right.rank()) + " give " +
                       std::to_string(h1) + ", " + std::to_string(h2));

        std::set<std::uint64_t> predicted;
        for (std::uint64_t a : admissible_values(left.rank()))
            for (std::uint64_t c : admissible_values(right.rank()))
                predicted.insert(2 * a * c);
        std::string listed;
        for (auto v : predicted)
            listed += (listed.empty() ? "" : ",") + std::to_string(v);
        report.add(tag + " block witness in predicted set", predicted.count(h) != 0, "{" + listed + "}");
    }
    return report;
}

}  // namespace cuphom
