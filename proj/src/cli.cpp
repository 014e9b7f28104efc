#include "cuphom/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuphom/combinatorics.hpp"
#include "cuphom/cup_complex.hpp"
#include "cuphom/forms.hpp"
#include "cuphom/geography.hpp"
#include "cuphom/homology.hpp"
#include "cuphom/oracles.hpp"

namespace cuphom::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_decimal(double value)
{
    std::ostringstream os;
    os << std::setprecision(12) << value;
    return os.str();
}

std::uint64_t checked_prime(std::uint64_t p)
{
    if (!is_prime(p))
        throw InputError(std::to_string(p) + " is not prime");
    return p;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw InputError("cannot write " + path);
    f << text;
}

int cmd_compute(const std::string& path, std::optional<std::uint64_t> prime, bool as_json, bool dump,
                std::ostream& out)
{
    const ThreeForm f = read_form_file(path);
    const int b = f.rank();

    if (prime) {
        const std::uint64_t p = checked_prime(*prime);
        const FieldRanks ranks = field_homology_ranks(reduce_mod_p(f, p), p);
        const KpValue kp = k_p(f, p);
        const mpq_class& hp = kp.h_p;
        if (as_json) {
            nlohmann::json j;
            j["rank"] = b;
            j["prime"] = p;
            j["degrees"] = ranks.by_degree;
            j["even"] = ranks.even;
            j["odd"] = ranks.odd;
            j["h_p"] = hp.get_str();
            out << j.dump(2) << '\n';
        } else {
            out << "rank: " << b << '\n' << "prime: " << p << '\n';
            for (int k = 0; k <= b; ++k)
                out << "dim H_" << k << ": " << ranks.by_degree[k] << '\n';
            out << "even: " << ranks.even << '\n' << "odd: " << ranks.odd << '\n';
            out << "h_" << p << " = " << hp.get_str() << '\n';
            out << "k_" << p << " = log2(" << kp.twice_h_p.get_str() << ") = " << fmt_decimal(kp.log2) << '\n';
        }
        return kSuccess;
    }

    const CupHomologyResult r = cup_homology(f);
    if (as_json) {
        nlohmann::json j;
        j["rank"] = b;
        std::vector<std::string> degrees;
        for (const auto& g : r.by_degree)
            degrees.push_back(g.render());
        j["degrees"] = degrees;
        j["even"] = r.even.render();
        j["odd"] = r.odd.render();
        j["h"] = r.h.get_str();
        out << j.dump(2) << '\n';
    } else {
        out << "rank: " << b << '\n';
        for (int k = 0; k <= b; ++k)
            out << "H_" << k << ": " << r.by_degree[k].render() << '\n';
        out << "even: " << r.even.render() << '\n' << "odd: " << r.odd.render() << '\n';
        out << "h = " << r.h.get_str() << '\n';
        const KpValue k = k_p(f, 1);
        out << "k = log2(" << k.twice_h_p.get_str() << ") = " << fmt_decimal(k.log2) << '\n';
    }
    if (dump)
        out << dump_boundaries(f);
    return kSuccess;
}

int cmd_verify(const std::string& path, const std::vector<std::uint64_t>& primes, std::ostream& out)
{
    const ThreeForm f = read_form_file(path);
    for (auto p : primes)
        checked_prime(p);
    CheckReport report;

    const auto d2 = verify_d_squared(f);
    report.add("d^2 = 0", d2.ok(), std::to_string(d2.violations.size()) + " nonzero entries");

    const auto r = cup_homology(f);
    if (f.rank() >= 1) {
        report.add("h_ev = h_odd", r.h_ev == r.h_odd,
                   std::to_string(r.h_ev) + " vs " + std::to_string(r.h_odd));
        report.append(bounds_report(f));
    }
    const auto oracle = oracles::field_homology_oracle(f, 0);
    bool ranks_agree = oracle.size() == r.by_degree.size();
    for (std::size_t k = 0; ranks_agree && k < oracle.size(); ++k)
        ranks_agree = oracle[k] == r.by_degree[k].free_rank();
    report.add("free ranks match rational elimination", ranks_agree);
    for (auto p : primes)
        report.append(uct_check(f, p));

    out << report.render();
    out << (report.ok() ? "verify: all checks passed\n" : "verify: FAILED\n");
    return report.ok() ? kSuccess : kVerificationFailure;
}

int cmd_geography(int b, int coeff_max, const std::string& out_path, int shards, std::optional<int> shard,
                  unsigned threads, std::string checkpoint, bool no_checkpoint, std::ostream& out)
{
    ScanOptions opts;
    opts.shards = shards;
    opts.shard_index = shard;
    opts.threads = threads;
    if (!no_checkpoint)
        opts.checkpoint = checkpoint.empty() ? out_path + ".ckpt" : checkpoint;

    GeographyResult result;
    try {
        result = geography_scan(b, coeff_max, opts);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    write_result_atomic(out_path, result);
    if (opts.checkpoint)
        std::filesystem::remove(*opts.checkpoint);

    out << "b = " << b << ", coeff_max = " << coeff_max << ", enumerated " << result.enumerated_count << '\n';
    out << "realized:";
    for (const auto& [h, f] : result.realized)
        out << ' ' << h;
    out << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cup homology of closed 3-manifolds from their triple cup product form", "cuphom"};
    app.require_subcommand(1);

    std::string form_path, form_path2, out_path;
    std::optional<std::uint64_t> prime;
    bool as_json = false, dump = false;

    auto* compute = app.add_subcommand("compute", "Homology groups per degree and parity, h or h_p");
    compute->add_option("form", form_path, "Form document")->required();
    compute->add_option("--prime", prime, "Work over F_p");
    compute->add_flag("--json", as_json, "Machine-readable output");
    compute->add_flag("--dump-matrices", dump, "Append the boundary matrices as integer grids");

    auto* h_cmd = app.add_subcommand("h", "Print the invariant h");
    h_cmd->add_option("form", form_path, "Form document")->required();

    auto* sum = app.add_subcommand("sum", "Connected sum of two forms");
    sum->add_option("form1", form_path, "First form")->required();
    sum->add_option("form2", form_path2, "Second form")->required();
    sum->add_option("-o,--out", out_path, "Output file (stdout when omitted)");

    std::string family;
    FamilyParams params;
    auto* builtin = app.add_subcommand("builtin", "Write a built-in family member");
    builtin->add_option("family", family, "trivial | torus3 | surface_circle | mapping_torus")->required();
    builtin->add_option("--n", params.n, "torus3 coefficient");
    builtin->add_option("--g", params.g, "surface_circle genus");
    builtin->add_option("--w", params.w, "mapping_torus symplectic half-dimension");
    builtin->add_option("--v0", params.v0, "mapping_torus null dimension");
    builtin->add_option("--b", params.b, "trivial rank");
    builtin->add_option("-o,--out", out_path, "Output file (stdout when omitted)");

    int bounds_b = 0;
    auto* bounds = app.add_subcommand("bounds", "Euler sums S(b,j), L(b) and 2^(b-1) as TSV");
    bounds->add_option("--b", bounds_b, "Rank")->required()->check(CLI::Range(1, 100000));

    std::vector<std::uint64_t> primes{2, 3, 5};
    auto* verify = app.add_subcommand("verify", "Run every consistency check on a form");
    verify->add_option("form", form_path, "Form document")->required();
    verify->add_option("--primes", primes, "Primes for the universal coefficient check")->delimiter(',');

    int geo_b = 0, coeff_max = 1, shards = 1;
    std::optional<int> shard;
    unsigned threads = 1;
    std::string checkpoint;
    bool no_checkpoint = false;
    auto* geo = app.add_subcommand("geography", "Scan forms with bounded coefficients for realized h");
    geo->add_option("--b", geo_b, "Rank")->required();
    geo->add_option("--coeff-max", coeff_max, "Coefficient bound M (coefficients in [-M, M])")->required();
    geo->add_option("--out", out_path, "Result file")->required();
    geo->add_option("--shards", shards, "Number of shards");
    geo->add_option("--shard", shard, "Run only this shard (0-based)");
    geo->add_option("--threads", threads, "Worker threads (0 = all cores)");
    geo->add_option("--checkpoint", checkpoint, "Checkpoint file (default <out>.ckpt)");
    geo->add_flag("--no-checkpoint", no_checkpoint, "Do not write a checkpoint");

    std::vector<std::string> parts;
    auto* merge = app.add_subcommand("geography-merge", "Merge per-shard geography results");
    merge->add_option("parts", parts, "Shard result files")->required();
    merge->add_option("--out", out_path, "Merged result file")->required();

    std::string result_path;
    auto* geo_check = app.add_subcommand("geography-check", "Re-verify a geography result");
    geo_check->add_option("result", result_path, "Result file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kInputError;
    }

    try {
        if (*compute)
            return cmd_compute(form_path, prime, as_json, dump, out);
        if (*h_cmd) {
            out << "h = " << h_invariant(read_form_file(form_path)).get_str() << '\n';
            return kSuccess;
        }
        if (*sum) {
            const auto f = connected_sum(read_form_file(form_path), read_form_file(form_path2));
            write_or_print(out_path, serialize_form(f), out);
            return kSuccess;
        }
        if (*builtin) {
            write_or_print(out_path, serialize_form(builtin_family(family, params)), out);
            return kSuccess;
        }
        if (*bounds) {
            out << bounds_table(bounds_b);
            return kSuccess;
        }
        if (*verify)
            return cmd_verify(form_path, primes, out);
        if (*geo)
            return cmd_geography(geo_b, coeff_max, out_path, shards, shard, threads, checkpoint, no_checkpoint, out);
        if (*merge) {
            std::vector<GeographyResult> results;
            for (const auto& p : parts)
                results.push_back(read_result(p));
            write_result_atomic(out_path, merge_results(results));
            return kSuccess;
        }
        if (*geo_check) {
            const auto r = read_result(result_path);
            CheckReport report = verify_result(r);
            report.append(check_reducible_constraints(r));
            out << report.render();
            return report.ok() ? kSuccess : kVerificationFailure;
        }
    } catch (const FormError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace cuphom::cli
