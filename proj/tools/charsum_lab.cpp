// charsum-lab: command line front end for the character sum laboratory.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charsumlab/charsum.hpp"
#include "charsumlab/energy.hpp"
#include "charsumlab/format.hpp"
#include "charsumlab/harness.hpp"
#include "charsumlab/json_io.hpp"
#include "charsumlab/paley.hpp"

namespace {

using json = nlohmann::json;
using namespace csl;

// "@path" pulls the argument's content from a file.
std::string maybe_file(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') return read_text_file(arg.substr(1));
    return arg;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + out_path);
}

std::string csv_cell(double v) { return g12(v); }

json trace_to_json(const ProofTraceResult& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"index", c.index},
                          {"name", c.name},
                          {"status", check_status_name(c.status)},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"note", c.note}});
    }
    return json{{"p", r.p},
                {"size_A", r.size_a},
                {"size_B", r.size_b},
                {"size_P", r.size_p_enum},
                {"size_A0", r.size_a0},
                {"A0_proper", r.a0_proper},
                {"size_hull", r.size_hull},
                {"interval_len", r.interval_len},
                {"delta", r.delta},
                {"alpha", r.alpha},
                {"r", r.moment_order},
                {"fixed_a", r.fixed_a},
                {"excluded_zero_rows", r.excluded_zero_rows},
                {"checks", checks},
                {"reports",
                 {{"nu_second_moment_ratio", r.nu_second_moment_ratio},
                  {"translate_sum_ratio", r.translate_sum_ratio},
                  {"final_ratio", r.final_ratio},
                  {"P_size_over_A_size", r.p_size_over_a_size},
                  {"tau_emp", r.tau_emp},
                  {"tau_formula", r.tau_formula}}},
                {"core_checks_pass", r.core_checks_pass()}};
}

std::string trace_to_csv(const ProofTraceResult& r) {
    std::string out = "index,name,status,lhs,rhs,note\n";
    for (const auto& c : r.checks) {
        out += std::to_string(c.index);
        out += ',';
        out += c.name;
        out += ',';
        out += check_status_name(c.status);
        out += ',';
        out += csv_cell(c.lhs);
        out += ',';
        out += csv_cell(c.rhs);
        out += ',';
        out += c.note;
        out += '\n';
    }
    return out;
}

json rows_to_json(const std::vector<ReportRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"p", r.p},
                       {"size_A", r.size_a},
                       {"size_B", r.size_b},
                       {"K", r.doubling_a},
                       {"L", r.doubling_b},
                       {"delta", r.delta},
                       {"abs_S", r.abs_s},
                       {"ratio", r.ratio},
                       {"tau_emp", r.tau_emp},
                       {"tau_formula", r.tau_formula},
                       {"log_p", r.log_p},
                       {"c2_over_delta2", r.c2_over_delta2},
                       {"c_loginvdelta_over_delta2", r.c_loginvdelta_over_delta2},
                       {"c_logL_over_delta", r.c_logl_over_delta},
                       {"flags", r.flags}});
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments with multiplicative character sums over structured sets"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", workers, "worker threads, 0 means all cores");
    auto* seed_opt = app.add_option("--seed", seed, "seed override for seeded subcommands");

    FieldCache cache;

    // sum: the bilinear character sum over A x B.
    auto* sum_cmd = app.add_subcommand("sum", "sum of chi(a+b) over A x B");
    sum_cmd->fallthrough();
    std::uint64_t sum_p = 0;
    std::uint32_t sum_d = 2;
    std::string sum_a, sum_b;
    sum_cmd->add_option("--p", sum_p, "prime modulus")->required();
    sum_cmd->add_option("--d", sum_d, "character order");
    sum_cmd->add_option("--A", sum_a, "set description (JSON or @file)")->required();
    sum_cmd->add_option("--B", sum_b, "set description (JSON or @file)")->required();
    sum_cmd->callback([&] {
        FpSet a = set_from_json_text(maybe_file(sum_a), cache, sum_p);
        FpSet b = set_from_json_text(maybe_file(sum_b), cache, sum_p);
        Character chi(cache.get(sum_p), sum_d);
        CharSum s = char_sum(chi, a, b);
        std::complex<double> v = s.value();
        double trivial = static_cast<double>(a.size()) * static_cast<double>(b.size());
        if (format == "csv") {
            std::string csv = "value_re,value_im,abs,trivial_bound\n";
            csv += csv_cell(v.real());
            csv += ',';
            csv += csv_cell(v.imag());
            csv += ',';
            csv += csv_cell(s.abs());
            csv += ',';
            csv += csv_cell(trivial);
            csv += '\n';
            emit(out_path, csv);
        } else {
            json j{{"value_re", v.real()},
                   {"value_im", v.imag()},
                   {"abs", s.abs()},
                   {"trivial_bound", trivial}};
            emit(out_path, j.dump(2) + "\n");
        }
    });

    // davenport: the 2r-th moment bound for an initial interval.
    auto* dav_cmd = app.add_subcommand("davenport", "2r-th moment inequality on [1, n]");
    dav_cmd->fallthrough();
    std::uint64_t dav_p = 0;
    std::uint32_t dav_d = 2;
    std::uint64_t dav_n = 0;
    unsigned dav_r = 2;
    dav_cmd->add_option("--p", dav_p, "prime modulus")->required();
    dav_cmd->add_option("--d", dav_d, "character order");
    dav_cmd->add_option("--interval", dav_n, "interval length n, I = [1, n]")->required();
    dav_cmd->add_option("--r", dav_r, "moment order r >= 2")->required();
    dav_cmd->callback([&] {
        FieldPtr f = cache.get(dav_p);
        Character chi(f, dav_d);
        FpSet interval = FpSet::interval(f, 1, static_cast<std::int64_t>(dav_n));
        MomentCheck mc = davenport_check(chi, interval, dav_r, workers);
        if (format == "csv") {
            std::string csv = "lhs,rhs,ok,exact\n";
            csv += csv_cell(static_cast<double>(mc.lhs));
            csv += ',';
            csv += csv_cell(static_cast<double>(mc.rhs));
            csv += ',';
            csv += mc.ok ? '1' : '0';
            csv += ',';
            csv += mc.exact ? '1' : '0';
            csv += '\n';
            emit(out_path, csv);
        } else {
            json j{{"lhs", static_cast<double>(mc.lhs)},
                   {"rhs", static_cast<double>(mc.rhs)},
                   {"ok", mc.ok},
                   {"exact", mc.exact}};
            emit(out_path, j.dump(2) + "\n");
        }
    });

    // energy: third multiplicative energy and the two-ratio system count.
    auto* en_cmd = app.add_subcommand("energy", "multiplicative energy reports");
    en_cmd->fallthrough();
    std::uint64_t en_p = 0;
    std::string en_a, en_b;
    bool en_bound = false;
    en_cmd->add_option("--p", en_p, "prime modulus")->required();
    en_cmd->add_option("--A", en_a, "set description (JSON or @file)")->required();
    en_cmd->add_option("--B", en_b, "optional second set");
    en_cmd->add_flag("--report-e3-bound", en_bound, "report E3 against its doubling bound");
    en_cmd->callback([&] {
        FpSet a = set_from_json_text(maybe_file(en_a), cache, en_p);
        json j{{"p", en_p}, {"size_A", a.size()}, {"e3_A", e3_mult(a)}};
        if (!en_b.empty()) {
            FpSet b = set_from_json_text(maybe_file(en_b), cache, en_p);
            SystemCount sc = system_count(a, b, b.contains_zero());
            HolderCheck hc = holder_chain_check(a, b);
            j["size_B"] = b.size();
            j["e3_B"] = hc.e3_b;
            j["system_count"] = {{"total", sc.total},
                                 {"nonzero", sc.nonzero},
                                 {"one_pair_zero", sc.one_pair_zero},
                                 {"all_zero", sc.all_zero},
                                 {"zeros_in_B", sc.zeros_in_b}};
            j["holder"] = {{"lhs", static_cast<double>(hc.lhs)},
                           {"rhs", hc.rhs},
                           {"ok", hc.ok}};
        }
        if (en_bound) {
            E3BoundReport rep = e3_bound_report(a);
            j["e3_bound"] = {{"e3", rep.e3},
                             {"bound_body", rep.bound_body},
                             {"ratio", rep.ratio},
                             {"precondition_ok", rep.precondition_ok}};
        }
        emit(out_path, j.dump(2) + "\n");
    });

    // paley: clique growth table.
    auto* pal_cmd = app.add_subcommand("paley", "Paley graph clique numbers");
    pal_cmd->fallthrough();
    std::vector<std::uint64_t> pal_primes;
    pal_cmd->add_option("--primes", pal_primes, "primes (1 mod 4), comma separated")
        ->delimiter(',')
        ->required();
    pal_cmd->callback([&] {
        auto rows = clique_growth_report(pal_primes, workers);
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"p", r.p},
                               {"omega", r.omega},
                               {"alpha", r.alpha},
                               {"omega_over_log2p", r.omega_over_log2p},
                               {"omega_over_sqrtp", r.omega_over_sqrtp},
                               {"witness", r.witness}});
            }
            emit(out_path, arr.dump(2) + "\n");
        } else {
            emit(out_path, render_clique_growth_csv(rows));
        }
    });

    // proof-trace: the inequality chain on concrete sets.
    auto* tr_cmd = app.add_subcommand("proof-trace", "verify the bilinear bound derivation");
    tr_cmd->fallthrough();
    std::uint64_t tr_p = 0;
    std::uint32_t tr_d = 2;
    double tr_c = 1.0;
    std::string tr_gap, tr_a, tr_b;
    tr_cmd->add_option("--p", tr_p, "prime modulus")->required();
    tr_cmd->add_option("--gap", tr_gap, "containing progression (JSON or @file)")->required();
    tr_cmd->add_option("--A", tr_a, "set description (JSON or @file)")->required();
    tr_cmd->add_option("--B", tr_b, "set description (JSON or @file)")->required();
    tr_cmd->add_option("--d", tr_d, "character order");
    tr_cmd->add_option("--C", tr_c, "doubling-dependent constant for the reports");
    tr_cmd->callback([&] {
        ProofTraceInput in{cache.get(tr_p),
                           gap_from_json_text(maybe_file(tr_gap), cache, tr_p),
                           set_from_json_text(maybe_file(tr_a), cache, tr_p),
                           set_from_json_text(maybe_file(tr_b), cache, tr_p),
                           tr_d,
                           tr_c,
                           workers};
        ProofTraceResult r = proof_trace(in);
        if (format == "csv") {
            emit(out_path, trace_to_csv(r));
        } else {
            emit(out_path, trace_to_json(r).dump(2) + "\n");
        }
    });

    // sweep: batch experiment from a JSON config.
    auto* sw_cmd = app.add_subcommand("sweep", "run a config-driven sweep");
    sw_cmd->fallthrough();
    std::string sw_config;
    sw_cmd->add_option("--config", sw_config, "config (JSON, @file, or a path)")->required();
    sw_cmd->callback([&] {
        std::string text;
        if (!sw_config.empty() && sw_config.front() == '{') {
            text = sw_config;
        } else {
            text = maybe_file(sw_config.front() == '@' ? sw_config : "@" + sw_config);
        }
        ExperimentConfig cfg = config_from_json_text(text);
        if (seed_opt->count() > 0) cfg.seed = seed;
        auto rows = run_experiment(cfg, workers);
        if (format == "json") {
            emit(out_path, rows_to_json(rows).dump(2) + "\n");
        } else {
            emit(out_path, render_csv(rows));
        }
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "charsum-lab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
