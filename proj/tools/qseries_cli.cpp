#include <CLI11.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qseries/identities.hpp"
#include "qseries/partitions.hpp"
#include "qseries/stochastic.hpp"

using namespace qseries;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int write_json(const std::string& path, const std::vector<std::string>& records) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return kExitIo;
    }
    out << "[";
    for (size_t i = 0; i < records.size(); ++i)
        out << (i ? ",\n " : "") << records[i];
    out << "]\n";
    return out.good() ? kExitOk : kExitIo;
}

ParamValue parse_param_value(const std::string& val) {
    if (val == "formal") return FormalTag{};
    if (val.find(',') != std::string::npos) {
        std::vector<Rat> list;
        std::istringstream parts(val);
        std::string piece;
        while (std::getline(parts, piece, ',')) list.push_back(parse_rat(piece));
        return list;
    }
    if (val.find('/') != std::string::npos) return parse_rat(val);
    return (long)std::stol(val);
}

struct VerifyArgs {
    std::string suite = "all";
    std::string suite_file;
    int order = 0;
    std::vector<std::string> params;
    std::string json_path;
};

int run_verify(const VerifyArgs& args) {
    std::vector<std::pair<std::string, Binding>> work;

    if (!args.suite_file.empty()) {
        std::ifstream in(args.suite_file);
        if (!in) {
            std::cerr << "cannot read suite file " << args.suite_file << "\n";
            return kExitIo;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            work = parse_suite_file(buf.str(), args.order);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitUsage;
        }
    } else {
        std::vector<std::string> ids;
        if (args.suite == "all") {
            for (const auto& d : registry()) ids.push_back(d.id);
        } else {
            std::istringstream parts(args.suite);
            std::string piece;
            while (std::getline(parts, piece, ',')) ids.push_back(piece);
        }
        // reject unknown ids before any work starts
        for (const auto& id : ids) {
            try {
                find_identity(id);
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return kExitUsage;
            }
        }
        if (!args.params.empty()) {
            if (ids.size() != 1) {
                std::cerr << "--params requires a single identity id\n";
                return kExitUsage;
            }
            Binding b;
            for (const auto& kv : args.params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "expected key=value in --params\n";
                    return kExitUsage;
                }
                try {
                    b.set(kv.substr(0, eq), parse_param_value(kv.substr(eq + 1)));
                } catch (const std::exception& e) {
                    std::cerr << e.what() << "\n";
                    return kExitUsage;
                }
            }
            int order = args.order > 0 ? args.order : 20;
            b.bounds = Bounds{order, order};
            work.push_back({ids[0], std::move(b)});
        } else {
            for (const auto& id : ids)
                for (auto& b : default_param_suite(id, args.order))
                    work.push_back({id, std::move(b)});
        }
    }

    // validate everything up front
    for (const auto& [id, b] : work) {
        try {
            find_identity(id).validate(b);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitUsage;
        }
    }

    // report ordering contract: by id, then binding index, independent of
    // how the checks execute
    std::stable_sort(work.begin(), work.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::string> records;
    bool all_ok = true;
    for (const auto& [id, b] : work) {
        VerificationReport rep = verify_identity(id, b);
        if (rep.gates_exit()) all_ok = false;
        std::string tag = rep.outcome_str();
        if (rep.expected_divergence) tag += " (informational)";
        std::printf("%-8s %-28s nq=%-3d nt=%-3d %s  [%.1f ms]\n", tag.c_str(),
                    rep.id.c_str(), rep.bounds.nq, rep.bounds.nt,
                    rep.params.c_str(), rep.millis);
        if (rep.mismatch)
            std::printf("         first mismatch at q^%d (sides %s vs %s): %s vs %s\n",
                        rep.mismatch->exps[0], rep.mismatch->side_a.c_str(),
                        rep.mismatch->side_b.c_str(),
                        rep.mismatch->coeff_a.str().c_str(),
                        rep.mismatch->coeff_b.str().c_str());
        records.push_back(rep.json());
    }
    if (!args.json_path.empty()) {
        int rc = write_json(args.json_path, records);
        if (rc != kExitOk) return rc;
    }
    return all_ok ? kExitOk : kExitVerifyFail;
}

int run_series(const std::string& target, int order, const std::string& json_path) {
    auto slash = target.find('/');
    if (slash == std::string::npos) {
        std::cerr << "expected <id>/<side>\n";
        return kExitUsage;
    }
    std::string id = target.substr(0, slash), side = target.substr(slash + 1);
    const IdentityDescriptor* d;
    try {
        d = &find_identity(id);
        d->side(side);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<Binding> suite = default_param_suite(id, order > 0 ? order : 20);
    Series s = build_side(id, side, suite.front());
    std::cout << s.str() << "\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) return kExitIo;
        out << s.json() << "\n";
    }
    return kExitOk;
}

double series_value_at(unsigned sigma_power, double q) {
    VarSpec spec = VarSpec::q_only(60);
    Series s = build::divisor_series(spec, sigma_power,
                                     Monomial::scalar(Scalar(1)));
    return eval_numeric(s, {{"q", q}}).value;
}

struct BandRow {
    const char* name;
    double empirical, se, target, band;
};

int print_bands(const std::vector<BandRow>& rows) {
    bool ok = true;
    std::printf("%-16s %-14s %-14s %-10s %-6s %s\n", "statistic", "empirical",
                "exact", "se", "band", "status");
    for (const auto& r : rows) {
        double dev = r.se > 0 ? std::abs(r.empirical - r.target) / r.se : 0.0;
        bool inside = dev <= r.band;
        ok = ok && inside;
        std::printf("%-16s %-14.6f %-14.6f %-10.6f %-6.1f %s\n", r.name,
                    r.empirical, r.target, r.se, r.band,
                    inside ? "ok" : "OUTSIDE");
    }
    return ok ? kExitOk : kExitVerifyFail;
}

int run_simulate_dag(int n, double p, long trials, uint64_t seed,
                     const std::string& json_path) {
    if (n < 1 || p <= 0.0 || p >= 1.0 || trials < 1) {
        std::cerr << "dag: need n >= 1, 0 < p < 1, trials >= 1\n";
        return kExitUsage;
    }
    auto t0 = std::chrono::steady_clock::now();
    DagTrialBatch batch = dag_sample(n, p, seed, trials);
    double q = 1.0 - p;
    std::printf("dag simulation: n=%d p=%.6f trials=%ld seed=%llu\n", n, p,
                trials, (unsigned long long)seed);
    std::vector<BandRow> rows;
    rows.push_back({"mean(n-gamma)", (double)n - batch.moments.mean,
                    batch.moments.mean_se, series_value_at(0, q), 4.0});
    rows.push_back({"var(gamma)", batch.moments.variance,
                    batch.moments.variance_se, series_value_at(1, q), 5.0});
    int rc = print_bands(rows);
    if (!json_path.empty()) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        std::ostringstream rec;
        rec << "{\"command\":\"simulate\",\"id\":\"dag\",\"params\":\"n=" << n
            << " p=" << p << " seed=" << seed << " trials=" << trials
            << "\",\"nq\":0,\"nt\":0,\"outcome\":\""
            << (rc == kExitOk ? "pass" : "fail") << "\",\"histogram\":[";
        for (size_t i = 0; i < batch.histogram.size(); ++i)
            rec << (i ? "," : "") << batch.histogram[i];
        rec << "],\"millis\":" << ms << "}";
        int jrc = write_json(json_path, {rec.str()});
        if (jrc != kExitOk) return jrc;
    }
    return rc;
}

int run_simulate_heap(double q, long trials, uint64_t seed,
                      const std::string& json_path) {
    if (q <= 0.0 || q >= 1.0 || trials < 1) {
        std::cerr << "heap: need 0 < q < 1, trials >= 1\n";
        return kExitUsage;
    }
    auto t0 = std::chrono::steady_clock::now();
    HeapSampleBatch batch = heap_sample(q, seed, trials);
    std::printf("heap simulation: q=%.6f trials=%ld seed=%llu\n", q, trials,
                (unsigned long long)seed);
    std::vector<BandRow> rows;
    rows.push_back({"mean", batch.moments.mean, batch.moments.mean_se,
                    series_value_at(0, q), 5.0});
    rows.push_back({"variance", batch.moments.variance,
                    batch.moments.variance_se, series_value_at(1, q), 5.0});
    rows.push_back({"third cumulant", batch.moments.third_cumulant,
                    batch.moments.third_cumulant_se, series_value_at(2, q), 5.0});
    int rc = print_bands(rows);
    if (!json_path.empty()) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        std::ostringstream rec;
        rec << "{\"command\":\"simulate\",\"id\":\"heap\",\"params\":\"q=" << q
            << " seed=" << seed << " trials=" << trials
            << "\",\"nq\":0,\"nt\":0,\"outcome\":\""
            << (rc == kExitOk ? "pass" : "fail") << "\",\"histogram\":[";
        for (size_t i = 0; i < batch.histogram.size(); ++i)
            rec << (i ? "," : "") << batch.histogram[i];
        rec << "],\"millis\":" << ms << "}";
        int jrc = write_json(json_path, {rec.str()});
        if (jrc != kExitOk) return jrc;
    }
    return rc;
}

int run_partitions(int max_n, int max_m, const std::string& c_text,
                   const std::string& json_path) {
    Scalar c;
    try {
        c = Scalar(parse_rat(c_text));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    auto t0 = std::chrono::steady_clock::now();
    long fails = 0;
    for (int n = 1; n <= max_n; ++n)
        for (int m = 0; m <= max_m; ++m) {
            Scalar lhs = partition_divisor_sum(n, m, c);
            Scalar rhs = divisor_sigma((unsigned)m, c, (unsigned)n);
            if (!(lhs == rhs)) {
                ++fails;
                std::printf("mismatch at n=%d m=%d: %s vs %s\n", n, m,
                            lhs.str().c_str(), rhs.str().c_str());
            }
        }
    std::printf("partition-divisor sweep: n <= %d, m <= %d, c=%s: %ld mismatches\n",
                max_n, max_m, c_text.c_str(), fails);
    if (!json_path.empty()) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        std::ostringstream rec;
        rec << "{\"command\":\"partitions\",\"params\":\"max_n=" << max_n
            << " max_m=" << max_m << " c=" << c_text
            << "\",\"nq\":0,\"nt\":0,\"outcome\":\""
            << (fails ? "fail" : "pass") << "\",\"millis\":" << ms << "}";
        int jrc = write_json(json_path, {rec.str()});
        if (jrc != kExitOk) return jrc;
    }
    return fails == 0 ? kExitOk : kExitVerifyFail;
}

int run_report(const std::vector<std::string>& inputs,
               const std::string& json_path) {
    nlohmann::json merged = nlohmann::json::array();
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "cannot read " << path << "\n";
            return kExitIo;
        }
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            std::cerr << path << ": " << e.what() << "\n";
            return kExitIo;
        }
        if (!doc.is_array()) {
            std::cerr << path << ": expected a top-level array\n";
            return kExitIo;
        }
        for (auto& rec : doc) merged.push_back(rec);
    }
    if (json_path.empty()) {
        std::cout << merged.dump(1) << "\n";
        return kExitOk;
    }
    std::ofstream out(json_path);
    if (!out) {
        std::cerr << "cannot open " << json_path << "\n";
        return kExitIo;
    }
    out << merged.dump(1) << "\n";
    return out.good() ? kExitOk : kExitIo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series identity verification and simulation"};
    app.require_subcommand(1);

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "run identity verification suites");
    verify->add_option("--suite", vargs.suite, "identity id, comma list, or 'all'");
    verify->add_option("--suite-file", vargs.suite_file,
                       "declarative suite file (one '<id> key=value...' per line)");
    verify->add_option("--order", vargs.order, "set Nq=Nt for every check");
    verify->add_option("--params", vargs.params,
                       "key=value parameter overrides (single id only)")
        ->take_all();
    verify->add_option("--json", vargs.json_path, "write a JSON report array");

    std::string series_target, series_json;
    int series_order = 0;
    auto* series = app.add_subcommand("series", "print one registered side");
    series->add_option("target", series_target, "<id>/<side>")->required();
    series->add_option("--order", series_order, "truncation order");
    series->add_option("--json", series_json, "write the series as JSON");

    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    simulate->require_subcommand(1);
    int dag_n = 12;
    double dag_p = 0.5;
    long dag_trials = 200000;
    uint64_t dag_seed = 7;
    std::string dag_json;
    auto* dag = simulate->add_subcommand("dag", "random acyclic digraph reachability");
    dag->add_option("--n", dag_n, "vertex count");
    dag->add_option("--p", dag_p, "edge probability");
    dag->add_option("--trials", dag_trials, "trial count");
    dag->add_option("--seed", dag_seed, "64-bit seed");
    dag->add_option("--json", dag_json, "write the trial batch as JSON");

    double heap_q = 0.5;
    long heap_trials = 1000000;
    uint64_t heap_seed = 1;
    std::string heap_json;
    auto* heap = simulate->add_subcommand("heap", "heap-distributed random variable");
    heap->add_option("--q", heap_q, "distribution parameter in (0,1)");
    heap->add_option("--trials", heap_trials, "trial count");
    heap->add_option("--seed", heap_seed, "64-bit seed");
    heap->add_option("--json", heap_json, "write the trial batch as JSON");

    int part_max_n = 40, part_max_m = 4;
    std::string part_c = "1", part_json;
    auto* partitions =
        app.add_subcommand("partitions", "partition vs divisor-sum sweep");
    partitions->add_option("--max-n", part_max_n, "largest n");
    partitions->add_option("--max-m", part_max_m, "largest power m");
    partitions->add_option("--c", part_c, "weight c as a rational 'p/q'");
    partitions->add_option("--json", part_json, "write a JSON record");

    std::vector<std::string> report_inputs;
    std::string report_json;
    auto* report = app.add_subcommand("report", "merge JSON report arrays");
    report->add_option("inputs", report_inputs, "input JSON files")->required();
    report->add_option("--json", report_json, "merged output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(vargs);
        if (*series) return run_series(series_target, series_order, series_json);
        if (*dag) return run_simulate_dag(dag_n, dag_p, dag_trials, dag_seed, dag_json);
        if (*heap) return run_simulate_heap(heap_q, heap_trials, heap_seed, heap_json);
        if (*partitions)
            return run_partitions(part_max_n, part_max_m, part_c, part_json);
        if (*report) return run_report(report_inputs, report_json);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
