// Command-line front end: deterministic experiments over pseudo-absolute
// value sequences, approximation targets, and interval measures.
//
// Exit codes: 0 success, 1 verification failure (or unexpected error),
// 2 configuration/parse error, 3 budget refusal.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pavlab/approx.hpp"
#include "pavlab/arith.hpp"
#include "pavlab/config.hpp"
#include "pavlab/criteria.hpp"
#include "pavlab/io.hpp"
#include "pavlab/measure.hpp"
#include "pavlab/verification.hpp"
#include "pavlab/version.hpp"

namespace {

using namespace pavlab;
using nlohmann::json;

struct GlobalOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    uint64_t seed = 0;
    bool seed_given = false;
    uint64_t workers = 1;
    uint64_t budget_mem_mb = 4096;
};

void add_common(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--config", g.config_path, "experiment config file (JSON)");
    cmd->add_option("--out", g.out_path, "output file (default: stdout)");
    cmd->add_option("--format", g.format, "output format: csv or json");
    cmd->add_option("--seed", g.seed, "seed override")
        ->each([&g](const std::string&) { g.seed_given = true; });
    cmd->add_option("--workers", g.workers, "worker cap (results identical)");
    cmd->add_option("--budget-mem", g.budget_mem_mb, "memory budget in MB");
}

ExperimentConfig load_config(const GlobalOpts& g) {
    ExperimentConfig cfg = g.config_path.empty()
                               ? ExperimentConfig::empty()
                               : ExperimentConfig::from_file(g.config_path);
    if (g.format != "csv" && g.format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    if (g.workers < 1) throw ConfigError("--workers must be >= 1");
    return cfg;
}

uint64_t effective_seed(const GlobalOpts& g, const ExperimentConfig& cfg) {
    if (g.seed_given) return g.seed;
    return cfg.get_u64("seed", 0);
}

// Every output file starts with a provenance record: config hash, seed,
// library version.
class Emitter {
  public:
    Emitter(const GlobalOpts& g, const ExperimentConfig& cfg)
        : format_(g.format),
          prov_{cfg.config_hash(), effective_seed(g, cfg), kVersion} {
        if (!g.out_path.empty()) {
            file_.open(g.out_path);
            if (!file_) throw ConfigError("cannot open --out " + g.out_path);
        }
    }

    bool json_mode() const { return format_ == "json"; }

    void csv(const std::string& header,
             const std::vector<std::string>& rows) {
        std::ostream& os = out();
        os << provenance_line(prov_) << "\n" << header << "\n";
        for (const auto& r : rows) os << r << "\n";
    }

    void object(json payload) {
        json doc;
        doc["provenance"] = {{"config_hash", hex_hash()},
                             {"seed", prov_.seed},
                             {"version", prov_.version}};
        doc.update(payload);
        out() << doc.dump(2) << "\n";
    }

    uint64_t seed() const { return prov_.seed; }

  private:
    std::string hex_hash() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(prov_.config_hash));
        return buf;
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
    std::string format_;
    Provenance prov_;
    std::ofstream file_;
};

int cmd_norm(const GlobalOpts& g, uint64_t n_flag) {
    ExperimentConfig cfg = load_config(g);
    uint64_t n = n_flag ? n_flag : cfg.require_u64("n");
    if (n < 1) throw ConfigError("config field 'n': must be >= 1");
    auto seqs = cfg.sequences();
    if (seqs.empty()) throw ConfigError("config field 'sequences': required");
    SequenceFamily F(seqs);

    Emitter em(g, cfg);
    if (em.json_mode()) {
        json rows = json::array();
        for (const auto& d : seqs) {
            auto nm = d.norm(n);
            rows.push_back({{"sequence", d.describe()},
                            {"index", nm.index},
                            {"element", int_str(nm.element)},
                            {"value", rat_str(nm.value())}});
        }
        em.object({{"n", n},
                   {"norms", rows},
                   {"product_norm", rat_str(product_pseudo_norm(F, n))}});
    } else {
        std::vector<std::string> rows;
        for (const auto& d : seqs) {
            auto nm = d.norm(n);
            std::ostringstream r;
            r << d.describe() << "," << nm.index << "," << int_str(nm.element)
              << "," << rat_str(nm.value());
            rows.push_back(r.str());
        }
        rows.push_back("product,," + int_str(inverse_product_norm(F, n)) +
                       "," + rat_str(product_pseudo_norm(F, n)));
        em.csv("sequence,index,element,value", rows);
    }
    return 0;
}

int cmd_series(const GlobalOpts& g) {
    ExperimentConfig cfg = load_config(g);
    PsiSpec psi = cfg.psi();
    WeightKind w = cfg.weight();
    uint64_t n0 = cfg.get_u64("N0", psi.start_index());
    uint64_t n1 = cfg.has("N1") ? cfg.require_u64("N1")
                                : cfg.require_u64("n_max");
    if (n1 < n0) throw ConfigError("config field 'N1': empty range (N1 < N0)");
    if (n0 != psi.start_index()) {
        throw ConfigError(
            "config field 'N0': series partial sums start at psi.start");
    }
    SeriesReport rep = weighted_partial_sum(psi, w, n1);
    std::string fam = cfg.family().describe();
    Verdict v = analytic_verdict(psi, w);

    Emitter em(g, cfg);
    Rat cum_exact(0);
    double cum_float = 0.0;
    if (em.json_mode()) {
        json blocks = json::array();
        for (const auto& blk : rep.blocks) {
            cum_float += blk.value;
            json row = {{"n_end", blk.n_end},
                        {"partial_sum_float", float17(cum_float)}};
            if (blk.exact) {
                cum_exact += *blk.exact;
                row["partial_sum_exact"] = rat_str(cum_exact);
            }
            blocks.push_back(row);
        }
        em.object({{"weight", rep.weight_desc},
                   {"psi", rep.psi_desc},
                   {"family", fam},
                   {"verdict", verdict_str(v)},
                   {"blocks", blocks},
                   {"sum_float", float17(rep.sum_float)}});
    } else {
        std::vector<std::string> rows;
        for (const auto& blk : rep.blocks) {
            cum_float += blk.value;
            std::string exact;
            if (blk.exact) {
                cum_exact += *blk.exact;
                exact = rat_str(cum_exact);
            }
            std::ostringstream r;
            r << rep.weight_desc << "," << rep.psi_desc << "," << fam << ","
              << blk.n_end << "," << exact << "," << float17(cum_float);
            rows.push_back(r.str());
        }
        em.csv("weight,psi,family,n_end,partial_sum_exact,partial_sum_float",
               rows);
    }
    return 0;
}

int cmd_criteria(const GlobalOpts& g) {
    ExperimentConfig cfg = load_config(g);
    PsiSpec psi = cfg.psi();
    WeightKind w = cfg.weight();
    SequenceFamily F = cfg.family();

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("psi", psi.describe());
    kv.emplace_back("weight", w.describe());
    kv.emplace_back("verdict", verdict_str(analytic_verdict(psi, w)));
    if (cfg.has("n_max")) {
        uint64_t n_max = cfg.require_u64("n_max");
        SeriesReport rep = weighted_partial_sum(psi, w, n_max);
        kv.emplace_back("partial_sum_float", float17(rep.sum_float));
        if (rep.sum_exact) {
            kv.emplace_back("partial_sum_exact", rat_str(*rep.sum_exact));
        }
        if (F.size() > 0 && F.verify_mutually_coprime()) {
            SandwichBounds sb = sandwich_bounds(F, n_max);
            kv.emplace_back("sandwich_sum", int_str(sb.sum));
            kv.emplace_back("sandwich_count", std::to_string(sb.count_m));
            if (sb.ratio) kv.emplace_back("sandwich_ratio", rat_str(*sb.ratio));
        }
    }
    if (cfg.has("K")) {
        MinPhiRatio m = min_product_phi_ratio(
            F, static_cast<uint32_t>(cfg.require_u64("K")));
        kv.emplace_back("min_phi_ratio", rat_str(m.min_ratio));
        std::ostringstream arg;
        for (size_t i = 0; i < m.argmin.size(); ++i) {
            if (i) arg << ";";
            arg << m.argmin[i];
        }
        kv.emplace_back("min_phi_argmin", arg.str());
    }
    if (cfg.has("N")) {
        uint64_t N = cfg.require_u64("N");
        kv.emplace_back("avg_phi_ratio", rat_str(avg_product_phi_ratio(F, N)));
        kv.emplace_back("product_mass_ratio",
                        rat_str(product_mass_ratio(F, N)));
    }
    if (cfg.has("m")) {
        if (cfg.sequences().empty()) {
            throw ConfigError("config field 'm': needs sequences");
        }
        kv.emplace_back("avg_element_phi_ratio",
                        rat_str(avg_element_phi_ratio(cfg.sequences()[0],
                                                      cfg.require_u64("m"))));
    }

    Emitter em(g, cfg);
    if (em.json_mode()) {
        json obj;
        for (auto& [k, v2] : kv) obj[k] = v2;
        em.object({{"criteria", obj}});
    } else {
        std::vector<std::string> rows;
        for (auto& [k, v2] : kv) rows.push_back(k + "," + v2);
        em.csv("key,value", rows);
    }
    return 0;
}

int cmd_solutions(const GlobalOpts& g) {
    ExperimentConfig cfg = load_config(g);
    RealTarget alpha = cfg.alpha();
    PsiSpec psi = cfg.psi();
    SequenceFamily F = cfg.family();
    uint64_t n_max = cfg.require_u64("n_max");
    auto records = enumerate_solutions(alpha, psi, F, n_max);

    Emitter em(g, cfg);
    if (em.json_mode()) {
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back({{"n", r.n},
                            {"p", int_str(r.p)},
                            {"product_norm", rat_str(r.product_norm)},
                            {"dist", r.dist.str()},
                            {"value", float17(r.value)},
                            {"psi_n", float17(r.psi_n)},
                            {"slack", float17(r.slack)},
                            {"flag", r.indeterminate ? 1 : 0}});
        }
        em.object({{"alpha", alpha.describe()},
                   {"psi", psi.describe()},
                   {"count", records.size()},
                   {"records", rows}});
    } else {
        std::vector<std::string> rows;
        for (const auto& r : records) {
            std::ostringstream row;
            row << r.n << "," << int_str(r.p) << "," << rat_str(r.product_norm)
                << "," << float17(r.dist.value()) << "," << float17(r.value)
                << "," << float17(r.psi_n) << "," << float17(r.slack) << ","
                << (r.indeterminate ? 1 : 0);
            rows.push_back(row.str());
        }
        em.csv("n,p,product_norm,dist,value,psi_n,slack,flag", rows);
    }
    return 0;
}

int cmd_liminf(const GlobalOpts& g) {
    ExperimentConfig cfg = load_config(g);
    RealTarget alpha = cfg.alpha();
    auto seqs = cfg.sequences();
    if (seqs.empty()) throw ConfigError("config field 'sequences': required");
    Rat eps = cfg.get_rat("eps", Rat(0));
    uint64_t n_max = cfg.require_u64("n_max");
    auto points = running_liminf(alpha, seqs[0], eps, n_max);

    Emitter em(g, cfg);
    if (em.json_mode()) {
        json rows = json::array();
        for (const auto& p : points) {
            rows.push_back({{"n", p.n},
                            {"running_min", float17(p.min_lo)},
                            {"upper", float17(p.min_hi)},
                            {"interval", p.interval},
                            {"exactly_zero", p.exactly_zero}});
        }
        em.object({{"alpha", alpha.describe()},
                   {"sequence", seqs[0].describe()},
                   {"eps", rat_str(eps)},
                   {"checkpoints", rows}});
    } else {
        std::vector<std::string> rows;
        for (const auto& p : points) {
            rows.push_back(std::to_string(p.n) + "," + float17(p.min_lo));
        }
        em.csv("n,running_min", rows);
    }
    return 0;
}

int cmd_measure(const GlobalOpts& g) {
    ExperimentConfig cfg = load_config(g);
    PsiSpec psi = cfg.psi();
    SequenceFamily F = cfg.family();
    uint64_t n0 = cfg.require_u64("N0");
    uint64_t n1 = cfg.require_u64("N1");
    if (n1 < n0) throw ConfigError("config field 'N1': empty range (N1 < N0)");

    // coarse memory estimate: ~64 bytes per candidate interval
    double est_intervals = 0.62 * 0.5 *
                           (static_cast<double>(n1) * static_cast<double>(n1) -
                            static_cast<double>(n0) * static_cast<double>(n0));
    if (est_intervals * 64.0 >
        static_cast<double>(g.budget_mem_mb) * 1024.0 * 1024.0) {
        throw BudgetError("estimated interval storage exceeds --budget-mem");
    }

    UnionReport rep = union_range(psi, F, n0, n1);
    uint64_t samples = cfg.get_u64("samples", 0);
    McReport mc;
    if (samples > 0) {
        mc = monte_carlo_hits(rep.set, samples, effective_seed(g, cfg));
    }

    Emitter em(g, cfg);
    if (em.json_mode()) {
        json obj = {{"N0", n0},
                    {"N1", n1},
                    {"samples", samples},
                    {"seed", em.seed()},
                    {"fraction", float17(mc.fraction)},
                    {"halfwidth", float17(mc.halfwidth)},
                    {"tail_sum", rat_str(rep.tail_sum)},
                    {"union_measure", rat_str(rep.measure)},
                    {"interval_count", rep.set.size()}};
        if (cfg.get_u64("emit_set", 0) != 0) {
            obj["intervals"] = json::parse(rep.set.to_json());
        }
        em.object(obj);
    } else {
        std::ostringstream row;
        row << n0 << "," << n1 << "," << samples << "," << em.seed() << ","
            << float17(mc.fraction) << "," << float17(mc.halfwidth) << ","
            << float17(to_double(rep.tail_sum)) << ","
            << float17(to_double(rep.measure));
        em.csv("N0,N1,samples,seed,fraction,halfwidth,tail_sum,union_measure",
               {row.str()});
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    ExperimentConfig cfg = load_config(g);
    uint64_t seed = g.seed_given ? g.seed : kVerifySeed;
    std::vector<SuiteResult> results;
    if (suite.empty() || suite == "all") {
        results = run_all_suites(seed);
    } else {
        results.push_back(run_suite(suite, seed));
    }
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << format_suite_line(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    if (!g.out_path.empty()) {
        Emitter em(g, cfg);
        if (em.json_mode()) {
            json rows = json::array();
            for (const auto& r : results) {
                json checks = json::array();
                for (const auto& c : r.checks) {
                    checks.push_back({{"name", c.name},
                                      {"pass", c.pass},
                                      {"detail", c.detail}});
                }
                rows.push_back({{"suite", r.suite},
                                {"criterion", r.criterion},
                                {"pass", r.pass},
                                {"seconds", r.seconds},
                                {"checks", checks}});
            }
            em.object({{"suites", rows}, {"pass", all_pass}});
        } else {
            std::vector<std::string> rows;
            for (const auto& r : results) {
                std::ostringstream row;
                row << r.suite << "," << r.criterion << ","
                    << (r.pass ? "pass" : "fail") << "," << float17(r.seconds);
                rows.push_back(row.str());
            }
            em.csv("suite,criterion,status,seconds", rows);
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_report(const GlobalOpts& g, const std::vector<std::string>& inputs) {
    if (inputs.empty()) throw ConfigError("report: no input files given");
    struct Row {
        std::string file, header, hash;
        uint64_t rows = 0;
    };
    std::vector<Row> table;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw ConfigError("report: cannot open " + path);
        Row row;
        row.file = path;
        std::string line;
        bool first_data = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                auto pos = line.find("config_hash=");
                if (pos != std::string::npos) {
                    row.hash = line.substr(pos + 12, 16);
                }
                continue;
            }
            if (first_data) {
                row.header = line;
                first_data = false;
            } else {
                ++row.rows;
            }
        }
        table.push_back(std::move(row));
    }
    ExperimentConfig cfg = load_config(g);
    Emitter em(g, cfg);
    if (em.json_mode()) {
        json rows = json::array();
        for (const auto& r : table) {
            rows.push_back({{"file", r.file},
                            {"config_hash", r.hash},
                            {"columns", r.header},
                            {"rows", r.rows}});
        }
        em.object({{"report", rows}});
    } else {
        std::vector<std::string> rows;
        for (const auto& r : table) {
            rows.push_back(r.file + "," + r.hash + ",\"" + r.header + "\"," +
                           std::to_string(r.rows));
        }
        em.csv("file,config_hash,columns,rows", rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-absolute-value workbench"};
    app.require_subcommand(1);

    GlobalOpts g;
    uint64_t norm_n = 0;
    std::string verify_suite;
    std::vector<std::string> report_inputs;

    CLI::App* c_norm = app.add_subcommand("norm", "pseudo norms of one n");
    c_norm->add_option("-n,--n", norm_n, "the integer to evaluate");
    CLI::App* c_series = app.add_subcommand("series", "weighted partial sums");
    CLI::App* c_criteria =
        app.add_subcommand("criteria", "divergence criteria and ratios");
    CLI::App* c_solutions =
        app.add_subcommand("solutions", "coprime solutions of the inequality");
    CLI::App* c_liminf =
        app.add_subcommand("liminf", "running minimum of the scaled distance");
    CLI::App* c_measure =
        app.add_subcommand("measure", "interval unions and Monte Carlo");
    CLI::App* c_verify =
        app.add_subcommand("verify", "run the verification battery");
    c_verify->add_option("--suite", verify_suite,
                         "suite name (default: all)");
    CLI::App* c_report = app.add_subcommand("report", "summarize output files");
    c_report->add_option("inputs", report_inputs, "CSV files to summarize");

    for (CLI::App* cmd : {c_norm, c_series, c_criteria, c_solutions, c_liminf,
                          c_measure, c_verify, c_report}) {
        add_common(cmd, g);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (c_norm->parsed()) return cmd_norm(g, norm_n);
        if (c_series->parsed()) return cmd_series(g);
        if (c_criteria->parsed()) return cmd_criteria(g);
        if (c_solutions->parsed()) return cmd_solutions(g);
        if (c_liminf->parsed()) return cmd_liminf(g);
        if (c_measure->parsed()) return cmd_measure(g);
        if (c_verify->parsed()) return cmd_verify(g, verify_suite);
        if (c_report->parsed()) return cmd_report(g, report_inputs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
