// cardguard CLI: detect / simulate / evaluate / sweep / plotdata

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cardguard/config_io.hpp"
#include "cardguard/csv_io.hpp"
#include "cardguard/engine.hpp"
#include "cardguard/evaluate.hpp"
#include "cardguard/jsonl.hpp"
#include "cardguard/simulate.hpp"

namespace {

using namespace cardguard;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << bytes;
}

std::vector<Transaction> read_csv_file(const std::string& path, const CsvReadOptions& options,
                                       CsvReadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input: " + path);
    return read_transactions_csv(in, options, stats);
}

void print_counters(const EngineCounters& c) {
    std::cout << "processed=" << c.processed << " allowed=" << c.allowed
              << " flagged=" << c.flagged << " blocked=" << c.blocked
              << " limited=" << c.limited << " stepup=" << c.stepup
              << " enrichment=" << c.enrichment << "\n";
    if (c.time_warnings > 0)
        std::cout << "data_quality: time_regressions=" << c.time_warnings << "\n";
}

int run_detect(const std::string& input, const std::string& config_path,
               const std::string& out_path, const std::string& checkpoint_path, bool lenient,
               const std::string& remap_path) {
    EngineConfig cfg;
    if (!config_path.empty()) cfg = load_engine_config(config_path);

    CsvReadOptions options;
    options.strict = !lenient;
    if (!remap_path.empty()) options.header_remap = load_header_remap(remap_path);

    CsvReadStats stats;
    std::vector<Transaction> txns = read_csv_file(input, options, &stats);

    DetectionEngine engine(cfg);
    if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path))
        engine = DetectionEngine::restore(slurp(checkpoint_path));

    std::vector<Decision> decisions = engine.process_stream(txns);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output: " + out_path);
    write_decisions(out, decisions);

    if (!checkpoint_path.empty()) spill(checkpoint_path, engine.checkpoint());

    std::int64_t attack_starts = 0;
    for (const auto& d : decisions)
        if (d.has_reason(Reason::AttackStart)) attack_starts += 1;

    print_counters(engine.counters());
    std::cout << "attack_starts=" << attack_starts << "\n";
    if (lenient)
        std::cout << "rows_accepted=" << stats.rows_accepted
                  << " rows_skipped=" << stats.rows_skipped << "\n";
    if (stats.has_fraud_column) std::cout << format_report(evaluate(decisions, txns));
    return 0;
}

int run_simulate(const std::string& params_path, const std::string& attacks_path,
                 std::int64_t seed_override, const std::string& out_path) {
    GenParams params = load_gen_params(params_path);
    if (seed_override >= 0) params.seed = static_cast<std::uint64_t>(seed_override);

    std::vector<Transaction> stream = generate(params);
    if (!attacks_path.empty()) {
        AttackPlan plan = load_attack_plan(attacks_path);
        stream = inject_attacks(std::move(stream), plan.attacks, plan.seed);
    }

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output: " + out_path);
    write_transactions_csv(out, stream);

    std::int64_t fraud = 0;
    for (const auto& t : stream)
        if (t.fraud_label.value_or(false)) ++fraud;
    std::cout << "transactions=" << stream.size() << " fraud=" << fraud << "\n";
    return 0;
}

int run_evaluate(const std::string& decisions_path, const std::string& truth_path) {
    std::ifstream din(decisions_path);
    if (!din) throw std::runtime_error("cannot open decisions: " + decisions_path);
    std::vector<Decision> decisions = read_decisions(din);
    std::vector<Transaction> txns = read_csv_file(truth_path, {}, nullptr);
    std::cout << format_report(evaluate(decisions, txns));
    return 0;
}

int run_sweep(const std::string& grid_path, const std::string& params_path,
              const std::string& attacks_path, const std::string& config_path,
              const std::string& out_path) {
    SweepGrid grid = load_sweep_grid(grid_path);
    GenParams gen = load_gen_params(params_path);
    AttackPlan plan;
    if (!attacks_path.empty()) plan = load_attack_plan(attacks_path);
    EngineConfig base;
    if (!config_path.empty()) base = load_engine_config(config_path);

    auto rows = sweep(grid, gen, plan.attacks, plan.seed, base);
    spill(out_path, sweep_to_csv(rows));

    std::filesystem::path json_path(out_path);
    json_path.replace_extension(".json");
    spill(json_path.string(), sweep_to_json(rows));

    std::cout << "grid_points=" << rows.size() << " csv=" << out_path
              << " json=" << json_path.string() << "\n";
    return 0;
}

int run_plotdata(const std::string& decisions_path, const std::string& truth_path,
                 const std::string& card_id, const std::string& out_path) {
    std::ifstream din(decisions_path);
    if (!din) throw std::runtime_error("cannot open decisions: " + decisions_path);
    std::vector<Decision> decisions = read_decisions(din);
    std::vector<Transaction> txns = read_csv_file(truth_path, {}, nullptr);
    if (decisions.size() != txns.size())
        throw std::runtime_error("decision/truth length mismatch");

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output: " + out_path);
    out << "seq_no,amount,weighted_mean,lo,hi,action,fraud_label\n";
    std::int64_t rows = 0;
    for (std::size_t i = 0; i < txns.size(); ++i) {
        if (txns[i].card_id != card_id) continue;
        const Decision& d = decisions[i];
        out << txns[i].seq_no << ',' << format_money(txns[i].amount) << ','
            << format_money(d.mean) << ',' << format_money(d.interval.lo) << ','
            << format_money(d.interval.hi) << ',' << to_string(d.action) << ','
            << (txns[i].fraud_label ? (*txns[i].fraud_label ? "Yes" : "No") : "") << '\n';
        ++rows;
    }
    std::cout << "rows=" << rows << " card=" << card_id << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming fraud-attack detection engine"};
    app.require_subcommand(1);

    std::string input, config_path, out_path, checkpoint_path, remap_path;
    std::string params_path, attacks_path, decisions_path, truth_path, grid_path, card_id;
    std::int64_t seed_override = -1;
    bool lenient = false;

    auto* detect = app.add_subcommand("detect", "Run detection over a transaction CSV");
    detect->add_option("--input", input, "Transaction CSV")->required();
    detect->add_option("--config", config_path, "Engine config file");
    detect->add_option("--out", out_path, "Decision JSONL output")->required();
    detect->add_option("--checkpoint", checkpoint_path,
                       "Engine state file: resumed when present, written on exit");
    detect->add_option("--remap", remap_path, "Header remap file");
    detect->add_flag("--strict", "Abort on the first bad row (default)");
    detect->add_flag("--lenient", lenient, "Skip bad rows and count them");

    auto* simulate = app.add_subcommand("simulate", "Generate a labeled transaction CSV");
    simulate->add_option("--params", params_path, "Generator params file")->required();
    simulate->add_option("--attacks", attacks_path, "Attack plan file");
    simulate->add_option("--seed", seed_override, "Override the generator seed");
    simulate->add_option("--out", out_path, "Output CSV")->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score decisions against ground truth");
    evaluate_cmd->add_option("--decisions", decisions_path, "Decision JSONL")->required();
    evaluate_cmd->add_option("--truth", truth_path, "Labeled transaction CSV")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over the detection knobs");
    sweep_cmd->add_option("--grid", grid_path, "Grid file")->required();
    sweep_cmd->add_option("--params", params_path, "Generator params file")->required();
    sweep_cmd->add_option("--attacks", attacks_path, "Attack plan file");
    sweep_cmd->add_option("--config", config_path, "Base engine config");
    sweep_cmd->add_option("--out", out_path, "Output CSV (a .json twin is written too)")
        ->required();

    auto* plotdata = app.add_subcommand("plotdata", "Per-transaction series for one card");
    plotdata->add_option("--decisions", decisions_path, "Decision JSONL")->required();
    plotdata->add_option("--truth", truth_path, "Transaction CSV")->required();
    plotdata->add_option("--card", card_id, "Card id, e.g. u0c0")->required();
    plotdata->add_option("--out", out_path, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect)
            return run_detect(input, config_path, out_path, checkpoint_path, lenient, remap_path);
        if (*simulate) return run_simulate(params_path, attacks_path, seed_override, out_path);
        if (*evaluate_cmd) return run_evaluate(decisions_path, truth_path);
        if (*sweep_cmd)
            return run_sweep(grid_path, params_path, attacks_path, config_path, out_path);
        if (*plotdata) return run_plotdata(decisions_path, truth_path, card_id, out_path);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 1;
    }
    return 0;
}
