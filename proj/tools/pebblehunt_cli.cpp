// Command-line front end for the pebble-guided treasure hunt engine:
// oracle placements, single runs, randomized sweeps, the cost-ratio
// experiment, and SVG trace rendering. Exit codes: 0 success, 2 bad input,
// 3 protocol failure (diverged / violated / leg limit / validation failure).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pebblehunt/cost_model.hpp"
#include "pebblehunt/serialize.hpp"
#include "pebblehunt/sweep.hpp"
#include "pebblehunt/validate.hpp"

namespace ph = pebblehunt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitProtocol = 3;

ph::Point parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--treasure", "expected x,y");
    return ph::Point{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct RunInputs {
    std::string placement_path;
    std::string treasure_text;
    int k = 0;
};

ph::Placement load_or_place(const RunInputs& in) {
    if (!in.placement_path.empty()) return ph::placement_from_json(read_file(in.placement_path));
    if (in.treasure_text.empty())
        throw CLI::ValidationError("input", "give either --placement or --treasure with --k");
    const ph::Instance inst(parse_point(in.treasure_text), in.k);
    if (inst.k > 30)
        throw CLI::ValidationError("--k", "simulation supports k <= 30; use `ratio` beyond");
    return ph::place(inst);
}

void print_run_summary(const ph::Placement& pl, const ph::RunResult& run) {
    const double d = pl.treasure.norm();
    const double bound = ph::cost_bound(d, pl.k);
    std::cout << "status:       " << ph::status_name(run.status) << "\n";
    if (!run.violation.empty()) std::cout << "violation:    " << run.violation << "\n";
    std::cout << "case:         " << ph::case_name(pl.case_tag) << "\n";
    std::cout << "orientation:  " << (pl.orientation == ph::Orientation::W ? "W" : "E") << "\n";
    if (run.decoded) {
        std::cout << "mu:           " << run.decoded->mu << "\n";
        std::cout << "delta:        " << run.decoded->delta << "\n";
        std::cout << "travel line:  L_" << run.decoded->travel_line << "\n";
    } else {
        std::cout << "mu:           (none)\n";
    }
    std::cout << "cost total:   " << ph::detail::num17(run.total_cost) << "\n";
    std::cout << "cost decode:  " << ph::detail::num17(run.decode_cost) << "\n";
    std::cout << "cost sector:  " << ph::detail::num17(run.sector_cost) << "\n";
    std::cout << "bound:        " << ph::detail::num17(bound) << "\n";
    std::cout << "within bound: " << (run.total_cost <= bound ? "yes" : "NO") << "\n";
    std::cout << "legs:         " << run.legs.size() << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pebble-guided treasure hunt: oracle, agent, and cost experiments"};
    app.require_subcommand(1);

    // --- place ---
    std::string place_treasure, place_out;
    int place_k = 9;
    auto* cmd_place = app.add_subcommand("place", "emit an oracle placement as JSON");
    cmd_place->add_option("--treasure", place_treasure, "treasure position x,y")->required();
    cmd_place->add_option("--k", place_k, "pebble budget")->required();
    cmd_place->add_option("--out", place_out, "write JSON here instead of stdout");

    // --- run ---
    RunInputs run_in;
    std::string run_json_out, run_csv_out;
    auto* cmd_run = app.add_subcommand("run", "simulate the agent on a placement");
    cmd_run->add_option("--placement", run_in.placement_path, "placement JSON file");
    cmd_run->add_option("--treasure", run_in.treasure_text, "treasure position x,y");
    cmd_run->add_option("--k", run_in.k, "pebble budget (with --treasure)");
    cmd_run->add_option("--json", run_json_out, "write the run result JSON here");
    cmd_run->add_option("--csv", run_csv_out, "write the trace CSV here");

    // --- sweep ---
    ph::SweepConfig sweep_cfg;
    std::string sweep_kset = "9,10,11,12", sweep_out;
    auto* cmd_sweep = app.add_subcommand("sweep", "randomized (k, D, angle) sweep to CSV");
    cmd_sweep->add_option("--seed", sweep_cfg.seed, "master seed (env PEBBLEHUNT_SEED overrides)");
    cmd_sweep->add_option("--k-set", sweep_kset, "comma-separated budgets");
    cmd_sweep->add_option("--d-min", sweep_cfg.d_min, "minimum distance (log-uniform)");
    cmd_sweep->add_option("--d-max", sweep_cfg.d_max, "maximum distance (log-uniform)");
    cmd_sweep->add_option("--samples", sweep_cfg.samples, "samples per k cell");
    cmd_sweep->add_option("--eps-rel", sweep_cfg.tol.eps_rel, "relative on-ray tolerance");
    cmd_sweep->add_option("--eps-abs", sweep_cfg.tol.eps_abs, "absolute tolerance floor");
    cmd_sweep->add_option("--t-min", sweep_cfg.tol.t_min, "minimum forward parameter");
    cmd_sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

    // --- ratio ---
    std::string ratio_dlist = "1e3,1e4,1e5,1e6,1e7,1e8", ratio_krule = "cuberoot", ratio_out;
    auto* cmd_ratio = app.add_subcommand("ratio", "f(k)/D curve for worst-case instances");
    cmd_ratio->add_option("--d-list", ratio_dlist, "comma-separated distances");
    cmd_ratio->add_option("--k-rule", ratio_krule, "cuberoot or const:<k>");
    cmd_ratio->add_option("--out", ratio_out, "write CSV here instead of stdout");

    // --- trace ---
    RunInputs trace_in;
    std::string trace_svg, trace_csv;
    bool trace_sectors = false;
    auto* cmd_trace = app.add_subcommand("trace", "render a run as SVG");
    cmd_trace->add_option("--placement", trace_in.placement_path, "placement JSON file");
    cmd_trace->add_option("--treasure", trace_in.treasure_text, "treasure position x,y");
    cmd_trace->add_option("--k", trace_in.k, "pebble budget (with --treasure)");
    cmd_trace->add_option("--svg", trace_svg, "output SVG path")->required();
    cmd_trace->add_option("--csv", trace_csv, "also write the trace CSV here");
    cmd_trace->add_flag("--sectors", trace_sectors, "draw the sector lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*cmd_place) {
            const ph::Instance inst(parse_point(place_treasure), place_k);
            if (inst.k > 30) {
                std::cerr << "error: placement validation simulates the run; k <= 30 required\n";
                return kExitInput;
            }
            const ph::Placement pl = ph::place(inst);
            const ph::ValidationReport rep = ph::validate(pl);
            const std::string json = ph::placement_to_json(pl);
            if (place_out.empty())
                std::cout << json;
            else
                write_file(place_out, json);
            std::cerr << "case " << ph::case_name(pl.case_tag) << ", "
                      << pl.pebbles.size() << " pebble(s): " << rep.summary() << "\n";
            if (rep.has_warnings())
                std::cerr << "warning: foot pebble closer than 1 to another pebble\n";
            return rep.passed() ? kExitOk : kExitProtocol;
        }

        if (*cmd_run) {
            const ph::Placement pl = load_or_place(run_in);
            const ph::RunResult run =
                ph::execute(pl, ph::strategy_for_budget(pl.k));
            print_run_summary(pl, run);
            if (!run_json_out.empty()) write_file(run_json_out, ph::run_result_to_json(run));
            if (!run_csv_out.empty()) write_file(run_csv_out, ph::trace_to_csv(run));
            return run.status == ph::RunStatus::Found ? kExitOk : kExitProtocol;
        }

        if (*cmd_sweep) {
            if (const char* env = std::getenv("PEBBLEHUNT_SEED"))
                sweep_cfg.seed = std::stoull(env);
            sweep_cfg.k_set = parse_int_list(sweep_kset);
            const auto rows = ph::run_sweep(sweep_cfg);
            const std::string csv = ph::sweep_to_csv(rows);
            if (sweep_out.empty())
                std::cout << csv;
            else
                write_file(sweep_out, csv);
            return kExitOk;
        }

        if (*cmd_ratio) {
            std::function<int(double)> rule = ph::cuberoot_rule;
            if (ratio_krule.rfind("const:", 0) == 0) {
                const int fixed = std::stoi(ratio_krule.substr(6));
                rule = [fixed](double) { return fixed; };
            } else if (ratio_krule != "cuberoot") {
                std::cerr << "error: unknown --k-rule " << ratio_krule << "\n";
                return kExitInput;
            }
            const auto rows = ph::ratio_curve(parse_double_list(ratio_dlist), rule);
            const std::string csv = ph::ratio_to_csv(rows);
            if (ratio_out.empty())
                std::cout << csv;
            else
                write_file(ratio_out, csv);
            return kExitOk;
        }

        if (*cmd_trace) {
            const ph::Placement pl = load_or_place(trace_in);
            const ph::RunResult run = ph::execute(pl, ph::strategy_for_budget(pl.k));
            write_file(trace_svg, ph::trace_to_svg(pl, run, trace_sectors));
            if (!trace_csv.empty()) write_file(trace_csv, ph::trace_to_csv(run));
            std::cerr << "status " << ph::status_name(run.status) << ", " << run.legs.size()
                      << " leg(s) -> " << trace_svg << "\n";
            return run.status == ph::RunStatus::Found ? kExitOk : kExitProtocol;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ph::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
