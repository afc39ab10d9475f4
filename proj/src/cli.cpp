#include "metricforge/cli.hpp"

#include "metricforge/combinators.hpp"
#include "metricforge/errors.hpp"
#include "metricforge/functions.hpp"
#include "metricforge/io.hpp"
#include "metricforge/preservers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <vector>

namespace metricforge {

namespace {

using io::json;

struct GridFlags {
    GridConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-step", config.step, "Arithmetic grid step (0 disables)")->capture_default_str();
        cmd->add_option("--grid-max", config.max, "Largest grid value")->capture_default_str();
        cmd->add_option("--grid-ratio", config.ratio, "Geometric grid ratio")->capture_default_str();
        cmd->add_option("--grid-geo-levels", config.geo_levels, "Geometric grid levels (0 disables)")
            ->capture_default_str();
        cmd->add_option("--grid-extra", config.extra, "Extra grid values, comma separated")->delimiter(',');
    }
};

unsigned default_threads() {
    if (const char* env = std::getenv("METRICFORGE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

json envelope(const std::string& command, double tol, unsigned threads) {
    return json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"tol", tol}, {"threads", threads}};
}

void maybe_write(const std::string& path, const FiniteSemimetricSpace& space) {
    if (!path.empty()) io::write_space_file(path, space);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analyze finite semimetric spaces and test distance transforms.", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    double tol = kDefaultTol;
    unsigned threads = default_threads();
    app.add_option("--tol", tol, "Relative tolerance")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for scans (env METRICFORGE_THREADS)")
        ->check(CLI::PositiveNumber);

    std::string input, output, left, right, fn_text, property, tuple_text, triplets_text, mode_text = "b";
    std::string source_text, target_text;
    std::vector<std::string> inputs;
    std::vector<double> k1_list;
    double k = 1.0, k1 = 1.0, k2 = 1.0, k_target = 2.0, polygon_budget = 1e7;
    int blocks = 1;
    std::uint64_t seed = 0;
    std::size_t max_len = 6;
    bool expect_pass = false, with_closure = false;
    GridFlags grid_flags;

    auto* classify_cmd = app.add_subcommand("classify", "Relaxation constants of a space");
    classify_cmd->add_option("--input", input, "Space JSON file")->required();
    classify_cmd->add_flag("--closure", with_closure, "Include the shortest-path closure");

    auto* transform_cmd = app.add_subcommand("transform", "Apply f to every distance");
    transform_cmd->add_option("--input", input, "Space JSON file")->required();
    transform_cmd->add_option("--fn", fn_text, "Function expression")->required();
    transform_cmd->add_option("--output", output, "Write the resulting space here");

    auto* concat_cmd = app.add_subcommand("concat", "Glue two spaces");
    concat_cmd->add_option("--left", left, "First space")->required();
    concat_cmd->add_option("--right", right, "Second space")->required();
    concat_cmd->add_option("--k", k, "Relaxation constant")->required();
    concat_cmd->add_option("--mode", mode_text, "Bridge mode: strong, b or rpi")->capture_default_str();
    concat_cmd->add_option("--output", output, "Write the resulting space here");

    auto* chain_cmd = app.add_subcommand("chain", "Glue a list of spaces left to right");
    chain_cmd->add_option("--input", inputs, "Space JSON files, in order")->required();
    chain_cmd->add_option("--k", k, "Relaxation constant")->required();
    chain_cmd->add_option("--mode", mode_text, "Bridge mode: strong, b or rpi")->capture_default_str();
    chain_cmd->add_option("--output", output, "Write the resulting space here");

    auto* polygon_cmd = app.add_subcommand("polygon-implement", "Cycle space realizing a relaxed polygon");
    polygon_cmd->add_option("--tuple", tuple_text, "JSON array sorted nonincreasing, e.g. [120,20,10]")->required();
    polygon_cmd->add_option("--output", output, "Write the resulting space here");

    auto* generate_cmd = app.add_subcommand("generate", "Seeded strong b-metric space that is not a metric");
    generate_cmd->add_option("--blocks", blocks, "Number of three-point blocks")->capture_default_str();
    generate_cmd->add_option("--k-target", k_target, "Strong relaxation constant (> 1)")->capture_default_str();
    generate_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--output", output, "Write the resulting space here");

    auto* fn_check_cmd = app.add_subcommand("fn-check", "Grid check of a function property");
    fn_check_cmd->add_option("--fn", fn_text, "Function expression")->required();
    fn_check_cmd->add_option("--property", property, "Property name")
        ->required()
        ->check(CLI::IsMember(property_names()));
    fn_check_cmd->add_flag("--expect-pass", expect_pass, "Exit 1 on a counterexample");
    grid_flags.attach(fn_check_cmd);

    auto* scan_cmd = app.add_subcommand("preserve-scan", "Grid scan of axiom preservation");
    scan_cmd->add_option("--fn", fn_text, "Function expression")->required();
    scan_cmd->add_option("--source", source_text, "Source axiom: M, S, B or P")->required();
    scan_cmd->add_option("--k1", k1, "Source relaxation constant")->capture_default_str();
    scan_cmd->add_option("--target", target_text, "Target axiom: M, S, B or P")->required();
    scan_cmd->add_option("--max-len", max_len, "Polygon length cap")->capture_default_str();
    scan_cmd->add_option("--polygon-budget", polygon_budget, "Polygon tuples per scan")->capture_default_str();
    scan_cmd->add_flag("--expect-pass", expect_pass, "Exit 1 when a violation is found");
    grid_flags.attach(scan_cmd);

    auto* gmap_cmd = app.add_subcommand("gmap", "Estimate K1 -> K2 over a list of K1");
    gmap_cmd->add_option("--fn", fn_text, "Function expression")->required();
    gmap_cmd->add_option("--source", source_text, "Source axiom")->required();
    gmap_cmd->add_option("--target", target_text, "Target axiom")->required();
    gmap_cmd->add_option("--k1-list", k1_list, "Ascending K1 values, comma separated")->required()->delimiter(',');
    gmap_cmd->add_option("--max-len", max_len, "Polygon length cap")->capture_default_str();
    gmap_cmd->add_option("--polygon-budget", polygon_budget, "Polygon tuples per scan")->capture_default_str();
    gmap_cmd->add_flag("--expect-pass", expect_pass, "Exit 1 when any scan finds a violation");
    grid_flags.attach(gmap_cmd);

    auto* witness_cmd = app.add_subcommand("witness", "Chain of three-point blocks from triplets");
    witness_cmd->add_option("--triplets", triplets_text, "JSON array of triplets, e.g. [[4,1,1]]")->required();
    witness_cmd->add_option("--source", source_text, "Source axiom")->required();
    witness_cmd->add_option("--k", k, "Source relaxation constant")->capture_default_str();
    witness_cmd->add_option("--output", output, "Write the resulting space here");

    auto* verify_cmd = app.add_subcommand("verify", "Check an axiom on transform(space, f)");
    verify_cmd->add_option("--fn", fn_text, "Function expression")->required();
    verify_cmd->add_option("--input", input, "Space JSON file")->required();
    verify_cmd->add_option("--target", target_text, "Target axiom")->required();
    verify_cmd->add_option("--k2", k2, "Target relaxation constant")->capture_default_str();
    verify_cmd->add_flag("--expect-pass", expect_pass, "Exit 1 when the axiom fails");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    json report = envelope(command, tol, threads);
    ScanOptions options;
    options.threads = threads;
    options.tol = tol;
    options.max_len = max_len;
    options.polygon_budget = polygon_budget;
    int status = 0;

    try {
        if (command == "classify") {
            const auto space = io::read_space_file(input);
            report["points"] = space.size();
            report["profile"] = io::profile_to_json(classify(space, tol));
            if (with_closure) report["closure"] = shortest_path_closure(space).rows();
        } else if (command == "transform") {
            const auto f = parse_function(fn_text);
            const auto space = transform(io::read_space_file(input), f);
            maybe_write(output, space);
            report["function"] = f.canonical();
            report["space"] = io::space_to_json(space);
        } else if (command == "concat") {
            const auto mode = parse_bridge_mode(mode_text);
            const auto space = concatenate(io::read_space_file(left), io::read_space_file(right), k, mode, tol);
            maybe_write(output, space);
            report["mode"] = std::string(to_string(mode));
            report["k"] = k;
            report["space"] = io::space_to_json(space);
            report["profile"] = io::profile_to_json(classify(space, tol));
        } else if (command == "chain") {
            const auto mode = parse_bridge_mode(mode_text);
            std::vector<FiniteSemimetricSpace> parts;
            for (const auto& path : inputs) parts.push_back(io::read_space_file(path));
            const auto space = chain_concatenate(parts, k, mode, tol);
            maybe_write(output, space);
            report["mode"] = std::string(to_string(mode));
            report["k"] = k;
            report["space"] = io::space_to_json(space);
            report["profile"] = io::profile_to_json(classify(space, tol));
        } else if (command == "polygon-implement") {
            const auto entries = io::tuple_from_json(io::parse_json_text(tuple_text));
            const auto space = implement_polygon(entries);
            maybe_write(output, space);
            report["tuple"] = entries;
            if (entries.size() >= 3) report["polygon_constant"] = io::number(min_constant(PolygonTuple(entries), TripletKind::POLY));
            report["space"] = io::space_to_json(space);
            report["profile"] = io::profile_to_json(classify(space, tol));
        } else if (command == "generate") {
            const auto space = generate_strong_space(blocks, k_target, seed);
            maybe_write(output, space);
            report["seed"] = seed;
            report["blocks"] = blocks;
            report["k_target"] = k_target;
            report["space"] = io::space_to_json(space);
            report["profile"] = io::profile_to_json(classify(space, tol));
        } else if (command == "fn-check") {
            const auto f = parse_function(fn_text);
            const auto verdict = check_property(f, property, Grid(grid_flags.config), tol);
            report["function"] = f.canonical();
            report["verdict"] = io::verdict_to_json(verdict);
            if (expect_pass && verdict.outcome == Outcome::Counterexample) status = 1;
        } else if (command == "preserve-scan") {
            const auto f = parse_function(fn_text);
            options.grid = Grid(grid_flags.config);
            const auto result =
                preservation_scan(f, ClassSpec::make(parse_axiom(source_text), k1), parse_axiom(target_text), options);
            report["report"] = io::report_to_json(result);
            if (expect_pass && result.violation) status = 1;
        } else if (command == "gmap") {
            const auto f = parse_function(fn_text);
            options.grid = Grid(grid_flags.config);
            const auto points = estimate_gmap(f, parse_axiom(source_text), parse_axiom(target_text), k1_list, options);
            report["function"] = f.canonical();
            report["source"] = std::string(to_string(parse_axiom(source_text)));
            report["target"] = std::string(to_string(parse_axiom(target_text)));
            report["grid"] = io::grid_to_json(options.grid);
            report["estimate_kind"] = "estimate (lower bound)";
            json rows = json::array();
            for (const auto& p : points) {
                rows.push_back(json{{"k1", p.k1}, {"estimated_k2", io::number(p.k2)}, {"violation", p.violation}});
                if (expect_pass && p.violation) status = 1;
            }
            report["gmap"] = rows;
        } else if (command == "witness") {
            const auto triplets = io::triplets_from_json(io::parse_json_text(triplets_text));
            const auto source = ClassSpec::make(parse_axiom(source_text), k);
            const auto space = build_witness_space(triplets, source, tol);
            maybe_write(output, space);
            report["source"] = io::class_to_json(source);
            report["space"] = io::space_to_json(space);
            report["profile"] = io::profile_to_json(classify(space, tol));
        } else if (command == "verify") {
            const auto f = parse_function(fn_text);
            const auto target = parse_axiom(target_text);
            const auto v = verify_on_space(f, io::read_space_file(input), target, k2, tol);
            report["function"] = f.canonical();
            report["target"] = std::string(to_string(target));
            report["k2"] = k2;
            report["holds"] = v.holds;
            report["profile"] = io::profile_to_json(v.profile);
            if (expect_pass && !v.holds) status = 1;
        }
    } catch (const Error& e) {
        json failure = envelope(command, tol, threads);
        failure["error"] = json{{"kind", e.kind()}, {"message", e.what()}};
        out << failure.dump(2) << '\n';
        return 1;
    }

    out << report.dump(2) << '\n';
    return status;
}

} // namespace metricforge
