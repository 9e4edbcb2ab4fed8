#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "ecx/analysis.hpp"
#include "ecx/eciplus.hpp"
#include "ecx/error.hpp"
#include "ecx/fitness.hpp"
#include "ecx/io.hpp"
#include "ecx/reference_check.hpp"
#include "ecx/synthetic.hpp"
#include "ecx/trade.hpp"

namespace ecx::cli {
namespace fs = std::filesystem;
using io::json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::IoError, "SHA-256 computation failed");
    }
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return ss.str();
}

namespace {

/// Tracks every file read and written by one command so a manifest can be
/// emitted at the end.
class Session {
public:
    Session(std::string command, std::vector<std::string> args)
        : command_(std::move(command)), args_(std::move(args)) {}

    std::string read(const std::string& path) {
        std::string content = io::read_file(path);
        inputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
        return content;
    }

    void write(const std::string& path, const std::string& content) {
        const fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        io::write_file(path, content);
        outputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
    }

    void set_config(json config) { config_ = std::move(config); }

    void write_manifest(const std::string& path) {
        json m{{"tool", "ecx"},
               {"version", kToolVersion},
               {"command", command_},
               {"args", args_},
               {"inputs", inputs_},
               {"config", config_},
               {"outputs", outputs_}};
        const fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        io::write_file(path, m.dump(2) + "\n");
    }

private:
    std::string command_;
    std::vector<std::string> args_;
    json inputs_ = json::array();
    json outputs_ = json::array();
    json config_ = nullptr;
};

std::string default_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("ECX_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    fs::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

Vector standardize_or_nan(const Vector& v) {
    try {
        return standardize(v);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDistribution) throw;
        return Vector(v.size(), std::nan(""));
    }
}

std::vector<FlowRecord> read_records(Session& session, const std::string& path, const std::string& format,
                                     const std::string& year) {
    std::istringstream in(session.read(path));
    if (format == "baci") {
        return io::read_baci_csv(in, year.empty() ? std::nullopt : std::optional<std::string>(year));
    }
    return io::read_flows_csv(in);
}

// Algorithm options shared by `fitness` and `eciplus`.
struct AlgoFlags {
    std::string config_path;
    std::string init;
    std::string norm;
    std::optional<std::size_t> iterations;
    bool rank_stable = false;
    std::optional<std::size_t> window;
    std::optional<std::size_t> check_every;
    std::optional<std::size_t> max_iterations;
    std::optional<double> epsilon_floor;
    std::optional<std::size_t> keep_every;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Key-value config file (flags override it)");
        cmd->add_option("--init", init, "Initial condition: ones | degree");
        cmd->add_option("--norm", norm, "Per-step normalization: arith | geom");
        cmd->add_option("--iterations", iterations, "Fixed number of iterations");
        cmd->add_flag("--rank-stable", rank_stable, "Stop when the country ranking is stable");
        cmd->add_option("--window", window, "Rank-stable window (consecutive unchanged checks)");
        cmd->add_option("--check-every", check_every, "Rank-stable check interval");
        cmd->add_option("--max-iterations", max_iterations, "Iteration budget for --rank-stable");
        cmd->add_option("--epsilon-floor", epsilon_floor, "Floor applied inside logarithms");
        cmd->add_option("--keep-every", keep_every, "Store every k-th iterate in the trace");
    }

    AlgoConfig resolve(Session& session, AlgoConfig base) const {
        if (!config_path.empty()) {
            std::istringstream in(session.read(config_path));
            base = io::parse_algo_config(in, base);
        }
        if (!init.empty()) base.init = io::parse_init(init);
        if (!norm.empty()) base.normalization = io::parse_normalization(norm);
        if (iterations && rank_stable) {
            throw Error(ErrorCode::InvalidConfig, "--iterations and --rank-stable are mutually exclusive");
        }
        if (iterations) base.stop = FixedIterations{*iterations};
        if (rank_stable && !std::holds_alternative<RankStable>(base.stop)) base.stop = RankStable{};
        if (auto* r = std::get_if<RankStable>(&base.stop)) {
            if (window) r->window = *window;
            if (check_every) r->check_every = *check_every;
        }
        if (max_iterations) base.max_iterations = *max_iterations;
        if (epsilon_floor) base.epsilon_floor = *epsilon_floor;
        if (keep_every) base.keep_every = *keep_every;
        base.validate();
        return base;
    }
};

ExportMatrix load_matrix(Session& session, const std::string& path) {
    const std::string text = session.read(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
    }
    return io::export_matrix_from_json(j);
}

json labeled_trace(const IterationTrace& trace, const Labels& countries, const Labels& products) {
    json j = io::to_json(trace);
    j["countries"] = countries;
    j["products"] = products;
    return j;
}

// ---------------------------------------------------------------- commands

struct IngestCmd {
    std::string csv, output, report, format = "flows", year, unit;
    double min_country = 0.0, min_product = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("csv", csv, "Flow CSV (country,product,value) or BACI t,i,j,k,v,q")->required();
        cmd->add_option("-o,--output", output, "Matrix JSON path");
        cmd->add_option("--report", report, "Pruning report path");
        cmd->add_option("--format", format, "flows | baci")->check(CLI::IsMember({"flows", "baci"}));
        cmd->add_option("--year", year, "Keep only BACI rows of this year");
        cmd->add_option("--unit", unit, "Currency unit recorded as metadata");
        cmd->add_option("--min-country-export", min_country, "Drop countries with smaller totals");
        cmd->add_option("--min-product-export", min_product, "Drop products with smaller totals");
    }

    void execute(Session& s, std::ostream& out, const std::string& out_dir) const {
        const std::string matrix_path = output.empty() ? join_path(out_dir, "matrix.json") : output;
        const std::string report_path = report.empty() ? with_suffix(matrix_path, "_prune.json") : report;

        const auto records = read_records(s, csv, format, year);
        const ExportMatrix raw = ingest_flows(records, unit);
        const auto pruned = prune(raw, {min_country, min_product});

        s.write(matrix_path, io::to_json(pruned.matrix).dump() + "\n");
        json rep{{"records", records.size()},
                 {"countries", pruned.matrix.num_countries()},
                 {"products", pruned.matrix.num_products()},
                 {"dropped_countries", pruned.dropped_countries},
                 {"dropped_products", pruned.dropped_products},
                 {"min_country_export", min_country},
                 {"min_product_export", min_product}};
        s.write(report_path, rep.dump(2) + "\n");
        s.write_manifest(matrix_path + ".manifest.json");
        out << rep.dump() << "\n";
    }
};

struct FitnessCmd {
    std::string matrix, out_dir, prefix = "fitness";
    bool binarize_flag = false, extensive = false, binary = false;
    double threshold = 1.0;
    AlgoFlags algo;

    void attach(CLI::App* cmd) {
        cmd->add_option("matrix", matrix, "Matrix JSON from `ecx ingest`")->required();
        auto* b = cmd->add_flag("--binarize", binarize_flag, "Run on the RCA-binarized matrix (default)");
        auto* e = cmd->add_flag("--extensive", extensive, "Run on the raw export values");
        auto* m = cmd->add_flag("--binary", binary, "Input values are already 0/1; use them as M");
        b->excludes(e)->excludes(m);
        e->excludes(m);
        cmd->add_option("--threshold", threshold, "RCA threshold (strict)");
        cmd->add_option("--out-dir", out_dir, "Output directory (default $ECX_OUTPUT_DIR or .)");
        cmd->add_option("--prefix", prefix, "Output file prefix");
        algo.attach(cmd);
    }

    void execute(Session& s, std::ostream& out) const {
        const std::string dir = default_out_dir(out_dir);
        const AlgoConfig config = algo.resolve(s, AlgoConfig{});
        const ExportMatrix x = prune(load_matrix(s, matrix)).matrix;

        std::string mode = "binarize";
        Labels countries = x.countries(), products = x.products(), dropped_c, dropped_p;
        Matrix values;
        if (extensive) {
            mode = "extensive";
            values = x.values();
        } else if (binary) {
            mode = "binary";
            BinaryMatrix m(x.countries(), x.products(), x.values());
            values = m.values();
        } else {
            auto b = binarize(rca(x), threshold);
            countries = b.matrix.countries();
            products = b.matrix.products();
            dropped_c = b.dropped_countries;
            dropped_p = b.dropped_products;
            values = b.matrix.values();
        }

        json cfg = io::to_json(config);
        cfg["mode"] = mode;
        if (mode == "binarize") cfg["threshold"] = threshold;
        s.set_config(cfg);

        const IterationTrace trace = run(values, config);
        const Vector& f = trace.final_countries();
        const Vector& q = trace.final_products();
        s.write(join_path(dir, prefix + "_countries.csv"),
                io::score_table_csv({"country", "fitness", "log_fitness", "z_fitness"}, countries,
                                    {f, log_scores(f, config.epsilon_floor), standardize_or_nan(f)}));
        s.write(join_path(dir, prefix + "_products.csv"),
                io::score_table_csv({"product", "complexity", "log_complexity", "z_complexity"}, products,
                                    {q, log_scores(q, config.epsilon_floor), standardize_or_nan(q)}));
        json tj = labeled_trace(trace, countries, products);
        tj["dropped_countries"] = dropped_c;
        tj["dropped_products"] = dropped_p;
        s.write(join_path(dir, prefix + "_trace.json"), tj.dump() + "\n");
        s.write_manifest(join_path(dir, prefix + "_manifest.json"));
        out << json{{"iterations", trace.iterations}, {"converged", trace.converged},
                    {"countries", countries.size()}, {"products", products.size()}}
                   .dump()
            << "\n";
    }
};

struct EciPlusCmd {
    std::string matrix, out_dir, prefix = "eciplus";
    double unit_scale = 1.0;
    AlgoFlags algo;

    void attach(CLI::App* cmd) {
        cmd->add_option("matrix", matrix, "Matrix JSON from `ecx ingest`")->required();
        cmd->add_option("--unit-scale", unit_scale, "Multiply every flow by s before running")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out-dir", out_dir, "Output directory (default $ECX_OUTPUT_DIR or .)");
        cmd->add_option("--prefix", prefix, "Output file prefix");
        algo.attach(cmd);
    }

    void execute(Session& s, std::ostream& out) const {
        const std::string dir = default_out_dir(out_dir);
        const AlgoConfig config = algo.resolve(s, eciplus_default_config());
        ExportMatrix x = prune(load_matrix(s, matrix)).matrix;
        if (unit_scale != 1.0) x = x.scaled(unit_scale);

        json cfg = io::to_json(config);
        cfg["unit_scale"] = unit_scale;
        s.set_config(cfg);

        const EciPlusResult r = compute_eci_plus(x, config);
        s.write(join_path(dir, prefix + "_countries.csv"),
                io::score_table_csv({"country", "xc_inf", "eci_plus"}, r.countries, {r.xc_inf, r.eci_plus}));
        s.write(join_path(dir, prefix + "_products.csv"),
                io::score_table_csv({"product", "xp_raw_total", "xp_inf", "pci_plus"}, r.products,
                                    {r.product_totals, r.xp_inf, r.pci_plus}));
        json result{{"countries", r.countries}, {"products", r.products},   {"xc_inf", r.xc_inf},
                    {"eci_plus", r.eci_plus},   {"xp_raw_total", r.product_totals},
                    {"xp_inf", r.xp_inf},       {"pci_plus", r.pci_plus},   {"unit_scale", unit_scale},
                    {"unit", x.unit()}};
        s.write(join_path(dir, prefix + "_result.json"), result.dump() + "\n");
        s.write(join_path(dir, prefix + "_trace.json"), labeled_trace(r.trace, r.countries, r.products).dump() + "\n");
        s.write_manifest(join_path(dir, prefix + "_manifest.json"));
        out << json{{"iterations", r.trace.iterations}, {"converged", r.trace.converged}}.dump() << "\n";
    }
};

struct CompareCmd {
    std::string a, b, column_a, column_b, scatter, output;

    void attach(CLI::App* cmd) {
        cmd->add_option("scores_a", a, "First score CSV")->required();
        cmd->add_option("scores_b", b, "Second score CSV")->required();
        cmd->add_option("--column-a", column_a, "Column of the first file (default: second column)");
        cmd->add_option("--column-b", column_b, "Column of the second file (default: second column)");
        cmd->add_option("--scatter", scatter, "Write a label,x,y scatter table");
        cmd->add_option("-o,--output", output, "Report JSON path");
    }

    void execute(Session& s, std::ostream& out, const std::string& out_dir) const {
        std::istringstream ina(s.read(a)), inb(s.read(b));
        const io::ScoreColumn ca = io::read_score_column(ina, column_a);
        const io::ScoreColumn cb = io::read_score_column(inb, column_b);

        std::map<std::string, double> by_label;
        for (std::size_t i = 0; i < cb.labels.size(); ++i) by_label[cb.labels[i]] = cb.values[i];
        const std::set<std::string> la(ca.labels.begin(), ca.labels.end());
        const std::set<std::string> lb(cb.labels.begin(), cb.labels.end());
        if (la != lb || la.size() != ca.labels.size() || lb.size() != cb.labels.size()) {
            std::vector<std::string> diff;
            std::set_symmetric_difference(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(diff));
            std::string msg = "label sets differ; symmetric difference:";
            for (const auto& d : diff) msg += " " + d;
            if (diff.empty()) msg = "duplicate labels in a score file";
            throw Error(ErrorCode::LabelMismatch, msg);
        }
        Vector aligned;
        for (const auto& l : ca.labels) aligned.push_back(by_label.at(l));

        const RankReport report = rank_correlations(ca.values, aligned, ca.labels);
        const std::string report_path = output.empty() ? join_path(out_dir, "compare_report.json") : output;
        s.write(report_path, io::to_json(report).dump(2) + "\n");
        if (!scatter.empty()) s.write(scatter, io::scatter_csv(scatter_table(ca.values, aligned, ca.labels)));
        s.write_manifest(report_path + ".manifest.json");
        out << json{{"spearman", report.spearman},
                    {"pearson", report.pearson ? json(*report.pearson) : json(nullptr)},
                    {"discordant_pairs", report.discordant_pairs}}
                   .dump()
            << "\n";
    }
};

struct GenerateCmd {
    std::string kind = "nested", output;
    std::uint64_t seed = kCanonicalSeed;
    std::size_t countries = 10, products = 20;
    double flip = 0.15;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kind", kind, "nested | lognormal")->check(CLI::IsMember({"nested", "lognormal"}));
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--countries", countries, "Number of countries");
        cmd->add_option("--products", products, "Number of products");
        cmd->add_option("--flip", flip, "Bit-flip probability for --kind nested");
        cmd->add_option("-o,--output", output, "Flow CSV path");
    }

    void execute(Session& s, std::ostream& out, const std::string& out_dir) const {
        const std::string path = output.empty() ? join_path(out_dir, kind + ".csv") : output;
        Labels cl, pl;
        Matrix v;
        if (kind == "nested") {
            BinaryMatrix m = nested_noise_matrix(countries, products, flip, seed);
            cl = m.countries();
            pl = m.products();
            v = m.values();
        } else {
            ExportMatrix m = log_normal_matrix(countries, products, seed);
            cl = m.countries();
            pl = m.products();
            v = m.values();
        }
        std::string csv = "country,product,value\n";
        std::size_t rows = 0;
        for (std::size_t c = 0; c < v.rows(); ++c)
            for (std::size_t p = 0; p < v.cols(); ++p)
                if (v(c, p) != 0.0) {
                    csv += io::csv_field(cl[c]) + "," + io::csv_field(pl[p]) + "," + io::format_double(v(c, p)) + "\n";
                    ++rows;
                }
        s.set_config({{"kind", kind}, {"seed", seed}, {"countries", countries}, {"products", products}, {"flip", flip}});
        s.write(path, csv);
        s.write_manifest(path + ".manifest.json");
        out << json{{"rows", rows}, {"output", path}}.dump() << "\n";
    }
};

struct BaciCheckCmd {
    std::string csv, format = "baci", year, output;
    std::size_t iterations = 200;
    bool strict = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("csv", csv, "Trade data CSV")->required();
        cmd->add_option("--format", format, "baci | flows")->check(CLI::IsMember({"flows", "baci"}));
        cmd->add_option("--year", year, "Keep only rows of this year (BACI)");
        cmd->add_option("--iterations", iterations, "Fitness/ECI+ iterations");
        cmd->add_option("-o,--output", output, "Report JSON path (default: stdout only)");
        cmd->add_flag("--strict", strict, "Exit with code 3 if any published value is not matched");
    }

    int execute(Session& s, std::ostream& out) const {
        const ExportMatrix x = ingest_flows(read_records(s, csv, format, year));
        const ReferenceCheck r = reference_check(x, iterations);
        json j{{"countries", r.countries},
               {"products", r.products},
               {"top5", r.top5},
               {"expected_top5", r.expected_top5},
               {"top5_order_matches", r.top5_order_matches},
               {"top5_set_matches", r.top5_set_matches},
               {"greece_rank", r.greece_rank ? json(*r.greece_rank) : json(nullptr)},
               {"expected_greece_rank", r.expected_greece_rank},
               {"greece_matches", r.greece_matches},
               {"offset_correlation", r.offset_correlation},
               {"expected_offset_correlation", r.expected_offset_correlation},
               {"offset_tolerance", r.offset_tolerance},
               {"offset_matches", r.offset_matches},
               {"all_match", r.all_match()}};
        if (!output.empty()) {
            s.write(output, j.dump(2) + "\n");
            s.write_manifest(output + ".manifest.json");
        }
        out << j.dump(2) << "\n";
        return strict && !r.all_match() ? 3 : 0;
    }
};

int rerun_manifest(const std::string& manifest_path, std::ostream& out, std::ostream& err);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Economic complexity metrics: Fitness-Complexity and ECI+/PCI+", "ecx"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    IngestCmd ingest;
    FitnessCmd fitness;
    EciPlusCmd eciplus;
    CompareCmd compare;
    GenerateCmd generate;
    BaciCheckCmd baci;
    std::string manifest;
    std::string out_dir_flag;

    auto* c_ingest = app.add_subcommand("ingest", "Build a pruned export matrix from flow records");
    ingest.attach(c_ingest);
    c_ingest->add_option("--out-dir", out_dir_flag, "Output directory when -o is not given");
    auto* c_fitness = app.add_subcommand("fitness", "Run the Fitness-Complexity iteration");
    fitness.attach(c_fitness);
    auto* c_eci = app.add_subcommand("eciplus", "Compute ECI+ and PCI+");
    eciplus.attach(c_eci);
    auto* c_compare = app.add_subcommand("compare", "Rank-correlate two score files");
    compare.attach(c_compare);
    c_compare->add_option("--out-dir", out_dir_flag, "Output directory when -o is not given");
    auto* c_generate = app.add_subcommand("generate", "Write a seeded synthetic flow CSV");
    generate.attach(c_generate);
    c_generate->add_option("--out-dir", out_dir_flag, "Output directory when -o is not given");
    auto* c_baci = app.add_subcommand("baci-check", "Compare a real dataset with published Fitness facts");
    baci.attach(c_baci);
    auto* c_rerun = app.add_subcommand("rerun", "Re-execute a manifest and verify identical outputs");
    c_rerun->add_option("manifest", manifest, "Manifest JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    const std::string dir = default_out_dir(out_dir_flag);
    if (c_rerun->parsed()) return rerun_manifest(manifest, out, err);

    const std::string command = app.get_subcommands().front()->get_name();
    Session session(command, args);
    if (c_ingest->parsed()) ingest.execute(session, out, dir);
    else if (c_fitness->parsed()) fitness.execute(session, out);
    else if (c_eci->parsed()) eciplus.execute(session, out);
    else if (c_compare->parsed()) compare.execute(session, out, dir);
    else if (c_generate->parsed()) generate.execute(session, out, dir);
    else if (c_baci->parsed()) return baci.execute(session, out);
    return 0;
}

int rerun_manifest(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
    json m;
    try {
        m = json::parse(io::read_file(manifest_path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, "manifest: " + std::string(e.what()));
    }
    for (const auto& input : m.at("inputs")) {
        const std::string path = input.at("path");
        if (sha256_hex(io::read_file(path)) != input.at("sha256").get<std::string>()) {
            throw Error(ErrorCode::NotReproducible, "input '" + path + "' changed since the manifest was written");
        }
    }

    std::ostringstream sink;
    const int code = dispatch(m.at("args").get<std::vector<std::string>>(), sink, err);
    if (code != 0) return code;

    json checked = json::array();
    for (const auto& output : m.at("outputs")) {
        const std::string path = output.at("path");
        const std::string hash = sha256_hex(io::read_file(path));
        if (hash != output.at("sha256").get<std::string>()) {
            throw Error(ErrorCode::NotReproducible, "output '" + path + "' differs from the manifest");
        }
        checked.push_back(path);
    }
    out << json{{"reproduced", true}, {"outputs", checked}}.dump() << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const Error& e) {
        err << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << json{{"error", "IoError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}

} // namespace ecx::cli
