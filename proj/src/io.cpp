#include "ecx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "ecx/error.hpp"

namespace ecx::io {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Strips a UTF-8 byte order mark from the first line.
std::string_view strip_bom(std::string_view s) {
    if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
        static_cast<unsigned char>(s[1]) == 0xBB && static_cast<unsigned char>(s[2]) == 0xBF) {
        s.remove_prefix(3);
    }
    return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> header_fields(std::string_view line) {
    auto fields = split_csv_line(strip_bom(line));
    for (auto& f : fields) f = std::string(trim(f));
    return fields;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

double cell_value(std::string_view text, std::size_t line) {
    try {
        return parse_double(text);
    } catch (const Error&) {
        parse_fail(line, "cannot parse value '" + std::string(text) + "'");
    }
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<FlowRecord> read_flows_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "empty CSV input");
    const std::vector<std::string> expected{"country", "product", "value"};
    const auto header = header_fields(line);
    if (header != expected) {
        parse_fail(1, "expected header 'country,product,value', found '" + join(header) + "'");
    }

    std::vector<FlowRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            parse_fail(lineno, "expected 3 fields, found " + std::to_string(fields.size()));
        }
        FlowRecord rec{std::string(trim(fields[0])), std::string(trim(fields[1])), 0.0};
        if (rec.country.empty() || rec.product.empty()) parse_fail(lineno, "empty identifier");
        rec.value = cell_value(fields[2], lineno);
        if (!std::isfinite(rec.value)) {
            throw Error(ErrorCode::NonFiniteValue, "line " + std::to_string(lineno) + ": non-finite value");
        }
        if (rec.value < 0.0) {
            throw Error(ErrorCode::NegativeValue, "line " + std::to_string(lineno) + ": negative value");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<FlowRecord> read_flows_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_flows_csv(in);
}

std::vector<FlowRecord> read_baci_csv(std::istream& in, std::optional<std::string> year) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "empty CSV input");
    const auto header = header_fields(line);
    auto col = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        parse_fail(1, "BACI header must contain t,i,j,k,v; missing '" + name + "'");
    };
    const std::size_t ct = col("t"), ci = col("i"), ck = col("k"), cv = col("v");

    std::vector<FlowRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            parse_fail(lineno, "expected " + std::to_string(header.size()) + " fields");
        }
        if (year && std::string(trim(fields[ct])) != *year) continue;
        FlowRecord rec{std::string(trim(fields[ci])), std::string(trim(fields[ck])),
                       cell_value(fields[cv], lineno)};
        records.push_back(std::move(rec));
    }
    return records;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

json to_json(const ExportMatrix& m) {
    json triplets = json::array();
    const Matrix& v = m.values();
    for (std::size_t c = 0; c < v.rows(); ++c)
        for (std::size_t p = 0; p < v.cols(); ++p)
            if (v(c, p) != 0.0) triplets.push_back(json::array({c, p, v(c, p)}));
    json j{{"countries", m.countries()}, {"products", m.products()}, {"triplets", std::move(triplets)}};
    if (!m.unit().empty()) j["unit"] = m.unit();
    return j;
}

ExportMatrix export_matrix_from_json(const json& j) {
    try {
        Labels countries = j.at("countries").get<Labels>();
        Labels products = j.at("products").get<Labels>();
        Matrix values(countries.size(), products.size());
        for (const auto& t : j.at("triplets")) {
            const auto c = t.at(0).get<std::size_t>();
            const auto p = t.at(1).get<std::size_t>();
            if (c >= countries.size() || p >= products.size()) {
                throw Error(ErrorCode::ParseError, "triplet index out of range");
            }
            values(c, p) += t.at(2).get<double>();
        }
        return ExportMatrix(std::move(countries), std::move(products), std::move(values),
                            j.value("unit", std::string{}));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
    }
}

json to_json(const IterationTrace& t, std::size_t keep_every) {
    if (keep_every < 1) keep_every = 1;
    json kept = json::array(), f = json::array(), q = json::array(), norms = json::array();
    for (std::size_t i = 0; i < t.kept.size(); ++i) {
        const bool last = i + 1 == t.kept.size();
        if (t.kept[i] % keep_every != 0 && !last) continue;
        kept.push_back(t.kept[i]);
        f.push_back(t.countries[i]);
        q.push_back(t.products[i]);
        norms.push_back(json::array({t.normalizers[i].country, t.normalizers[i].product}));
    }
    return {{"iterations", t.iterations}, {"kept_iterations", std::move(kept)},
            {"F", std::move(f)},          {"Q", std::move(q)},
            {"normalizers", std::move(norms)}, {"converged", t.converged}};
}

json to_json(const RankReport& r) {
    json j{{"labels", r.labels},
           {"scores_a", r.scores_a},
           {"scores_b", r.scores_b},
           {"ranks_a", r.ranks_a},
           {"ranks_b", r.ranks_b},
           {"spearman", r.spearman},
           {"max_rank_displacement", r.max_rank_displacement},
           {"discordant_pairs", r.discordant_pairs}};
    j["pearson"] = r.pearson ? json(*r.pearson) : json(nullptr);
    return j;
}

json to_json(const EquivalenceReport& r) {
    return {{"iterations", r.iterations},
            {"country_deviation", r.country_deviation},
            {"product_deviation", r.product_deviation},
            {"max_deviation", r.max_deviation},
            {"spearman", r.spearman},
            {"converged_spearman", r.converged_spearman}};
}

std::string scatter_csv(const ScatterTable& t) {
    std::string out = "label,x,y\n";
    for (const auto& row : t) {
        out += csv_field(row.label) + "," + format_double(row.x) + "," + format_double(row.y) + "\n";
    }
    return out;
}

ScatterTable parse_scatter_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || header_fields(line) != std::vector<std::string>{"label", "x", "y"}) {
        parse_fail(1, "expected header 'label,x,y'");
    }
    ScatterTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) parse_fail(lineno, "expected 3 fields");
        t.push_back({f[0], cell_value(f[1], lineno), cell_value(f[2], lineno)});
    }
    return t;
}

ScoreColumn read_score_column(std::istream& in, const std::string& column) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "empty score file");
    const auto header = header_fields(line);
    if (header.size() < 2) parse_fail(1, "score file needs a label column and a value column");
    std::size_t idx = 1;
    if (!column.empty()) {
        idx = header.size();
        for (std::size_t i = 1; i < header.size(); ++i)
            if (header[i] == column) idx = i;
        if (idx == header.size()) parse_fail(1, "no column named '" + column + "'");
    }

    ScoreColumn out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size()) parse_fail(lineno, "field count differs from header");
        out.labels.push_back(f[0]);
        out.values.push_back(cell_value(f[idx], lineno));
    }
    return out;
}

std::string score_table_csv(const std::vector<std::string>& header, const Labels& labels,
                            const std::vector<Vector>& columns) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_field(header[i]);
    out += "\n";
    for (std::size_t r = 0; r < labels.size(); ++r) {
        out += csv_field(labels[r]);
        for (const auto& col : columns) out += "," + format_double(col.at(r));
        out += "\n";
    }
    return out;
}

Init parse_init(std::string_view s) {
    if (s == "ones") return Init::Ones;
    if (s == "degree") return Init::Degree;
    throw Error(ErrorCode::InvalidConfig, "init must be 'ones' or 'degree', got '" + std::string(s) + "'");
}

Normalization parse_normalization(std::string_view s) {
    if (s == "arith" || s == "arithmetic" || s == "arithmetic-mean") return Normalization::ArithmeticMean;
    if (s == "geom" || s == "geometric" || s == "geometric-mean") return Normalization::GeometricMean;
    throw Error(ErrorCode::InvalidConfig, "normalization must be 'arith' or 'geom', got '" + std::string(s) + "'");
}

AlgoConfig parse_algo_config(std::istream& in, AlgoConfig base) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t iterations = 0, window = 0, check_every = 0;
    std::optional<std::string> stop;
    if (const auto* f = std::get_if<FixedIterations>(&base.stop)) iterations = f->count;
    if (const auto* r = std::get_if<RankStable>(&base.stop)) {
        window = r->window;
        check_every = r->check_every;
    }

    auto count = [&](std::string_view v) {
        const double d = parse_double(v);
        if (d < 0 || d != std::floor(d)) parse_fail(lineno, "expected a non-negative integer");
        return static_cast<std::size_t>(d);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) parse_fail(lineno, "expected 'key = value'");
        const std::string key(trim(body.substr(0, eq)));
        const std::string_view value = trim(body.substr(eq + 1));
        try {
            if (key == "init") base.init = parse_init(value);
            else if (key == "normalization" || key == "norm") base.normalization = parse_normalization(value);
            else if (key == "stop") stop = std::string(value);
            else if (key == "iterations") iterations = count(value);
            else if (key == "window") window = count(value);
            else if (key == "check_every") check_every = count(value);
            else if (key == "max_iterations") base.max_iterations = count(value);
            else if (key == "epsilon_floor") base.epsilon_floor = parse_double(value);
            else if (key == "keep_every") base.keep_every = count(value);
            else parse_fail(lineno, "unknown key '" + key + "'");
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError && std::string(e.what()).rfind("line ", 0) == 0) throw;
            parse_fail(lineno, e.what());
        }
    }

    const bool rank_stable = stop ? (*stop == "rank-stable")
                                  : std::holds_alternative<RankStable>(base.stop);
    if (stop && *stop != "rank-stable" && *stop != "fixed") {
        throw Error(ErrorCode::InvalidConfig, "stop must be 'fixed' or 'rank-stable'");
    }
    if (rank_stable) {
        RankStable r;
        if (window) r.window = window;
        if (check_every) r.check_every = check_every;
        base.stop = r;
    } else {
        base.stop = FixedIterations{iterations ? iterations : FixedIterations{}.count};
    }
    base.validate();
    return base;
}

json to_json(const AlgoConfig& c) {
    json j{{"init", c.init == Init::Ones ? "ones" : "degree"},
           {"normalization", c.normalization == Normalization::ArithmeticMean ? "arithmetic" : "geometric"},
           {"max_iterations", c.max_iterations},
           {"epsilon_floor", c.epsilon_floor},
           {"keep_every", c.keep_every}};
    if (const auto* f = std::get_if<FixedIterations>(&c.stop)) {
        j["stop"] = "fixed";
        j["iterations"] = f->count;
    } else {
        const auto& r = std::get<RankStable>(c.stop);
        j["stop"] = "rank-stable";
        j["window"] = r.window;
        j["check_every"] = r.check_every;
    }
    return j;
}

AlgoConfig algo_config_from_json(const json& j) {
    try {
        AlgoConfig c;
        c.init = parse_init(j.at("init").get<std::string>());
        c.normalization = parse_normalization(j.at("normalization").get<std::string>());
        c.max_iterations = j.at("max_iterations").get<std::size_t>();
        c.epsilon_floor = j.at("epsilon_floor").get<double>();
        c.keep_every = j.at("keep_every").get<std::size_t>();
        if (j.at("stop") == "fixed") c.stop = FixedIterations{j.at("iterations").get<std::size_t>()};
        else c.stop = RankStable{j.at("window").get<std::size_t>(), j.at("check_every").get<std::size_t>()};
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("config JSON: ") + e.what());
    }
}

} // namespace ecx::io
