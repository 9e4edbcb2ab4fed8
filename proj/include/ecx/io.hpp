#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecx/analysis.hpp"
#include "ecx/eciplus.hpp"
#include "ecx/fitness.hpp"
#include "ecx/trade.hpp"

namespace ecx::io {

using nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Splits one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_field(std::string_view s);

/// Reads `country,product,value` records. Errors carry the 1-based line number.
std::vector<FlowRecord> read_flows_csv(std::istream& in);
std::vector<FlowRecord> read_flows_csv_file(const std::string& path);

/// Reads BACI-style `t,i,j,k,v,q` rows (year, exporter, importer, product,
/// value, quantity) as exporter/product flows. Importers are summed away by
/// ingest_flows.
std::vector<FlowRecord> read_baci_csv(std::istream& in, std::optional<std::string> year = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

json to_json(const ExportMatrix& m);
ExportMatrix export_matrix_from_json(const json& j);

/// `keep_every` thins the stored iterates further at export time.
json to_json(const IterationTrace& t, std::size_t keep_every = 1);
json to_json(const RankReport& r);
json to_json(const EquivalenceReport& r);

std::string scatter_csv(const ScatterTable& t);
ScatterTable parse_scatter_csv(std::istream& in);

struct ScoreColumn {
    Labels labels;
    Vector values;
};

/// Reads a labeled score table (first column labels) and extracts one numeric
/// column by header name, or the second column when `column` is empty.
ScoreColumn read_score_column(std::istream& in, const std::string& column = {});

/// Writes `header` then one row per label. Non-finite values print as "nan".
std::string score_table_csv(const std::vector<std::string>& header, const Labels& labels,
                            const std::vector<Vector>& columns);

/// Key-value config text (`key = value`, `#` comments) mirroring AlgoConfig:
/// init, normalization, stop, iterations, window, check_every,
/// max_iterations, epsilon_floor, keep_every. Unknown keys are errors.
AlgoConfig parse_algo_config(std::istream& in, AlgoConfig base = {});

json to_json(const AlgoConfig& c);
AlgoConfig algo_config_from_json(const json& j);

Init parse_init(std::string_view s);
Normalization parse_normalization(std::string_view s);

} // namespace ecx::io
