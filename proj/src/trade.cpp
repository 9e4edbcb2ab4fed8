#include "ecx/trade.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "ecx/error.hpp"

namespace ecx {
namespace {

void check_unique(const Labels& labels, const char* what) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw Error(ErrorCode::InvalidConfig,
                        std::string("duplicate ") + what + " identifier '" + l + "'");
        }
    }
}

void check_nonnegative_finite(const Matrix& m) {
    for (double v : m.data()) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "non-finite matrix value");
        if (v < 0.0) throw Error(ErrorCode::NegativeValue, "negative matrix value");
    }
}

Labels default_labels(char prefix, std::size_t n) {
    Labels out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

struct Selection {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    Labels dropped_rows;
    Labels dropped_cols;
};

// Iterates row/column removal to a fixed point. Dropped labels are reported
// in their original order.
Selection prune_selection(const LabeledTable& t, double min_row, double min_col) {
    const Matrix& v = t.values();
    std::vector<bool> row_alive(v.rows(), true), col_alive(v.cols(), true);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r = 0; r < v.rows(); ++r) {
            if (!row_alive[r]) continue;
            double s = 0.0;
            for (std::size_t c = 0; c < v.cols(); ++c)
                if (col_alive[c]) s += v(r, c);
            if (s <= 0.0 || s < min_row) {
                row_alive[r] = false;
                changed = true;
            }
        }
        for (std::size_t c = 0; c < v.cols(); ++c) {
            if (!col_alive[c]) continue;
            double s = 0.0;
            for (std::size_t r = 0; r < v.rows(); ++r)
                if (row_alive[r]) s += v(r, c);
            if (s <= 0.0 || s < min_col) {
                col_alive[c] = false;
                changed = true;
            }
        }
    }

    Selection sel;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        if (row_alive[r]) sel.rows.push_back(r);
        else sel.dropped_rows.push_back(t.countries()[r]);
    }
    for (std::size_t c = 0; c < v.cols(); ++c) {
        if (col_alive[c]) sel.cols.push_back(c);
        else sel.dropped_cols.push_back(t.products()[c]);
    }
    if (sel.rows.empty() || sel.cols.empty()) {
        throw Error(ErrorCode::AllPruned, "pruning removed every country or product");
    }
    return sel;
}

Labels pick(const Labels& labels, const std::vector<std::size_t>& idx) {
    Labels out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(labels[i]);
    return out;
}

} // namespace

LabeledTable::LabeledTable(Labels countries, Labels products, Matrix values)
    : countries_(std::move(countries)), products_(std::move(products)), values_(std::move(values)) {
    if (values_.rows() != countries_.size() || values_.cols() != products_.size()) {
        throw Error(ErrorCode::LengthMismatch, "label counts do not match matrix shape");
    }
    check_unique(countries_, "country");
    check_unique(products_, "product");
}

bool LabeledTable::is_pruned() const {
    if (values_.empty()) return false;
    for (double s : values_.row_sums())
        if (!(s > 0.0)) return false;
    for (double s : values_.col_sums())
        if (!(s > 0.0)) return false;
    return true;
}

ExportMatrix::ExportMatrix(Labels countries, Labels products, Matrix values, std::string unit)
    : LabeledTable(std::move(countries), std::move(products), std::move(values)),
      unit_(std::move(unit)) {
    check_nonnegative_finite(values_);
}

ExportMatrix ExportMatrix::scaled(double factor) const {
    return ExportMatrix(countries_, products_, values_.scaled(factor), unit_);
}

bool ExportMatrix::operator==(const ExportMatrix& o) const {
    return countries_ == o.countries_ && products_ == o.products_ && values_ == o.values_ &&
           unit_ == o.unit_;
}

RcaMatrix::RcaMatrix(Labels countries, Labels products, Matrix values)
    : LabeledTable(std::move(countries), std::move(products), std::move(values)) {
    check_nonnegative_finite(values_);
}

BinaryMatrix::BinaryMatrix(Labels countries, Labels products, Matrix values)
    : LabeledTable(std::move(countries), std::move(products), std::move(values)) {
    for (double v : values_.data()) {
        if (v != 0.0 && v != 1.0) {
            throw Error(ErrorCode::InvalidConfig, "binary matrix entries must be 0 or 1");
        }
    }
}

BinaryMatrix::BinaryMatrix(Matrix values)
    : BinaryMatrix(default_labels('c', values.rows()), default_labels('p', values.cols()),
                   std::move(values)) {}

bool BinaryMatrix::operator==(const BinaryMatrix& o) const {
    return countries_ == o.countries_ && products_ == o.products_ && values_ == o.values_;
}

ExportMatrix ingest_flows(const std::vector<FlowRecord>& records, std::string unit) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no flow records");

    std::map<std::pair<std::string, std::string>, double> cells;
    std::set<std::string> countries, products;
    for (const auto& rec : records) {
        if (!std::isfinite(rec.value)) {
            throw Error(ErrorCode::NonFiniteValue,
                        "non-finite value for (" + rec.country + ", " + rec.product + ")");
        }
        if (rec.value < 0.0) {
            throw Error(ErrorCode::NegativeValue,
                        "negative value for (" + rec.country + ", " + rec.product + ")");
        }
        cells[{rec.country, rec.product}] += rec.value;
        countries.insert(rec.country);
        products.insert(rec.product);
    }

    Labels cl(countries.begin(), countries.end());
    Labels pl(products.begin(), products.end());
    std::map<std::string, std::size_t> ci, pi;
    for (std::size_t i = 0; i < cl.size(); ++i) ci[cl[i]] = i;
    for (std::size_t i = 0; i < pl.size(); ++i) pi[pl[i]] = i;

    Matrix values(cl.size(), pl.size());
    for (const auto& [key, v] : cells) values(ci[key.first], pi[key.second]) = v;
    return ExportMatrix(std::move(cl), std::move(pl), std::move(values), std::move(unit));
}

Pruned<ExportMatrix> prune(const ExportMatrix& m, const PruneFilters& filters) {
    auto sel = prune_selection(m, filters.min_country_export, filters.min_product_export);
    ExportMatrix out(pick(m.countries(), sel.rows), pick(m.products(), sel.cols),
                     m.values().select(sel.rows, sel.cols), m.unit());
    return {std::move(out), std::move(sel.dropped_rows), std::move(sel.dropped_cols)};
}

RcaMatrix rca(const ExportMatrix& m) {
    const Matrix& x = m.values();
    const Vector xc = x.row_sums();
    const Vector xp = x.col_sums();
    const double total = x.total();
    for (double s : xc)
        if (!(s > 0.0)) throw Error(ErrorCode::NotPruned, "zero country total in RCA");
    for (double s : xp)
        if (!(s > 0.0)) throw Error(ErrorCode::NotPruned, "zero product total in RCA");

    Matrix out(x.rows(), x.cols());
    for (std::size_t c = 0; c < x.rows(); ++c) {
        for (std::size_t p = 0; p < x.cols(); ++p) {
            out(c, p) = (x(c, p) / xc[c]) / (xp[p] / total);
        }
    }
    return RcaMatrix(m.countries(), m.products(), std::move(out));
}

Pruned<BinaryMatrix> binarize(const RcaMatrix& r, double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw Error(ErrorCode::InvalidConfig, "binarization threshold must be positive");
    }
    const Matrix& v = r.values();
    Matrix bits(v.rows(), v.cols());
    for (std::size_t c = 0; c < v.rows(); ++c)
        for (std::size_t p = 0; p < v.cols(); ++p) bits(c, p) = v(c, p) > threshold ? 1.0 : 0.0;

    BinaryMatrix full(r.countries(), r.products(), std::move(bits));
    auto sel = prune_selection(full, 0.0, 0.0);
    BinaryMatrix out(pick(full.countries(), sel.rows), pick(full.products(), sel.cols),
                     full.values().select(sel.rows, sel.cols));
    return {std::move(out), std::move(sel.dropped_rows), std::move(sel.dropped_cols)};
}

} // namespace ecx
