#pragma once

#include <string>
#include <vector>

#include "ecx/matrix.hpp"

namespace ecx {

using Labels = std::vector<std::string>;

/// Country x product table with label indices. Base for the three matrix
/// kinds below; each kind validates its own value domain on construction.
class LabeledTable {
public:
    const Labels& countries() const noexcept { return countries_; }
    const Labels& products() const noexcept { return products_; }
    const Matrix& values() const noexcept { return values_; }
    std::size_t num_countries() const noexcept { return countries_.size(); }
    std::size_t num_products() const noexcept { return products_.size(); }

    /// True when no row and no column sums to zero.
    bool is_pruned() const;

protected:
    LabeledTable(Labels countries, Labels products, Matrix values);

    Labels countries_;
    Labels products_;
    Matrix values_;
};

/// Extensive export flows X_cp in currency units. The unit string is opaque
/// metadata and is never interpreted.
class ExportMatrix : public LabeledTable {
public:
    ExportMatrix(Labels countries, Labels products, Matrix values, std::string unit = {});

    const std::string& unit() const noexcept { return unit_; }

    Vector country_totals() const { return values_.row_sums(); }
    Vector product_totals() const { return values_.col_sums(); }
    double world_total() const { return values_.total(); }

    ExportMatrix scaled(double factor) const;

    bool operator==(const ExportMatrix& other) const;

private:
    std::string unit_;
};

class RcaMatrix : public LabeledTable {
public:
    RcaMatrix(Labels countries, Labels products, Matrix values);
};

/// 0/1 specialization matrix M_cp.
class BinaryMatrix : public LabeledTable {
public:
    BinaryMatrix(Labels countries, Labels products, Matrix values);

    /// Unlabeled convenience constructor; labels become c0.., p0..
    explicit BinaryMatrix(Matrix values);

    bool operator==(const BinaryMatrix& other) const;
};

struct FlowRecord {
    std::string country;
    std::string product;
    double value = 0.0;
};

struct PruneFilters {
    double min_country_export = 0.0;
    double min_product_export = 0.0;
};

template <class M>
struct Pruned {
    M matrix;
    Labels dropped_countries;
    Labels dropped_products;
};

/// Builds X_cp from flow records. Duplicate pairs are summed; labels sorted.
ExportMatrix ingest_flows(const std::vector<FlowRecord>& records, std::string unit = {});

/// Repeatedly drops rows/columns whose totals are zero (or below the filter
/// minimums) until none remain. Idempotent.
Pruned<ExportMatrix> prune(const ExportMatrix& m, const PruneFilters& filters = {});

RcaMatrix rca(const ExportMatrix& m);

/// M_cp = 1 iff RCA_cp > threshold (strict), then re-pruned.
Pruned<BinaryMatrix> binarize(const RcaMatrix& r, double threshold = 1.0);

} // namespace ecx
