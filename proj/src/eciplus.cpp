#include "ecx/eciplus.hpp"

#include <cmath>

#include "ecx/error.hpp"
#include "iteration_driver.hpp"

namespace ecx {
namespace {

void require_positive(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw Error(ErrorCode::ZeroFitness, std::string(what) + " must be strictly positive and finite");
        }
    }
}

// sum_c X_cp / w_c for every product.
Vector product_half_step(const Matrix& x, const Vector& country_weights) {
    Vector out(x.cols(), 0.0);
    for (std::size_t c = 0; c < x.rows(); ++c) {
        for (std::size_t p = 0; p < x.cols(); ++p) out[p] += x(c, p) / country_weights[c];
    }
    return out;
}

// sum_p X_cp / w_p for every country.
Vector country_half_step(const Matrix& x, const Vector& product_weights) {
    Vector out(x.rows(), 0.0);
    for (std::size_t c = 0; c < x.rows(); ++c) {
        double s = 0.0;
        for (std::size_t p = 0; p < x.cols(); ++p) s += x(c, p) / product_weights[p];
        out[c] = s;
    }
    return out;
}

StepResult eci_step(const Matrix& x, const Vector& xc, const Vector& xp, Normalization kind) {
    require_positive(xc, "country iterate");
    require_positive(xp, "product iterate");

    StepResult out;
    out.countries = country_half_step(x, product_half_step(x, xc));
    out.products = product_half_step(x, country_half_step(x, xp));
    require_positive(out.countries, "country iterate");
    require_positive(out.products, "product iterate");

    out.normalizers = {normalizer(out.countries, kind), normalizer(out.products, kind)};
    for (double& v : out.countries) v /= out.normalizers.country;
    for (double& v : out.products) v /= out.normalizers.product;
    return out;
}

} // namespace

AlgoConfig eciplus_default_config() {
    AlgoConfig config;
    config.normalization = Normalization::GeometricMean;
    config.stop = FixedIterations{200};
    return config;
}

IterationTrace eci_iterate(const ExportMatrix& x, const AlgoConfig& config) {
    config.validate();
    if (!x.is_pruned()) throw Error(ErrorCode::NotPruned, "ECI+ requires a pruned matrix");
    const Matrix& values = x.values();

    Vector xc(values.rows(), 1.0);
    Vector xp(values.cols(), 1.0);
    Normalizers initial;
    if (config.init == Init::Degree) {
        // Mirrors the degree start of the Fitness map: X_c^0 = k_c, X_p^0 = 1/k_p.
        xc = values.row_sums();
        xp = values.col_sums();
        for (double& v : xp) v = 1.0 / v;
        initial = {normalizer(xc, config.normalization), normalizer(xp, config.normalization)};
        for (double& v : xc) v /= initial.country;
        for (double& v : xp) v /= initial.product;
    }

    return detail::drive(std::move(xc), std::move(xp), initial, config,
                         [&](const Vector& c, const Vector& p) {
                             return eci_step(values, c, p, config.normalization);
                         });
}

Vector eci_offset_argument(const ExportMatrix& x) {
    const Vector xp = x.product_totals();
    const Matrix& v = x.values();
    Vector out(v.rows(), 0.0);
    for (std::size_t c = 0; c < v.rows(); ++c) {
        double s = 0.0;
        for (std::size_t p = 0; p < v.cols(); ++p) s += v(c, p) / xp[p];
        out[c] = s;
    }
    return out;
}

Vector eci_plus_scores(const ExportMatrix& x, std::span<const double> xc_inf) {
    if (xc_inf.size() != x.num_countries()) throw Error(ErrorCode::LengthMismatch, "xc_inf size");
    if (!x.is_pruned()) throw Error(ErrorCode::NotPruned, "ECI+ requires a pruned matrix");
    require_positive(xc_inf, "xc_inf");
    const Vector offset = eci_offset_argument(x);
    Vector out(xc_inf.size());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = std::log(xc_inf[c]) - std::log(offset[c]);
    return out;
}

Vector pci_plus_scores(const ExportMatrix& x, std::span<const double> xp_inf) {
    if (xp_inf.size() != x.num_products()) throw Error(ErrorCode::LengthMismatch, "xp_inf size");
    if (!x.is_pruned()) throw Error(ErrorCode::NotPruned, "PCI+ requires a pruned matrix");
    require_positive(xp_inf, "xp_inf");
    const Vector totals = x.product_totals();
    Vector out(xp_inf.size());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = std::log(totals[p]) - std::log(xp_inf[p]);
    return out;
}

EciPlusResult compute_eci_plus(const ExportMatrix& x, const AlgoConfig& config) {
    EciPlusResult r;
    r.trace = eci_iterate(x, config);
    r.countries = x.countries();
    r.products = x.products();
    r.xc_inf = r.trace.final_countries();
    r.xp_inf = r.trace.final_products();
    r.product_totals = x.product_totals();
    r.eci_plus = eci_plus_scores(x, r.xc_inf);
    r.pci_plus = pci_plus_scores(x, r.xp_inf);
    return r;
}

} // namespace ecx
