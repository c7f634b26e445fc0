#include "mptt/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mptt {

namespace {

constexpr double kConditionLimit = 1e10;

}  // namespace

void DesignMatrix::add_column(std::string name, std::vector<double> values) {
    if (columns.empty() && n == 0) n = values.size();
    if (values.size() != n)
        throw DataError("design column '" + name + "' has length " +
                        std::to_string(values.size()) + ", expected " + std::to_string(n));
    columns.emplace_back(std::move(name), std::move(values));
}

double OlsFit::coefficient(const std::string& name) const {
    for (const auto& [cname, value] : coefficients)
        if (cname == name) return value;
    throw DataError("no coefficient named '" + name + "'");
}

OlsFit ols(std::span<const double> y, const DesignMatrix& design) {
    const std::size_t n = y.size();
    const std::size_t k = design.columns.size() + 1;  // + intercept
    if (design.n != n)
        throw DataError("response length does not match design");
    if (n <= k)
        throw InsufficientObservations("n=" + std::to_string(n) +
                                       " observations for k=" + std::to_string(k) +
                                       " parameters");

    // Column-major working copy of [1 | X], reduced in place to R by
    // Householder reflections applied simultaneously to a copy of y.
    std::vector<std::vector<double>> a(k, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) a[0][i] = 1.0;
    for (std::size_t j = 0; j < design.columns.size(); ++j)
        a[j + 1] = design.columns[j].second;
    std::vector<double> qty(y.begin(), y.end());

    // Column norms for a scale-aware condition check on diag(R).
    std::vector<double> col_scale(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (double v : a[j]) s += v * v;
        col_scale[j] = std::sqrt(s);
    }

    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
        norm = std::sqrt(norm);
        if (norm == 0.0)
            throw SingularDesign("column " + std::to_string(j) + " is numerically zero");
        if (a[j][j] > 0.0) norm = -norm;

        // Householder vector stored in a[j][j..]; apply to remaining columns and y.
        const double alpha = a[j][j] - norm;
        std::vector<double> v(n - j);
        v[0] = alpha;
        for (std::size_t i = j + 1; i < n; ++i) v[i - j] = a[j][i];
        double vtv = alpha * alpha;
        for (std::size_t i = j + 1; i < n; ++i) vtv += a[j][i] * a[j][i];
        if (vtv > 0.0) {
            auto reflect = [&](std::vector<double>& col) {
                double dot = 0.0;
                for (std::size_t i = j; i < n; ++i) dot += v[i - j] * col[i];
                const double f = 2.0 * dot / vtv;
                for (std::size_t i = j; i < n; ++i) col[i] -= f * v[i - j];
            };
            for (std::size_t jj = j; jj < k; ++jj) reflect(a[jj]);
            reflect(qty);
        }
        a[j][j] = norm;
        for (std::size_t i = j + 1; i < n; ++i) a[j][i] = 0.0;
    }

    // Relative diagonal of R vs column scale detects collinearity.
    double max_rel = 0.0;
    double min_rel = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        const double rel = std::abs(a[j][j]) / (col_scale[j] > 0.0 ? col_scale[j] : 1.0);
        max_rel = std::max(max_rel, rel);
        min_rel = std::min(min_rel, rel);
    }
    if (!(min_rel > 0.0) || max_rel / min_rel > kConditionLimit)
        throw SingularDesign("design is rank deficient or ill-conditioned");

    // Back substitution on R b = (Q^T y)[0..k).
    std::vector<double> beta(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t j2 = jj + 1; j2 < k; ++j2) s -= a[j2][jj] * beta[j2];
        beta[jj] = s / a[jj][jj];
    }

    OlsFit fit;
    fit.n = static_cast<int>(n);
    fit.k = static_cast<int>(k);
    fit.coefficients.emplace_back("intercept", beta[0]);
    for (std::size_t j = 0; j < design.columns.size(); ++j)
        fit.coefficients.emplace_back(design.columns[j].first, beta[j + 1]);

    fit.residuals.resize(n);
    double sse = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_y += y[i];
    mean_y /= static_cast<double>(n);
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = beta[0];
        for (std::size_t j = 0; j < design.columns.size(); ++j)
            yhat += beta[j + 1] * design.columns[j].second[i];
        fit.residuals[i] = y[i] - yhat;
        sse += fit.residuals[i] * fit.residuals[i];
        sst += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.sse = sse;
    if (sst > 1e-12) fit.r2 = 1.0 - sse / sst;

    auto [aic, bic] = information_criteria(sse, fit.n, fit.k);
    fit.aic = aic;
    fit.bic = bic;
    return fit;
}

std::pair<double, double> information_criteria(double sse, int n, int k) {
    if (k < 1 || n <= k)
        throw InsufficientObservations("information criteria need n > k >= 1");
    if (sse < 0.0)
        throw NumericError("negative SSE");
    if (sse == 0.0) {
        const double inf = -std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    const double base = n * std::log(sse / n);
    return {base + 2.0 * k, base + k * std::log(static_cast<double>(n))};
}

}  // namespace mptt
