#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mptt/errors.hpp"

namespace mptt {

/// Regressor columns for an OLS fit. The intercept is always implicit and is
/// not stored as a column.
struct DesignMatrix {
    std::size_t n = 0;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    void add_column(std::string name, std::vector<double> values);
};

struct OlsFit {
    // Intercept first, then one entry per design column, in order.
    std::vector<std::pair<std::string, double>> coefficients;
    std::vector<double> residuals;
    double sse = 0.0;
    std::optional<double> r2;  // absent when total sum of squares ~ 0
    int n = 0;
    int k = 0;  // parameter count including the intercept
    double aic = 0.0;
    double bic = 0.0;

    double coefficient(const std::string& name) const;
    double intercept() const { return coefficients.front().second; }
};

/// Exact least squares of y on an intercept plus the design columns, solved
/// by Householder QR. Condition numbers above 1e10 are rejected.
OlsFit ols(std::span<const double> y, const DesignMatrix& design);

/// AIC = n*ln(SSE/n) + 2k, BIC = n*ln(SSE/n) + k*ln(n). Constants-dropped
/// Gaussian form; affine-equivalent conventions rank models identically.
/// SSE of exactly 0 yields -infinity for both.
std::pair<double, double> information_criteria(double sse, int n, int k);

}  // namespace mptt
