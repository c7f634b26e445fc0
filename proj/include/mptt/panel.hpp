#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mptt/errors.hpp"

namespace mptt {

struct PanelRow {
    int year = 0;
    double price_level = 0.0;
    double money_supply = 0.0;
};

/// Validated annual (year, price, money) panel. Years strictly increasing,
/// both series strictly positive. Missing intermediate years are allowed and
/// recorded in gap_years.
struct AnnualPanel {
    std::vector<PanelRow> rows;
    std::vector<int> gap_years;  // calendar years missing between consecutive rows

    std::size_t size() const { return rows.size(); }
    std::optional<std::size_t> index_of(int year) const;
};

struct LogRow {
    int year = 0;
    double ln_p = 0.0;
    double ln_m = 0.0;
};

/// Natural-log transform of an AnnualPanel, one row per panel row.
struct LogPanel {
    std::vector<LogRow> rows;

    std::size_t size() const { return rows.size(); }
    std::optional<std::size_t> index_of(int year) const;
};

struct GrowthRow {
    int year = 0;
    double pi = 0.0;   // percent per year
    double mu = 0.0;   // percent per year
    bool spans_gap = false;
};

/// Annual growth rates pi = 100*dln P, mu = 100*dln M. Rows that span a
/// missing year compute the log-difference over the actual step and are
/// flagged.
struct GrowthSeries {
    std::vector<GrowthRow> rows;
};

struct RegimeSummary {
    int start_year = 0;
    int end_year = 0;
    double cpi_multiple = 0.0;
    double money_multiple = 0.0;
    double transmission_ratio = 0.0;  // ln(cpi_multiple) / ln(money_multiple)
};

/// Column-name mapping for panel CSV files. Defaults match the supplementary
/// file shape.
struct CsvSchema {
    std::string year_col = "year";
    std::string price_col = "cpi";
    std::string money_col = "money_supply";
};

struct YearFilter {
    std::optional<int> min_year;
    std::optional<int> max_year;
};

AnnualPanel load_panel(std::istream& source, const CsvSchema& schema = {},
                       const YearFilter& filter = {});
AnnualPanel load_panel_file(const std::string& path, const CsvSchema& schema = {},
                            const YearFilter& filter = {});

AnnualPanel normalize_index(const AnnualPanel& panel, int base_year, double base_value);
LogPanel to_log(const AnnualPanel& panel);
GrowthSeries growth_rates(const LogPanel& logpanel);
RegimeSummary regime_summary(const AnnualPanel& panel, int start_year, int end_year);

// Serialization. Field order is fixed with year first.
std::string to_csv(const AnnualPanel& panel, const CsvSchema& schema = {});
std::string to_csv(const GrowthSeries& series);
std::string to_csv(const RegimeSummary& summary);
std::string to_json(const AnnualPanel& panel);
std::string to_json(const GrowthSeries& series);
std::string to_json(const RegimeSummary& summary);

}  // namespace mptt
