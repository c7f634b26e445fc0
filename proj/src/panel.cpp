#include "mptt/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "mptt/format.hpp"
#include "json.hpp"

namespace mptt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_positive(const std::string& text, std::size_t row, const char* what) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw InvalidValue(row, std::string(what) + " '" + text + "' is not numeric");
    }
    if (pos != text.size())
        throw InvalidValue(row, std::string(what) + " '" + text + "' is not numeric");
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidValue(row, std::string(what) + " must be positive, got " + text);
    return value;
}

int parse_year(const std::string& text, std::size_t row) {
    std::size_t pos = 0;
    int year = 0;
    try {
        year = std::stoi(text, &pos);
    } catch (const std::exception&) {
        throw InvalidValue(row, "year '" + text + "' is not an integer");
    }
    if (pos != text.size())
        throw InvalidValue(row, "year '" + text + "' is not an integer");
    return year;
}

void finalize(AnnualPanel& panel) {
    std::sort(panel.rows.begin(), panel.rows.end(),
              [](const PanelRow& a, const PanelRow& b) { return a.year < b.year; });
    panel.gap_years.clear();
    for (std::size_t i = 1; i < panel.rows.size(); ++i) {
        if (panel.rows[i].year == panel.rows[i - 1].year)
            throw DuplicateYear(panel.rows[i].year);
        for (int y = panel.rows[i - 1].year + 1; y < panel.rows[i].year; ++y)
            panel.gap_years.push_back(y);
    }
}

}  // namespace

std::optional<std::size_t> AnnualPanel::index_of(int year) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), year,
                               [](const PanelRow& r, int y) { return r.year < y; });
    if (it == rows.end() || it->year != year) return std::nullopt;
    return static_cast<std::size_t>(it - rows.begin());
}

std::optional<std::size_t> LogPanel::index_of(int year) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), year,
                               [](const LogRow& r, int y) { return r.year < y; });
    if (it == rows.end() || it->year != year) return std::nullopt;
    return static_cast<std::size_t>(it - rows.begin());
}

AnnualPanel load_panel(std::istream& source, const CsvSchema& schema,
                       const YearFilter& filter) {
    std::string line;
    if (!std::getline(source, line))
        throw SchemaError("empty input: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw SchemaError("missing required column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t yc = find_col(schema.year_col);
    const std::size_t pc = find_col(schema.price_col);
    const std::size_t mc = find_col(schema.money_col);

    AnnualPanel panel;
    std::size_t row_no = 1;
    while (std::getline(source, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() <= std::max({yc, pc, mc}))
            throw InvalidValue(row_no, "too few fields");
        PanelRow row;
        row.year = parse_year(fields[yc], row_no);
        row.price_level = parse_positive(fields[pc], row_no, "price");
        row.money_supply = parse_positive(fields[mc], row_no, "money");
        if (filter.min_year && row.year < *filter.min_year) continue;
        if (filter.max_year && row.year > *filter.max_year) continue;
        panel.rows.push_back(row);
    }
    finalize(panel);
    return panel;
}

AnnualPanel load_panel_file(const std::string& path, const CsvSchema& schema,
                            const YearFilter& filter) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);
    return load_panel(in, schema, filter);
}

AnnualPanel normalize_index(const AnnualPanel& panel, int base_year, double base_value) {
    auto idx = panel.index_of(base_year);
    if (!idx) throw MissingBaseYear(base_year);
    const double p_scale = base_value / panel.rows[*idx].price_level;
    const double m_scale = base_value / panel.rows[*idx].money_supply;
    AnnualPanel out = panel;
    for (auto& row : out.rows) {
        row.price_level *= p_scale;
        row.money_supply *= m_scale;
    }
    return out;
}

LogPanel to_log(const AnnualPanel& panel) {
    LogPanel out;
    out.rows.reserve(panel.rows.size());
    for (const auto& row : panel.rows)
        out.rows.push_back({row.year, std::log(row.price_level), std::log(row.money_supply)});
    return out;
}

GrowthSeries growth_rates(const LogPanel& logpanel) {
    if (logpanel.rows.size() < 2)
        throw InsufficientData("growth rates need at least 2 rows");
    GrowthSeries out;
    out.rows.reserve(logpanel.rows.size() - 1);
    for (std::size_t i = 1; i < logpanel.rows.size(); ++i) {
        const auto& prev = logpanel.rows[i - 1];
        const auto& cur = logpanel.rows[i];
        GrowthRow row;
        row.year = cur.year;
        row.pi = 100.0 * (cur.ln_p - prev.ln_p);
        row.mu = 100.0 * (cur.ln_m - prev.ln_m);
        row.spans_gap = (cur.year - prev.year) > 1;
        out.rows.push_back(row);
    }
    return out;
}

RegimeSummary regime_summary(const AnnualPanel& panel, int start_year, int end_year) {
    if (start_year >= end_year)
        throw DataError("regime window must satisfy start_year < end_year");
    auto si = panel.index_of(start_year);
    if (!si) throw MissingYear(start_year);
    auto ei = panel.index_of(end_year);
    if (!ei) throw MissingYear(end_year);
    RegimeSummary s;
    s.start_year = start_year;
    s.end_year = end_year;
    s.cpi_multiple = panel.rows[*ei].price_level / panel.rows[*si].price_level;
    s.money_multiple = panel.rows[*ei].money_supply / panel.rows[*si].money_supply;
    if (std::abs(s.money_multiple - 1.0) < 1e-12)
        throw UndefinedRatio("money multiple is 1; transmission ratio undefined");
    s.transmission_ratio = std::log(s.cpi_multiple) / std::log(s.money_multiple);
    return s;
}

std::string to_csv(const AnnualPanel& panel, const CsvSchema& schema) {
    std::string out = schema.year_col + "," + schema.price_col + "," + schema.money_col + "\n";
    for (const auto& row : panel.rows) {
        out += std::to_string(row.year) + "," + fmt_num(row.price_level) + "," +
               fmt_num(row.money_supply) + "\n";
    }
    return out;
}

std::string to_csv(const GrowthSeries& series) {
    std::string out = "year,pi,mu,spans_gap\n";
    for (const auto& row : series.rows) {
        out += std::to_string(row.year) + "," + fmt_num(row.pi) + "," + fmt_num(row.mu) +
               "," + (row.spans_gap ? "1" : "0") + "\n";
    }
    return out;
}

std::string to_csv(const RegimeSummary& s) {
    std::string out = "start_year,end_year,cpi_multiple,money_multiple,transmission_ratio\n";
    out += std::to_string(s.start_year) + "," + std::to_string(s.end_year) + "," +
           fmt_num(s.cpi_multiple) + "," + fmt_num(s.money_multiple) + "," +
           fmt_num(s.transmission_ratio) + "\n";
    return out;
}

std::string to_json(const AnnualPanel& panel) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : panel.rows) {
        j["rows"].push_back({{"year", row.year},
                             {"price_level", row.price_level},
                             {"money_supply", row.money_supply}});
    }
    j["gap_years"] = panel.gap_years;
    return j.dump(2) + "\n";
}

std::string to_json(const GrowthSeries& series) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& row : series.rows) {
        j.push_back({{"year", row.year},
                     {"pi", row.pi},
                     {"mu", row.mu},
                     {"spans_gap", row.spans_gap}});
    }
    return j.dump(2) + "\n";
}

std::string to_json(const RegimeSummary& s) {
    nlohmann::ordered_json j{{"start_year", s.start_year},
                             {"end_year", s.end_year},
                             {"cpi_multiple", s.cpi_multiple},
                             {"money_multiple", s.money_multiple},
                             {"transmission_ratio", s.transmission_ratio}};
    return j.dump(2) + "\n";
}

}  // namespace mptt
