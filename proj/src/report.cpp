#include "mptt/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mptt/format.hpp"

namespace mptt {

Window parse_window(const std::string& text) {
    const auto pos = text.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= text.size())
        throw ConfigError("window must be start:end, got '" + text + "'");
    Window w;
    try {
        std::size_t used = 0;
        w.start = std::stoi(text.substr(0, pos), &used);
        if (used != pos) throw std::invalid_argument(text);
        const std::string end_part = text.substr(pos + 1);
        w.end = std::stoi(end_part, &used);
        if (used != end_part.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("window must be start:end, got '" + text + "'");
    }
    if (w.start > w.end)
        throw ConfigError("window start must be <= end in '" + text + "'");
    return w;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write output file: " + tmp.string());
        out << content;
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string long_format_report(const LogPanel& logpanel, Window eval_window,
                               const ClassicalFit* classical,
                               const TwoPhaseFit* two_phase,
                               const GapSeries* gap) {
    std::string out = "year,series_name,value\n";
    auto emit = [&](int year, const char* name, double value) {
        out += std::to_string(year) + "," + name + "," + fmt_num(value) + "\n";
    };
    for (const auto& row : logpanel.rows) {
        if (!eval_window.contains(row.year)) continue;
        emit(row.year, "observed_ln_p", row.ln_p);
        if (classical) emit(row.year, "classical_ln_p", predict(*classical, row.ln_m));
        if (two_phase) {
            const double pred = predict(*two_phase, row.year, row.ln_m);
            emit(row.year, "mptt_ln_p", pred);
            emit(row.year, "mptt_residual", row.ln_p - pred);
        }
    }
    if (gap) {
        for (const auto& row : gap->rows)
            if (eval_window.contains(row.year)) emit(row.year, "gap", row.gap);
    }
    return out;
}

}  // namespace mptt
