#include "mptt/phase_model.hpp"

#include <algorithm>
#include <cmath>

#include "mptt/format.hpp"
#include "json.hpp"

namespace mptt {

namespace {

// Row index range [lo, hi) of a window within a log panel.
std::pair<std::size_t, std::size_t> window_range(const LogPanel& panel, Window w) {
    std::size_t lo = 0;
    while (lo < panel.rows.size() && panel.rows[lo].year < w.start) ++lo;
    std::size_t hi = lo;
    while (hi < panel.rows.size() && panel.rows[hi].year <= w.end) ++hi;
    return {lo, hi};
}

}  // namespace

std::string to_string(PhaseForm form) {
    return form == PhaseForm::step_in_time ? "step" : "hinge";
}

PhaseForm phase_form_from_string(const std::string& name) {
    if (name == "step") return PhaseForm::step_in_time;
    if (name == "hinge") return PhaseForm::hinge_in_money;
    throw ConfigError("unknown phase form '" + name + "' (expected step or hinge)");
}

ClassicalFit classical_fit(const LogPanel& logpanel, Window window) {
    auto [lo, hi] = window_range(logpanel, window);
    if (hi - lo < 4)
        throw InsufficientObservations("classical fit needs >= 4 observations in window");

    std::vector<double> y, x;
    y.reserve(hi - lo);
    x.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        y.push_back(logpanel.rows[i].ln_p);
        x.push_back(logpanel.rows[i].ln_m);
    }
    DesignMatrix design;
    design.add_column("ln_m", std::move(x));

    ClassicalFit fit;
    fit.ols = ols(y, design);
    fit.a = fit.ols.intercept();
    fit.beta = fit.ols.coefficient("ln_m");
    fit.window = window;
    return fit;
}

std::vector<double> phase_regressor(const LogPanel& logpanel, const BreakSpec& spec) {
    if (!logpanel.index_of(spec.tau)) throw MissingBreakYear(spec.tau);
    std::vector<double> out;
    out.reserve(logpanel.rows.size());
    for (const auto& row : logpanel.rows) {
        const double excess = row.ln_m - spec.ln_m_tau;
        if (spec.form == PhaseForm::step_in_time)
            out.push_back(row.year > spec.tau ? excess : 0.0);
        else
            out.push_back(std::max(0.0, excess));
    }
    return out;
}

TwoPhaseFit two_phase_fit(const LogPanel& logpanel, int tau, Window window,
                          PhaseForm form) {
    auto tau_idx = logpanel.index_of(tau);
    if (!tau_idx || !window.contains(tau)) throw MissingBreakYear(tau);

    auto [lo, hi] = window_range(logpanel, window);
    if (hi - lo < 6)
        throw InsufficientObservations("two-phase fit needs >= 6 observations in window");
    std::size_t pre = 0, post = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        if (logpanel.rows[i].year <= tau)
            ++pre;
        else
            ++post;
    }
    if (pre < 2 || post < 2)
        throw DegenerateSplit("tau=" + std::to_string(tau) + " leaves " +
                              std::to_string(pre) + "/" + std::to_string(post) +
                              " observations per side");

    BreakSpec spec{tau, logpanel.rows[*tau_idx].ln_m, form};
    const auto phase = phase_regressor(logpanel, spec);

    std::vector<double> y, x, z;
    for (std::size_t i = lo; i < hi; ++i) {
        y.push_back(logpanel.rows[i].ln_p);
        x.push_back(logpanel.rows[i].ln_m);
        z.push_back(phase[i]);
    }
    DesignMatrix design;
    design.add_column("ln_m", std::move(x));
    design.add_column("phase", std::move(z));

    TwoPhaseFit fit;
    fit.ols = ols(y, design);
    fit.a = fit.ols.intercept();
    fit.beta1 = fit.ols.coefficient("ln_m");
    fit.gamma = fit.ols.coefficient("phase");
    fit.beta2 = fit.beta1 + fit.gamma;
    fit.spec = spec;
    fit.window = window;
    return fit;
}

double predict(const ClassicalFit& fit, double ln_m) {
    return fit.a + fit.beta * ln_m;
}

double predict(const TwoPhaseFit& fit, int year, double ln_m) {
    const double excess = ln_m - fit.spec.ln_m_tau;
    double phase = 0.0;
    if (fit.spec.form == PhaseForm::step_in_time)
        phase = year > fit.spec.tau ? excess : 0.0;
    else
        phase = std::max(0.0, excess);
    return fit.a + fit.beta1 * ln_m + fit.gamma * phase;
}

GapSeries extrapolation_gap(const LogPanel& logpanel, const ClassicalFit& fit,
                            Window eval_window) {
    GapSeries out;
    for (int year = eval_window.start; year <= eval_window.end; ++year) {
        auto idx = logpanel.index_of(year);
        if (!idx) {
            out.skipped_years.push_back(year);
            continue;
        }
        const auto& row = logpanel.rows[*idx];
        out.rows.push_back({year, row.ln_p - predict(fit, row.ln_m),
                            year > fit.window.end});
    }
    return out;
}

namespace {

nlohmann::ordered_json fit_stats_json(const OlsFit& fit) {
    nlohmann::ordered_json j{{"sse", fit.sse},
                             {"n", fit.n},
                             {"k", fit.k},
                             {"aic", fit.aic},
                             {"bic", fit.bic}};
    if (fit.r2)
        j["r2"] = *fit.r2;
    else
        j["r2"] = nullptr;
    return j;
}

}  // namespace

std::string to_json(const ClassicalFit& fit) {
    nlohmann::ordered_json j{{"model", "classical"},
                             {"a", fit.a},
                             {"beta", fit.beta},
                             {"window", {fit.window.start, fit.window.end}},
                             {"stats", fit_stats_json(fit.ols)}};
    return j.dump(2) + "\n";
}

std::string to_json(const TwoPhaseFit& fit) {
    nlohmann::ordered_json j{{"model", "two_phase"},
                             {"a", fit.a},
                             {"beta1", fit.beta1},
                             {"gamma", fit.gamma},
                             {"beta2", fit.beta2},
                             {"tau", fit.spec.tau},
                             {"ln_m_tau", fit.spec.ln_m_tau},
                             {"form", to_string(fit.spec.form)},
                             {"window", {fit.window.start, fit.window.end}},
                             {"stats", fit_stats_json(fit.ols)}};
    return j.dump(2) + "\n";
}

std::string to_csv(const GapSeries& series) {
    std::string out = "year,gap,post_break\n";
    for (const auto& row : series.rows)
        out += std::to_string(row.year) + "," + fmt_num(row.gap) + "," +
               (row.post_break ? "1" : "0") + "\n";
    return out;
}

std::string summary_csv_row(const TwoPhaseFit& fit, bool with_header) {
    std::string out;
    if (with_header)
        out = "window_start,window_end,tau,form,a,beta1,gamma,beta2,sse,r2,aic,bic\n";
    out += std::to_string(fit.window.start) + "," + std::to_string(fit.window.end) +
           "," + std::to_string(fit.spec.tau) + "," + to_string(fit.spec.form) + "," +
           fmt_num(fit.a) + "," + fmt_num(fit.beta1) + "," + fmt_num(fit.gamma) + "," +
           fmt_num(fit.beta2) + "," + fmt_num(fit.ols.sse) + "," +
           (fit.ols.r2 ? fmt_num(*fit.ols.r2) : std::string("NA")) + "," +
           fmt_num(fit.ols.aic) + "," + fmt_num(fit.ols.bic) + "\n";
    return out;
}

}  // namespace mptt
