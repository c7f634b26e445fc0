#include "mptt/break_scan.hpp"

#include <cmath>
#include <exception>

#include "mptt/format.hpp"
#include "json.hpp"

namespace mptt {

namespace {

std::vector<int> candidate_taus(const LogPanel& logpanel, Window window, int trim,
                                const std::optional<Window>& candidates) {
    if (trim < 2) throw ConfigError("trim must be >= 2");
    std::vector<int> in_window;
    for (const auto& row : logpanel.rows)
        if (window.contains(row.year)) in_window.push_back(row.year);
    std::vector<int> taus;
    for (std::size_t i = 0; i < in_window.size(); ++i) {
        const std::size_t before = i;  // years strictly below
        const std::size_t after = in_window.size() - i - 1;
        if (before < static_cast<std::size_t>(trim) ||
            after < static_cast<std::size_t>(trim))
            continue;
        if (candidates && !candidates->contains(in_window[i])) continue;
        taus.push_back(in_window[i]);
    }
    if (taus.empty())
        throw EmptyScanRange("no candidate break year admits trim=" +
                             std::to_string(trim) + " observations per side");
    return taus;
}

BreakScanRow fit_candidate(const LogPanel& logpanel, Window window, int tau,
                           PhaseForm form) {
    const TwoPhaseFit fit = two_phase_fit(logpanel, tau, window, form);
    BreakScanRow row;
    row.tau = tau;
    row.beta1 = fit.beta1;
    row.gamma = fit.gamma;
    row.beta2 = fit.beta2;
    row.sse = fit.ols.sse;
    row.r2 = fit.ols.r2.value_or(std::nan(""));
    row.aic = fit.ols.aic;
    row.bic = fit.ols.bic;
    return row;
}

BreakScanResult assemble(std::vector<BreakScanRow> rows, Window window, int trim,
                         Criterion criterion, PhaseForm form) {
    BreakScanResult result;
    result.rows = std::move(rows);
    result.window = window;
    result.trim = trim;
    result.criterion = criterion;
    result.form = form;

    // Argmin with earliest-tau tie break; rows are already sorted by tau.
    std::size_t best = 0;
    auto value = [&](const BreakScanRow& r) {
        return criterion == Criterion::bic ? r.bic : r.aic;
    };
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        if (value(result.rows[i]) < value(result.rows[best])) best = i;
        else if (value(result.rows[i]) == value(result.rows[best]) && i != best)
            result.tie = true;
    }
    result.best_tau = result.rows[best].tau;
    return result;
}

}  // namespace

std::string to_string(Criterion c) { return c == Criterion::bic ? "bic" : "aic"; }

Criterion criterion_from_string(const std::string& name) {
    if (name == "bic") return Criterion::bic;
    if (name == "aic") return Criterion::aic;
    throw ConfigError("unknown criterion '" + name + "' (expected bic or aic)");
}

BreakScanResult scan_serial(const LogPanel& logpanel, Window window, int trim,
                            Criterion criterion, PhaseForm form,
                            std::optional<Window> candidates) {
    const auto taus = candidate_taus(logpanel, window, trim, candidates);
    std::vector<BreakScanRow> rows(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        rows[i] = fit_candidate(logpanel, window, taus[i], form);
    return assemble(std::move(rows), window, trim, criterion, form);
}

BreakScanResult scan(const LogPanel& logpanel, Window window, int trim,
                     Criterion criterion, PhaseForm form,
                     std::optional<Window> candidates) {
    const auto taus = candidate_taus(logpanel, window, trim, candidates);
    std::vector<BreakScanRow> rows(taus.size());
    // Each candidate writes only its own slot, so the assembled table does
    // not depend on scheduling. Exceptions must not cross the parallel
    // region; capture the first one (by candidate order) and rethrow after.
    std::exception_ptr error;
    long long error_index = -1;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(taus.size()); ++i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                fit_candidate(logpanel, window, taus[static_cast<std::size_t>(i)], form);
        } catch (...) {
#pragma omp critical
            if (error_index < 0 || i < error_index) {
                error = std::current_exception();
                error_index = i;
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return assemble(std::move(rows), window, trim, criterion, form);
}

ModelComparison compare_models(const LogPanel& logpanel, Window window, int tau,
                               PhaseForm form) {
    ModelComparison cmp{classical_fit(logpanel, window),
                        two_phase_fit(logpanel, tau, window, form)};
    cmp.delta_sse = cmp.one_phase.ols.sse - cmp.two_phase.ols.sse;
    cmp.delta_aic = cmp.one_phase.ols.aic - cmp.two_phase.ols.aic;
    cmp.delta_bic = cmp.one_phase.ols.bic - cmp.two_phase.ols.bic;
    // When both fits are at the rounding floor the SSE ratio carries no
    // information; the parameter penalty alone decides in favor of the
    // nested one-phase model.
    const double rel_gain =
        cmp.one_phase.ols.sse > 0.0 ? cmp.delta_sse / cmp.one_phase.ols.sse : 0.0;
    if (rel_gain < 1e-10) {
        cmp.preferred_by_aic = "one_phase";
        cmp.preferred_by_bic = "one_phase";
    } else {
        cmp.preferred_by_aic = cmp.delta_aic > 0.0 ? "two_phase" : "one_phase";
        cmp.preferred_by_bic = cmp.delta_bic > 0.0 ? "two_phase" : "one_phase";
    }
    return cmp;
}

std::string to_csv(const BreakScanResult& result) {
    std::string out = "tau,beta1,gamma,beta2,sse,r2,aic,bic\n";
    for (const auto& r : result.rows) {
        out += std::to_string(r.tau) + "," + fmt_num(r.beta1) + "," + fmt_num(r.gamma) +
               "," + fmt_num(r.beta2) + "," + fmt_num(r.sse) + "," + fmt_num(r.r2) +
               "," + fmt_num(r.aic) + "," + fmt_num(r.bic) + "\n";
    }
    return out;
}

std::string summary_json(const BreakScanResult& result) {
    nlohmann::ordered_json j{{"best_tau", result.best_tau},
                             {"criterion", to_string(result.criterion)},
                             {"window", {result.window.start, result.window.end}},
                             {"trim", result.trim},
                             {"form", to_string(result.form)},
                             {"candidates", result.rows.size()},
                             {"tie", result.tie}};
    return j.dump(2) + "\n";
}

std::string to_json(const ModelComparison& cmp) {
    nlohmann::ordered_json j{
        {"one_phase",
         {{"a", cmp.one_phase.a},
          {"beta", cmp.one_phase.beta},
          {"sse", cmp.one_phase.ols.sse},
          {"aic", cmp.one_phase.ols.aic},
          {"bic", cmp.one_phase.ols.bic}}},
        {"two_phase",
         {{"a", cmp.two_phase.a},
          {"beta1", cmp.two_phase.beta1},
          {"gamma", cmp.two_phase.gamma},
          {"beta2", cmp.two_phase.beta2},
          {"tau", cmp.two_phase.spec.tau},
          {"form", to_string(cmp.two_phase.spec.form)},
          {"sse", cmp.two_phase.ols.sse},
          {"aic", cmp.two_phase.ols.aic},
          {"bic", cmp.two_phase.ols.bic}}},
        {"delta_sse", cmp.delta_sse},
        {"delta_aic", cmp.delta_aic},
        {"delta_bic", cmp.delta_bic},
        {"preferred_by_aic", cmp.preferred_by_aic},
        {"preferred_by_bic", cmp.preferred_by_bic}};
    return j.dump(2) + "\n";
}

}  // namespace mptt
