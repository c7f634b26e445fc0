#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mptt/phase_model.hpp"

namespace mptt {

enum class Criterion { bic, aic };

std::string to_string(Criterion c);
Criterion criterion_from_string(const std::string& name);

struct BreakScanRow {
    int tau = 0;
    double beta1 = 0.0;
    double gamma = 0.0;
    double beta2 = 0.0;
    double sse = 0.0;
    double r2 = 0.0;
    double aic = 0.0;
    double bic = 0.0;
};

struct BreakScanResult {
    std::vector<BreakScanRow> rows;  // sorted by tau
    int best_tau = 0;
    Criterion criterion = Criterion::bic;
    Window window;
    int trim = 0;
    PhaseForm form = PhaseForm::step_in_time;
    bool tie = false;  // exact criterion tie, broken toward the earliest tau
};

/// Fits the two-phase model at every candidate year in the window with at
/// least `trim` observations strictly on each side and selects the
/// criterion-minimizing break. Every fit uses the full window; an optional
/// candidate range restricts which years are tried without changing the fit
/// sample. Candidates are independent; this entry point evaluates them in
/// parallel when built with OpenMP and returns a result identical to
/// scan_serial.
BreakScanResult scan(const LogPanel& logpanel, Window window, int trim,
                     Criterion criterion = Criterion::bic,
                     PhaseForm form = PhaseForm::step_in_time,
                     std::optional<Window> candidates = std::nullopt);

/// Serial reference implementation, kept as the oracle for the parallel scan.
BreakScanResult scan_serial(const LogPanel& logpanel, Window window, int trim,
                            Criterion criterion = Criterion::bic,
                            PhaseForm form = PhaseForm::step_in_time,
                            std::optional<Window> candidates = std::nullopt);

struct ModelComparison {
    ClassicalFit one_phase;
    TwoPhaseFit two_phase;
    double delta_sse = 0.0;  // one-phase minus two-phase
    double delta_aic = 0.0;
    double delta_bic = 0.0;
    std::string preferred_by_aic;  // "one_phase" or "two_phase"
    std::string preferred_by_bic;
};

/// One-phase vs two-phase fit on the same window at a fixed tau.
ModelComparison compare_models(const LogPanel& logpanel, Window window, int tau,
                               PhaseForm form = PhaseForm::step_in_time);

std::string to_csv(const BreakScanResult& result);
std::string summary_json(const BreakScanResult& result);
std::string to_json(const ModelComparison& cmp);

}  // namespace mptt
