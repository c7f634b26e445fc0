#pragma once

#include <string>
#include <vector>

#include "mptt/ols.hpp"
#include "mptt/panel.hpp"

namespace mptt {

/// Inclusive year window [start, end].
struct Window {
    int start = 0;
    int end = 0;

    bool contains(int year) const { return year >= start && year <= end; }
};

enum class PhaseForm { step_in_time, hinge_in_money };

std::string to_string(PhaseForm form);
PhaseForm phase_form_from_string(const std::string& name);

/// One-phase fit ln P = a + beta * ln M on a window.
struct ClassicalFit {
    double a = 0.0;
    double beta = 0.0;
    Window window;
    OlsFit ols;
};

struct BreakSpec {
    int tau = 0;
    double ln_m_tau = 0.0;
    PhaseForm form = PhaseForm::step_in_time;
};

/// Two-phase fit ln P = a + beta1*ln M + gamma*phase(t); beta2 = beta1 + gamma
/// is the effective post-break transmission.
struct TwoPhaseFit {
    double a = 0.0;
    double beta1 = 0.0;
    double gamma = 0.0;
    double beta2 = 0.0;
    BreakSpec spec;
    Window window;
    OlsFit ols;
};

struct GapRow {
    int year = 0;
    double gap = 0.0;
    bool post_break = false;
};

/// Observed ln P minus the one-phase prediction, per year.
struct GapSeries {
    std::vector<GapRow> rows;
    std::vector<int> skipped_years;  // eval years absent from the panel
};

ClassicalFit classical_fit(const LogPanel& logpanel, Window window);

/// Phase regressor over the whole panel: step form is 0 for t <= tau and
/// (ln_m - ln_m_tau) after; hinge form is max(0, ln_m - ln_m_tau) everywhere.
std::vector<double> phase_regressor(const LogPanel& logpanel, const BreakSpec& spec);

TwoPhaseFit two_phase_fit(const LogPanel& logpanel, int tau, Window window,
                          PhaseForm form = PhaseForm::step_in_time);

double predict(const ClassicalFit& fit, double ln_m);
double predict(const TwoPhaseFit& fit, int year, double ln_m);

GapSeries extrapolation_gap(const LogPanel& logpanel, const ClassicalFit& fit,
                            Window eval_window);

std::string to_json(const ClassicalFit& fit);
std::string to_json(const TwoPhaseFit& fit);
std::string to_csv(const GapSeries& series);
std::string summary_csv_row(const TwoPhaseFit& fit, bool with_header);

}  // namespace mptt
