#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mptt/break_scan.hpp"
#include "mptt/panel.hpp"
#include "mptt/phase_model.hpp"
#include "mptt/report.hpp"
#include "mptt/synth.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string input;
    std::string out_dir;
    std::string prefix = "mptt";
    std::string year_col = "year";
    std::string price_col = "cpi";
    std::string money_col = "money_supply";
    bool no_normalize = false;
    std::optional<int> base_year;
    double base_value = 100.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input = true) {
    auto* in = cmd->add_option("-i,--input", opts.input, "panel CSV file");
    if (needs_input) in->required();
    const char* env_dir = std::getenv("MPTT_OUT_DIR");
    opts.out_dir = env_dir ? env_dir : ".";
    cmd->add_option("-o,--out-dir", opts.out_dir,
                    "output directory (default $MPTT_OUT_DIR or .)");
    cmd->add_option("-p,--prefix", opts.prefix, "output file prefix");
    cmd->add_option("--year-col", opts.year_col, "year column name");
    cmd->add_option("--price-col", opts.price_col, "price column name");
    cmd->add_option("--money-col", opts.money_col, "money column name");
    cmd->add_flag("--no-normalize", opts.no_normalize,
                  "fit on raw levels instead of normalized indices");
    cmd->add_option("--base-year", opts.base_year,
                    "normalization base year (default: first panel year)");
    cmd->add_option("--base-value", opts.base_value, "normalization base value");
}

struct LoadedPanel {
    mptt::AnnualPanel panel;
    mptt::LogPanel logpanel;
    int base_year = 0;
    bool normalized = false;
};

LoadedPanel load(const CommonOpts& opts) {
    mptt::CsvSchema schema{opts.year_col, opts.price_col, opts.money_col};
    LoadedPanel out;
    out.panel = mptt::load_panel_file(opts.input, schema);
    if (out.panel.rows.empty()) throw mptt::DataError("panel is empty");
    if (!opts.no_normalize) {
        out.base_year = opts.base_year.value_or(out.panel.rows.front().year);
        out.panel = mptt::normalize_index(out.panel, out.base_year, opts.base_value);
        out.normalized = true;
    }
    out.logpanel = mptt::to_log(out.panel);
    return out;
}

std::string out_path(const CommonOpts& opts, const std::string& suffix) {
    return opts.out_dir + "/" + opts.prefix + suffix;
}

void write_metadata(const CommonOpts& opts, const std::string& command,
                    const nlohmann::ordered_json& resolved) {
    nlohmann::ordered_json j{{"command", command},
                             {"version", kVersion},
                             {"noise_generator", "splitmix64+box-muller"},
                             {"information_criteria", "aic=n*ln(sse/n)+2k, bic=n*ln(sse/n)+k*ln(n)"},
                             {"config", resolved}};
    mptt::atomic_write_file(out_path(opts, "_run_metadata.json"), j.dump(2) + "\n");
}

nlohmann::ordered_json common_config(const CommonOpts& opts, const LoadedPanel* lp) {
    nlohmann::ordered_json j{{"input", opts.input},
                             {"out_dir", opts.out_dir},
                             {"prefix", opts.prefix},
                             {"columns", {opts.year_col, opts.price_col, opts.money_col}}};
    if (lp) {
        j["normalized"] = lp->normalized;
        if (lp->normalized) {
            j["base_year"] = lp->base_year;
            j["base_value"] = opts.base_value;
        }
    }
    return j;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"MPTT two-phase money-price transmission toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // summary
    CommonOpts sum_opts;
    std::string sum_window;
    auto* sum = app.add_subcommand("summary", "regime summary over a window");
    add_common(sum, sum_opts);
    sum->add_option("-w,--window", sum_window, "start:end")->required();

    // fit-classical
    CommonOpts fc_opts;
    std::string fc_window = "1500:1600";
    auto* fc = app.add_subcommand("fit-classical", "one-phase log-level fit");
    add_common(fc, fc_opts);
    fc->add_option("-w,--window", fc_window, "start:end (default 1500:1600)");

    // fit-twophase
    CommonOpts ft_opts;
    std::string ft_window = "1500:1700";
    int ft_tau = 1600;
    std::string ft_form = "step";
    auto* ft = app.add_subcommand("fit-twophase", "two-phase fit at a fixed tau");
    add_common(ft, ft_opts);
    ft->add_option("-w,--window", ft_window, "start:end (default 1500:1700)");
    ft->add_option("-t,--tau", ft_tau, "transition year (default 1600)");
    ft->add_option("--form", ft_form, "step or hinge (default step)");

    // scan
    CommonOpts sc_opts;
    std::string sc_window = "1500:1700";
    int sc_trim = 10;
    std::string sc_criterion = "bic";
    std::string sc_form = "step";
    auto* sc = app.add_subcommand("scan", "unrestricted break scan");
    add_common(sc, sc_opts);
    sc->add_option("-w,--window", sc_window, "start:end (default 1500:1700)");
    sc->add_option("--trim", sc_trim, "min observations per side (default 10)");
    sc->add_option("--criterion", sc_criterion, "bic or aic (default bic)");
    sc->add_option("--form", sc_form, "step or hinge (default step)");
    std::string sc_candidates;
    sc->add_option("--candidates", sc_candidates,
                   "restrict candidate break years to start:end");

    // gap
    CommonOpts gp_opts;
    std::string gp_fit_window = "1500:1600";
    std::string gp_eval_window = "1500:1700";
    std::optional<int> gp_tau;
    std::string gp_form = "step";
    auto* gp = app.add_subcommand("gap", "classical extrapolation gap");
    add_common(gp, gp_opts);
    gp->add_option("--fit-window", gp_fit_window, "training window (default 1500:1600)");
    gp->add_option("--eval-window", gp_eval_window, "evaluation window (default 1500:1700)");
    gp->add_option("-t,--tau", gp_tau, "also overlay a two-phase fit at this tau");
    gp->add_option("--form", gp_form, "step or hinge (default step)");

    // compare
    CommonOpts cp_opts;
    std::string cp_window = "1500:1700";
    int cp_tau = 1600;
    std::string cp_form = "step";
    auto* cp = app.add_subcommand("compare", "one-phase vs two-phase comparison");
    add_common(cp, cp_opts);
    cp->add_option("-w,--window", cp_window, "start:end (default 1500:1700)");
    cp->add_option("-t,--tau", cp_tau, "transition year (default 1600)");
    cp->add_option("--form", cp_form, "step or hinge (default step)");

    // synth
    CommonOpts sy_opts;
    std::string sy_spec;
    bool sy_paper_like = false;
    std::optional<std::uint64_t> sy_seed;
    std::optional<double> sy_sigma;
    auto* sy = app.add_subcommand("synth", "generate a planted synthetic panel");
    add_common(sy, sy_opts, /*needs_input=*/false);
    sy->add_option("-s,--spec", sy_spec, "SyntheticSpec JSON file");
    sy->add_flag("--paper-like", sy_paper_like, "use the canonical test spec");
    sy->add_option("--seed", sy_seed, "override the spec seed");
    sy->add_option("--sigma", sy_sigma, "override the spec noise sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, bad config exits 2
    }

    if (sum->parsed()) {
        auto lp = load(sum_opts);
        auto w = mptt::parse_window(sum_window);
        auto summary = mptt::regime_summary(lp.panel, w.start, w.end);
        mptt::atomic_write_file(out_path(sum_opts, "_two_regime_summary.csv"),
                                mptt::to_csv(summary));
        mptt::atomic_write_file(out_path(sum_opts, "_two_regime_summary.json"),
                                mptt::to_json(summary));
        auto cfg = common_config(sum_opts, &lp);
        cfg["window"] = {w.start, w.end};
        write_metadata(sum_opts, "summary", cfg);
        std::cout << mptt::to_json(summary);
    } else if (fc->parsed()) {
        auto lp = load(fc_opts);
        auto w = mptt::parse_window(fc_window);
        auto fit = mptt::classical_fit(lp.logpanel, w);
        mptt::atomic_write_file(out_path(fc_opts, "_classical_fit.json"),
                                mptt::to_json(fit));
        auto cfg = common_config(fc_opts, &lp);
        cfg["window"] = {w.start, w.end};
        write_metadata(fc_opts, "fit-classical", cfg);
        std::cout << mptt::to_json(fit);
    } else if (ft->parsed()) {
        auto lp = load(ft_opts);
        auto w = mptt::parse_window(ft_window);
        auto form = mptt::phase_form_from_string(ft_form);
        auto fit = mptt::two_phase_fit(lp.logpanel, ft_tau, w, form);
        mptt::atomic_write_file(out_path(ft_opts, "_twophase_fit.json"),
                                mptt::to_json(fit));
        mptt::atomic_write_file(out_path(ft_opts, "_twophase_model_summary.csv"),
                                mptt::summary_csv_row(fit, true));
        auto cfg = common_config(ft_opts, &lp);
        cfg["window"] = {w.start, w.end};
        cfg["tau"] = ft_tau;
        cfg["form"] = ft_form;
        write_metadata(ft_opts, "fit-twophase", cfg);
        std::cout << mptt::to_json(fit);
    } else if (sc->parsed()) {
        auto lp = load(sc_opts);
        auto w = mptt::parse_window(sc_window);
        std::optional<mptt::Window> candidates;
        if (!sc_candidates.empty()) candidates = mptt::parse_window(sc_candidates);
        auto result = mptt::scan(lp.logpanel, w, sc_trim,
                                 mptt::criterion_from_string(sc_criterion),
                                 mptt::phase_form_from_string(sc_form), candidates);
        mptt::atomic_write_file(out_path(sc_opts, "_break_scan.csv"),
                                mptt::to_csv(result));
        mptt::atomic_write_file(out_path(sc_opts, "_break_scan_summary.json"),
                                mptt::summary_json(result));
        auto cfg = common_config(sc_opts, &lp);
        cfg["window"] = {w.start, w.end};
        cfg["trim"] = sc_trim;
        cfg["criterion"] = sc_criterion;
        cfg["form"] = sc_form;
        if (candidates) cfg["candidates"] = {candidates->start, candidates->end};
        write_metadata(sc_opts, "scan", cfg);
        std::cout << mptt::summary_json(result);
    } else if (gp->parsed()) {
        auto lp = load(gp_opts);
        auto fit_w = mptt::parse_window(gp_fit_window);
        auto eval_w = mptt::parse_window(gp_eval_window);
        auto fit = mptt::classical_fit(lp.logpanel, fit_w);
        auto gap = mptt::extrapolation_gap(lp.logpanel, fit, eval_w);
        for (int year : gap.skipped_years)
            std::cerr << "warning: year " << year << " missing from panel, skipped\n";
        std::optional<mptt::TwoPhaseFit> two_phase;
        if (gp_tau)
            two_phase = mptt::two_phase_fit(lp.logpanel, *gp_tau, eval_w,
                                            mptt::phase_form_from_string(gp_form));
        mptt::atomic_write_file(out_path(gp_opts, "_gap.csv"), mptt::to_csv(gap));
        mptt::atomic_write_file(
            out_path(gp_opts, "_series_long.csv"),
            mptt::long_format_report(lp.logpanel, eval_w, &fit,
                                     two_phase ? &*two_phase : nullptr, &gap));
        auto cfg = common_config(gp_opts, &lp);
        cfg["fit_window"] = {fit_w.start, fit_w.end};
        cfg["eval_window"] = {eval_w.start, eval_w.end};
        if (gp_tau) {
            cfg["tau"] = *gp_tau;
            cfg["form"] = gp_form;
        }
        write_metadata(gp_opts, "gap", cfg);
        std::cout << mptt::to_json(fit);
    } else if (cp->parsed()) {
        auto lp = load(cp_opts);
        auto w = mptt::parse_window(cp_window);
        auto cmp = mptt::compare_models(lp.logpanel, w, cp_tau,
                                        mptt::phase_form_from_string(cp_form));
        mptt::atomic_write_file(out_path(cp_opts, "_model_compare.json"),
                                mptt::to_json(cmp));
        auto cfg = common_config(cp_opts, &lp);
        cfg["window"] = {w.start, w.end};
        cfg["tau"] = cp_tau;
        cfg["form"] = cp_form;
        write_metadata(cp_opts, "compare", cfg);
        std::cout << mptt::to_json(cmp);
    } else if (sy->parsed()) {
        mptt::SyntheticSpec spec;
        if (sy_paper_like)
            spec = mptt::paper_like_spec();
        else if (!sy_spec.empty())
            spec = mptt::load_spec_file(sy_spec);
        else
            throw mptt::ConfigError("synth requires --spec or --paper-like");
        if (sy_seed) spec.seed = *sy_seed;
        if (sy_sigma) spec.noise_sigma = *sy_sigma;
        auto panel = mptt::generate(spec);
        mptt::atomic_write_file(out_path(sy_opts, "_synthetic_panel.csv"),
                                mptt::to_csv(panel, mptt::CsvSchema{
                                                        sy_opts.year_col,
                                                        sy_opts.price_col,
                                                        sy_opts.money_col}));
        mptt::atomic_write_file(out_path(sy_opts, "_synthetic_spec.json"),
                                mptt::to_json(spec));
        auto cfg = common_config(sy_opts, nullptr);
        cfg["spec"] = nlohmann::ordered_json::parse(mptt::to_json(spec));
        write_metadata(sy_opts, "synth", cfg);
        std::cout << mptt::to_json(spec);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const mptt::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const mptt::DataError& e) {
        std::cerr << "error: data: " << e.what() << "\n";
        return 3;
    } catch (const mptt::NumericError& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
