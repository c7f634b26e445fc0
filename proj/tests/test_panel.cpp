#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mptt/ols.hpp"
#include "mptt/panel.hpp"

using namespace mptt;

namespace {

AnnualPanel random_panel(unsigned seed, int n, int start_year = 1500) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.5, 200.0);
    AnnualPanel p;
    for (int i = 0; i < n; ++i)
        p.rows.push_back({start_year + i, unif(rng), unif(rng)});
    return p;
}

AnnualPanel parse(const std::string& csv, const CsvSchema& schema = {},
                  const YearFilter& filter = {}) {
    std::istringstream in(csv);
    return load_panel(in, schema, filter);
}

double slope_of(const LogPanel& lp) {
    std::vector<double> y, x;
    for (const auto& r : lp.rows) {
        y.push_back(r.ln_p);
        x.push_back(r.ln_m);
    }
    DesignMatrix d;
    d.add_column("ln_m", x);
    return ols(y, d).coefficient("ln_m");
}

}  // namespace

TEST_CASE("load_panel parses well-formed input") {
    auto p = parse("year,cpi,money_supply\n1500,100,100\n1501,102,103\n1502,104,106\n");
    REQUIRE(p.size() == 3);
    CHECK(p.rows[0].year == 1500);
    CHECK(p.rows[2].money_supply == doctest::Approx(106.0));
    CHECK(p.gap_years.empty());
}

TEST_CASE("load_panel validation errors") {
    CHECK_THROWS_AS(parse("year,cpi,money_supply\n1500,100,100\n1500,101,101\n"),
                    DuplicateYear);
    CHECK_THROWS_AS(parse("year,cpi,money_supply\n1501,-5,103\n"), InvalidValue);
    CHECK_THROWS_AS(parse("year,cpi,money_supply\n1501,abc,103\n"), InvalidValue);
    CHECK_THROWS_AS(parse("year,cpi\n1501,100\n"), SchemaError);
}

TEST_CASE("load_panel sorts, filters, and records gaps") {
    auto p = parse("year,cpi,money_supply\n1505,1,1\n1500,2,2\n1503,3,3\n");
    CHECK(p.rows[0].year == 1500);
    CHECK(p.rows[1].year == 1503);
    CHECK(p.gap_years == std::vector<int>{1501, 1502, 1504});

    auto filtered = parse("year,cpi,money_supply\n1500,1,1\n1501,2,2\n1502,3,3\n", {},
                          {1501, std::nullopt});
    CHECK(filtered.size() == 2);
    CHECK(filtered.rows[0].year == 1501);
}

TEST_CASE("load_panel honors a custom schema") {
    CsvSchema schema{"anno", "p", "m"};
    auto p = parse("anno,p,m\n1600,10,20\n1601,11,21\n", schema);
    CHECK(p.rows[0].price_level == doctest::Approx(10.0));
}

TEST_CASE("normalize_index rescales to the base value") {
    AnnualPanel p;
    p.rows = {{1500, 7.3, 2.0}, {1501, 14.6, 4.0}};
    auto q = normalize_index(p, 1500, 100.0);
    CHECK(q.rows[0].price_level == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(q.rows[1].price_level == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(q.rows[0].money_supply == doctest::Approx(100.0).epsilon(1e-12));

    auto r = normalize_index(q, 1500, 100.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(r.rows[i].price_level == doctest::Approx(q.rows[i].price_level));
        CHECK(r.rows[i].money_supply == doctest::Approx(q.rows[i].money_supply));
    }
    CHECK_THROWS_AS(normalize_index(p, 1499, 100.0), MissingBaseYear);
}

TEST_CASE("normalize_index preserves pairwise ratios") {
    auto p = random_panel(3, 20);
    auto q = normalize_index(p, 1507, 100.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            CHECK(q.rows[i].price_level / q.rows[j].price_level ==
                  doctest::Approx(p.rows[i].price_level / p.rows[j].price_level)
                      .epsilon(1e-12));
            CHECK(q.rows[i].money_supply / q.rows[j].money_supply ==
                  doctest::Approx(p.rows[i].money_supply / p.rows[j].money_supply)
                      .epsilon(1e-12));
        }
}

TEST_CASE("regression slope is unchanged by normalization") {
    auto p = random_panel(5, 20);
    const double b_raw = slope_of(to_log(p));
    const double b_norm = slope_of(to_log(normalize_index(p, 1510, 100.0)));
    CHECK(b_norm == doctest::Approx(b_raw).epsilon(1e-10));
}

TEST_CASE("to_log round-trips through exp") {
    AnnualPanel p;
    p.rows = {{1500, 100.0, 1.0}};
    auto lp = to_log(p);
    CHECK(lp.rows[0].ln_p == doctest::Approx(std::log(100.0)).epsilon(1e-12));
    CHECK(lp.rows[0].ln_m == doctest::Approx(0.0));

    auto q = random_panel(9, 30);
    auto lq = to_log(q);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(std::exp(lq.rows[i].ln_p) ==
              doctest::Approx(q.rows[i].price_level).epsilon(1e-12));
        CHECK(std::exp(lq.rows[i].ln_m) ==
              doctest::Approx(q.rows[i].money_supply).epsilon(1e-12));
    }
}

TEST_CASE("growth_rates match brute-force log differences") {
    AnnualPanel p;
    p.rows = {{1500, 100.0, 50.0}, {1501, 100.0 * std::exp(0.02), 50.0}};
    auto g = growth_rates(to_log(p));
    REQUIRE(g.rows.size() == 1);
    CHECK(g.rows[0].pi == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.rows[0].mu == doctest::Approx(0.0));

    auto q = random_panel(17, 10);
    auto gq = growth_rates(to_log(q));
    for (std::size_t i = 0; i < gq.rows.size(); ++i) {
        const double pi = 100.0 * (std::log(q.rows[i + 1].price_level) -
                                   std::log(q.rows[i].price_level));
        const double mu = 100.0 * (std::log(q.rows[i + 1].money_supply) -
                                   std::log(q.rows[i].money_supply));
        CHECK(gq.rows[i].pi == doctest::Approx(pi).epsilon(1e-12));
        CHECK(gq.rows[i].mu == doctest::Approx(mu).epsilon(1e-12));
    }
}

TEST_CASE("growth_rates flag gap-spanning rows and need two rows") {
    AnnualPanel p;
    p.rows = {{1500, 100, 100}, {1503, 110, 120}};
    auto g = growth_rates(to_log(p));
    CHECK(g.rows[0].spans_gap);
    CHECK(g.rows[0].pi == doctest::Approx(100.0 * std::log(1.1)).epsilon(1e-12));

    AnnualPanel single;
    single.rows = {{1500, 100, 100}};
    CHECK_THROWS_AS(growth_rates(to_log(single)), InsufficientData);
}

TEST_CASE("growth rates are invariant to index scale") {
    auto p = random_panel(21, 15);
    auto scaled = p;
    for (auto& r : scaled.rows) {
        r.price_level *= 37.5;
        r.money_supply *= 0.004;
    }
    auto g1 = growth_rates(to_log(p));
    auto g2 = growth_rates(to_log(scaled));
    for (std::size_t i = 0; i < g1.rows.size(); ++i) {
        CHECK(g2.rows[i].pi == doctest::Approx(g1.rows[i].pi).epsilon(1e-12));
        CHECK(g2.rows[i].mu == doctest::Approx(g1.rows[i].mu).epsilon(1e-12));
    }
}

TEST_CASE("regime_summary endpoint ratios") {
    AnnualPanel p;
    p.rows = {{1500, 100, 100}, {1550, 150, 170}, {1600, 200, 200}};
    auto s = regime_summary(p, 1500, 1600);
    CHECK(s.cpi_multiple == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.money_multiple == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.transmission_ratio == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(regime_summary(p, 1500, 1601), MissingYear);
    CHECK_THROWS_AS(regime_summary(p, 1600, 1500), DataError);

    AnnualPanel flat;
    flat.rows = {{1500, 100, 100}, {1600, 120, 100}};
    CHECK_THROWS_AS(regime_summary(flat, 1500, 1600), UndefinedRatio);
}

TEST_CASE("regime multiples are multiplicative across subwindows") {
    auto p = random_panel(31, 40);
    auto ab = regime_summary(p, 1500, 1515);
    auto bc = regime_summary(p, 1515, 1539);
    auto ac = regime_summary(p, 1500, 1539);
    CHECK(ac.cpi_multiple ==
          doctest::Approx(ab.cpi_multiple * bc.cpi_multiple).epsilon(1e-10));
    CHECK(ac.money_multiple ==
          doctest::Approx(ab.money_multiple * bc.money_multiple).epsilon(1e-10));
}

TEST_CASE("panel CSV serialization round-trips") {
    auto p = random_panel(41, 25);
    auto q = parse(to_csv(p));
    REQUIRE(q.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(q.rows[i].year == p.rows[i].year);
        CHECK(q.rows[i].price_level ==
              doctest::Approx(p.rows[i].price_level).epsilon(1e-11));
        CHECK(q.rows[i].money_supply ==
              doctest::Approx(p.rows[i].money_supply).epsilon(1e-11));
    }
}
