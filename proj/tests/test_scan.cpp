#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lppl/scan.hpp"
#include "test_support.hpp"

using namespace lppl;
using namespace lppl::test;
using namespace std::chrono;

namespace {

Date ymd(int y, unsigned m, unsigned d) { return Date{year{y}, month{m}, day{d}}; }

FitResult result_with(double mse, Date start, std::size_t n = 100) {
    FitResult r;
    r.n_obs = n;
    r.mse = mse;
    r.ssr = mse * static_cast<double>(n);
    r.window_start = start;
    return r;
}

}  // namespace

TEST_CASE("window starts step on trading days with both ends included") {
    ScanConfig c;
    c.t1_first = ymd(2014, 6, 12);
    c.t1_last = ymd(2014, 7, 10);
    c.t2 = ymd(2016, 3, 18);
    const auto starts = window_starts(c);
    REQUIRE(starts.size() == 5);
    CHECK(starts[0] == ymd(2014, 6, 12));
    CHECK(starts[1] == ymd(2014, 6, 19));
    CHECK(starts[2] == ymd(2014, 6, 26));
    CHECK(starts[3] == ymd(2014, 7, 3));
    CHECK(starts[4] == ymd(2014, 7, 10));

    c.t1_last = ymd(2014, 7, 9);
    CHECK(window_starts(c).size() == 4);

    // a weekend t1_first moves to the next Monday
    c.t1_first = ymd(2014, 6, 14);
    CHECK(window_starts(c).front() == ymd(2014, 6, 16));

    // a holiday shifts the steps
    c.t1_first = ymd(2014, 6, 12);
    c.calendar = TradingCalendar({ymd(2014, 6, 17)});
    CHECK(window_starts(c)[1] == ymd(2014, 6, 20));
}

TEST_CASE("scan config validation") {
    ScanConfig c;
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c.t1_first = ymd(2014, 7, 1);
    c.t1_last = ymd(2014, 6, 1);
    c.t2 = ymd(2015, 1, 1);
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c.t1_last = ymd(2015, 1, 1);
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c.t1_last = ymd(2014, 8, 1);
    c.t1_step = 0;
    CHECK(error_kind([&] { c.validate(); }) == ErrorKind::InvalidArgument);
    c.t1_step = 5;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("compare_windows ranks by mse") {
    const Date d0 = ymd(2014, 6, 12), d1 = ymd(2014, 6, 19), d2 = ymd(2014, 6, 26);
    const auto ranked =
        compare_windows({result_with(0.2, d0), result_with(0.1, d1), result_with(0.3, d2)});
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].mse == 0.1);
    CHECK(ranked[1].mse == 0.2);
    CHECK(ranked[2].mse == 0.3);

    const auto tie = compare_windows({result_with(0.5, d1), result_with(0.5, d0)});
    CHECK(tie[0].window_start == d0);

    const auto single = compare_windows({result_with(0.7, d2)});
    REQUIRE(single.size() == 1);
    CHECK(single[0].mse == 0.7);

    CHECK(error_kind([] { compare_windows({}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("mse and ssr rankings coincide for equal-length windows") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FitResult> rs;
        const auto dates = weekdays(12);
        for (int i = 0; i < 12; ++i) rs.push_back(result_with(u(rng), dates[i], 250));
        auto by_ssr = rs;
        std::stable_sort(by_ssr.begin(), by_ssr.end(), [](const auto& a, const auto& b) {
            return a.ssr != b.ssr ? a.ssr < b.ssr : a.window_start < b.window_start;
        });
        const auto ranked = compare_windows(rs);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            REQUIRE(ranked[i].window_start == by_ssr[i].window_start);
        }
    }
}

TEST_CASE("adding a worse window never changes the best") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto dates = weekdays(40);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 1 + static_cast<std::size_t>(u(rng) * 10);
        std::vector<FitResult> rs;
        for (std::size_t i = 0; i < k; ++i) {
            rs.push_back(result_with(u(rng), dates[i], 60 + static_cast<std::size_t>(i)));
        }
        const FitResult best = compare_windows(rs).front();
        rs.insert(rs.begin() + static_cast<long>(u(rng) * static_cast<double>(rs.size())),
                  result_with(best.mse + 1e-9 + u(rng), dates[20 + trial % 20]));
        const FitResult again = compare_windows(rs).front();
        REQUIRE(again.window_start == best.window_start);
        REQUIRE(again.mse == best.mse);
    }
}

TEST_CASE("sample_std against a two-pass oracle") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 30);
        const double shift = g(rng) * 100, scale = std::exp(g(rng) * 3);
        std::vector<double> v(n);
        for (double& x : v) x = shift + scale * g(rng);
        const double want = two_pass_std(v);
        REQUIRE(sample_std(v) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(sample_std({4.0}) == 0.0);
    CHECK(sample_std({1.0, 2.0, 3.0}) == doctest::Approx(1.0));
}

TEST_CASE("tc_to_date rounds half up on the trading calendar") {
    const TradingCalendar cal;
    const Date fri = ymd(2014, 6, 13);
    CHECK(tc_to_date(cal, fri, 0.0) == fri);
    CHECK(tc_to_date(cal, fri, 0.49) == fri);
    CHECK(tc_to_date(cal, fri, 0.5) == ymd(2014, 6, 16));
    CHECK(tc_to_date(cal, fri, 2.5) == ymd(2014, 6, 18));
    CHECK(tc_to_date(cal, fri, -0.5) == fri);
    CHECK(tc_to_date(cal, fri, -0.51) == ymd(2014, 6, 12));
    CHECK(tc_to_date(cal, fri, 5.2) == ymd(2014, 6, 20));
}

TEST_CASE("scan on a noiseless bubble") {
    SynthSpec spec;
    spec.n = 160;
    spec.params = LpplParams::from_phase_form(100, -1, 0.25, -1.2, 0.45, 8.5, 159 + 12.3);
    const PriceSeries s = generate(spec);

    ScanConfig c;
    c.t1_first = s.dates()[0];
    c.t1_last = s.dates()[10];
    c.t2 = s.back_date();
    c.fit.constraints = ConstraintSet::raw_prices();
    const ScanResult r = scan(s, c);

    REQUIRE(r.windows.size() == 3);
    CHECK(r.windows[1].t1 == s.dates()[5]);
    CHECK(r.anchor == s.back_date());
    std::vector<double> offsets;
    for (const WindowFit& w : r.windows) {
        REQUIRE(w.fit.has_value());
        CHECK(w.fit->window_start == w.t1);
        CHECK(w.fit->window_end == c.t2);
        CHECK(w.fit->mse >= r.best.mse);
        CHECK(std::abs(w.fit->tc_offset() - 12.3) < 0.5);
        offsets.push_back(w.fit->tc_offset());
    }
    // later windows are strict subsets of earlier ones
    CHECK(r.windows[0].fit->n_obs > r.windows[1].fit->n_obs);
    CHECK(r.windows[1].fit->n_obs > r.windows[2].fit->n_obs);

    CHECK(r.tc_std < 1e-3);
    CHECK(r.tc_std == doctest::Approx(two_pass_std(offsets)).epsilon(1e-12));
    CHECK(r.tc_mean == doctest::Approx(sample_mean(offsets)).epsilon(1e-12));
    CHECK(r.tc_offset == r.best.tc_offset());
    CHECK(r.tc_date == tc_to_date(c.calendar, r.anchor, r.tc_offset));
    CHECK(r.band_low <= r.tc_date);
    CHECK(r.tc_date <= r.band_high);
    CHECK(r.best_t1 == r.best.window_start);
}

TEST_CASE("scan statistics on a noisy bubble") {
    const SynthSpec spec = random_case(17, 200, 0.02);
    const PriceSeries s = generate(spec);
    ScanConfig c;
    c.t1_first = s.dates()[0];
    c.t1_last = s.dates()[15];
    c.t2 = s.back_date();
    c.fit.constraints = ConstraintSet::raw_prices();
    const ScanResult r = scan(s, c);
    REQUIRE(r.windows.size() == 4);

    const auto ok = r.successful();
    std::vector<double> offsets;
    double min_mse = ok.front().mse;
    for (const FitResult& f : ok) {
        offsets.push_back(f.tc_offset());
        min_mse = std::min(min_mse, f.mse);
    }
    CHECK(r.best.mse == min_mse);
    CHECK(r.tc_std == doctest::Approx(two_pass_std(offsets)).epsilon(1e-12));
    const TradingCalendar cal;
    CHECK(r.band_low == tc_to_date(cal, r.anchor, r.tc_offset - r.tc_std));
    CHECK(r.band_high == tc_to_date(cal, r.anchor, r.tc_offset + r.tc_std));
}

TEST_CASE("failed windows are excluded") {
    ScanResult r;
    const auto dates = weekdays(3);
    r.windows.push_back({dates[0], result_with(0.4, dates[0]), {}});
    r.windows.push_back({dates[1], std::nullopt, "no feasible fit"});
    r.windows.push_back({dates[2], result_with(0.2, dates[2]), {}});
    const auto ok = r.successful();
    REQUIRE(ok.size() == 2);
    CHECK(ok[0].window_start == dates[0]);
    CHECK(ok[1].window_start == dates[2]);
}

TEST_CASE("scan errors") {
    // anti-bubble: every window fails
    const LpplParams anti{0, 1000, 0, 0, 0.5, 9, 90};
    std::vector<double> v(70);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = evaluate_lppl(anti, static_cast<double>(i));
    const PriceSeries s = make_series(v);
    ScanConfig c;
    c.t1_first = s.dates()[0];
    c.t1_last = s.dates()[5];
    c.t2 = s.back_date();
    CHECK(error_kind([&] { scan(s, c); }) == ErrorKind::NoFeasibleFit);

    c.t1_last = s.dates()[45];
    CHECK(error_kind([&] { scan(s, c); }) == ErrorKind::InvalidArgument);
}
