#include <doctest.h>

#include <random>

#include "cardguard/window.hpp"
#include "oracle.hpp"

using namespace cardguard;

namespace {

ForgettingWindow make_window(int n, double lambda, double c = 3.0, double rho = 0.0,
                             double a0 = 0.0) {
    return ForgettingWindow(WindowParams{n, lambda, c, rho, a0});
}

ForgettingWindow window_with(std::vector<Cents> amounts, int n, double lambda, double c = 3.0,
                             double rho = 0.0, double a0 = 0.0) {
    auto w = make_window(n, lambda, c, rho, a0);
    for (Cents a : amounts) w.observe(a);
    return w;
}

std::vector<double> dollars(const std::vector<Cents>& cents) {
    std::vector<double> out;
    for (Cents c : cents) out.push_back(to_dollars(c));
    return out;
}

}  // namespace

TEST_CASE("observe keeps at most N amounts, oldest evicted") {
    auto w = window_with({100, 200, 300}, 3, 0.9);
    w.observe(400);
    CHECK(w.contents() == std::vector<Cents>{200, 300, 400});

    auto growing = window_with({100}, 3, 0.9);
    growing.observe(400);
    CHECK(growing.contents() == std::vector<Cents>{100, 400});

    auto tiny = window_with({900}, 1, 0.9);
    tiny.observe(400);
    CHECK(tiny.contents() == std::vector<Cents>{400});
}

TEST_CASE("observe rejects negative amounts") {
    auto w = make_window(3, 0.9);
    CHECK_THROWS_AS(w.observe(-1), std::invalid_argument);
}

TEST_CASE("weighted mean on hand-checked buffers") {
    // Constant series: mean is the constant for any lambda.
    for (double lambda : {0.3, 0.9, 1.0}) {
        auto w = window_with({1000, 1000, 1000}, 3, lambda);
        CHECK(*w.mean() == doctest::Approx(10.0).epsilon(1e-12));
    }
    // [1, 2] oldest-first, lambda 0.5: (0.5*1 + 1*2) / 1.5 = 5/3.
    auto w = window_with({100, 200}, 3, 0.5);
    CHECK(*w.mean() == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    // lambda = 1 reduces to the arithmetic mean.
    auto flat = window_with({100, 200, 300}, 3, 1.0);
    CHECK(*flat.mean() == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_FALSE(make_window(3, 0.9).mean().has_value());
}

TEST_CASE("weighted deviation on hand-checked buffers") {
    for (double lambda : {0.3, 0.9, 1.0}) {
        auto w = window_with({700, 700, 700, 700}, 4, lambda);
        CHECK(*w.deviation() == doctest::Approx(0.0).epsilon(1e-9));
    }
    // [1, 2], lambda 0.5: sqrt((0.5*(1-5/3)^2 + (2-5/3)^2) / 1.5) = sqrt(2)/3.
    auto w = window_with({100, 200}, 3, 0.5);
    CHECK(*w.deviation() == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
    // lambda = 1: population deviation of {1,2,3} = sqrt(2/3).
    auto flat = window_with({100, 200, 300}, 3, 1.0);
    CHECK(*flat.deviation() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    CHECK_FALSE(make_window(3, 0.9).deviation().has_value());
}

TEST_CASE("interval follows m +- c*s_eff with the deviation floor") {
    // Buffer [8, 12] at lambda 1: m = 10, s = 2; c = 2 -> (6, 14).
    auto w = window_with({800, 1200, 800, 1200}, 4, 1.0, 2.0);
    auto band = w.interval();
    REQUIRE(band.has_value());
    CHECK(band->lo == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(band->hi == doctest::Approx(14.0).epsilon(1e-12));

    // Constant buffer: s = 0, floor 0.1*10 + 1 = 2 -> same (6, 14).
    auto floored = window_with({1000, 1000, 1000}, 3, 1.0, 2.0, 0.1, 1.0);
    auto fband = floored.interval();
    REQUIRE(fband.has_value());
    CHECK(fband->lo == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(fband->hi == doctest::Approx(14.0).epsilon(1e-9));

    // Collapsed: both endpoints zero.
    auto collapsed = window_with({1000, 1000, 1000}, 3, 1.0, 2.0);
    collapsed.collapse();
    CHECK(*collapsed.interval() == Interval{0.0, 0.0});

    // Warm-up: fewer than min(3, N) amounts, not collapsed.
    CHECK_FALSE(window_with({1000}, 3, 1.0).interval().has_value());
    // Degenerate N=1 window estimates from a single amount.
    CHECK(window_with({1000}, 1, 1.0, 2.0, 0.1, 1.0).interval().has_value());
}

TEST_CASE("classify flags only upper exceedance") {
    auto w = window_with({800, 1200, 800, 1200}, 4, 1.0, 2.0);  // band (6, 14)
    CHECK(*w.classify(1399) == AmountClass::Inlier);
    CHECK(*w.classify(1401) == AmountClass::UpperOutlier);
    // Below the low endpoint is still an inlier for the amount monitor.
    CHECK(*w.classify(100) == AmountClass::Inlier);

    w.collapse();
    CHECK(*w.classify(1) == AmountClass::UpperOutlier);  // 0.01 above the zero band
    CHECK(*w.classify(0) == AmountClass::Inlier);

    CHECK_FALSE(window_with({1000}, 3, 1.0).classify(500).has_value());
}

TEST_CASE("collapse snapshots and is idempotent; reset restores exactly") {
    auto w = window_with({900, 1000, 1100, 1050}, 10, 0.9, 3.0, 0.1, 1.0);
    auto before = w.interval();
    REQUIRE(before.has_value());

    CHECK(w.collapse());
    CHECK(w.collapsed());
    CHECK(*w.interval() == Interval{0.0, 0.0});
    CHECK(w.effective_mean() == 0.0);

    auto snapshot_buffer = w.snapshot()->buffer;
    CHECK(snapshot_buffer == std::vector<Cents>{900, 1000, 1100, 1050});

    CHECK_FALSE(w.collapse());  // second collapse is a no-op
    CHECK(w.snapshot()->buffer == snapshot_buffer);

    CHECK(w.reset());
    CHECK_FALSE(w.collapsed());
    CHECK_FALSE(w.snapshot().has_value());
    auto after = w.interval();
    REQUIRE(after.has_value());
    CHECK(after->lo == before->lo);  // bit-for-bit
    CHECK(after->hi == before->hi);
}

TEST_CASE("reset on a non-collapsed window is rejected") {
    auto w = window_with({900, 1000, 1100}, 10, 0.9);
    CHECK_FALSE(w.reset());
}

TEST_CASE("collapse on a warm-up buffer snapshots the degenerate state") {
    auto w = window_with({900}, 10, 0.9);
    CHECK(w.collapse());
    CHECK(w.snapshot()->buffer == std::vector<Cents>{900});
    CHECK(*w.interval() == Interval{0.0, 0.0});
    CHECK(w.reset());
    CHECK(w.contents() == std::vector<Cents>{900});
}

TEST_CASE("replay equivalence: collapse/reset leaves no trace") {
    auto attacked = window_with({900, 1000, 1100, 1050}, 10, 0.9, 3.0, 0.1, 1.0);
    auto untouched = attacked;

    attacked.collapse();
    // Capped observations during the attack are discarded by the restore.
    attacked.observe(5000);
    attacked.observe(5000);
    attacked.reset();

    attacked.observe(1200);
    untouched.observe(1200);
    CHECK(attacked.contents() == untouched.contents());
    CHECK(*attacked.interval() == *untouched.interval());
}

TEST_CASE("streaming stats match the brute-force oracle over random sequences") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<Cents> amount(1, 100000);
    for (int n : {1, 3, 20}) {
        for (double lambda : {0.5, 0.9, 1.0}) {
            for (int rep = 0; rep < 30; ++rep) {
                auto w = make_window(n, lambda);
                std::vector<Cents> tail;
                for (int step = 0; step < 50; ++step) {
                    Cents a = amount(rng);
                    w.observe(a);
                    tail.push_back(a);
                    if (static_cast<int>(tail.size()) > n) tail.erase(tail.begin());
                    auto expect = oracle::weighted_stats(dollars(tail), lambda);
                    CHECK(oracle::close_rel(*w.mean(), expect.mean, 1e-9));
                    CHECK(oracle::close_rel(*w.deviation(), expect.deviation, 1e-9));
                }
            }
        }
    }
}

TEST_CASE("lambda=1 equals unweighted statistics") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Cents> amount(1, 100000);
    for (int rep = 0; rep < 100; ++rep) {
        auto w = make_window(20, 1.0);
        std::vector<Cents> tail;
        for (int step = 0; step < 30; ++step) {
            Cents a = amount(rng);
            w.observe(a);
            tail.push_back(a);
            if (tail.size() > 20) tail.erase(tail.begin());
        }
        auto expect = oracle::plain_stats(dollars(tail));
        CHECK(oracle::close_rel(*w.mean(), expect.mean, 1e-12));
        CHECK(oracle::close_rel(*w.deviation(), expect.deviation, 1e-12));
    }
}

TEST_CASE("mean stays inside the buffer hull, deviation nonnegative, hi >= lo >= 0") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Cents> amount(1, 100000);
    std::uniform_real_distribution<double> lambda_pick(0.05, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        double lambda = lambda_pick(rng);
        auto w = make_window(8, lambda, 3.0, 0.1, 1.0);
        Cents lo_seen = std::numeric_limits<Cents>::max(), hi_seen = 0;
        std::vector<Cents> tail;
        for (int step = 0; step < 16; ++step) {
            Cents a = amount(rng);
            w.observe(a);
            tail.push_back(a);
            if (tail.size() > 8) tail.erase(tail.begin());
            lo_seen = *std::min_element(tail.begin(), tail.end());
            hi_seen = *std::max_element(tail.begin(), tail.end());
            CHECK(*w.mean() >= to_dollars(lo_seen));
            CHECK(*w.mean() <= to_dollars(hi_seen));
            CHECK(*w.deviation() >= 0.0);
            if (auto band = w.interval()) {
                CHECK(band->hi >= band->lo);
                CHECK(band->lo >= 0.0);
            }
        }
    }
}

TEST_CASE("scale equivariance with a0 = 0") {
    auto base = window_with({700, 1300, 900, 1100, 1000}, 5, 0.8, 2.5, 0.1, 0.0);
    auto scaled = window_with({2100, 3900, 2700, 3300, 3000}, 5, 0.8, 2.5, 0.1, 0.0);
    const double alpha = 3.0;

    CHECK(*scaled.mean() == doctest::Approx(alpha * *base.mean()).epsilon(1e-12));
    CHECK(*scaled.deviation() == doctest::Approx(alpha * *base.deviation()).epsilon(1e-12));
    auto b = *base.interval();
    auto s = *scaled.interval();
    CHECK(s.lo == doctest::Approx(alpha * b.lo).epsilon(1e-12));
    CHECK(s.hi == doctest::Approx(alpha * b.hi).epsilon(1e-12));

    for (Cents probe : {500, 1000, 1350, 2000}) {
        auto verdict = *base.classify(probe);
        auto scaled_verdict = *scaled.classify(probe * 3);
        CHECK(verdict == scaled_verdict);
    }
}

TEST_CASE("evicted amounts have exactly zero influence") {
    // Same tail, different history: once the junk leaves the window the
    // statistics must be identical, not merely close.
    auto polluted = make_window(4, 0.7);
    for (Cents junk : {999999, 1, 500000, 42}) polluted.observe(junk);
    std::vector<Cents> tail{800, 1200, 950, 1050};
    auto fresh = make_window(4, 0.7);
    for (Cents a : tail) {
        polluted.observe(a);
        fresh.observe(a);
    }
    CHECK(*polluted.mean() == *fresh.mean());
    CHECK(*polluted.deviation() == *fresh.deviation());
    CHECK(polluted.interval()->hi == fresh.interval()->hi);
}

TEST_CASE("weights decay monotonically for lambda < 1") {
    // Moving a large amount one slot older must strictly lower its pull on
    // the mean.
    std::vector<Cents> newer{100, 100, 100, 5000};
    std::vector<Cents> older{100, 100, 5000, 100};
    auto w_new = window_with(newer, 4, 0.6);
    auto w_old = window_with(older, 4, 0.6);
    CHECK(*w_new.mean() > *w_old.mean());
}
