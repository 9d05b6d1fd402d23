// Acceptance suite: one pass/fail line per criterion, empirical constants
// recorded in (and re-checked against) the golden store.
//
//   acceptance --goldens <path> [--regenerate] [--threads N]
//
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pihat/counting.hpp"
#include "pihat/expsums.hpp"
#include "pihat/goldens.hpp"
#include "pihat/logint.hpp"
#include "pihat/sawtooth.hpp"
#include "pihat/sieve.hpp"
#include "pihat/vaughan.hpp"

using namespace pihat;

namespace {

GoldenStore g_store;
bool g_regenerate = false;
int g_threads = 1;

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& msg) {
    if (cond) return;
    ok = false;
    detail << "  FAILED: " << msg << "\n";
  }

  // Empirical constants: record on first run, enforce afterwards.
  void golden(const std::string& key, double value, double rel_tol = 1e-6) {
    switch (g_store.record(key, value, "acceptance", g_regenerate, rel_tol)) {
      case GoldenStore::Outcome::kRecorded:
        detail << "  recorded " << key << " = " << value << "\n";
        break;
      case GoldenStore::Outcome::kMatched:
      case GoldenStore::Outcome::kRegenerated:
        break;
      case GoldenStore::Outcome::kMismatch:
        ok = false;
        detail << "  FAILED: golden " << key << " stored " << g_store.find(key)->value
               << " but computed " << value << "\n";
        break;
    }
  }
};

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// --- criterion 1: exact Vaughan identity over (v, 1e4] -------------------

void criterion_identity(Checker& c) {
  const std::pair<std::uint64_t, std::uint64_t> grid[] = {{2, 2}, {10, 10}, {30, 30}, {10, 50}};
  std::uint64_t checked = 0, failures = 0;
  for (auto [u, v] : grid) {
    for (std::uint64_t n = v + 1; n <= 10'000; ++n) {
      ++checked;
      if (!vaughan_identity_check(n, u, v).zero()) {
        ++failures;
        if (failures == 1) c.detail << "  first nonzero residual: n=" << n << " u=" << u << " v=" << v << "\n";
      }
    }
  }
  c.expect(failures == 0, std::to_string(failures) + " nonzero residuals");
  c.detail << "  " << checked << " residuals, all zero\n";
}

// --- criterion 2: headline asymptotic to 1e8 ------------------------------

void criterion_headline(Checker& c) {
  std::vector<std::uint64_t> cps{10'000, 100'000, 1'000'000, 10'000'000, 100'000'000};
  auto rows = pi_hat_table(cps, g_threads);
  for (const auto& r : rows) {
    c.detail << "  x=" << r.x << " pi_hat=" << r.pi_hat << " ratio=" << r.ratio << "\n";
    c.expect(r.ambiguous_count == 0, "ambiguity flags at x=" + std::to_string(r.x));
    if (r.x >= 1'000'000)
      c.expect(r.ratio >= 0.5 && r.ratio <= 1.5,
               "ratio outside [0.5, 1.5] at x=" + std::to_string(r.x));
    c.golden("pihat.ratio." + std::to_string(r.x), r.ratio, 1e-9);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    c.expect(std::fabs(rows[i].ratio - 1.0) <= std::fabs(rows[i - 1].ratio - 1.0) + 0.05,
             "|ratio-1| grew past slack between x=" + std::to_string(rows[i - 1].x) + " and x=" +
                 std::to_string(rows[i].x));
}

// --- criterion 3: cross-algorithm equality --------------------------------

void criterion_cross(Checker& c) {
  for (std::uint64_t x : {100ull, 1'000ull, 10'000ull, 100'000ull}) {
    CountRecord a = pi_hat(x, g_threads);
    std::uint64_t b = pi_hat_via_n(x);
    c.expect(a.pi_hat == b, "pi_hat(" + std::to_string(x) + ") = " + std::to_string(a.pi_hat) +
                                " but via-n gives " + std::to_string(b));
    c.expect(a.ambiguous_count == 0, "ambiguity flags at x=" + std::to_string(x));
  }
  c.detail << "  both routes agree on all four checkpoints\n";
}

// --- criterion 4: Weyl-van der Corput inequality ---------------------------

void criterion_wvdc(Checker& c) {
  std::mt19937_64 rng(20260810);
  std::uint64_t trials = 0, violations = 0;
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t K = 1 + rng() % 64;
    std::vector<std::complex<double>> z(K);
    for (auto& w : z) w = {2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0};
    for (std::uint64_t Q = 1; Q <= K; ++Q) {
      ++trials;
      WvdcResult r = wvdc_check(z, Q);
      if (!(r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-12)) ++violations;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.detail << "  " << trials << " (sequence, Q) pairs, no violation\n";
}

// --- criterion 5: bound-ratio suites ---------------------------------------

void criterion_bounds(Checker& c) {
  double sup_linear = 0.0;
  for (std::int64_t h : {1, 4})
    for (std::uint64_t ell : {1ull, 3ull})
      for (std::uint64_t N : {1ull << 10, 1ull << 12})
        sup_linear =
            std::max(sup_linear, linear_bound_report(h, ell, DyadicRange(N, 2 * N), g_threads).ratio);
  c.expect(sup_linear <= 10.0, "linear sup ratio " + std::to_string(sup_linear));
  c.golden("linear.sup_ratio", sup_linear);

  double sup_s0 = 0.0;
  for (std::int64_t h = 1; h <= 4; ++h)
    for (std::int64_t q = 1; q <= 4; ++q)
      for (std::uint64_t k : {5ull, 50ull, 500ull})
        for (std::uint64_t L : {1ull << 7, 1ull << 10})
          sup_s0 = std::max(sup_s0, s0_sum(h, q, k, L).report.ratio);
  c.expect(sup_s0 <= 10.0, "S0 sup ratio " + std::to_string(sup_s0));
  c.golden("s0.sup_ratio", sup_s0);

  // Type II with the realized coefficients: a(l) on (L,2L], Lambda on (K,2K]
  const std::uint64_t L = 1 << 8, K = 1 << 8;
  const std::uint64_t u = floor_pow_5_11(K * L);
  CoefficientPair pair(L, coeff_a_window(L, u), 1.5, K, mangoldt_window(K), 0.5);
  c.detail << "  bilinear coefficients: u=" << u << " norm consts " << pair.alpha_norm_const()
           << ", " << pair.beta_norm_const() << "\n";
  double sup_bil = 0.0;
  for (std::int64_t h = 1; h <= 8; ++h)
    sup_bil = std::max(sup_bil, bilinear_sum(pair, h, g_threads).report.ratio);
  c.expect(sup_bil <= 10.0, "bilinear sup ratio " + std::to_string(sup_bil));
  c.golden("bilinear.sup_ratio", sup_bil);
  c.detail << "  sup ratios: linear " << sup_linear << ", S0 " << sup_s0 << ", bilinear "
           << sup_bil << "\n";
}

// --- criterion 6: decomposition transport ----------------------------------

void criterion_transport(Checker& c) {
  std::mt19937_64 rng(20260810);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::uint64_t N = 64 + rng() % ((1 << 14) - 64);
    VaughanParams p;
    p.N = N;
    p.N2 = N + 1 + rng() % N;
    p.u = 1 + rng() % static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    p.v = 1 + rng() % static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    p.H = 1;
    std::int64_t h = 1 + static_cast<std::int64_t>(rng() % 8);
    Decomposition d = decompose_sum(h, p);
    std::complex<double> direct = prime_exp_sum(h, DyadicRange(p.N, p.N2));
    double rel = std::abs(d.total - direct) / std::max(std::abs(direct), 1e-9);
    worst = std::max(worst, rel);
  }
  c.expect(worst <= 1e-6, "worst relative transport error " + std::to_string(worst));
  c.detail << "  worst relative error over 50 draws: " << worst << "\n";
}

// --- criterion 7: power-saving trend ---------------------------------------

void criterion_power_trend(Checker& c) {
  double prev = 0.0;
  for (std::uint64_t N : {1ull << 10, 1ull << 13, 1ull << 16}) {
    STotalResult r = s_total(VaughanParams::defaults(N), g_threads);
    c.detail << "  N=" << N << " S=" << r.S << " power_ratio=" << r.power_ratio << "\n";
    c.golden("stotal.power_ratio.N" + std::to_string(N), r.power_ratio);
    if (prev > 0.0)
      c.expect(r.power_ratio < 3.0 * prev,
               "power ratio grew by more than 3x at N=" + std::to_string(N));
    prev = r.power_ratio;
  }
}

// --- criterion 8: special-function round trip ------------------------------

void criterion_roundtrip(Checker& c) {
  std::mt19937_64 rng(20260810);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double y = u01(rng) * 1e7;
    double back = li_from_2(inverse_li(y).value).value;
    worst = std::max(worst, std::fabs(back - y));
  }
  c.expect(worst <= 1e-8, "worst |Li(iL(y)) - y| = " + std::to_string(worst));
  c.detail << "  worst round-trip residual: " << worst << "\n";

  double worst_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    double x = std::pow(10.0, 1.0 + 7.0 * i / 99.0);
    double eps = x * 1e-5;
    double fd = (li_fast(x + eps) - li_fast(x - eps)) / (2.0 * eps);
    worst_rel = std::max(worst_rel, std::fabs(fd * std::log(x) - 1.0));
  }
  c.expect(worst_rel <= 1e-6, "derivative check relative error " + std::to_string(worst_rel));
}

// --- criterion 9: psi/g machinery ------------------------------------------

void criterion_psi_g(Checker& c) {
  std::mt19937_64 rng(20260810);
  for (int H : {16, 256}) {
    double C = 0.0;
    int used = 0;
    while (used < 1000) {
      double t = u01(rng) * 4.0 - 2.0;
      if (nearest_int_dist(t) < 1e-3) continue;
      ++used;
      double err = std::fabs(psi_frac(t) - psi_truncated(t, H));
      C = std::max(C, err / g_weight(t, H));
    }
    c.expect(C <= 2.0, "truncation constant " + std::to_string(C) + " at H=" + std::to_string(H));
    c.golden("psi.trunc_const.H" + std::to_string(H), C);
    c.detail << "  H=" << H << " truncation constant " << C << "\n";
  }

  double envelope = 0.0;
  for (int H : {4, 16, 64}) {
    for (int h = 0; h <= 64; ++h) {
      double cap = std::log(2.0 * H) / H;
      if (h > 0) cap = std::min(cap, static_cast<double>(H) / (static_cast<double>(h) * h));
      envelope = std::max(envelope, std::fabs(fourier_coeff_g(h, H)) / cap);
    }
  }
  c.expect(envelope <= 4.0, "coefficient envelope constant " + std::to_string(envelope));
  c.golden("g.coeff_envelope", envelope);
  c.detail << "  a_h envelope constant " << envelope << "\n";
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::string store_path = "goldens.txt";
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--goldens" && i + 1 < argc) store_path = argv[++i];
    else if (arg == "--regenerate") g_regenerate = true;
    else if (arg == "--threads" && i + 1 < argc) g_threads = std::max(1, std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--goldens path] [--regenerate] [--threads n]\n";
      return 64;
    }
  }
  g_store = GoldenStore::load(store_path);

  const Criterion criteria[] = {
      {1, "vaughan-identity-exactness", 60.0, criterion_identity},
      {2, "headline-asymptotic", 600.0, criterion_headline},
      {3, "cross-algorithm-equality", 30.0, criterion_cross},
      {4, "weyl-van-der-corput-inequality", 0.0, criterion_wvdc},
      {5, "bound-ratio-suites", 0.0, criterion_bounds},
      {6, "decomposition-transport", 0.0, criterion_transport},
      {7, "power-saving-trend", 0.0, criterion_power_trend},
      {8, "special-function-round-trip", 0.0, criterion_roundtrip},
      {9, "psi-g-machinery", 0.0, criterion_psi_g},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "  exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (crit.time_limit_s > 0.0 && secs > crit.time_limit_s) {
      c.ok = false;
      c.detail << "  FAILED: runtime " << secs << "s exceeded " << crit.time_limit_s << "s\n";
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << crit.id << " " << crit.name << " ("
              << std::fixed << secs << std::defaultfloat << "s)\n"
              << c.detail.str();
    failures += c.ok ? 0 : 1;
  }

  if (g_store.dirty() && !g_store.save())
    std::cerr << "warning: golden store " << store_path << " is not writable\n";

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) + " criteria failed\n");
  return failures;
}
