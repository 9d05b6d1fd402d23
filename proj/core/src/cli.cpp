#include "pihat/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pihat/counting.hpp"
#include "pihat/expsums.hpp"
#include "pihat/goldens.hpp"
#include "pihat/logint.hpp"
#include "pihat/parallel.hpp"
#include "pihat/sieve.hpp"
#include "pihat/vaughan.hpp"

namespace pihat {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fp(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T need(const std::optional<T>& opt, const char* flag) {
  if (!opt) throw UsageError(std::string("missing required option --") + flag);
  return *opt;
}

// Golden bookkeeping shared by the recording commands. Returns false on a
// write-once violation (mismatch without --regenerate).
class GoldenSink {
 public:
  GoldenSink(const RunConfig& cfg, std::ostream& diag) : cfg_(cfg), diag_(diag) {
    if (!cfg.goldens.empty()) store_ = GoldenStore::load(cfg.goldens);
  }

  bool note(const std::string& key, double value, const std::string& provenance) {
    if (cfg_.goldens.empty()) return true;
    switch (store_.record(key, value, provenance, cfg_.regenerate)) {
      case GoldenStore::Outcome::kRecorded:
        diag_ << "golden recorded: " << key << " = " << fp(value) << "\n";
        return true;
      case GoldenStore::Outcome::kMatched:
        return true;
      case GoldenStore::Outcome::kRegenerated:
        diag_ << "golden regenerated: " << key << " = " << fp(value) << "\n";
        return true;
      case GoldenStore::Outcome::kMismatch:
        diag_ << "golden mismatch for " << key << ": stored " << fp(store_.find(key)->value)
              << ", computed " << fp(value) << " (pass --regenerate to accept)\n";
        return false;
    }
    return false;
  }

  void flush() {
    if (!cfg_.goldens.empty() && store_.dirty() && !store_.save())
      diag_ << "warning: golden store " << cfg_.goldens << " is not writable\n";
  }

 private:
  const RunConfig& cfg_;
  std::ostream& diag_;
  GoldenStore store_;
};

double u01(std::mt19937_64& rng) {
  // fixed mapping (not std::uniform_real_distribution) so seeded output is
  // identical across standard libraries
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

int cmd_lival(const RunConfig& cfg, std::ostream& data) {
  double x = static_cast<double>(need(cfg.x, "x"));
  if (cfg.inverse) {
    ExtReal r = inverse_li(x);
    data << "y,inverse_li,abs_err,escalated\n";
    data << fp(x) << ',' << fp(r.value) << ',' << fp(r.abs_err) << ',' << (r.escalated ? 1 : 0)
         << "\n";
    return 0;
  }
  ExtReal r;
  if (cfg.precision == RunConfig::Precision::kDd) {
    r = li_from_2(x);
  } else {
    double v = li_fast(x);
    r = {v, 0.0, li_fast_abs_err(x, v), false};
  }
  data << "x,li,abs_err,escalated\n";
  data << fp(x) << ',' << fp(r.value) << ',' << fp(r.abs_err) << ',' << (r.escalated ? 1 : 0)
       << "\n";
  return 0;
}

void emit_count_row(std::ostream& data, const CountRecord& r) {
  data << r.x << ',' << r.pi_hat << ',' << fp(r.model) << ',' << fp(r.ratio) << ','
       << r.ambiguous_count << "\n";
}

int cmd_pihat(const RunConfig& cfg, std::ostream& data, std::ostream& diag, GoldenSink& sink) {
  std::uint64_t x = need(cfg.x, "x");
  CountRecord r = pi_hat(x, cfg.threads);
  data << "x,pi_hat,model,ratio,ambiguous\n";
  emit_count_row(data, r);
  bool ok = sink.note("pihat.ratio." + std::to_string(x), r.ratio, "cli:pihat");
  if (r.ambiguous_count > 0) {
    diag << "ambiguous floor indicators: " << r.ambiguous_count << "\n";
    return 1;
  }
  return ok ? 0 : 1;
}

int cmd_pihat_table(const RunConfig& cfg, std::ostream& data, std::ostream& diag,
                    GoldenSink& sink) {
  if (cfg.checkpoints.empty()) throw UsageError("missing required option --checkpoints");
  auto rows = pi_hat_table(cfg.checkpoints, cfg.threads);
  data << "x,pi_hat,model,ratio,ambiguous\n";
  bool ok = true;
  std::uint64_t ambiguous = 0;
  for (const auto& r : rows) {
    emit_count_row(data, r);
    ok &= sink.note("pihat.ratio." + std::to_string(r.x), r.ratio, "cli:pihat-table");
    ambiguous = r.ambiguous_count;
  }
  if (ambiguous > 0) {
    diag << "ambiguous floor indicators: " << ambiguous << "\n";
    return 1;
  }
  return ok ? 0 : 1;
}

int cmd_expsum_linear(const RunConfig& cfg, std::ostream& data, GoldenSink& sink) {
  std::int64_t h = need(cfg.h, "h");
  std::uint64_t ell = cfg.ell.value_or(1);
  std::uint64_t N = need(cfg.N, "N");
  DyadicRange range(N, cfg.N2.value_or(2 * N));
  data << "h,ell,N,N1,sum_re,sum_im,lhs,bound,ratio\n";
  std::complex<double> s = linear_sum(h, ell, range, cfg.threads);
  if (h == 0) {
    data << h << ',' << ell << ',' << range.N << ',' << range.N1 << ',' << fp(s.real()) << ','
         << fp(s.imag()) << ',' << fp(std::abs(s)) << ",," << "\n";
    return 0;
  }
  BoundReport rep = linear_bound_report(h, ell, range, cfg.threads);
  data << h << ',' << ell << ',' << range.N << ',' << range.N1 << ',' << fp(s.real()) << ','
       << fp(s.imag()) << ',' << fp(rep.lhs) << ',' << fp(rep.bound) << ',' << fp(rep.ratio)
       << "\n";
  std::string key = "linear.ratio.h" + std::to_string(h) + ".l" + std::to_string(ell) + ".N" +
                    std::to_string(N);
  return sink.note(key, rep.ratio, "cli:expsum-linear") ? 0 : 1;
}

int cmd_expsum_s0(const RunConfig& cfg, std::ostream& data, GoldenSink& sink) {
  std::int64_t h = need(cfg.h, "h");
  std::int64_t q = need(cfg.q, "q");
  std::uint64_t k = need(cfg.k, "k");
  std::uint64_t L = need(cfg.L, "L");
  S0Result r = s0_sum(h, q, k, L);
  data << "h,q,k,L,sum_re,sum_im,lhs,bound,ratio\n";
  data << h << ',' << q << ',' << k << ',' << L << ',' << fp(r.sum.real()) << ','
       << fp(r.sum.imag()) << ',' << fp(r.report.lhs) << ',' << fp(r.report.bound) << ','
       << fp(r.report.ratio) << "\n";
  std::string key = "s0.ratio.h" + std::to_string(h) + ".q" + std::to_string(q) + ".k" +
                    std::to_string(k) + ".L" + std::to_string(L);
  return sink.note(key, r.report.ratio, "cli:expsum-s0") ? 0 : 1;
}

std::vector<std::complex<double>> coeff_source(const std::string& name, std::uint64_t size,
                                               std::uint64_t u, std::uint64_t v) {
  if (name == "ones") return std::vector<std::complex<double>>(size, 1.0);
  if (name == "lambda") return mangoldt_window(size);
  if (name == "a") return coeff_a_window(size, u);
  if (name == "b") return coeff_b_window(size, u, v);
  throw UsageError("unknown coefficient source '" + name + "' (ones|lambda|a|b)");
}

double coeff_exponent(const std::string& name) {
  if (name == "a") return 1.5;       // sum |a|^2 << L log^3 L
  if (name == "b") return 1.0;       // sum |b|^2 << R log^2 R
  if (name == "lambda") return 0.5;  // sum Lambda^2 << K log K
  return 0.0;                        // ones
}

int cmd_expsum_bilinear(const RunConfig& cfg, std::ostream& data, GoldenSink& sink) {
  std::int64_t h = need(cfg.h, "h");
  std::uint64_t L = need(cfg.L, "L");
  std::uint64_t K = need(cfg.K, "K");
  std::uint64_t KL = K * L;
  std::uint64_t u = cfg.u.value_or(std::max<std::uint64_t>(2, floor_pow_5_11(KL)));
  std::uint64_t v = cfg.v.value_or(u);
  CoefficientPair pair(L, coeff_source(cfg.alpha, L, u, v), coeff_exponent(cfg.alpha), K,
                       coeff_source(cfg.beta, K, u, v), coeff_exponent(cfg.beta));
  BilinearResult r = bilinear_sum(pair, h, cfg.threads);
  data << "h,L,K,alpha,beta,u,sum_re,sum_im,lhs,bound,ratio\n";
  data << h << ',' << L << ',' << K << ',' << cfg.alpha << ',' << cfg.beta << ',' << u << ','
       << fp(r.sum.real()) << ',' << fp(r.sum.imag()) << ',' << fp(r.report.lhs) << ','
       << fp(r.report.bound) << ',' << fp(r.report.ratio) << "\n";
  std::string key = "bilinear.ratio.h" + std::to_string(h) + ".L" + std::to_string(L) + ".K" +
                    std::to_string(K) + "." + cfg.alpha + "." + cfg.beta;
  return sink.note(key, r.report.ratio, "cli:expsum-bilinear") ? 0 : 1;
}

int cmd_wvdc_fuzz(const RunConfig& cfg, std::ostream& data) {
  std::uint64_t trials = cfg.trials.value_or(1000);
  std::mt19937_64 rng(cfg.seed);
  data << "trial,K,Q,lhs,rhs,ok\n";
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t K = 1 + rng() % 64;
    std::uint64_t Q = 1 + rng() % K;
    std::vector<std::complex<double>> z(K);
    for (auto& w : z) w = {2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0};
    WvdcResult r = wvdc_check(z, Q);
    bool ok = r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-12;
    violations += ok ? 0 : 1;
    data << t << ',' << K << ',' << Q << ',' << fp(r.lhs) << ',' << fp(r.rhs) << ','
         << (ok ? 1 : 0) << "\n";
  }
  return violations == 0 ? 0 : 1;
}

int cmd_vaughan_verify(const RunConfig& cfg, std::ostream& data, std::ostream& diag) {
  std::uint64_t u = need(cfg.u, "u");
  std::uint64_t v = need(cfg.v, "v");
  std::uint64_t max_n = need(cfg.max_n, "max-n");
  std::uint64_t checked = 0, failures = 0;
  for (std::uint64_t n = v + 1; n <= max_n; ++n) {
    ++checked;
    LogPrimeVector residual = vaughan_identity_check(n, u, v);
    if (!residual.zero()) {
      ++failures;
      if (failures <= 10) diag << "nonzero residual at n=" << n << "\n";
    }
  }
  data << "checked,failures\n" << checked << ',' << failures << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& data, std::ostream& diag) {
  std::uint64_t N = need(cfg.N, "N");
  VaughanParams params = VaughanParams::defaults(N);
  if (cfg.N2) params.N2 = *cfg.N2;
  if (cfg.u) params.u = *cfg.u;
  if (cfg.v) params.v = *cfg.v;
  if (cfg.H) params.H = *cfg.H;
  params.validate();
  std::int64_t h = need(cfg.h, "h");

  Decomposition d = decompose_sum(h, params);
  std::complex<double> direct = prime_exp_sum(h, DyadicRange(params.N, params.N2));
  double rel = std::abs(d.total - direct) / std::max(std::abs(direct), 1e-300);
  data << "h,N,N2,u,v,S1_re,S1_im,S2_re,S2_im,S3_re,S3_im,S4_re,S4_im,S5_re,S5_im,"
          "total_re,total_im,direct_re,direct_im,rel_err\n";
  data << h << ',' << params.N << ',' << params.N2 << ',' << params.u << ',' << params.v;
  for (auto s : {d.S1, d.S2, d.S3, d.S4, d.S5, d.total, direct})
    data << ',' << fp(s.real()) << ',' << fp(s.imag());
  data << ',' << fp(rel) << "\n";
  if (rel > 1e-6) {
    diag << "decomposition transport failed: rel_err=" << fp(rel) << "\n";
    return 1;
  }
  return 0;
}

int cmd_s_total(const RunConfig& cfg, std::ostream& data, GoldenSink& sink) {
  std::uint64_t N = need(cfg.N, "N");
  VaughanParams params = VaughanParams::defaults(N);
  if (cfg.N2) params.N2 = *cfg.N2;
  if (cfg.H) params.H = *cfg.H;
  params.validate();
  STotalResult r = s_total(params, cfg.threads);
  data << "N,N2,H,S,power_ratio,log_target\n";
  data << params.N << ',' << params.N2 << ',' << params.H << ',' << fp(r.S) << ','
       << fp(r.power_ratio) << ',' << fp(r.log_target) << "\n";
  return sink.note("stotal.power_ratio.N" + std::to_string(N), r.power_ratio, "cli:s-total")
             ? 0
             : 1;
}

int cmd_sigma(const RunConfig& cfg, std::ostream& data) {
  std::uint64_t N = need(cfg.N, "N");
  std::uint64_t N1 = cfg.N2.value_or(2 * N);
  std::int64_t H = cfg.H.value_or(default_truncation(N));
  SigmaReport rep = sigma_terms(DyadicRange(N, N1), H);
  data << "N,N1,H,sigma,sigma1_re,sigma1_im,sigma2,model,sigma_over_model\n";
  data << N << ',' << N1 << ',' << H << ',' << fp(rep.sigma) << ',' << fp(rep.sigma1.real())
       << ',' << fp(rep.sigma1.imag()) << ',' << fp(rep.sigma2) << ',' << fp(rep.model) << ','
       << fp(rep.sigma / rep.model) << "\n";
  return 0;
}

int cmd_goldens(const RunConfig& cfg, std::ostream& data) {
  if (cfg.goldens.empty()) throw UsageError("goldens command requires --goldens <path>");
  GoldenStore store = GoldenStore::load(cfg.goldens);
  store.render(data);
  return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& data, std::ostream& diag) {
  GoldenSink sink(cfg, diag);
  int code;
  if (cfg.command == "lival") code = cmd_lival(cfg, data);
  else if (cfg.command == "pihat") code = cmd_pihat(cfg, data, diag, sink);
  else if (cfg.command == "pihat-table") code = cmd_pihat_table(cfg, data, diag, sink);
  else if (cfg.command == "expsum-linear") code = cmd_expsum_linear(cfg, data, sink);
  else if (cfg.command == "expsum-s0") code = cmd_expsum_s0(cfg, data, sink);
  else if (cfg.command == "expsum-bilinear") code = cmd_expsum_bilinear(cfg, data, sink);
  else if (cfg.command == "wvdc-fuzz") code = cmd_wvdc_fuzz(cfg, data);
  else if (cfg.command == "vaughan-verify") code = cmd_vaughan_verify(cfg, data, diag);
  else if (cfg.command == "decompose") code = cmd_decompose(cfg, data, diag);
  else if (cfg.command == "s-total") code = cmd_s_total(cfg, data, sink);
  else if (cfg.command == "sigma") code = cmd_sigma(cfg, data);
  else if (cfg.command == "goldens") code = cmd_goldens(cfg, data);
  else throw UsageError("unknown command '" + cfg.command + "'");
  sink.flush();
  return code;
}

}  // namespace

int run(const RunConfig& config, std::ostream& data, std::ostream& diag) {
  try {
    if (!config.out.empty()) {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw UsageError("cannot open output file " + config.out);
      return dispatch(config, file, diag);
    }
    return dispatch(config, data, diag);
  } catch (const UsageError& e) {
    diag << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    diag << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {  // compute-budget preconditions
    diag << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    diag << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_main(int argc, const char* const* argv) {
  CLI::App app{"verification toolkit for inverse-logarithmic-integral prime counting"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h for the frequency flag

  RunConfig cfg;
  cfg.threads = default_thread_count();

  auto sub_of = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (env PIHAT_THREADS)");
    sub->add_option("--seed", cfg.seed, "seed for randomized commands");
    sub->add_option("--out", cfg.out, "CSV output path (default stdout)");
    sub->add_option("--goldens", cfg.goldens, "golden store path");
    sub->add_flag("--regenerate", cfg.regenerate, "allow overwriting stored goldens");
    std::map<std::string, RunConfig::Precision> prec{
        {"double", RunConfig::Precision::kDouble}, {"dd", RunConfig::Precision::kDd}};
    sub->add_option("--precision", cfg.precision, "double|dd")
        ->transform(CLI::CheckedTransformer(prec, CLI::ignore_case));
  };

  auto* lival = sub_of("lival", "evaluate Li (or its inverse) with an error bound");
  lival->add_option("--x", cfg.x)->required();
  lival->add_flag("--inverse", cfg.inverse, "evaluate the inverse instead");
  add_common(lival);

  auto* pihat = sub_of("pihat", "count primes hitting floor(iL(n)) up to x");
  pihat->add_option("--x", cfg.x)->required();
  add_common(pihat);

  auto* table = sub_of("pihat-table", "counting records at several checkpoints");
  table->add_option("--checkpoints", cfg.checkpoints, "ascending x values")
      ->required()
      ->delimiter(',');
  add_common(table);

  auto* lin = sub_of("expsum-linear", "linear exponential sum and bound ratio");
  lin->add_option("--h", cfg.h)->required();
  lin->add_option("--ell", cfg.ell);
  lin->add_option("--N", cfg.N)->required();
  lin->add_option("--N2", cfg.N2, "range end (default 2N)");
  add_common(lin);

  auto* s0 = sub_of("expsum-s0", "differenced sum S0(q;k) and bound ratio");
  s0->add_option("--h", cfg.h)->required();
  s0->add_option("--q", cfg.q)->required();
  s0->add_option("--k", cfg.k)->required();
  s0->add_option("--L", cfg.L)->required();
  add_common(s0);

  auto* bil = sub_of("expsum-bilinear", "bilinear sum with chosen coefficients");
  bil->add_option("--h", cfg.h)->required();
  bil->add_option("--L", cfg.L)->required();
  bil->add_option("--K", cfg.K)->required();
  bil->add_option("--alpha", cfg.alpha, "ones|a|b|lambda (default a)");
  bil->add_option("--beta", cfg.beta, "ones|a|b|lambda (default lambda)");
  bil->add_option("--u", cfg.u, "cut for a/b coefficients");
  bil->add_option("--v", cfg.v, "second cut for b coefficients");
  add_common(bil);

  auto* wvdc = sub_of("wvdc-fuzz", "randomized Weyl-van der Corput inequality trials");
  wvdc->add_option("--trials", cfg.trials);
  add_common(wvdc);

  auto* vv = sub_of("vaughan-verify", "exact identity check over (v, max-n]");
  vv->add_option("--u", cfg.u)->required();
  vv->add_option("--v", cfg.v)->required();
  vv->add_option("--max-n", cfg.max_n)->required();
  add_common(vv);

  auto* dec = sub_of("decompose", "S1..S5 split against the direct prime sum");
  dec->add_option("--h", cfg.h)->required();
  dec->add_option("--N", cfg.N)->required();
  dec->add_option("--N2", cfg.N2);
  dec->add_option("--u", cfg.u);
  dec->add_option("--v", cfg.v);
  add_common(dec);

  auto* st = sub_of("s-total", "h-aggregated prime sum S and its power ratio");
  st->add_option("--N", cfg.N)->required();
  st->add_option("--N2", cfg.N2);
  st->add_option("--H", cfg.H, "truncation level (default ceil(log^4 N))");
  add_common(st);

  auto* sg = sub_of("sigma", "Sigma, Sigma1, Sigma2 over a dyadic range");
  sg->add_option("--N", cfg.N)->required();
  sg->add_option("--N2", cfg.N2, "range end (default 2N)");
  sg->add_option("--H", cfg.H);
  add_common(sg);

  auto* go = sub_of("goldens", "render the golden store as a table");
  add_common(go);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.threads < 1) {
    std::cerr << "usage error: --threads must be >= 1\n";
    return 2;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace pihat
