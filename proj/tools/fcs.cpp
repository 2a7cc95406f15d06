// fcs: inspect and validate finitely correlated spin-chain models.
//
//   fcs verify <model>            CP / unitality / Markov / invariance suites
//   fcs expect <model> <word>     evaluate the reconstructed state on a word
//   fcs correlate <model> --obs   two-point correlation sweep (CSV)
//   fcs spectrum <model>          transfer-operator spectrum
//   fcs kernel <model>            entanglement-kernel / quotient report
//   fcs opprod-check <model>      operator-product presentation cross-check
//
// Models are builtin names ("aklt", "product:<d>:<index>") or ModelSpec JSON
// files.  Exit codes: 0 = pass, 1 = check failure, 2 = I/O or parse problem.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcs/eig.hpp"
#include "fcs/errors.hpp"
#include "fcs/io.hpp"
#include "fcs/kernel.hpp"
#include "fcs/models.hpp"
#include "fcs/opprod.hpp"
#include "fcs/reconstruct.hpp"
#include "fcs/rng.hpp"

using nlohmann::json;

namespace {

struct Options {
  std::string model;
  std::string word_path;
  std::string obs = "Sz";
  std::string csv_path;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t rmax = 6;
  std::size_t m_left = 2;
  std::size_t n_right = 1;
  std::size_t samples = 20;
  std::size_t max_len = 4;
  std::size_t trials = 50;
};

json complex_json(fcs::complexd z) { return json::array({z.real(), z.imag()}); }

fcs::Word random_word(fcs::Rng& rng, std::size_t d, std::size_t len) {
  fcs::Word w;
  for (std::size_t k = 0; k < len; ++k) w.push_back(rng.gaussian_matrix(d, d));
  return w;
}

std::size_t degenerate_unit(const fcs::CpMap& cp) {
  std::size_t count = 0;
  for (fcs::complexd lam : fcs::eig_values(fcs::shift_superop(cp)))
    if (std::abs(lam - fcs::complexd(1.0)) <= 1e-8) ++count;
  return count;
}

int cmd_verify(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  const fcs::CpMap& cp = model.cp;
  json report;
  report["model"] = model.kind;
  report["source"] = model.source;
  report["d"] = cp.d;
  report["r"] = cp.r;
  report["tol"] = opt.tol;
  json checks = json::array();
  bool all_pass = true;
  auto add = [&](const std::string& name, double residual, bool pass) {
    checks.push_back({{"name", name}, {"residual", residual}, {"pass", pass}});
    all_pass = all_pass && pass;
  };

  {
    fcs::Matrix u = fcs::apply(cp, fcs::Matrix::identity(cp.d * cp.r));
    u -= fcs::Matrix::identity(cp.r);
    const double res = fcs::max_abs(u);
    add("unitality", res, res <= opt.tol);
  }
  {
    fcs::Matrix c = fcs::choi(cp);
    double res;
    if (!fcs::is_hermitian(c, 1e-8)) {
      res = 1.0;
      add("complete_positivity", res, false);
    } else {
      res = std::max(0.0, -fcs::min_eig(c));
      add("complete_positivity", res, res <= opt.tol);
    }
  }
  {
    try {
      fcs::CpMap rec = cp.has_stinespring()
                           ? cp
                           : fcs::stinespring_from_choi(cp.superop, cp.d, cp.r);
      fcs::Matrix g = fcs::dagger(rec.stinespring) * rec.stinespring;
      g -= fcs::Matrix::identity(cp.r);
      const double res = fcs::max_abs(g);
      add("stinespring_isometry", res, res <= std::max(opt.tol, 1e-7));
    } catch (const fcs::Error&) {
      add("stinespring_isometry", 1.0, false);
    }
  }
  {
    fcs::Rng rng(opt.seed);
    std::vector<std::pair<fcs::Word, fcs::Word>> cases;
    for (int t = 0; t < 8; ++t)
      cases.emplace_back(random_word(rng, cp.d, 1 + t % 2),
                         random_word(rng, cp.d, 1 + (t / 2) % 2));
    fcs::Matrix t0 = rng.hermitian(cp.r);
    auto run = [&](std::size_t i) {
      return fcs::markov_check(cp, cases[i].first, cases[i].second, t0, opt.tol)
          .residual;
    };
    double res = 0.0;
    if (opt.jobs > 1) {
      std::vector<std::future<double>> futs;
      for (std::size_t i = 0; i < cases.size(); ++i)
        futs.push_back(std::async(std::launch::async, run, i));
      for (auto& f : futs) res = std::max(res, f.get());
    } else {
      for (std::size_t i = 0; i < cases.size(); ++i) res = std::max(res, run(i));
    }
    add("markov_property", res, res <= opt.tol);
  }

  bool degenerate = false;
  try {
    fcs::Matrix e = fcs::fixed_point_unit(cp, std::min(opt.tol, 1e-10));
    e -= fcs::Matrix::identity(cp.r);
    const double res = fcs::max_abs(e);
    add("fixed_point_unit", res, res <= opt.tol);
  } catch (const fcs::DegenerateFixedSpace&) {
    degenerate = true;
  } catch (const fcs::Error&) {
    add("fixed_point_unit", 1.0, false);
  }

  if (!degenerate) {
    try {
      fcs::BoundaryState xi = fcs::invariant_functional(cp);
      add("invariant_functional", xi.residual, xi.residual <= opt.tol);
      fcs::Rng rng(opt.seed + 1);
      double res = 0.0;
      for (int t = 0; t < 3; ++t) {
        fcs::Word w = random_word(rng, cp.d, 1 + t);
        res = std::max(res, fcs::shift_invariance_check(cp, xi, w, opt.tol).residual);
      }
      add("shift_invariance", res, res <= opt.tol);
    } catch (const fcs::DegenerateFixedSpace&) {
      degenerate = true;
    } catch (const fcs::Error&) {
      add("invariant_functional", 1.0, false);
    }
  }
  report["degenerate_fixed_space"] = degenerate;

  fcs::TransferSpectrum spec = fcs::transfer_spectrum(cp);
  json eigs = json::array();
  for (fcs::complexd lam : spec.eigenvalues) eigs.push_back(complex_json(lam));
  report["transfer_eigenvalues"] = eigs;
  report["gap_modulus"] = spec.gap_modulus;
  report["checks"] = checks;
  report["pass"] = all_pass;
  std::cout << report.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int cmd_expect(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  fcs::Word word = fcs::load_word_file(opt.word_path);
  fcs::BoundaryState xi = fcs::invariant_functional(model.cp);
  fcs::complexd v = fcs::omega_eval(model.cp, xi, word);
  std::cout << fcs::format_real(v.real()) << " " << fcs::format_real(v.imag()) << "\n";
  return 0;
}

fcs::Matrix resolve_observable(const fcs::LoadedModel& model, const std::string& name) {
  if (model.kind == "aklt" && (name == "Sx" || name == "Sy" || name == "Sz")) {
    fcs::SpinOperators s = fcs::aklt_spin_operators();
    if (name == "Sx") return s.sx;
    if (name == "Sy") return s.sy;
    return s.sz;
  }
  std::ifstream probe(name);
  if (!probe)
    throw fcs::UnknownObservable("observable \"" + name +
                                 "\" is neither a builtin nor a readable file");
  probe.close();
  fcs::Matrix m = fcs::load_matrix_file(name);
  if (m.rows() != model.cp.d || m.cols() != model.cp.d)
    throw fcs::ShapeMismatch("observable must be d x d");
  return m;
}

int cmd_correlate(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  fcs::Matrix obs = resolve_observable(model, opt.obs);
  fcs::BoundaryState xi = fcs::invariant_functional(model.cp);

  auto run = [&](std::size_t sep) { return fcs::correlation(model.cp, xi, obs, obs, sep); };
  std::vector<fcs::complexd> values(opt.rmax + 1);
  if (opt.jobs > 1) {
    std::vector<std::future<fcs::complexd>> futs;
    for (std::size_t sep = 0; sep <= opt.rmax; ++sep)
      futs.push_back(std::async(std::launch::async, run, sep));
    for (std::size_t sep = 0; sep <= opt.rmax; ++sep) values[sep] = futs[sep].get();
  } else {
    for (std::size_t sep = 0; sep <= opt.rmax; ++sep) values[sep] = run(sep);
  }

  std::ostringstream csv;
  csv << "r,re_corr,im_corr,abs_corr\n";
  for (std::size_t sep = 0; sep <= opt.rmax; ++sep)
    csv << sep << "," << fcs::format_real(values[sep].real()) << ","
        << fcs::format_real(values[sep].imag()) << ","
        << fcs::format_real(std::abs(values[sep])) << "\n";
  if (opt.csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(opt.csv_path);
    if (!out) throw fcs::ParseError("cannot write " + opt.csv_path);
    out << csv.str();
  }
  return 0;
}

int cmd_spectrum(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  fcs::TransferSpectrum spec = fcs::transfer_spectrum(model.cp);
  json report;
  json eigs = json::array();
  for (fcs::complexd lam : spec.eigenvalues) eigs.push_back(complex_json(lam));
  report["eigenvalues"] = eigs;
  report["gap_modulus"] = spec.gap_modulus;
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_kernel(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  fcs::BoundaryState xi = fcs::invariant_functional(model.cp);
  json report;
  report["n_right"] = opt.n_right;
  json quotients = json::array();
  std::size_t last = 0, kernel_dim = 0;
  bool stabilized = false;
  for (std::size_t m = 1; m <= opt.m_left; ++m) {
    fcs::FunctionalMatrix fm = fcs::functional_matrix(model.cp, xi, m, opt.n_right);
    fcs::KernelBasis kb = fcs::kernel_basis(fm);
    quotients.push_back(kb.quotient_dim);
    if (m > 1 && kb.quotient_dim == last) stabilized = true;
    last = kb.quotient_dim;
    kernel_dim = kb.vectors.cols();
  }
  report["quotients"] = quotients;
  report["quotient_dim"] = last;
  report["kernel_dim"] = kernel_dim;
  report["stabilized"] = stabilized;
  fcs::GammaProbe probe = fcs::gamma_condition_probe(model.cp, xi, opt.n_right,
                                                     opt.m_left, opt.samples, opt.seed);
  report["gamma_probe"] = probe.value;
  report["gamma_degenerate"] = probe.degenerate;
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_opprod_check(const Options& opt) {
  fcs::LoadedModel model = fcs::resolve_model(opt.model);
  fcs::ExtendedModel em = fcs::extend_model(model.cp);
  fcs::Rng rng(opt.seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const std::size_t len = 1 + rng.integer(opt.max_len);
    fcs::Word w = random_word(rng, em.base.d, len);
    fcs::Matrix t0 = rng.hermitian(em.base.r);
    fcs::Matrix via_product =
        fcs::compress_operator(fcs::op_product_eval(em, w, t0));
    via_product -= fcs::iterate(em.base, w, t0);
    worst = std::max(worst, fcs::max_abs(via_product));
  }
  const bool pass = worst <= 1e-9;
  json report;
  report["max_residual"] = worst;
  report["trials"] = opt.trials;
  report["max_len"] = opt.max_len;
  report["degenerate_fixed_space"] = degenerate_unit(em.base) > 1;
  report["pass"] = pass;
  std::cout << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("FCS_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) opt.tol = v;
  }

  CLI::App app{"finitely correlated state toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", opt.model, "builtin name or ModelSpec JSON path")
        ->required();
    sub->add_option("--tol", opt.tol, "residual tolerance");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--jobs", opt.jobs, "parallel workers");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the validation suites");
  add_common(verify);

  CLI::App* expect = app.add_subcommand("expect", "evaluate the state on a word");
  add_common(expect);
  expect->add_option("word", opt.word_path, "word JSON path")->required();

  CLI::App* correlate = app.add_subcommand("correlate", "two-point correlation sweep");
  add_common(correlate);
  correlate->add_option("--obs", opt.obs, "observable: Sx|Sy|Sz (aklt) or JSON path");
  correlate->add_option("--rmax", opt.rmax, "largest separation");
  correlate->add_option("--csv", opt.csv_path, "write CSV here instead of stdout");

  CLI::App* spectrum = app.add_subcommand("spectrum", "transfer-operator spectrum");
  add_common(spectrum);

  CLI::App* kernel = app.add_subcommand("kernel", "entanglement-kernel report");
  add_common(kernel);
  kernel->add_option("--mleft", opt.m_left, "largest left window");
  kernel->add_option("--nright", opt.n_right, "right window length");
  kernel->add_option("--samples", opt.samples, "random probes");

  CLI::App* opprod = app.add_subcommand("opprod-check", "operator-product cross-check");
  add_common(opprod);
  opprod->add_option("-n,--max-len", opt.max_len, "max word length");
  opprod->add_option("--trials", opt.trials, "random words");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (expect->parsed()) return cmd_expect(opt);
    if (correlate->parsed()) return cmd_correlate(opt);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (kernel->parsed()) return cmd_kernel(opt);
    if (opprod->parsed()) return cmd_opprod_check(opt);
  } catch (const fcs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fcs::WindowTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
