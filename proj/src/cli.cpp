#include "popuc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "popuc/harness.hpp"
#include "popuc/json_io.hpp"
#include "popuc/rank_one.hpp"

namespace popuc {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr double kCommonZeroTol = 1e-9;
constexpr double kSchurRadius = 0.9;

// Raised for malformed input; reported as a one-line diagnostic with exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    throw InputError("cannot parse " + what + ": '" + text + "'");
  }
}

Complex parse_complex(const std::string& text, const std::string& what) {
  try {
    return complex_from_json(parse_json_text(text, what));
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

CirclePoint parse_circle_point(const std::string& text, const std::string& what) {
  const Complex z = parse_complex(text, what);
  try {
    return CirclePoint::normalized(z);
  } catch (const Error&) {
    throw InputError(what + " must have modulus 1");
  }
}

VerblunskyWord read_alphas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    Json j = Json::parse(buf.str());
    if (j.is_object() && j.contains("alphas")) j = j.at("alphas");
    return word_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// The coefficient source shared by several subcommands.
struct WordSource {
  std::string file;
  std::string constant;

  void add_to(CLI::App& cmd) {
    auto* f = cmd.add_option("--alphas", file, "JSON array of Verblunsky coefficients");
    auto* c = cmd.add_option("--alpha-const", constant, "Constant coefficient, number or [re, im]");
    f->excludes(c);
  }

  bool given() const { return !file.empty() || !constant.empty(); }

  // A word of exactly `length` coefficients, or the file as written when
  // `length` is absent.
  VerblunskyWord load(std::optional<std::size_t> length) const {
    if (!file.empty()) {
      VerblunskyWord w = read_alphas(file);
      if (!length) return w;
      if (w.size() < *length) {
        throw InputError(file + " holds " + std::to_string(w.size()) + " coefficients, " +
                         std::to_string(*length) + " needed");
      }
      return w.prefix(*length);
    }
    if (!length) throw InputError("--alpha-const needs a length (--n or --n-max)");
    const Complex alpha = parse_complex(constant, "--alpha-const");
    try {
      return VerblunskyWord::constant(alpha, *length);
    } catch (const Error& e) {
      throw InputError(std::string("--alpha-const: ") + e.what());
    }
  }
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------

struct ZerosArgs {
  WordSource word;
  std::optional<std::size_t> n;
  std::string beta = "1";
  std::string format = "json";
  std::string out;
};

int cmd_zeros(const ZerosArgs& a, std::ostream& out) {
  if (!a.word.given()) throw InputError("one of --alphas or --alpha-const is required");
  if (a.n && *a.n == 0) throw InputError("--n must be at least 1");
  const VerblunskyWord word = a.word.load(a.n ? std::optional<std::size_t>(*a.n - 1) : std::nullopt);
  const CirclePoint beta = parse_circle_point(a.beta, "--beta");
  const CyclicSet zeros = cmv_zeros(build(word, beta));

  Output sink(a.out, out);
  auto& os = sink.stream();
  if (a.format == "csv") {
    os << "index,re,im,arg\n";
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      const Complex z = zeros[i].value();
      os << i << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(zeros[i].arg()) << '\n';
    }
  } else {
    const Json j{{"degree", word.size() + 1}, {"beta", to_json(beta)}, {"zeros", to_json(zeros)}};
    os << j.dump(2) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t n_max = 20;
  unsigned threads = 0;
  std::string decoupling = "constructed";
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  TrialConfig cfg;
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  cfg.n_max = a.n_max;
  cfg.threads = a.threads;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  const DecouplingRule rule =
      a.decoupling == "transcribed" ? DecouplingRule::Transcribed : DecouplingRule::Constructed;

  static const std::map<std::string, PerturbationProperty> properties{
      {"2.3", PerturbationProperty::GapCount},
      {"2.4", PerturbationProperty::CyclicInterlace},
      {"2.5", PerturbationProperty::ClosedArcEigenvalue},
      {"2.6", PerturbationProperty::DirectSum},
      {"2.8", PerturbationProperty::SchurShift},
  };

  Json doc;
  bool passed = true;
  if (a.theorem == "2.x") {
    std::set<PerturbationProperty> all;
    for (const auto& [id, p] : properties) all.insert(p);
    Json reports = Json::array();
    for (const auto& r : check_perturbation_properties(all, cfg)) {
      passed = passed && r.passed();
      reports.push_back(r.to_json());
    }
    doc = Json{{"theorem", "2.x"}, {"passed", passed}, {"reports", std::move(reports)}};
  } else {
    TheoremReport r;
    if (a.theorem == "1.1") {
      r = run_thm_1_1(cfg);
    } else if (a.theorem == "1.2") {
      r = run_thm_1_2(cfg);
    } else if (a.theorem == "1.3") {
      r = run_thm_1_3(cfg);
    } else if (a.theorem == "1.4") {
      r = run_thm_1_4(cfg, cfg.trials / 10, rule);
    } else if (a.theorem == "3.4") {
      r = run_thm_3_4(cfg);
    } else {
      r = run_perturbation_property(properties.at(a.theorem), cfg);
    }
    passed = r.passed();
    doc = r.to_json();
  }
  Output sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return passed ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct CommonZeroArgs {
  WordSource word;
  std::string lambda;
  std::optional<std::size_t> n_max;
  std::string out;
};

int cmd_common_zero(const CommonZeroArgs& a, std::ostream& out) {
  if (!a.word.given()) throw InputError("one of --alphas or --alpha-const is required");
  const CirclePoint lambda = parse_circle_point(a.lambda, "--lambda");
  if (a.n_max && *a.n_max == 0) throw InputError("--n-max must be at least 1");

  VerblunskyWord word;
  std::size_t count = 0;
  if (a.n_max) {
    count = *a.n_max;
    word = a.word.load(count - 1);
  } else {
    word = a.word.load(std::nullopt);
    count = word.size() + 1;
  }
  const auto betas = corollary_beta_sequence(lambda, word, count);
  const auto residuals = common_zero_residuals(lambda, word, betas);
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  const bool ok = worst <= kCommonZeroTol;

  const Json j{{"lambda", to_json(lambda)},
               {"betas", to_json(betas)},
               {"residuals", residuals},
               {"max_residual", worst},
               {"tolerance", kCommonZeroTol},
               {"passed", ok}};
  Output sink(a.out, out);
  sink.stream() << j.dump(2) << '\n';
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct SchurArgs {
  WordSource word;
  std::optional<std::size_t> n;
  std::string beta = "1";
  std::size_t grid = 50;
  std::string convention = "standard";
  std::string out;
};

int cmd_schur(const SchurArgs& a, std::ostream& out) {
  if (!a.word.given()) throw InputError("one of --alphas or --alpha-const is required");
  if (a.n && *a.n == 0) throw InputError("--n must be at least 1");
  const VerblunskyWord word = a.word.load(a.n ? std::optional<std::size_t>(*a.n - 1) : std::nullopt);
  const CirclePoint beta = parse_circle_point(a.beta, "--beta");
  const SchurConvention convention =
      a.convention == "reflected" ? SchurConvention::Reflected : SchurConvention::Standard;

  const FiniteCMV c = build(word, beta);
  const SpectralMeasure mu = spectral_measure(c.dense(), basis_vector(c.dense().size(), 0));
  Output sink(a.out, out);
  auto& os = sink.stream();
  os << "index,z_re,z_im,F_re,F_im,f_re,f_im\n";
  const auto points = disk_grid(a.grid, kSchurRadius);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex z = points[i];
    const Complex F = caratheodory_F(mu, z);
    const Complex f = schur_f(mu, z, convention);
    os << i << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(F.real()) << ',' << fmt(F.imag())
       << ',' << fmt(f.real()) << ',' << fmt(f.imag()) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paraorthogonal polynomials on the unit circle: zeros, rank-one perturbations, checks"};
  app.require_subcommand(1);

  ZerosArgs zeros;
  auto* zc = app.add_subcommand("zeros", "Zeros of a paraorthogonal polynomial (CMV eigenvalues)");
  zeros.word.add_to(*zc);
  zc->add_option("--n", zeros.n, "Degree (defaults to the number of coefficients plus one)");
  zc->add_option("--beta", zeros.beta, "Boundary coefficient, number or [re, im]");
  zc->add_option("--format", zeros.format)->check(CLI::IsMember({"json", "csv"}));
  zc->add_option("--out", zeros.out, "Write to this file instead of stdout");

  VerifyArgs verify;
  auto* vc = app.add_subcommand("verify", "Run a randomized check and print a JSON report");
  vc->add_option("--theorem", verify.theorem)
      ->required()
      ->check(CLI::IsMember({"1.1", "1.2", "1.3", "1.4", "3.4", "2.3", "2.4", "2.5", "2.6", "2.8", "2.x"}));
  vc->add_option("--trials", verify.trials);
  vc->add_option("--seed", verify.seed)->envname("POPUC_SEED");
  vc->add_option("--n-max", verify.n_max);
  vc->add_option("--threads", verify.threads, "Worker threads (0 = all cores); does not affect output");
  vc->add_option("--decoupling", verify.decoupling)->check(CLI::IsMember({"constructed", "transcribed"}));
  vc->add_option("--out", verify.out);

  CommonZeroArgs common;
  auto* cc = app.add_subcommand("common-zero", "Boundary sequence with a prescribed common zero");
  common.word.add_to(*cc);
  cc->add_option("--lambda", common.lambda, "The common zero, [re, im]")->required();
  cc->add_option("--n-max", common.n_max);
  cc->add_option("--out", common.out);

  SchurArgs schur;
  auto* sc = app.add_subcommand("schur", "Sample F and f of the spectral measure of delta_0");
  schur.word.add_to(*sc);
  sc->add_option("--n", schur.n);
  sc->add_option("--beta", schur.beta);
  sc->add_option("--grid", schur.grid)->check(CLI::PositiveNumber);
  sc->add_option("--convention", schur.convention)->check(CLI::IsMember({"standard", "reflected"}));
  sc->add_option("--out", schur.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "popuc: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (zc->parsed()) return cmd_zeros(zeros, out);
    if (vc->parsed()) return cmd_verify(verify, out);
    if (cc->parsed()) return cmd_common_zero(common, out);
    return cmd_schur(schur, out);
  } catch (const InputError& e) {
    err << "popuc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "popuc: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace popuc
