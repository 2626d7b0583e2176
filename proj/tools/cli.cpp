#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "json_io.hpp"
#include "padspec/involution.hpp"
#include "padspec/literal.hpp"
#include "padspec/spectral.hpp"

namespace padspec::cli {

namespace {

using io::json;

struct Job {
  io::TowerFlags flags;
  int slack = -1;
};

struct Result {
  int code = kOk;
  json payload = json::object();
};

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::PrecisionExhausted:
    case Errc::ImpreciseValue:
    case Errc::ImpreciseEntry:
      return kPrecision;
    case Errc::NotNaive:
    case Errc::NotNaiveAtLevel:
    case Errc::NotNormal:
    case Errc::NotUnitarilyDiagonalisable:
    case Errc::ReductionNotDiagonalisable:
    case Errc::EvenPrime:
      return kNegative;
    default:
      return kUsage;
  }
}

const char* status_for(int code) {
  switch (code) {
    case kOk: return "ok";
    case kNegative: return "negative";
    case kPrecision: return "precision";
    default: return "error";
  }
}

int slack_for(const Job& job, std::uint32_t p, std::size_t n) { return job.slack >= 0 ? job.slack : default_slack(p, n); }

// Tower for an n x n matrix job. Unset N defaults to max(20, n s + 4); a
// given N below n s + 4 is rejected before any arithmetic.
TowerRef matrix_tower(const Job& job, const json& file, std::size_t n) {
  const io::TowerSpec spec = io::tower_spec(&file, job.flags);
  const int s = slack_for(job, spec.p, n);
  const int need = static_cast<int>(n) * s + 4;
  const int prec = spec.n.value_or(std::max(20, need));
  if (prec < need)
    fail(Errc::PrecisionExhausted, "N = " + std::to_string(prec) + " is below n s + 4 = " + std::to_string(need) +
                                       " (n = " + std::to_string(n) + ", s = " + std::to_string(s) + ")");
  return FieldTower::make(spec.p, spec.f, spec.ramified, prec);
}

TowerRef plain_tower(const Job& job, const json* file) {
  const io::TowerSpec spec = io::tower_spec(file, job.flags);
  return FieldTower::make(spec.p, spec.f, spec.ramified, spec.n.value_or(20));
}

std::pair<json, PMatrix> load_matrix(const Job& job, const std::string& path) {
  const json file = io::read_json_file(path);
  const TowerRef t = matrix_tower(job, file, io::matrix_file_size(file));
  PMatrix m = io::matrix_from_json(file, t);
  if (!m.square()) fail(Errc::WrongShape, "matrix is " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  return {file, std::move(m)};
}

Result cmd_reduce(const Job& job, const std::string& path) {
  const PMatrix m = load_matrix(job, path).second;
  const ReductiveSpectrum rs = reductive_spectrum(m);
  const FieldTower& t = *m.tower();
  Result r;
  json eig = json::array();
  for (const auto& [l, mult] : rs.eigenvalues) eig.push_back({{"lambda", t.fq_to_string(l)}, {"multiplicity", mult}});
  r.payload = {{"norm", io::norm_to_json(sup_norm(m), t.p())},
               {"normalizer", rs.normalizer},
               {"reduction", io::residue_to_json(rs.reduction)},
               {"eigenvalues", std::move(eig)},
               {"diagonalisable", rs.outcome.diagonalisable}};
  if (!rs.outcome.diagonalisable) {
    r.payload["reason"] = std::string(failure_name(rs.outcome.reason));
    r.payload["witness"] = rs.outcome.witness.to_string();
  }
  return r;
}

Result cmd_unitary(const Job& job, const std::string& path) {
  const PMatrix m = load_matrix(job, path).second;
  const UnitarityReport rep = is_unitary(m);
  Result r;
  r.code = rep.unitary ? kOk : kNegative;
  r.payload = {{"unitary", rep.unitary}, {"clause", rep.clause}, {"norm", io::norm_to_json(norm_bound(m), m.tower()->p())}};
  return r;
}

Result cmd_partition(const Job& job, const std::string& path) {
  const PMatrix m = load_matrix(job, path).second;
  int k = 0;
  const PMatrix a = normalized(m, &k);
  const PartitionOfUnity po = partition_of_unity(a);
  const FieldTower& t = *m.tower();
  json classes = json::array();
  for (const auto& c : po.classes)
    classes.push_back({{"lambda", t.fq_to_string(c.lambda)},
                       {"rank", c.rank},
                       {"norm", io::norm_to_json(norm_bound(c.projection), t.p())},
                       {"projection", io::matrix_to_json(c.projection)}});
  Result r;
  r.payload = {{"normalizer", k}, {"certified_v2", po.certified_v2}, {"classes", std::move(classes)}};
  return r;
}

Result cmd_unidiag(const Job& job, const std::string& path, const std::string& involution) {
  const PMatrix m = load_matrix(job, path).second;
  const FieldTower& t = *m.tower();
  const UnidiagOutcome o = unitary_diagonalise(m, job.slack);
  Result r;
  r.payload["success"] = o.success;
  if (o.success) {
    json d = json::array();
    for (const auto& x : o.d) d.push_back(io::scalar_to_json(x));
    r.payload["U"] = io::matrix_to_json(o.u);
    r.payload["D"] = std::move(d);
    r.payload["class_tree"] = io::class_tree_to_json(t, o.class_tree);
    r.payload["certified_precision"] = o.certified_precision;
    r.payload["certified_v2"] = o.certified_v2;
    r.payload["depth"] = o.depth;
  } else {
    r.code = kNegative;
    r.payload["certificate"] = io::certificate_to_json(t, *o.certificate);
  }
  if (!involution.empty()) {
    InvolutionKind kind = InvolutionKind::Symmetric;
    if (involution == "star") kind = InvolutionKind::StarSymmetric;
    else if (involution == "galois") kind = InvolutionKind::GaloisSymmetric;
    else if (involution != "symmetric") fail(Errc::InvalidArgument, "unknown involution " + involution);
    const InvolutionReport rep = involution_criteria(m, kind);
    json c = {{"kind", std::string(involution_name(rep.kind))},
              {"prediction", std::string(prediction_name(rep.prediction))},
              {"discriminant", io::scalar_to_json(rep.discriminant)},
              {"note", rep.note}};
    if (rep.lambda_plus) c["lambda_plus"] = io::scalar_to_json(*rep.lambda_plus);
    if (rep.lambda_minus) c["lambda_minus"] = io::scalar_to_json(*rep.lambda_minus);
    if (rep.eigenvectors_orthonormal) c["eigenvectors_orthonormal"] = *rep.eigenvectors_orthonormal;
    r.payload["criterion"] = std::move(c);
  }
  return r;
}

Result cmd_funcalc(const Job& job, const std::string& mpath, const std::string& fpath, const std::string& route) {
  const PMatrix a = load_matrix(job, mpath).second;
  const LocallyConstantFn c = io::function_from_json(io::read_json_file(fpath), a.tower());
  Result r;
  if (route == "diagonalisation") {
    r.payload["value"] = io::matrix_to_json(apply_via_diagonalisation(c, a, job.slack));
    return r;
  }
  if (route != "projection") fail(Errc::InvalidArgument, "unknown route " + route);
  std::vector<LevelChoice> trace;
  const PMatrix v = apply_locally_constant(c, a, job.slack, &trace);
  json levels = json::array();
  for (const auto& lc : trace)
    levels.push_back({{"lambda", io::scalar_to_json(lc.lambda)},
                      {"level", lc.level},
                      {"radius", io::norm_to_json(lc.radius, a.tower()->p())},
                      {"piece", lc.piece}});
  r.payload["value"] = io::matrix_to_json(v);
  r.payload["levels"] = std::move(levels);
  return r;
}

WindowKind window_kind(const std::string& name) {
  const auto k = parse_window_kind(name);
  if (!k) fail(Errc::InvalidArgument, "unknown window kind " + name);
  return *k;
}

json window_json(const WindowOperator& w) {
  json out = io::matrix_to_json(w.matrix);
  out["kind"] = std::string(window_kind_name(w.kind));
  out["lo"] = w.lo;
  out["hi"] = w.hi;
  return out;
}

Result cmd_window(const Job& job, const std::string& kind, long long lo, long long hi, const std::vector<std::string>& bands) {
  const TowerRef t = plain_tower(job, nullptr);
  WindowOperator w;
  if (kind == "banded") {
    std::map<long long, PadicScalar> b;
    for (const auto& band : bands) {
      const auto eq = band.find('=');
      if (eq == std::string::npos) fail(Errc::InvalidArgument, "band \"" + band + "\" is not offset=literal");
      long long off = 0;
      try {
        off = std::stoll(band.substr(0, eq));
      } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "band offset in \"" + band + "\"");
      }
      b.emplace(off, parse_scalar_literal(band.substr(eq + 1), t));
    }
    w = banded_window(t, lo, hi, b);
  } else {
    if (!bands.empty()) fail(Errc::InvalidArgument, "--band applies to banded windows only");
    w = make_window(t, window_kind(kind), lo, hi);
  }
  Result r;
  r.payload["window"] = window_json(w);
  return r;
}

Result cmd_series(const Job& job, const std::string& path, const std::string& kind, long long lo, long long hi) {
  const json file = io::read_json_file(path);
  const TowerRef t = plain_tower(job, &file);
  const TateSeries f = io::series_from_json(file, t);
  const WindowOperator w = make_window(t, window_kind(kind), lo, hi);
  const MaskedMatrix fm = series_calculus(f, w);
  const GaussReport g = gauss_isometry_check(f, w);
  Result r;
  r.payload = {{"value", io::masked_to_json(fm)},
               {"gauss", {{"gauss_norm", io::norm_to_json(g.gauss, t->p())},
                          {"interior_norm", io::norm_to_json(g.interior, t->p())},
                          {"equal", g.equal}}}};
  return r;
}

IntegerFn parse_integer_fn(const TowerRef& t, const std::string& poly, const std::string& indicator) {
  if (poly.empty() == indicator.empty()) fail(Errc::InvalidArgument, "give exactly one of --poly and --indicator");
  if (!poly.empty()) {
    std::vector<PadicScalar> c;
    std::stringstream ss(poly);
    for (std::string item; std::getline(ss, item, ',');) c.push_back(parse_scalar_literal(item, t));
    return [t, c](long long n) {
      PadicScalar acc = PadicScalar::zero(t);
      const PadicScalar x = PadicScalar::from_int(n, t);
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  }
  const auto colon = indicator.find(':');
  long long r = 0, j = 0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(indicator);
    r = std::stoll(indicator.substr(0, colon));
    j = std::stoll(indicator.substr(colon + 1));
  } catch (const std::exception&) {
    fail(Errc::InvalidArgument, "--indicator expects r:j");
  }
  if (r < 0 || r > 18) fail(Errc::InvalidArgument, "--indicator radius out of range");
  long long mod = 1;
  for (long long k = 0; k < r; ++k) mod *= t->p();
  return [t, mod, j](long long n) {
    const long long d = ((n - j) % mod + mod) % mod;
    return PadicScalar::from_int(d == 0 ? 1 : 0, t);
  };
}

Result cmd_fractal(const Job& job, const std::string& kind, long long lo, long long hi, const std::string& poly,
                   const std::string& indicator, bool self_similar) {
  const TowerRef t = plain_tower(job, nullptr);
  const WindowOperator w = make_window(t, window_kind(kind), lo, hi);
  const IntegerFn f = parse_integer_fn(t, poly, indicator);
  Result r;
  r.payload["value"] = io::masked_to_json(fractal_continuous_calculus(f, w, job.slack));
  if (self_similar) {
    json ss = json::array();
    for (std::uint32_t j = 0; j < t->p(); ++j) ss.push_back(fractal_self_similar(w, j));
    r.payload["self_similar"] = std::move(ss);
  }
  return r;
}

Result cmd_born(const Job& job, const std::string& mpath, const std::string& spath, const std::string& setpath,
                const std::string& set2path) {
  const PMatrix a = load_matrix(job, mpath).second;
  const TowerRef& t = a.tower();
  const StateVector psi = io::state_from_json(io::read_json_file(spath), t);
  const MeasurableSet s = io::set_from_json(io::read_json_file(setpath), t);
  Result r;
  r.payload["probability"] = io::norm_to_json(born_probability(a, psi, s, job.slack), t->p());
  if (!set2path.empty()) {
    const MeasurableSet s2 = io::set_from_json(io::read_json_file(set2path), t);
    const AxiomReport rep = check_probability_axioms(a, psi, s, s2, job.slack);
    r.payload["axioms"] = {{"ok", rep.ok},
                           {"p_s", io::norm_to_json(rep.p_s, t->p())},
                           {"p_s2", io::norm_to_json(rep.p_s2, t->p())},
                           {"p_union", io::norm_to_json(rep.p_union, t->p())},
                           {"failures", rep.failures}};
  }
  return r;
}

// Small fixed instances of the main invariants.
Result cmd_selftest() {
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    std::string note;
    try {
      ok = f();
    } catch (const std::exception& e) {
      note = e.what();
    }
    all = all && ok;
    json c = {{"name", name}, {"ok", ok}};
    if (!note.empty()) c["error"] = note;
    checks.push_back(std::move(c));
  };
  auto t5 = FieldTower::make(5, 1, false, 12);
  const PMatrix sx = PMatrix::from_ints(t5, {{0, 1}, {1, 0}});
  check("pauli x diagonalises over Q_5", [&] {
    const UnidiagOutcome o = unitary_diagonalise(sx);
    if (!o.success) return false;
    const bool a = congruent(o.d[0], PadicScalar::one(t5), 10) && congruent(o.d[1], -PadicScalar::one(t5), 10);
    const bool b = congruent(o.d[1], PadicScalar::one(t5), 10) && congruent(o.d[0], -PadicScalar::one(t5), 10);
    return a || b;
  });
  check("symmetric nilpotent is rejected at depth 0", [&] {
    const PadicScalar i = *hensel_sqrt(PadicScalar::from_int(-1, t5));
    PMatrix m(t5, 2, 2);
    m(0, 0) = PadicScalar::one(t5);
    m(0, 1) = i;
    m(1, 0) = i;
    m(1, 1) = -PadicScalar::one(t5);
    const UnidiagOutcome o = unitary_diagonalise(m);
    return !o.success && o.certificate->depth == 0 && o.certificate->reason == ResidueFailure::NotSemisimple;
  });
  check("partition of unity sums to the identity", [&] {
    const PMatrix a = PMatrix::from_ints(t5, {{2, 1}, {1, 2}});
    const PartitionOfUnity po = partition_of_unity(a);
    PMatrix sum(t5, 2, 2);
    for (const auto& c : po.classes) sum = sum + c.projection;
    return congruent(sum, PMatrix::identity(t5, 2), tolerance_v2(*t5, 2));
  });
  check("literal round trip", [&] {
    const PadicScalar x = from_rational(7, 75, t5) - from_rational(1, 3, t5);
    return parse_scalar_literal(format_scalar_literal(x), t5) == x;
  });
  check("born probabilities are not additive", [&] {
    const PMatrix sz = PMatrix::from_ints(t5, {{1, 0}, {0, -1}});
    const StateVector psi(t5, {PadicScalar::one(t5), PadicScalar::one(t5)});
    const Norm one = Norm::of_v2(0);
    return born_probability(sz, psi, MeasurableSet({PDisc::with_exponent(PadicScalar::one(t5), 1)})) == one &&
           born_probability(sz, psi, MeasurableSet({PDisc::with_exponent(-PadicScalar::one(t5), 1)})) == one;
  });
  check("gauss norm isometry on the shift", [&] {
    const TateSeries f(t5, {{-1, from_rational(1, 5, t5)}, {2, PadicScalar::from_int(3, t5)}});
    return gauss_isometry_check(f, make_window(t5, WindowKind::Shift, -6, 6)).equal;
  });
  check("fractal1 calculus of the identity is the window", [&] {
    const WindowOperator w = make_window(t5, WindowKind::Fractal1, -2, 4);
    const IntegerFn id = [&](long long n) { return PadicScalar::from_int(n, t5); };
    return congruent(fractal_continuous_calculus(id, w).value, w.matrix, t5->cap_v2());
  });
  Result r;
  r.code = all ? kOk : kUsage;
  r.payload["checks"] = std::move(checks);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic spectral linear algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  Job job;
  std::uint32_t p = 0;
  int f = 0, n = 0;
  bool ramified = false;
  std::string out_path;
  app.add_option("--p", p, "prime");
  app.add_option("--f", f, "unramified degree (1, 2 or 4)");
  app.add_flag("--ramified", ramified, "adjoin a square root of p");
  app.add_option("--N", n, "working precision in base-p digits");
  app.add_option("--out", out_path, "write the JSON result here instead of standard output");

  std::string matrix, second, third, involution, route = "projection", kind, poly, indicator, set2;
  long long lo = 0, hi = 0;
  std::vector<std::string> bands;
  bool self_similar = false;

  auto* reduce = app.add_subcommand("reduce", "normalised reduction and its residue spectrum");
  reduce->add_option("matrix", matrix)->required();
  auto* unitary = app.add_subcommand("unitary", "unitarity criterion");
  unitary->add_option("matrix", matrix)->required();
  auto* partition = app.add_subcommand("partition", "spectral partition of unity of the normalised matrix");
  partition->add_option("matrix", matrix)->required();
  auto* unidiag = app.add_subcommand("unidiag", "unitary diagonalisation or a failure certificate");
  unidiag->add_option("matrix", matrix)->required();
  unidiag->add_option("--involution", involution, "also report the closed-form 2x2 criterion: symmetric, star, galois");
  auto* funcalc = app.add_subcommand("funcalc", "locally constant functional calculus");
  funcalc->add_option("matrix", matrix)->required();
  funcalc->add_option("function", second)->required();
  funcalc->add_option("--route", route, "projection (default) or diagonalisation");
  auto* window = app.add_subcommand("window", "finite window of a structured operator");
  window->add_option("--kind", kind)->required();
  window->add_option("--lo", lo)->required();
  window->add_option("--hi", hi)->required();
  window->add_option("--band", bands, "offset=literal, banded windows only");
  auto* series = app.add_subcommand("series-calc", "Laurent series of a window operator");
  series->add_option("series", second)->required();
  series->add_option("--kind", kind)->required();
  series->add_option("--lo", lo)->required();
  series->add_option("--hi", hi)->required();
  auto* fractal = app.add_subcommand("fractal-calc", "closed-form calculus of the fractal windows");
  fractal->add_option("--kind", kind)->required();
  fractal->add_option("--lo", lo)->required();
  fractal->add_option("--hi", hi)->required();
  fractal->add_option("--poly", poly, "comma-separated coefficients, constant first");
  fractal->add_option("--indicator", indicator, "r:j for the indicator of j + p^r Z_p");
  fractal->add_flag("--self-similar", self_similar);
  auto* born = app.add_subcommand("born", "Born-rule probability");
  born->add_option("matrix", matrix)->required();
  born->add_option("state", second)->required();
  born->add_option("set", third)->required();
  born->add_option("--set2", set2, "second set: also check the probability axioms");
  auto* selftest = app.add_subcommand("selftest", "run built-in invariant checks");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (app.count("--p")) job.flags.p = p;
  if (app.count("--f")) job.flags.f = f;
  if (ramified) job.flags.ramified = true;
  if (app.count("--N")) job.flags.n = n;
  if (const char* env = std::getenv("PADSPEC_SLACK")) {
    try {
      std::size_t used = 0;
      job.slack = std::stoi(env, &used);
      if (used != std::string(env).size() || job.slack < 0) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "PADSPEC_SLACK must be a nonnegative integer\n";
      return kUsage;
    }
  }

  const std::string name = app.get_subcommands().front()->get_name();
  json doc = {{"schema", io::kSchema}, {"command", name}};
  Result res;
  try {
    if (*reduce) res = cmd_reduce(job, matrix);
    else if (*unitary) res = cmd_unitary(job, matrix);
    else if (*partition) res = cmd_partition(job, matrix);
    else if (*unidiag) res = cmd_unidiag(job, matrix, involution);
    else if (*funcalc) res = cmd_funcalc(job, matrix, second, route);
    else if (*window) res = cmd_window(job, kind, lo, hi, bands);
    else if (*series) res = cmd_series(job, second, kind, lo, hi);
    else if (*fractal) res = cmd_fractal(job, kind, lo, hi, poly, indicator, self_similar);
    else if (*born) res = cmd_born(job, matrix, second, third, set2);
    else if (*selftest) res = cmd_selftest();
  } catch (const Error& e) {
    res.code = exit_code_for(e.code());
    res.payload = {{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
    err << e.what() << "\n";
  } catch (const std::exception& e) {
    res.code = kUsage;
    res.payload = {{"error", "InvalidArgument"}, {"message", e.what()}};
    err << e.what() << "\n";
  }
  doc["status"] = status_for(res.code);
  doc["exit_code"] = res.code;
  doc.update(res.payload);
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path);
    if (!file) {
      err << "cannot write " << out_path << "\n";
      return kUsage;
    }
    file << text;
  }
  return res.code;
}

}  // namespace padspec::cli
