#include "qwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalk/conjecture.hpp"
#include "qwalk/continuum.hpp"
#include "qwalk/decouple.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/version.hpp"
#include "qwalk/walks.hpp"

namespace qwalk::cli {

namespace {

using Value = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Document {
  std::string argv_line;
  std::vector<std::string> notes;
  Table main;
  std::string extra_name;  // second table (stability spectrum); empty if none
  Table extra;
};

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed integer '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  return v;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split_list(s)) out.push_back(parse_double(tok));
  return out;
}

void write_csv_table(std::ostream& os, const std::string& argv_line,
                     const std::vector<std::string>& notes, const Table& t) {
  os << "# qwalk " << kVersion << " | argv: " << argv_line << '\n';
  for (const std::string& n : notes) os << "# " << n << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ',';
    os << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (std::holds_alternative<long long>(row[c]))
        os << std::get<long long>(row[c]);
      else if (std::holds_alternative<double>(row[c]))
        os << fmt_double(std::get<double>(row[c]));
      else
        os << std::get<std::string>(row[c]);
    }
    os << '\n';
  }
}

nlohmann::ordered_json table_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::holds_alternative<long long>(row[c]))
        obj[t.columns[c]] = std::get<long long>(row[c]);
      else if (std::holds_alternative<double>(row[c]))
        obj[t.columns[c]] = std::get<double>(row[c]);
      else
        obj[t.columns[c]] = std::get<std::string>(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::filesystem::path derived_path(const std::filesystem::path& out, const std::string& name) {
  std::filesystem::path p = out;
  const std::string ext = p.extension().string();
  p.replace_extension();
  p += "." + name;
  p += ext;
  return p;
}

void write_document(const Document& doc, const std::string& out, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["argv"] = doc.argv_line;
    if (!doc.notes.empty()) j["notes"] = doc.notes;
    j["rows"] = table_json(doc.main);
    if (!doc.extra_name.empty()) j[doc.extra_name] = table_json(doc.extra);
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
      std::cout << text;
    } else {
      std::ofstream os(out, std::ios::binary);
      if (!os) throw std::runtime_error("cannot open output file '" + out + "'");
      os << text;
    }
    return;
  }
  if (out.empty() || out == "-") {
    write_csv_table(std::cout, doc.argv_line, doc.notes, doc.main);
    if (!doc.extra_name.empty()) {
      std::cout << "# " << doc.extra_name << '\n';
      write_csv_table(std::cout, doc.argv_line, {}, doc.extra);
    }
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + out + "'");
  write_csv_table(os, doc.argv_line, doc.notes, doc.main);
  if (!doc.extra_name.empty()) {
    const std::filesystem::path extra = derived_path(out, doc.extra_name);
    std::ofstream os2(extra, std::ios::binary);
    if (!os2) throw std::runtime_error("cannot open output file '" + extra.string() + "'");
    write_csv_table(os2, doc.argv_line, doc.notes, doc.extra);
  }
}

Vec3 random_bz(SplitMix64& rng, int n, double eps) {
  const double kmax = std::numbers::pi / eps;
  Vec3 k{0, 0, 0};
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = rng.uniform_sym() * kmax;
  return k;
}

double residual_threshold(const std::string& walk) {
  if (walk == "dirac3") return 1e-10;
  return 1e-12;
}

double slope_of(const std::vector<std::pair<double, double>>& rows) {
  return convergence_order(rows);
}

struct RunResult {
  Document doc;
  std::vector<std::string> violations;
};

RunResult run_decouple_residual(const std::string& walk, double mass, double eps,
                                const std::string& grid_str, int steps,
                                std::uint64_t seed, bool check) {
  const Walk w = make_walk(walk, mass, eps);
  std::vector<std::string> toks = split_list(grid_str);
  Grid g{w.spec.n, {1, 1, 1}, eps};
  if (toks.size() == 1) {
    const int nsize = parse_int(toks[0]);
    for (int j = 0; j < g.n; ++j) g.sizes[static_cast<std::size_t>(j)] = nsize;
  } else if (static_cast<int>(toks.size()) == g.n) {
    for (int j = 0; j < g.n; ++j) g.sizes[static_cast<std::size_t>(j)] = parse_int(toks[static_cast<std::size_t>(j)]);
  } else {
    throw std::invalid_argument("--grid needs 1 or " + std::to_string(g.n) + " sizes for " + walk);
  }
  const DecoupledForm dec = char_poly_stencils(w.stencil);
  const Field f0 = random_field(seed, g, w.spec.d);
  const auto rows = residual_series(w.stencil, dec, f0, steps);

  RunResult res;
  res.doc.main.columns = {"step", "residual"};
  double worst = 0.0;
  for (const auto& [step, r] : rows) {
    res.doc.main.rows.push_back({static_cast<long long>(step), r});
    worst = std::max(worst, r);
  }
  res.doc.notes.push_back("max_residual: " + fmt_double(worst));
  if (check && worst > residual_threshold(walk))
    res.violations.push_back("max residual " + fmt_double(worst) + " exceeds " +
                             fmt_double(residual_threshold(walk)));
  return res;
}

RunResult run_dispersion(const std::string& walk, double mass, double eps, int ksamples,
                         std::uint64_t seed, bool check) {
  const Walk w = make_walk(walk, mass, eps);
  const double kax = 0.5 * std::numbers::pi / eps;
  std::vector<Vec3> ks;
  const int n_axis = std::min(ksamples, w.spec.n);
  for (int j = 0; j < n_axis; ++j) {
    Vec3 k{0, 0, 0};
    k[static_cast<std::size_t>(j)] = kax;
    ks.push_back(k);
  }
  SplitMix64 rng(seed);
  for (int i = n_axis; i < ksamples; ++i) ks.push_back(random_bz(rng, w.spec.n, eps));

  const DispersionTable table = dispersion(w.stencil, mass, ks);
  RunResult res;
  res.doc.main.columns = {"k1", "k2", "k3", "branch", "omega_eps", "omega_cont", "abs_err"};
  for (const DispersionRow& r : table.rows)
    res.doc.main.rows.push_back({r.k[0], r.k[1], r.k[2], static_cast<long long>(r.branch),
                                 r.omega_eps, r.omega_cont, r.abs_err});
  if (check) {
    if (walk == "weyl3") {
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const DispersionRow& r = table.rows[i];
        const bool axis_sample = (i / static_cast<std::size_t>(w.spec.d)) < static_cast<std::size_t>(n_axis);
        if (axis_sample && r.abs_err > 1e-12)
          res.violations.push_back("axis-momentum dispersion error " + fmt_double(r.abs_err) +
                                   " exceeds 1e-12");
      }
    } else if (walk == "dirac2") {
      for (const DispersionRow& r : table.rows) {
        const double lhs = std::cos(r.omega_eps * eps);
        const double rhs = std::cos(mass * eps) * std::cos(r.k[0] * eps) * std::cos(r.k[1] * eps) +
                           std::sin(mass * eps) * std::sin(r.k[0] * eps) * std::sin(r.k[1] * eps);
        if (std::abs(lhs - rhs) > 1e-12)
          res.violations.push_back("closed-form dispersion identity violated by " +
                                   fmt_double(std::abs(lhs - rhs)));
      }
    }
  }
  return res;
}

RunResult run_convergence(const std::string& walk, double mass, const std::string& k_str,
                          double omega, const std::string& eps_str, bool check) {
  const std::vector<double> kvals = parse_double_list(k_str);
  const int n = (walk == "dirac2") ? 2 : 3;
  if (static_cast<int>(kvals.size()) != n)
    throw std::invalid_argument("--k needs " + std::to_string(n) + " components for " + walk);
  Vec3 k{0, 0, 0};
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = kvals[static_cast<std::size_t>(j)];
  const std::vector<double> eps_list = parse_double_list(eps_str);

  const auto family = [&](double e) { return char_poly_stencils(make_walk(walk, mass, e).stencil); };
  double target = kg_symbol(omega, k, mass, n);
  if (walk == "dirac3") target *= target;
  const auto rows = symbol_limit_check(family, omega, k, target, eps_list);

  RunResult res;
  res.doc.main.columns = {"eps", "error"};
  for (const auto& [e, err] : rows) res.doc.main.rows.push_back({e, err});
  res.doc.notes.push_back("target: " + fmt_double(target));
  if (check) {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].second < rows[i - 1].second))
        res.violations.push_back("error does not decrease monotonically");
    const double slope = slope_of(rows);
    res.doc.notes.push_back("slope: " + fmt_double(slope));
    if (slope < 0.9)
      res.violations.push_back("convergence slope " + fmt_double(slope) + " below 0.9");
  }
  return res;
}

RunResult run_lemma(int dim, const std::string& a_str, const std::string& eps_str, bool check) {
  const std::vector<double> avals = parse_double_list(a_str);
  if (avals.size() != 3) throw std::invalid_argument("--A needs 3 components");
  std::vector<CMat> alphas;
  if (dim == 2) {
    alphas = {pauli(1), pauli(2), pauli(3)};
  } else {
    const DiracRep rep = dirac_rep();
    alphas = {rep.alpha[0], rep.alpha[1], rep.alpha[2]};
  }
  const std::vector<double> eps_list = parse_double_list(eps_str);
  const auto rows = lemma_scaling_check(alphas, avals, eps_list);

  RunResult res;
  res.doc.main.columns = {"eps", "ratio_re", "ratio_im", "target_re", "target_im", "abs_err"};
  std::vector<std::pair<double, double>> errs;
  for (const LemmaRow& r : rows) {
    const double err = std::abs(r.ratio - r.target);
    res.doc.main.rows.push_back({r.eps, r.ratio.real(), r.ratio.imag(), r.target.real(),
                                 r.target.imag(), err});
    errs.emplace_back(r.eps, err);
  }
  if (check) {
    const bool all_resolved =
        std::all_of(errs.begin(), errs.end(), [](const auto& e) { return e.second > 1e-14; });
    if (all_resolved) {
      const double slope = slope_of(errs);
      res.doc.notes.push_back("slope: " + fmt_double(slope));
      if (slope < 0.9)
        res.violations.push_back("lemma scaling slope " + fmt_double(slope) + " below 0.9");
    } else {
      res.doc.notes.push_back("slope: exact to round-off");
    }
    for (const auto& [e, err] : errs)
      if (e == 0.05 && err > 0.05)
        res.violations.push_back("|ratio - target| = " + fmt_double(err) +
                                 " exceeds 0.05 at eps = 0.05");
  }
  return res;
}

RunResult run_conjecture(double mass, const std::string& eps_str, bool literal, bool check) {
  const std::vector<double> eps_list = parse_double_list(eps_str);
  const double omega = 0.9;
  const Vec3 k{0.5, 0.3, 0.2};
  const double target = kg_symbol(omega, k, mass, 3);
  const auto family = [&](double e) { return conjecture_form(mass, e, literal); };
  const auto rows = symbol_limit_check(family, omega, k, target, eps_list);

  RunResult res;
  res.doc.main.columns = {"eps", "error"};
  for (const auto& [e, err] : rows) res.doc.main.rows.push_back({e, err});
  res.doc.notes.push_back("target: " + fmt_double(target));
  res.doc.notes.push_back(std::string("constant_term: ") + (literal ? "literal" : "corrected"));

  const double eps_s = *std::min_element(eps_list.begin(), eps_list.end());
  SplitMix64 rng(7);
  std::vector<Vec3> ks;
  for (int i = 0; i < 500; ++i) ks.push_back(random_bz(rng, 3, eps_s));
  const auto stab = stability_spectrum(mass, eps_s, ks);
  res.doc.extra_name = "stability";
  res.doc.extra.columns = {"k1", "k2", "k3", "a_re", "a_im", "maxmod"};
  double maxmod = 0.0;
  for (const StabilityRow& r : stab) {
    res.doc.extra.rows.push_back({r.k[0], r.k[1], r.k[2], r.a_symbol.real(), r.a_symbol.imag(),
                                  r.max_modulus});
    maxmod = std::max(maxmod, r.max_modulus);
  }

  // Constant solutions are preserved exactly by the corrected scheme at m = 0.
  std::string constant_note = "constant_check: skipped (mass != 0)";
  if (mass == 0.0) {
    const Grid g{3, {4, 4, 4}, eps_s};
    const cplx one[1] = {1.0};
    const Field f = plane_wave(Vec3{0, 0, 0}, one, g);
    const DecoupledForm dec = conjecture_form(mass, eps_s, literal);
    const Field hist[2] = {f, f};
    const Field next = recurrence_step(dec, hist);
    const double dev = (next - f).max_abs();
    constant_note = (dev == 0.0) ? "constant_check: pass" : "constant_check: fail";
    if (check && dev != 0.0)
      res.violations.push_back("constant field is not preserved (deviation " + fmt_double(dev) + ")");
  }
  res.doc.notes.push_back(constant_note);

  if (check) {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].second < rows[i - 1].second))
        res.violations.push_back("error does not decrease monotonically");
    const double slope = slope_of(rows);
    res.doc.notes.push_back("slope: " + fmt_double(slope));
    if (slope < 0.9)
      res.violations.push_back("convergence slope " + fmt_double(slope) + " below 0.9");
    if (maxmod > 1.0 + 1e-12)
      res.violations.push_back("mode-root modulus " + fmt_double(maxmod) + " exceeds 1 + 1e-12");
  }
  return res;
}

RunResult run_degeneracy(const std::string& walk, double mass, double eps, int samples,
                         double tol, bool check) {
  const Walk w = make_walk(walk, mass, eps);
  const DegeneracyReport rep = degeneracy_probe(w.stencil, samples, tol);

  RunResult res;
  res.doc.main.columns = {"k1", "k2", "k3", "structured", "accidental", "pattern"};
  auto pattern_str = [](const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += '|';
      s += std::to_string(p[i]);
    }
    return s;
  };
  for (const DegeneracySample& s : rep.samples)
    res.doc.main.rows.push_back({s.k[0], s.k[1], s.k[2],
                                 static_cast<long long>(s.structured ? 1 : 0),
                                 static_cast<long long>(s.accidental ? 1 : 0),
                                 pattern_str(s.pattern)});
  if (rep.has_generic)
    res.doc.notes.push_back("generic: " + pattern_str(rep.generic_pattern) + " (" +
                            std::to_string(rep.random_matching) + "/" +
                            std::to_string(rep.random_total) + " random samples)");
  else
    res.doc.notes.push_back("generic: none (no strict majority)");

  if (check) {
    const std::vector<int> all_distinct(static_cast<std::size_t>(w.spec.d), 1);
    if (!rep.has_generic || rep.generic_pattern != all_distinct)
      res.violations.push_back("generic pattern is not all-distinct");
    else if (rep.random_matching * 100 < rep.random_total * 95)
      res.violations.push_back("generic pattern holds at fewer than 95% of random samples");
  }
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"translation-stencil quantum walks: decoupling and continuum-limit checks"};
  app.require_subcommand(1);

  std::string walk, grid_str, k_str, a_str, eps_str, literal_str = "off";
  std::string out, format = "csv";
  double mass = 0.0, eps = 0.1, omega = 0.0, tol = 1e-8;
  int steps = 100, ksamples = 100, samples = 200, dim = 2;
  std::uint64_t seed = 7;
  bool check = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output file; '-' or empty for stdout");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--assert", check, "exit 1 when an acceptance threshold is violated");
  };

  CLI::App* residual_cmd =
      app.add_subcommand("decouple-residual", "multi-step recurrence residual on a walk trajectory");
  residual_cmd->add_option("--walk", walk, "dirac2|dirac3|weyl3")->required();
  residual_cmd->add_option("--mass", mass, "mass");
  residual_cmd->add_option("--eps", eps, "lattice spacing")->required();
  residual_cmd->add_option("--grid", grid_str, "sites per axis: N or N,N[,N]")->required();
  residual_cmd->add_option("--steps", steps, "evolution steps");
  residual_cmd->add_option("--seed", seed, "RNG seed for the initial field");
  add_common(residual_cmd);

  CLI::App* dispersion_cmd = app.add_subcommand("dispersion", "eigenphase branches over momenta");
  dispersion_cmd->add_option("--walk", walk, "dirac2|dirac3|weyl3")->required();
  dispersion_cmd->add_option("--mass", mass, "mass");
  dispersion_cmd->add_option("--eps", eps, "lattice spacing")->required();
  dispersion_cmd->add_option("--ksamples", ksamples, "momentum samples (axis points first, then random)");
  dispersion_cmd->add_option("--seed", seed, "RNG seed for momentum draws");
  add_common(dispersion_cmd);

  CLI::App* convergence_cmd =
      app.add_subcommand("convergence", "decoupled-form symbol against its small-eps limit");
  convergence_cmd->add_option("--walk", walk, "dirac2|dirac3|weyl3")->required();
  convergence_cmd->add_option("--mass", mass, "mass");
  convergence_cmd->add_option("--k", k_str, "momentum kx,ky[,kz]")->required();
  convergence_cmd->add_option("--omega", omega, "frequency")->required();
  convergence_cmd->add_option("--eps-list", eps_str, "comma-separated spacings")->required();
  add_common(convergence_cmd);

  CLI::App* lemma_cmd = app.add_subcommand("lemma-check", "determinant scaling of Id - prod exp(-eps*alpha*A)");
  lemma_cmd->add_option("--dim", dim, "2 (Pauli) or 4 (Dirac representation)")
      ->required()
      ->check(CLI::IsMember({2, 4}));
  lemma_cmd->add_option("--A", a_str, "coefficients a1,a2,a3")->required();
  lemma_cmd->add_option("--eps-list", eps_str, "comma-separated spacings")->required();
  add_common(lemma_cmd);

  CLI::App* conjecture_cmd =
      app.add_subcommand("conjecture-check", "extrapolated two-step scheme: limit and mode stability");
  conjecture_cmd->add_option("--mass", mass, "mass");
  conjecture_cmd->add_option("--eps-list", eps_str, "comma-separated spacings")->required();
  conjecture_cmd->add_option("--literal-sign", literal_str, "use the -I constant term")
      ->check(CLI::IsMember({"on", "off"}));
  add_common(conjecture_cmd);

  CLI::App* degeneracy_cmd = app.add_subcommand("degeneracy", "eigenphase multiplicity patterns");
  degeneracy_cmd->add_option("--walk", walk, "dirac2|dirac3|weyl3")->required();
  degeneracy_cmd->add_option("--mass", mass, "mass");
  degeneracy_cmd->add_option("--eps", eps, "lattice spacing")->required();
  degeneracy_cmd->add_option("--samples", samples, "random momentum samples");
  degeneracy_cmd->add_option("--tol", tol, "eigenphase clustering tolerance");
  add_common(degeneracy_cmd);

  std::vector<const char*> argv;
  argv.push_back("qwalk");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string argv_line;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) argv_line += ' ';
    argv_line += args[i];
  }

  try {
    RunResult res;
    if (residual_cmd->parsed())
      res = run_decouple_residual(walk, mass, eps, grid_str, steps, seed, check);
    else if (dispersion_cmd->parsed())
      res = run_dispersion(walk, mass, eps, ksamples, seed, check);
    else if (convergence_cmd->parsed())
      res = run_convergence(walk, mass, k_str, omega, eps_str, check);
    else if (lemma_cmd->parsed())
      res = run_lemma(dim, a_str, eps_str, check);
    else if (conjecture_cmd->parsed())
      res = run_conjecture(mass, eps_str, literal_str == "on", check);
    else
      res = run_degeneracy(walk, mass, eps, samples, tol, check);

    res.doc.argv_line = argv_line;
    write_document(res.doc, out, format);
    if (check && !res.violations.empty()) {
      for (const std::string& v : res.violations) std::cerr << "assert: " << v << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qwalk::cli
