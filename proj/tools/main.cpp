// twh: verification driver

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "suites.hpp"
#include "twh/exact.hpp"
#include "twh/formal.hpp"

using namespace twh;
using namespace twhcli;
using nlohmann::json;

namespace {

struct Flags {
  std::string setup_file, preset, format;
  std::optional<int> dim, weight_cut, window, jobs, y_order, x_order, max_mode, max_r;
  bool no_timing = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--setup", f.setup_file, "config file (key = value)");
  app->add_option("--preset", f.preset, "identity | neg1 | cyclic");
  app->add_option("--dim", f.dim, "d for a preset");
  app->add_option("--weight-cut", f.weight_cut, "largest graded piece, natural units");
  app->add_option("--window", f.window, "coefficient window radius");
  app->add_option("--jobs", f.jobs, "parallel checks");
  app->add_option("--y-order", f.y_order, "cap for k / l searches");
  app->add_option("--x-order", f.x_order, "corollary order");
  app->add_option("--max-mode", f.max_mode, "largest |mode|");
  app->add_option("--max-r", f.max_r, "largest r in L-bar generators");
  app->add_option("--format", f.format, "human | json");
  app->add_flag("--no-timing", f.no_timing, "print millis as 0 so output is byte for byte reproducible");
}

RunConfig resolve(const Flags& f, bool need_setup) {
  RunConfig c;
  if (!f.setup_file.empty()) c = load_config(f.setup_file);
  if (!f.preset.empty()) c.preset = f.preset;
  if (f.dim) c.d = *f.dim;
  if (f.weight_cut) c.budgets.weight_cut = *f.weight_cut;
  if (f.window) c.budgets.window = *f.window;
  if (f.jobs) c.jobs = *f.jobs;
  if (f.y_order) c.budgets.y_order = *f.y_order;
  if (f.x_order) c.budgets.x_order = *f.x_order;
  if (f.max_mode) c.budgets.max_mode = *f.max_mode;
  if (f.max_r) c.budgets.max_r = *f.max_r;
  if (!f.format.empty()) c.format = f.format;
  if (f.no_timing) c.timing = false;
  c.validate(need_setup);
  return c;
}

void print_report(const RunConfig& c, const std::string& suite, const Report& r, const std::string& setup) {
  double ms = c.timing ? r.millis : 0.0;
  if (c.format == "json") {
    json j;
    j["id"] = r.id;
    j["eq"] = r.eq;
    j["status"] = status_name(r.status);
    if (!r.ok()) j["witness"] = r.witness;
    j["millis"] = std::round(ms * 1000) / 1000;
    j["suite"] = suite;
    j["setup"] = setup;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.found) j["found"] = *r.found;
    std::cout << j.dump() << "\n";
    return;
  }
  std::ostringstream ms_s;
  ms_s.setf(std::ios::fixed);
  ms_s.precision(1);
  ms_s << ms;
  std::cout << (r.ok() ? "pass" : r.status == Status::fail ? "FAIL" : "NOT-FOUND") << "  " << suite << "  " << r.id
            << "  " << ms_s.str() << " ms";
  if (r.found) std::cout << "  found=" << *r.found;
  if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
  std::cout << "\n";
  if (!r.eq.empty()) std::cout << "      " << r.eq << "\n";
  if (!r.ok()) std::cout << "      witness: " << r.witness << "\n";
}

int run_suites(const RunConfig& c, std::vector<std::string> suites) {
  if (suites.empty()) suites = all_suites();
  bool need = false;
  for (const auto& s : suites) need = need || needs_setup(s);
  std::unique_ptr<Env> env;
  if (need || c.has_setup()) env = std::make_unique<Env>(c.setup());
  std::vector<SuiteTask> all;
  for (const auto& s : suites)
    for (auto& t : build_tasks(s, env.get(), c)) all.push_back(std::move(t));
  std::vector<Task> tasks;
  for (const auto& t : all) tasks.push_back(t.task);
  std::vector<Report> reps = run_tasks(tasks, c.jobs);
  size_t bad = 0;
  std::string setup = env ? c.summary() : "symbolic only";
  if (c.format == "human") std::cout << "setup: " << setup << "\n";
  for (size_t i = 0; i < reps.size(); ++i) {
    print_report(c, all[i].suite, reps[i], setup);
    if (!reps[i].ok()) ++bad;
  }
  if (c.format == "human") std::cout << reps.size() << " checks, " << bad << " not passing\n";
  return bad ? 1 : 0;
}

// ---- tables ----

void emit_row(const RunConfig& c, const json& row, const std::string& human) {
  if (c.format == "json") std::cout << row.dump() << "\n";
  else std::cout << human << "\n";
}

std::string dims_str(const std::vector<int>& dims) {
  std::string s = "[";
  for (size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

std::string coords_str(const CycNum& x) {
  std::string s;
  for (const auto& c : x.coords()) s += (s.empty() ? "" : ",") + c;
  return s;
}

int cmd_table(const RunConfig& c, const std::string& which) {
  const Budgets& b = c.budgets;
  if (which == "zeta") {
    if (c.format == "human") std::cout << "r  zeta(-1-2r)\n";
    for (int r = 0; r <= std::max(3, b.max_r); ++r) {
      Rat z = zeta_negative(1 + 2 * r);
      emit_row(c, {{"r", r}, {"value", z.frac()}}, std::to_string(r) + "  " + z.frac());
    }
    return 0;
  }
  Heis h = make_setup(c.setup());
  const int p = h.setup.p;
  if (which == "corrections") {
    if (c.format == "human") std::cout << "p  dims  r  correction\n";
    for (int r = 0; r <= b.max_r; ++r) {
      Rat v = correction(h.eig.dims, p, r, r);
      emit_row(c, {{"p", p}, {"dims", h.eig.dims}, {"r", r}, {"value", v.frac()}},
               std::to_string(p) + "  " + dims_str(h.eig.dims) + "  " + std::to_string(r) + "  " + v.frac());
    }
    return 0;
  }
  if (which == "g") {
    if (c.format == "human") std::cout << "p  a  m  b  n  coordinates  x-exponent\n";
    for (int a = 0; a < h.setup.d; ++a)
      for (int m = 1; m <= b.max_mode; ++m)
        for (int bb = 0; bb < h.setup.d; ++bb)
          for (int n = 1; n <= b.max_mode; ++n) {
            CycNum g = g_value(h, a, m, bb, n);
            emit_row(c,
                     {{"p", p}, {"a", a}, {"m", m}, {"b", bb}, {"n", n}, {"coords", g.coords()},
                      {"exponent", -m - n}},
                     std::to_string(p) + "  " + std::to_string(a) + "  " + std::to_string(m) + "  " +
                         std::to_string(bb) + "  " + std::to_string(n) + "  " + coords_str(g) + "  " +
                         std::to_string(-m - n));
          }
    return 0;
  }
  if (which == "delta_x") {
    if (c.format == "human") std::cout << "v  x-exponent  Delta_x v\n";
    for (const auto& m : basis_up_to(h.V.with_cut(kNoCut), b.weight_cut)) {
      FockVector v = FockVector::basis(m, 1);
      for (const auto& [e, img] : delta_x_apply(h, v))
        emit_row(c, {{"v", monomial_str(m, 1)}, {"exponent", e}, {"image", img.str()}},
                 monomial_str(m, 1) + "  " + std::to_string(e) + "  " + img.str());
    }
    return 0;
  }
  throw ConfigError("unknown table '" + which + "' (g | corrections | delta_x | zeta)");
}

// ---- matrices ----

struct MatrixSpec {
  std::string op = "L", n = "0", weight = "0", vector;
  int r = 0, index = 0;
  bool twisted = false;
};

int64_t to_num(const Rat& x, int den, const std::string& what) {
  Rat y = x * Rat(den);
  if (!y.is_integer()) throw ConfigError(what + " " + x.str() + " is not in (1/" + std::to_string(den) + ")Z");
  return y.to_int();
}

Rat rat_arg(const std::string& s, const std::string& what) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a rational: " + s);
  }
}

int cmd_matrix(const RunConfig& c, const MatrixSpec& ms) {
  Heis h = make_setup(c.setup());
  const int p = h.setup.p;
  const bool on_m = ms.twisted || ms.op != "L";
  const FockSpace sp = (on_m ? h.M : h.V).with_cut(kNoCut);
  Rat weight = rat_arg(ms.weight, "--weight"), n = rat_arg(ms.n, "--n");
  if (weight.sign() < 0 || (weight - Rat(c.budgets.weight_cut)).sign() > 0)
    throw ConfigError("weight " + weight.str() + " outside [0, weight_cut]");
  int64_t src = to_num(weight, sp.den, "weight");
  OperatorSlice s;
  std::string name;
  PairingMap pm(h);
  if (ms.op == "L") {
    int64_t k = to_num(n, 1, "--n");
    name = "L(" + n.str() + ")";
    if (!ms.twisted) {
      s = virasoro_mode(sp, k, src);
    } else {
      FockVector om = conformal_vector(h.V);
      s = make_slice(sp, src, -k * p, [&](const FockVector& w) { return pm.mode(om, (k + 1) * p, w); });
      name += " on S[nu]";
    }
  } else if (ms.op == "Lbar") {
    int64_t k = to_num(n, 1, "--n");
    name = "Lbar^(" + std::to_string(ms.r) + "," + std::to_string(ms.r) + ")(" + n.str() + ") on S[nu]";
    s = rep_twisted(h, k, ms.r, ms.r, src);
  } else if (ms.op == "alpha") {
    if (ms.index < 0 || ms.index >= h.setup.d) throw ConfigError("--index out of range");
    int64_t k = to_num(n, p, "--n");
    name = "e" + std::to_string(ms.index) + "(" + n.str() + ") on S[nu]";
    s = make_slice(sp, src, -k, [&](const FockVector& w) { return apply_mode(sp, ms.index, n, w); });
  } else if (ms.op == "vertex") {
    // --vector "i:-k,j:-l" is e_i(-k) e_j(-l) 1 in the algebra
    Monomial mono;
    std::stringstream ss(ms.vector);
    for (std::string item; std::getline(ss, item, ',');) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("--vector items look like idx:mode");
      int idx = std::stoi(item.substr(0, colon));
      int64_t mode = std::stoll(item.substr(colon + 1));
      if (idx < 0 || idx >= h.setup.d || mode >= 0) throw ConfigError("--vector: bad factor " + item);
      mono.push_back(Mode{mode, idx});
    }
    std::sort(mono.begin(), mono.end());
    FockVector v = FockVector::basis(mono, 1);
    int64_t nn = to_num(n, p, "--n");
    int64_t shift = (monomial_weight(mono) - 1) * p - nn;
    name = "Y(" + (mono.empty() ? std::string("1") : monomial_str(mono, 1)) + ", x)_" + n.str() + " on S[nu]";
    s = make_slice(sp, src, shift, [&](const FockVector& w) { return pm.mode(v, nn, w); });
  } else {
    throw ConfigError("unknown --op '" + ms.op + "' (L | Lbar | alpha | vertex)");
  }
  std::vector<std::string> src_b, dst_b;
  for (const auto& m : s.src) src_b.push_back(m.empty() ? "1" : monomial_str(m, sp.den));
  for (const auto& m : s.dst) dst_b.push_back(m.empty() ? "1" : monomial_str(m, sp.den));
  std::vector<std::vector<std::string>> rows(s.m.rows());
  for (size_t i = 0; i < s.m.rows(); ++i)
    for (size_t j = 0; j < s.m.cols(); ++j) rows[i].push_back(s.m(i, j).str());
  Rat sw(s.src_weight, sp.den), dw(s.dst_weight, sp.den);
  if (c.format == "json") {
    json j{{"op", name}, {"src_weight", sw.str()}, {"dst_weight", dw.str()}, {"src", src_b}, {"dst", dst_b},
           {"matrix", rows}};
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << name << ": weight " << sw.str() << " -> " << dw.str() << "\n";
  std::cout << "columns (src):";
  for (size_t i = 0; i < src_b.size(); ++i) std::cout << "  " << i << ": " << src_b[i];
  std::cout << "\nrows (dst):";
  for (size_t i = 0; i < dst_b.size(); ++i) std::cout << "  " << i << ": " << dst_b[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    std::cout << "[";
    for (size_t j = 0; j < row.size(); ++j) std::cout << (j ? ", " : "") << row[j];
    std::cout << "]\n";
  }
  return 0;
}

// ---- selftest ----

int cmd_selftest(RunConfig c) {
  std::vector<std::pair<std::string, Task>> tasks;
  auto h = std::make_shared<Heis>(make_setup(preset("neg1", 1, 4)));
  auto add = [&](std::string suite, std::string id, std::function<Report()> f) {
    tasks.push_back({suite, Task{id, [id, f] {
                                   Report r = f();
                                   r.id = id;
                                   return r;
                                 }}});
  };
  add("delta-identities", "delta_identity_1(p=2)", [] { return verify_delta_identity_1(2, 2); });
  add("delta-identities", "delta_identity_2(p=2,r=1)", [] { return verify_delta_identity_2(2, 1, 2); });
  add("delta-identities", "delta_three_term", [] { return verify_delta_three_term(2); });
  add("dplus-abstract", "virasoro_central", [] { return check_virasoro_central(3); });
  add("dplus-abstract", "pure_monomial_central", [] { return check_pure_monomial(1, 3); });
  add("twisted-axioms", "g_laws", [h] { return check_g_laws(*h, 3, 2); });
  add("twisted-axioms", "delta_x", [h] { return check_delta_x(*h, 2); });
  add("twisted-axioms", "virasoro_twisted", [h] { return check_virasoro_matrices(*h, true, 2, 4); });
  add("construction-equivalence", "pairing_vs_recursive", [h] {
    PairingMap y(*h);
    RecursiveMap rec(*h);
    return check_maps_agree(*h, y, rec, "pairing_vs_recursive", 2, 2, 4);
  });
  add("dplus-representations", "corrections", [h] {
    Report r = check_corrections(*h, 2);
    Rat v = correction(h->eig.dims, 2, 0, 0);
    if (!(v == Rat(1, 48))) r.fail("p=2 d=1 r=0 correction " + v.str() + " vs 1/48");
    return r;
  });
  add("corollary", "corollary(x^6)", [h] { return check_corollary(*h, 6); });
  std::vector<Task> ts;
  for (const auto& t : tasks) ts.push_back(t.second);
  auto reps = run_tasks(ts, c.jobs);
  size_t bad = 0;
  for (size_t i = 0; i < reps.size(); ++i) {
    print_report(c, tasks[i].first, reps[i], "neg1 d=1 (selftest)");
    if (!reps[i].ok()) ++bad;
  }
  if (c.format == "human") std::cout << reps.size() << " checks, " << bad << " not passing\n";
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twh: exact checks for twisted Heisenberg modules and D+ representations"};
  app.require_subcommand(1);
  Flags f;
  std::vector<std::string> suites;
  std::string which;
  MatrixSpec ms;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, f);
  verify->add_option("--suite", suites, "suite to run (repeatable); default all");

  auto* table = app.add_subcommand("table", "print an exact table");
  add_common(table, f);
  table->add_option("which", which, "g | corrections | delta_x | zeta")->required();

  auto* matrix = app.add_subcommand("matrix", "dump one operator on a graded piece");
  add_common(matrix, f);
  matrix->add_option("--op", ms.op, "L | Lbar | alpha | vertex");
  matrix->add_option("--n", ms.n, "mode, rational");
  matrix->add_option("--weight", ms.weight, "source weight, rational");
  matrix->add_option("--r", ms.r, "r for Lbar^(r,r)");
  matrix->add_option("--index", ms.index, "eigenbasis index for alpha");
  matrix->add_option("--vector", ms.vector, "algebra monomial for vertex, e.g. 0:-1,0:-1");
  matrix->add_flag("--twisted", ms.twisted, "L on S[nu] instead of S");

  auto* self = app.add_subcommand("selftest", "quick end to end run on neg1 d=1");
  add_common(self, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      RunConfig c = resolve(f, false);
      if (!suites.empty()) c.suites = suites;
      if (c.suites.empty()) c.suites = all_suites();
      bool need = false;
      for (const auto& s : c.suites) need = need || needs_setup(s);
      c.validate(need);
      return run_suites(c, c.suites);
    }
    if (*table) return cmd_table(resolve(f, which != "zeta"), which);
    if (*matrix) return cmd_matrix(resolve(f, true), ms);
    if (*self) return cmd_selftest(resolve(f, false));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SetupError& e) {
    std::cerr << "setup error: " << e.what() << "\n";
    return 2;
  } catch (const SectorMismatch& e) {
    std::cerr << "setup error: " << e.what() << "\n";
    return 2;
  } catch (const WeightOverflow& e) {
    std::cerr << "budget violation (weight cut): " << e.what() << "\n";
    return 3;
  } catch (const OutsideWindow& e) {
    std::cerr << "budget violation (window): " << e.what() << "\n";
    return 3;
  } catch (const UnboundedConvolution& e) {
    std::cerr << "budget violation (convolution): " << e.what() << "\n";
    return 3;
  } catch (const UnboundedSubstitution& e) {
    std::cerr << "budget violation (substitution): " << e.what() << "\n";
    return 3;
  } catch (const ResolvingPowerExceeded& e) {
    std::cerr << "budget violation (resolving power): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
