#include "hypinv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "hypinv/cartan.hpp"
#include "hypinv/classifier.hpp"
#include "hypinv/corpus.hpp"
#include "hypinv/document.hpp"
#include "hypinv/errors.hpp"
#include "hypinv/kernel.hpp"
#include "hypinv/parser.hpp"

namespace hypinv::cli {

using nlohmann::json;

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// nlohmann::json keeps object keys sorted; only floats need our own format.
void write_json(std::ostream& os, const json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_real(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void emit(std::ostream& out, const json& j) {
  write_json(out, j, 0);
  out << "\n";
}

std::string text(const Expr& e) { return simplify(e).str(); }

json equation_json(const HyperbolicEquation& eq) { return {{"T", text(eq.T)}, {"X", text(eq.X)}, {"U", text(eq.U)}}; }

json invariants_json(const InvariantFrame& f) {
  json inv = {{"H", text(f.H)}, {"K", text(f.K)}};
  if (f.P) inv["P"] = text(*f.P);
  if (f.Q) inv["Q"] = text(*f.Q);
  for (const auto& [name, e] : f.extras) inv[name] = text(e);
  return inv;
}

json report_json(const ClassificationReport& r) {
  json j;
  j["subclass"] = subclass_name(r.subclass);
  j["swapped"] = r.swapped;
  j["invariants"] = invariants_json(r.frame);
  json ds = json::array();
  for (const auto& d : r.decisions) {
    ds.push_back({{"predicate", d.predicate}, {"verdict", d.verdict}, {"method", method_name(d.method)}});
  }
  j["decisions"] = ds;
  if (r.canonical_target) {
    j["canonical_target"] = target_name(*r.canonical_target);
    j["canonical_form"] = equation_json(canonical_form(r));
  } else {
    j["canonical_target"] = nullptr;
  }
  return j;
}

ZeroTestOptions zero_options(const RunConfig& c) {
  ZeroTestOptions z;
  z.seed = c.seed;
  return z;
}

HyperbolicEquation load(const RunConfig& c, std::size_t i) {
  if (i >= c.inputs.size()) throw InputError("", "missing equation document");
  return load_equation_file(c.inputs[i], c.assume);
}

int do_classify(const RunConfig& c, std::ostream& out) {
  emit(out, report_json(classify(load(c, 0), zero_options(c))));
  return exit_code::ok;
}

int do_invariants(const RunConfig& c, std::ostream& out) {
  ClassificationReport r = classify(load(c, 0), zero_options(c));
  json j;
  j["subclass"] = subclass_name(r.subclass);
  j["swapped"] = r.swapped;
  j["equation"] = equation_json(r.equation);
  j["invariants"] = invariants_json(r.frame);
  if (has_operators(r.subclass)) {
    j["operators"] = {{"D1", text(*r.frame.d1_coeff) + " * D_t"}, {"D2", text(*r.frame.d2_coeff) + " * D_x"}};
    j["order"] = c.order;
    json derived = json::object();
    for (const auto& co : manifold_coordinates(r.subclass, c.order)) {
      Expr base = co.base == "P" ? *r.frame.P : co.base == "Q" ? *r.frame.Q : r.frame.extras.at(co.base);
      derived[co.label()] = text(co.indexed ? derived_invariant(r.frame, base, co.j, co.k) : base);
    }
    j["derived"] = derived;
  }
  emit(out, j);
  return exit_code::ok;
}

int do_equivalence(const RunConfig& c, std::ostream& out) {
  HyperbolicEquation a = load(c, 0), b = load(c, 1);
  EquivalenceOptions o;
  o.order = c.order;
  o.domain_a = c.domain;
  o.domain_b = c.domain_b.value_or(c.domain);
  o.grid = c.grid;
  o.tol_match = c.tol_match;
  o.zero = zero_options(c);
  EquivalenceVerdict v = decide_equivalence(a, b, o);
  json j;
  j["status"] = status_name(v.status);
  j["subclass_a"] = subclass_name(v.subclass_a);
  j["subclass_b"] = subclass_name(v.subclass_b);
  j["residual_ab"] = v.residual_ab ? json(*v.residual_ab) : json(nullptr);
  j["residual_ba"] = v.residual_ba ? json(*v.residual_ba) : json(nullptr);
  j["matched_fraction"] = v.matched_fraction;
  j["notes"] = v.notes;
  emit(out, j);
  switch (v.status) {
    case EquivalenceStatus::equivalent: return exit_code::ok;
    case EquivalenceStatus::not_equivalent: return exit_code::not_equivalent;
    default: return exit_code::indeterminate;
  }
}

void write_csv(std::ostream& os, const ClassifyingManifold& m) {
  os << "point_t,point_x";
  for (const auto& l : m.coordinates) os << ',' << l;
  os << '\n';
  for (const auto& s : m.samples) {
    os << format_real(s.t) << ',' << format_real(s.x);
    for (double v : s.values) os << ',' << format_real(v);
    os << '\n';
  }
}

int do_manifold(const RunConfig& c, std::ostream& out) {
  ClassificationReport r = classify(load(c, 0), zero_options(c));
  ClassifyingManifold m = build_manifold(r.frame, c.order, c.domain, c.grid);
  if (c.output.empty()) {
    write_csv(out, m);
    return exit_code::ok;
  }
  std::ofstream f(c.output);
  if (!f) throw InputError("--out", "cannot write '" + c.output + "'");
  write_csv(f, m);
  return exit_code::ok;
}

bool same(const Expr& a, const Expr& b) { return is_identically_zero(a - b); }

bool relations_hold(const std::vector<RelationCheck>& rs) {
  for (const auto& r : rs) {
    if (!r.skipped() && !is_identically_zero(*r.residual)) return false;
  }
  return true;
}

int do_selftest(const RunConfig& c, std::ostream& out) {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  ZeroTestOptions z = zero_options(c);
  for (const auto& w : classification_witnesses()) {
    checks.emplace_back("classify " + w.name, [w, z] { return classify(w.equation, z).subclass == w.subclass; });
  }
  checks.emplace_back("S6_1 invariants", [z] {
    InvariantFrame f = classify(s6_1_witness(), z).frame;
    return same(*f.P, Expr::parameter("lambda")) && same(*f.Q, Expr::integer(0));
  });
  checks.emplace_back("S6_2 invariants", [z] {
    InvariantFrame f = classify(s6_2_witness(), z).frame;
    return same(*f.P, Expr::parameter("lambda")) && same(*f.Q, Expr::parameter("mu"));
  });
  checks.emplace_back("counterexample P, Q", [z] {
    InvariantFrame f = classify(counterexample(), z).frame;
    return same(*f.P, parse("p(t)")) && same(*f.Q, parse("q(t)"));
  });
  std::vector<Witness> ops = {{"S2", s2_witness(), Subclass::S2, {}},
                              {"S3", s3_witness(), Subclass::S3, {}},
                              {"S4", s4_witness(), Subclass::S4, {}},
                              {"S5", s5_witness(), Subclass::S5, {}},
                              {"counterexample", counterexample(), Subclass::S2, {}}};
  for (const auto& w : ops) {
    checks.emplace_back("commutator " + w.name, [w, z] {
      InvariantFrame f = classify(w.equation, z).frame;
      return is_identically_zero(commutator_residual(f, parse("t^2*x + x")));
    });
    if (w.subclass == Subclass::S2 || w.subclass == Subclass::S4) {
      checks.emplace_back("syzygy " + w.name,
                          [w, z] { return is_identically_zero(syzygy_residual(classify(w.equation, z).frame)); });
    }
  }
  checks.emplace_back("counterexample relations", [z] {
    InvariantFrame f = classify(counterexample(), z).frame;
    return relations_hold(jmws_relations(f)) && relations_hold(ibragimov_relations(f));
  });
  for (const auto& w : classification_witnesses()) {
    checks.emplace_back("gauge invariance " + w.name, [w, z] {
      HyperbolicEquation g = gauge_transform(w.equation, parse("(1 + t^2)*exp(t*x)"));
      auto [H, K] = laplace_invariants(w.equation);
      auto [Hg, Kg] = laplace_invariants(g);
      return same(H, Hg) && same(K, Kg) && classify(g, z).subclass == w.subclass;
    });
  }
  for (const auto& w : manifold_witnesses()) {
    EquivalenceOptions o;
    o.domain_a = o.domain_b = w.domain;
    o.zero = z;
    checks.emplace_back("self equivalence " + w.name, [w, o] {
      return decide_equivalence(w.equation, w.equation, o).status == EquivalenceStatus::equivalent;
    });
    checks.emplace_back("gauge soundness " + w.name, [w, o] {
      HyperbolicEquation g = gauge_transform(w.equation, parse("(2 + x^2)*exp(t - x)"));
      return decide_equivalence(w.equation, g, o).status == EquivalenceStatus::equivalent;
    });
  }
  checks.emplace_back("separation q = t+2 vs q = 2t", [z] {
    EquivalenceOptions o;
    o.zero = z;
    EquivalenceVerdict v =
        decide_equivalence(counterexample(parse("t"), parse("t+2")), counterexample(parse("t"), parse("2*t")), o);
    return v.status == EquivalenceStatus::not_equivalent && v.residual_ab && *v.residual_ab > 0.1;
  });
  bool cartan_ok = true;
  for (int n = 1; n <= 50; ++n) {
    cartan_ok = cartan_ok && cartan_test_identity(n) && free_constant_count(n) == degree_of_indeterminacy(n);
  }
  checks.emplace_back("cartan identity n = 1..50", [cartan_ok] { return cartan_ok; });

  json list = json::array();
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    std::string error;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    json item = {{"name", name}, {"pass", ok}};
    if (!error.empty()) item["error"] = error;
    list.push_back(item);
    all = all && ok;
  }
  CharacterTable t = character_table(c.table_n);
  json j;
  j["cartan"] = {{"n", t.n},
                 {"characters", t.characters},
                 {"r1", t.r1},
                 {"weighted_sum", weighted_character_sum(t.n)},
                 {"identity_n_1_to_50", cartan_ok}};
  j["checks"] = list;
  j["pass"] = all;
  emit(out, j);
  return all ? exit_code::ok : exit_code::indeterminate;
}

void check_domain(const Domain& d, const char* field) {
  if (!(d.t0 < d.t1) || !(d.x0 < d.x1)) throw InputError(field, "expected t0 < t1 and x0 < x1");
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    check_domain(c.domain, "--domain");
    if (c.domain_b) check_domain(*c.domain_b, "--domain-b");
    if (c.grid.nt < 1 || c.grid.nx < 1) throw InputError("--grid", "grid sizes must be positive");
    switch (c.command) {
      case Command::classify: return do_classify(c, out);
      case Command::invariants: return do_invariants(c, out);
      case Command::equivalence: return do_equivalence(c, out);
      case Command::manifold: return do_manifold(c, out);
      case Command::selftest: return do_selftest(c, out);
    }
  } catch (const ClassificationError& e) {
    err << "classification failed: " << e.what() << "\n";
    return exit_code::indeterminate;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input_error;
  }
  return exit_code::input_error;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact classification of u_tx = T u_t + X u_x + U u"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<double> domain, domain_b;
  std::vector<int> grid;
  std::vector<std::string> assume;

  auto common = [&](CLI::App* s) {
    s->add_option("--order", c.order, "Order of the classifying manifold")->check(CLI::NonNegativeNumber);
    s->add_option("--tol", c.tol_match, "Match tolerance")->check(CLI::PositiveNumber);
    s->add_option("--domain", domain, "t0,t1,x0,x1")->expected(4)->delimiter(',');
    s->add_option("--grid", grid, "N,M")->expected(2)->delimiter(',');
    s->add_option("--seed", c.seed, "Seed of the probabilistic zero test");
    s->add_option("--assume", assume, "name=value parameter specialization");
  };
  struct Sub {
    const char* name;
    Command cmd;
    const char* help;
    int files;
  };
  const Sub subs[] = {
      {"classify", Command::classify, "Classification report", 1},
      {"invariants", Command::invariants, "Invariants, operators and derived invariants", 1},
      {"equivalence", Command::equivalence, "Local equivalence of two equations", 2},
      {"manifold", Command::manifold, "Sampled classifying manifold as CSV", 1},
      {"selftest", Command::selftest, "Witness corpus, identities and the Cartan check", 0},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (s.files > 0) sub->add_option("equations", c.inputs, "Equation documents")->required()->expected(s.files);
    if (s.cmd == Command::equivalence) {
      sub->add_option("--domain-b", domain_b, "Domain of the second equation")->expected(4)->delimiter(',');
    }
    if (s.cmd == Command::manifold) sub->add_option("--out", c.output, "CSV output path");
    if (s.cmd == Command::selftest) sub->add_option("--n", c.table_n, "Character table size")->check(CLI::PositiveNumber);
    Command cmd = s.cmd;
    sub->callback([&c, cmd] { c.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::input_error;
  }
  if (!domain.empty()) c.domain = {domain[0], domain[1], domain[2], domain[3]};
  if (!domain_b.empty()) c.domain_b = Domain{domain_b[0], domain_b[1], domain_b[2], domain_b[3]};
  if (!grid.empty()) c.grid = {grid[0], grid[1]};
  for (const auto& a : assume) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "input error: field '--assume': expected name=value, got '" << a << "'\n";
      return exit_code::input_error;
    }
    c.assume[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return run(c, out, err);
}

}  // namespace hypinv::cli
