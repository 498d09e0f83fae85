#include "diffalg/scenario.hpp"

#include <chrono>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "diffalg/azumaya.hpp"
#include "diffalg/cech.hpp"
#include "diffalg/descent.hpp"
#include "diffalg/dmod.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/matrix.hpp"
#include "diffalg/parse.hpp"
#include "diffalg/ring.hpp"
#include "diffalg/util.hpp"

namespace diffalg {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void decl_fail(const std::string& msg) {
  fail("DeclarationError", msg);
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) decl_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string get_str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) decl_fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string get_str_or(const Json& j, const char* key, const std::string& dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_string()) decl_fail(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

int64_t get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) decl_fail(std::string("field '") + key + "' must be an integer");
  return v.get<int64_t>();
}

int64_t get_int_or(const Json& j, const char* key, int64_t dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_number_integer()) decl_fail(std::string("field '") + key + "' must be an integer");
  return it->get<int64_t>();
}

bool get_bool_or(const Json& j, const char* key, bool dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_boolean()) decl_fail(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

struct Env {
  std::map<std::string, RingPtr> rings;
  std::map<std::string, Mat> matrices;
  std::map<std::string, DiffModule> modules;
  std::map<std::string, DiffMatrixAlgebra> algebras;
  std::map<std::string, TowerPtr> towers;
  std::map<std::string, DescentDatum> data;
  std::map<std::string, Cochain> cochains;
  std::set<std::string> names;

  void reserve_name(const std::string& n) {
    if (n.empty()) decl_fail("declaration without a name");
    if (!names.insert(n).second) decl_fail("duplicate name '" + n + "'");
  }

  template <typename M>
  const typename M::mapped_type& lookup(const M& m, const std::string& n,
                                        const char* what) const {
    auto it = m.find(n);
    if (it == m.end())
      decl_fail(std::string("unknown ") + what + " '" + n + "'");
    return it->second;
  }

  const RingPtr& ring(const std::string& n) const {
    return lookup(rings, n, "ring");
  }
  const Mat& matrix(const std::string& n) const {
    return lookup(matrices, n, "matrix");
  }
  const DiffModule& module(const std::string& n) const {
    return lookup(modules, n, "module");
  }
  const DiffMatrixAlgebra& algebra(const std::string& n) const {
    return lookup(algebras, n, "algebra");
  }
  const TowerPtr& tower(const std::string& n) const {
    return lookup(towers, n, "tower");
  }
  const DescentDatum& datum(const std::string& n) const {
    return lookup(data, n, "datum");
  }
  const Cochain& cochain(const std::string& n) const {
    return lookup(cochains, n, "cochain");
  }
};

std::vector<std::string> str_list(const Json& v, const char* what) {
  if (!v.is_array()) decl_fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) decl_fail(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

RingPtr build_ring(const Env& env, const Json& j) {
  RingPtr r;
  auto ext = j.find("extends");
  if (ext != j.end()) r = env.ring(ext->get<std::string>());
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) decl_fail("'steps' must be an array");
  for (const auto& s : steps) {
    std::string kind = get_str(s, "step");
    if (kind == "base") {
      if (r) decl_fail("'base' must be the first construction step");
      auto vars = str_list(field(s, "vars"), "'vars'");
      auto derivs = str_list(field(s, "derivs"), "'derivs'");
      if (vars.size() != derivs.size())
        decl_fail("'vars' and 'derivs' must have equal length");
      std::map<std::string, std::string> dm;
      for (std::size_t i = 0; i < vars.size(); ++i) dm[vars[i]] = derivs[i];
      r = make_base(vars, dm);
    } else if (kind == "adjoin") {
      if (!r) decl_fail("'adjoin' needs a ring to extend");
      auto vars = str_list(field(s, "vars"), "'vars'");
      auto derivs = str_list(field(s, "derivs"), "'derivs'");
      if (vars.size() != derivs.size())
        decl_fail("'vars' and 'derivs' must have equal length");
      std::map<std::string, std::string> dm;
      for (std::size_t i = 0; i < vars.size(); ++i) dm[vars[i]] = derivs[i];
      r = make_adjoin(r, vars, dm);
    } else if (kind == "localize") {
      if (!r) decl_fail("'localize' needs a ring to extend");
      r = make_localize(r, get_str(s, "at"));
    } else if (kind == "monic") {
      if (!r) decl_fail("'monic' needs a ring to extend");
      r = make_monic_quotient(r, get_str(s, "var"),
                              str_list(field(s, "coeffs"), "'coeffs'"));
    } else {
      decl_fail("unknown construction step '" + kind + "'");
    }
  }
  if (!r) decl_fail("ring declaration with no steps");
  return r;
}

Mat entries_matrix(const RingPtr& r, const Json& rows) {
  if (!rows.is_array() || rows.empty()) decl_fail("matrix entries must be a nonempty array of rows");
  std::size_t nc = 0;
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    auto cs = str_list(row, "matrix row");
    if (cells.empty()) nc = cs.size();
    if (cs.size() != nc || nc == 0) decl_fail("ragged or empty matrix rows");
    cells.push_back(std::move(cs));
  }
  Mat m(r, cells.size(), nc);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t k = 0; k < nc; ++k)
      m.at(i, k) = parse_expr(r, cells[i][k]);
  return m;
}

Mat build_matrix(const Env& env, const Json& j) {
  if (j.contains("entries"))
    return entries_matrix(env.ring(get_str(j, "ring")), field(j, "entries"));
  if (j.contains("identity"))
    return Mat::identity(env.ring(get_str(j, "ring")),
                         static_cast<std::size_t>(get_int(j, "identity")));
  if (j.contains("kron")) {
    auto ns = str_list(field(j, "kron"), "'kron'");
    if (ns.size() != 2) decl_fail("'kron' takes exactly two matrices");
    return env.matrix(ns[0]).kron(env.matrix(ns[1]));
  }
  if (j.contains("product")) {
    auto ns = str_list(field(j, "product"), "'product'");
    if (ns.empty()) decl_fail("'product' needs at least one matrix");
    Mat m = env.matrix(ns[0]);
    for (std::size_t i = 1; i < ns.size(); ++i) m = m * env.matrix(ns[i]);
    return m;
  }
  if (j.contains("sum")) {
    auto ns = str_list(field(j, "sum"), "'sum'");
    if (ns.empty()) decl_fail("'sum' needs at least one matrix");
    Mat m = env.matrix(ns[0]);
    for (std::size_t i = 1; i < ns.size(); ++i) m = m + env.matrix(ns[i]);
    return m;
  }
  if (j.contains("scale")) {
    const Json& s = field(j, "scale");
    Mat m = env.matrix(get_str(s, "matrix"));
    return m * parse_expr(m.ring(), get_str(s, "by"));
  }
  if (j.contains("transpose"))
    return env.matrix(field(j, "transpose").get<std::string>()).transpose();
  if (j.contains("inverse")) {
    auto inv = env.matrix(field(j, "inverse").get<std::string>()).inverse();
    if (!inv) decl_fail("matrix declared as an inverse is not invertible");
    return *inv;
  }
  if (j.contains("promote"))
    return env.matrix(get_str(field(j, "promote"), "matrix"))
        .promote_to(env.ring(get_str(field(j, "promote"), "ring")));
  decl_fail("matrix declaration needs one of entries/identity/kron/product/"
            "sum/scale/transpose/inverse/promote");
}

/// Matrix given inline (entries array) or as a reference, against a ring.
Mat matrix_arg(const Env& env, const Json& v, const RingPtr& r) {
  if (v.is_string()) return env.matrix(v.get<std::string>());
  return entries_matrix(r, v);
}

SheafKind sheaf_kind(const std::string& s) {
  if (s == "units") return SheafKind::Units;
  if (s == "constant_units") return SheafKind::ConstantUnits;
  if (s == "additive") return SheafKind::Additive;
  if (s == "pgl") return SheafKind::ProjectiveLinear;
  decl_fail("unknown cochain kind '" + s + "'");
}

void process_declaration(Env& env, const Json& j) {
  if (!j.is_object()) decl_fail("declarations must be objects");
  std::string name = get_str(j, "name");
  std::string type = get_str(j, "type");
  env.reserve_name(name);
  try {
    if (type == "ring") {
      env.rings.emplace(name, build_ring(env, j));
    } else if (type == "amalgam") {
      const TowerPtr& tw = env.tower(get_str(j, "tower"));
      auto lvl = static_cast<std::size_t>(get_int(j, "level"));
      env.rings.emplace(name, tw->level(lvl));
    } else if (type == "tower") {
      const RingPtr& a = env.ring(get_str(j, "base"));
      const RingPtr& b = env.ring(get_str(j, "cover"));
      env.towers.emplace(name, CoverTower::make(RingHom::inclusion(a, b)));
    } else if (type == "matrix") {
      env.matrices.emplace(name, build_matrix(env, j));
    } else if (type == "module") {
      const RingPtr& r = env.ring(get_str(j, "ring"));
      env.modules.emplace(name,
                          free_module(r, matrix_arg(env, field(j, "connection"), r)));
    } else if (type == "algebra") {
      const RingPtr& r = env.ring(get_str(j, "ring"));
      Mat z = matrix_arg(env, field(j, "witness"), r);
      env.algebras.emplace(name, matrix_algebra(r, z.rows(), z));
    } else if (type == "datum") {
      const TowerPtr& tw = env.tower(get_str(j, "tower"));
      const DiffModule& m = env.module(get_str(j, "module"));
      std::string ks = get_str(j, "kind");
      DatumKind kind = ks == "algebra" ? DatumKind::Algebra
                       : ks == "module"
                           ? DatumKind::Module
                           : (decl_fail("datum kind must be module or algebra"),
                              DatumKind::Module);
      if (get_bool_or(j, "canonical", false)) {
        env.data.emplace(name, DescentDatum::canonical(tw, m, kind));
      } else {
        Mat phi = matrix_arg(env, field(j, "phi"), tw->level(2));
        env.data.emplace(name, DescentDatum(tw, m, phi, kind));
      }
    } else if (type == "cochain") {
      const TowerPtr& tw = env.tower(get_str(j, "tower"));
      auto deg = static_cast<std::size_t>(get_int(j, "degree"));
      std::string ks = get_str(j, "kind");
      SheafKind kind = sheaf_kind(ks);
      if (kind == SheafKind::ProjectiveLinear) {
        Mat m = matrix_arg(env, field(j, "matrix"), tw->level(deg + 1));
        env.cochains.emplace(name, Cochain(tw, deg, std::move(m)));
      } else {
        RingElem v = parse_expr(tw->level(deg + 1), get_str(j, "value"));
        env.cochains.emplace(name, Cochain(tw, deg, kind, std::move(v)));
      }
    } else {
      decl_fail("unknown declaration type '" + type + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == "DeclarationError") throw;
    decl_fail("declaration '" + name + "' failed: " + e.what());
  }
}

struct Outcome {
  std::string label;
  std::optional<RingElem> value;
};

Outcome verdict(bool ok) { return {ok ? "pass" : "fail", std::nullopt}; }
Outcome value_outcome(RingElem v) {
  Outcome o;
  o.label = "value:" + v.to_string();
  o.value = std::move(v);
  return o;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Outcome run_op(const Env& env, const Json& j, const std::string& op,
               const std::string& check_name, uint64_t seed) {
  if (op == "leibniz") {
    const RingPtr& r = env.ring(get_str(j, "ring"));
    auto pairs = static_cast<int>(get_int_or(j, "pairs", 25));
    auto deg = static_cast<uint32_t>(get_int_or(j, "degree", 3));
    std::mt19937_64 rng(seed ^ fnv1a(check_name));
    bool ok = true;
    for (int i = 0; i < pairs && ok; ++i) {
      RingElem a = random_elem(rng, r, deg);
      RingElem b = random_elem(rng, r, deg);
      ok = (a * b).d() == a.d() * b + a * b.d();
    }
    return verdict(ok);
  }
  if (op == "eval")
    return value_outcome(parse_expr(env.ring(get_str(j, "ring")), get_str(j, "expr")));
  if (op == "derivative")
    return value_outcome(
        parse_expr(env.ring(get_str(j, "ring")), get_str(j, "expr")).d());
  if (op == "dlog")
    return value_outcome(
        dlog(parse_expr(env.ring(get_str(j, "ring")), get_str(j, "expr"))));
  if (op == "dlog_additivity") {
    const RingPtr& r = env.ring(get_str(j, "ring"));
    auto units = str_list(field(j, "units"), "'units'");
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < units.size(); ++i) {
      RingElem u = parse_expr(r, units[i]);
      RingElem v = parse_expr(r, units[i + 1]);
      ok = dlog(u * v) == dlog(u) + dlog(v) &&
           dlog(u).is_zero() == u.d().is_zero();
    }
    return verdict(ok);
  }
  if (op == "exp_cover_dlog") {
    const RingPtr& r = env.ring(get_str(j, "ring"));
    RingElem b = parse_expr(r, get_str(j, "b"));
    ExpCover ec = exp_cover(r, b);
    return verdict(dlog(ec.u) == promote(b, ec.cover.ring()));
  }
  if (op == "inner_witness") {
    const RingPtr& r = env.ring(get_str(j, "ring"));
    Mat z = matrix_arg(env, field(j, "witness"), r);
    std::size_t n = z.rows();
    std::vector<std::vector<Mat>> values(n, std::vector<Mat>(n, Mat()));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        values[a][b] = z.commutator(Mat::unit(r, n, a, b));
    if (j.contains("corrupt")) {
      const Json& c = field(j, "corrupt");
      auto idx = [&](std::size_t k) {
        return static_cast<std::size_t>(c.at(k).get<int64_t>());
      };
      values[idx(0)][idx(1)].at(idx(2), idx(3)) =
          values[idx(0)][idx(1)].at(idx(2), idx(3)) + r->one();
    }
    Mat w = inner_witness(r, n, values);
    return verdict(w == z);
  }
  if (op == "is_diff_automorphism") {
    const DiffMatrixAlgebra& src = env.algebra(get_str(j, "src"));
    const DiffMatrixAlgebra& dst = env.algebra(get_str(j, "dst"));
    Mat u = matrix_arg(env, field(j, "u"), src.ring());
    return verdict(is_diff_automorphism(src, dst, u));
  }
  if (op == "rho") return verdict(rho_check(env.algebra(get_str(j, "algebra"))).ok);
  if (op == "morita") return verdict(morita_check(env.module(get_str(j, "module"))).ok);
  if (op == "hom_tensor_iso")
    return verdict(hom_tensor_iso_check(env.module(get_str(j, "p")),
                                        env.module(get_str(j, "q")),
                                        env.module(get_str(j, "p2")),
                                        env.module(get_str(j, "q2")))
                       .ok);
  if (op == "trivialize_module") {
    const DiffModule& m = env.module(get_str(j, "module"));
    ModuleTrivialization tr = trivialize_module(m);
    const RingPtr& c = tr.cover.ring();
    Mat dc = m.connection().promote_to(c);
    bool ok = (tr.basis.d() + dc * tr.basis).is_zero() &&
              tr.basis.det().inverse().has_value();
    return verdict(ok);
  }
  if (op == "trivialize_algebra") {
    const DiffMatrixAlgebra& alg = env.algebra(get_str(j, "algebra"));
    AlgebraTrivialization tr = trivialize_algebra(alg);
    const RingPtr& c = tr.cover.ring();
    DiffMatrixAlgebra src = alg.base_change(c);
    DiffMatrixAlgebra dst = matrix_algebra(c, alg.n(), Mat::zero(c, alg.n(), alg.n()));
    return verdict(is_diff_automorphism(src, dst, tr.u));
  }
  if (op == "cocycle") return verdict(env.datum(get_str(j, "datum")).cocycle_check());
  if (op == "descend_module") {
    const DescentDatum& d = env.datum(get_str(j, "datum"));
    DescendedModule desc = descend_module(d);
    bool ok = true;
    if (j.contains("connection"))
      ok = desc.connection == matrix_arg(env, field(j, "connection"), d.tower()->base());
    return verdict(ok);
  }
  if (op == "descend_algebra") {
    const DescentDatum& d = env.datum(get_str(j, "datum"));
    DescendedAlgebra alg = descend_algebra(d);
    const RingPtr& b = d.module().ring();
    std::size_t m = alg.basis.size();
    std::size_t n = alg.basis.empty() ? 0 : alg.basis[0].rows();
    bool ok = true;
    Mat usum = Mat::zero(b, n, n);
    for (std::size_t c = 0; c < m; ++c)
      usum = usum + alg.basis[c] * promote(alg.unit[c], b);
    ok = ok && usum == Mat::identity(b, n);
    for (std::size_t p = 0; p < m && ok; ++p) {
      Mat dsum = Mat::zero(b, n, n);
      for (std::size_t c = 0; c < m; ++c)
        dsum = dsum + alg.basis[c] * promote(alg.dtab[p][c], b);
      ok = alg.basis[p].d() == dsum;
      for (std::size_t q = 0; q < m && ok; ++q) {
        Mat sum = Mat::zero(b, n, n);
        for (std::size_t c = 0; c < m; ++c)
          sum = sum + alg.basis[c] * promote(alg.sc[p][q][c], b);
        ok = alg.basis[p] * alg.basis[q] == sum;
      }
    }
    return verdict(ok);
  }
  if (op == "pgl_cocycle") {
    const DescentDatum& d = env.datum(get_str(j, "datum"));
    Cochain c = pgl_cocycle_from_descent(d);
    bool ok = is_cocycle(c);
    if (j.contains("equals")) {
      Mat e = matrix_arg(env, field(j, "equals"), d.tower()->level(2));
      auto inv = e.inverse();
      if (!inv) return verdict(false);
      auto s = (c.matrix() * *inv).as_scalar();
      ok = ok && s.has_value() && s->inverse().has_value();
    }
    return verdict(ok);
  }
  if (op == "is_cocycle") return verdict(is_cocycle(env.cochain(get_str(j, "cochain"))));
  if (op == "is_coboundary")
    return verdict(is_coboundary(env.cochain(get_str(j, "cochain")),
                                 env.cochain(get_str(j, "candidate"))));
  if (op == "cech_dd")
    return verdict(is_cocycle(cech_d(env.cochain(get_str(j, "cochain")))));
  if (op == "boundary2") {
    const Cochain& c = env.cochain(get_str(j, "cochain"));
    Mat lift = matrix_arg(env, field(j, "lift"), c.tower()->level(2));
    bool diff = get_bool_or(j, "differential", false);
    TwoCocycle w = boundary2(c, lift, diff);
    return verdict(w.degree2_identity_ok && (!diff || w.value.d().is_zero()));
  }
  if (op == "lift_independence") {
    const Cochain& c = env.cochain(get_str(j, "cochain"));
    Mat l1 = matrix_arg(env, field(j, "lift1"), c.tower()->level(2));
    Mat l2 = matrix_arg(env, field(j, "lift2"), c.tower()->level(2));
    return verdict(lift_independence_check(c, l1, l2).ok);
  }
  if (op == "boundary_additivity") {
    const Cochain& cm = env.cochain(get_str(j, "cm"));
    const Cochain& cn = env.cochain(get_str(j, "cn"));
    Mat lm = matrix_arg(env, field(j, "lift_m"), cm.tower()->level(2));
    Mat ln = matrix_arg(env, field(j, "lift_n"), cn.tower()->level(2));
    return verdict(boundary_additivity_check(cm, lm, cn, ln).ok);
  }
  decl_fail("unknown operation '" + op + "'");
}

struct Expectation {
  std::string label;         // as rendered in the report
  std::string kind;          // "pass", "fail", "error", "value"
  std::string payload;       // error kind or value expression
};

Expectation parse_expectation(const Json& j) {
  auto it = j.find("expect");
  if (it == j.end()) return {"pass", "pass", ""};
  if (it->is_string()) {
    std::string s = it->get<std::string>();
    if (s != "pass" && s != "fail")
      decl_fail("string expectation must be 'pass' or 'fail'");
    return {s, s, ""};
  }
  if (it->is_object()) {
    if (it->contains("error")) {
      std::string k = field(*it, "error").get<std::string>();
      return {"error:" + k, "error", k};
    }
    if (it->contains("value")) {
      std::string v = field(*it, "value").get<std::string>();
      return {"value:" + v, "value", v};
    }
  }
  decl_fail("expectation must be 'pass', 'fail', {\"error\":...} or {\"value\":...}");
}

CheckRecord run_check(const Env& env, const Json& j, uint64_t seed) {
  if (!j.is_object()) decl_fail("checks must be objects");
  CheckRecord rec;
  rec.name = get_str(j, "name");
  rec.op = get_str(j, "op");
  Expectation exp = parse_expectation(j);
  rec.expected = exp.label;
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = run_op(env, j, rec.op, rec.name, seed);
  } catch (const Error& e) {
    if (e.kind() == "DeclarationError") throw;
    out.label = "error:" + e.kind();
  }
  auto t1 = std::chrono::steady_clock::now();
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  rec.outcome = out.label;
  if (exp.kind == "value") {
    if (out.value) {
      RingElem want = parse_expr(out.value->ring(), exp.payload);
      rec.matched = *out.value == want;
      rec.expected = "value:" + want.to_string();
    } else {
      rec.matched = false;
    }
  } else {
    rec.matched = out.label == exp.label;
  }
  return rec;
}

Report run_parsed(const Json& doc, uint64_t seed) {
  if (!doc.is_object()) decl_fail("scenario must be a JSON object");
  Env env;
  if (doc.contains("declarations")) {
    const Json& decls = field(doc, "declarations");
    if (!decls.is_array()) decl_fail("'declarations' must be an array");
    for (const auto& d : decls) process_declaration(env, d);
  }
  Report rep;
  if (doc.contains("checks")) {
    const Json& checks = field(doc, "checks");
    if (!checks.is_array()) decl_fail("'checks' must be an array");
    std::set<std::string> seen;
    for (const auto& c : checks) {
      CheckRecord rec = run_check(env, c, seed);
      if (!seen.insert(rec.name).second)
        decl_fail("duplicate check name '" + rec.name + "'");
      rep.checks.push_back(std::move(rec));
    }
  }
  return rep;
}

}  // namespace

bool Report::all_matched() const {
  for (const auto& c : checks)
    if (!c.matched) return false;
  return true;
}

std::string Report::render_text() const {
  std::ostringstream os;
  std::size_t good = 0;
  for (const auto& c : checks) {
    if (c.matched) ++good;
    os << (c.matched ? "[ OK ] " : "[FAIL] ") << c.name << " (" << c.op
       << ") outcome=" << c.outcome << " expected=" << c.expected << " ["
       << c.elapsed_ms << " ms]\n";
  }
  os << checks.size() << " checks, " << good << " matched, "
     << (checks.size() - good) << " mismatched\n";
  return os.str();
}

std::string Report::render_machine() const {
  Json doc = Json::object();
  Json arr = Json::array();
  std::size_t good = 0;
  for (const auto& c : checks) {
    if (c.matched) ++good;
    Json rec = Json::object();
    rec["name"] = c.name;
    rec["op"] = c.op;
    rec["outcome"] = c.outcome;
    rec["expected"] = c.expected;
    rec["matched"] = c.matched;
    arr.push_back(std::move(rec));
  }
  doc["checks"] = std::move(arr);
  doc["summary"] = Json{{"total", checks.size()},
                        {"matched", good},
                        {"mismatched", checks.size() - good}};
  return doc.dump(2) + "\n";
}

Report run_scenario_text(const std::string& json_text, uint64_t seed) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail("ParseError", e.what());
  }
  return run_parsed(doc, seed);
}

Report run_scenario_file(const std::string& path, uint64_t seed) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_scenario_text(buf.str(), seed);
}

Report run_examples(const std::string& only, uint64_t seed) {
  const auto& suites = bundled_suites();
  bool found = false;
  Report rep;
  for (const auto& [name, text] : suites) {
    if (!only.empty() && name != only) continue;
    found = true;
    Report r = run_scenario_text(text, seed);
    for (auto& c : r.checks) {
      c.name = name + "/" + c.name;
      rep.checks.push_back(std::move(c));
    }
  }
  if (!found) fail("ParseError", "unknown suite '" + only + "'");
  return rep;
}

}  // namespace diffalg
