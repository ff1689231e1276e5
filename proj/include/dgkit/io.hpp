#pragma once

// JSON reading and writing. Integers are written as decimal strings so that
// arbitrary precision survives; plain JSON integers are accepted on input.

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dgkit/totals.hpp"

namespace dgkit::io {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

inline int to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(j.get<std::string>(), &pos);
      if (pos == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  fail(where, "expected an integer");
}

inline Int to_Int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const bool ok = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                    s != "-";
    if (ok) return Int(s);
  }
  fail(where, "expected an integer or a decimal string");
}

inline json write(const Int& x) { return x.str(); }

// --- matrices and vectors ---

inline json write(const IntMatrix& m) {
  json data = json::array();
  for (const auto& x : m.data()) data.push_back(write(x));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline IntMatrix read_matrix(const json& j, const std::string& where) {
  const int r = to_int(field(j, "rows", where), where + ".rows");
  const int c = to_int(field(j, "cols", where), where + ".cols");
  if (r < 0 || c < 0) fail(where, "negative shape");
  const json& data = field(j, "data", where);
  if (!data.is_array() || data.size() != static_cast<std::size_t>(r) * static_cast<std::size_t>(c))
    fail(where + ".data", "expected " + std::to_string(r * c) + " entries");
  IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < data.size(); ++i)
    m(i / static_cast<std::size_t>(c), i % static_cast<std::size_t>(c)) = to_Int(data[i], where + ".data[" + std::to_string(i) + "]");
  return m;
}

inline json write(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(write(x));
  return a;
}

inline IntVec read_vec(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(to_Int(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

// --- complexes and maps ---

inline json write(const Complex& A) {
  json diffs = json::object();
  for (const auto& [n, d] : A.diff_map()) diffs[std::to_string(n)] = write(d);
  return {{"lo", A.lo()}, {"hi", A.hi()}, {"ranks", A.ranks()}, {"diffs", diffs}};
}

inline Complex read_complex(const json& j, const std::string& where) {
  const int lo = to_int(field(j, "lo", where), where + ".lo");
  const json& rj = field(j, "ranks", where);
  if (!rj.is_array()) fail(where + ".ranks", "expected an array");
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const int r = to_int(rj[i], where + ".ranks[" + std::to_string(i) + "]");
    if (r < 0) fail(where + ".ranks[" + std::to_string(i) + "]", "negative rank");
    ranks.push_back(static_cast<std::size_t>(r));
  }
  if (j.contains("hi") && to_int(j.at("hi"), where + ".hi") != lo + static_cast<int>(ranks.size()) - 1 && !ranks.empty())
    fail(where + ".hi", "inconsistent with lo and ranks");
  std::map<int, IntMatrix> diffs;
  if (j.contains("diffs")) {
    const json& dj = j.at("diffs");
    if (!dj.is_object()) fail(where + ".diffs", "expected an object keyed by degree");
    for (const auto& [k, v] : dj.items()) {
      const std::string w = where + ".diffs[" + k + "]";
      const int n = to_int(json(k), w);
      IntMatrix m = read_matrix(v, w);
      auto rank = [&](int d) -> std::size_t {
        return d < lo || d >= lo + static_cast<int>(ranks.size()) ? 0 : ranks[static_cast<std::size_t>(d - lo)];
      };
      if (m.rows() != rank(n - 1) || m.cols() != rank(n))
        fail(w, "degree " + std::to_string(n) + " differential has shape " + m.shape_string() + ", expected " +
                    std::to_string(rank(n - 1)) + "x" + std::to_string(rank(n)));
      diffs.emplace(n, m);
    }
  }
  try {
    return Complex(lo, ranks, diffs);
  } catch (const SquareZeroViolated& e) {
    fail(where + ".diffs[" + std::to_string(e.degree()) + "]", "d^2 != 0 at degree " + std::to_string(e.degree()));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

inline json write_comps(const Proto& f) {
  json comps = json::object();
  for (int q = f.source().lo(); q <= f.source().hi(); ++q) {
    IntMatrix m = f.comp(q);
    if (m.rows() && m.cols()) comps[std::to_string(q)] = write(m);
  }
  return comps;
}

inline Proto read_comps(const json& j, const Complex& src, const Complex& tgt, int degree, const std::string& where) {
  Proto f(src, tgt, degree);
  if (!j.is_object()) fail(where, "expected an object keyed by degree");
  for (const auto& [k, v] : j.items()) {
    const std::string w = where + "[" + k + "]";
    const int q = to_int(json(k), w);
    IntMatrix m = read_matrix(v, w);
    if (m.rows() != tgt.rank(q + degree) || m.cols() != src.rank(q))
      fail(w, "degree " + std::to_string(q) + " component has shape " + m.shape_string() + ", expected " +
                  std::to_string(tgt.rank(q + degree)) + "x" + std::to_string(src.rank(q)));
    if (m.rows() && m.cols()) f.set(q, m);
  }
  return f;
}

inline json write(const Proto& f) {
  return {{"source", write(f.source())}, {"target", write(f.target())}, {"degree", f.degree()}, {"comps", write_comps(f)}};
}

inline Proto read_proto(const json& j, const std::string& where) {
  Complex s = read_complex(field(j, "source", where), where + ".source");
  Complex t = read_complex(field(j, "target", where), where + ".target");
  const int deg = j.contains("degree") ? to_int(j.at("degree"), where + ".degree") : 0;
  return read_comps(j.contains("comps") ? j.at("comps") : json::object(), s, t, deg, where + ".comps");
}

// --- L-modules ---

inline json write(const EllModule& F) {
  json action = json::object();
  for (const auto& [n, m] : F.action) action[std::to_string(n)] = write(m);
  return {{"lo", F.lo}, {"ranks", F.ranks}, {"action", action}};
}

inline EllModule read_ell_module(const json& j, const std::string& where) {
  EllModule F;
  F.lo = to_int(field(j, "lo", where), where + ".lo");
  for (const auto& r : field(j, "ranks", where)) F.ranks.push_back(static_cast<std::size_t>(to_int(r, where + ".ranks")));
  if (j.contains("action"))
    for (const auto& [k, v] : j.at("action").items()) F.action.emplace(to_int(json(k), where + ".action"), read_matrix(v, where + ".action[" + k + "]"));
  if (!F.valid()) fail(where + ".action", "shapes or composites are inconsistent");
  return F;
}

// --- categories and modules ---

inline std::vector<std::string> split_arrow(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t p; (p = s.find("->", start)) != std::string::npos; start = p + 2) parts.push_back(s.substr(start, p - start));
  parts.push_back(s.substr(start));
  return parts;
}

inline json write(const FiniteDGCategory& C) {
  json homs = json::object(), comp = json::object(), ids = json::object();
  auto nm = [&](int i) { return C.objects[static_cast<std::size_t>(i)]; };
  for (const auto& [k, h] : C.homs)
    if (!h.is_zero_object()) homs[nm(k.first) + "->" + nm(k.second)] = write(h);
  for (const auto& [k, c] : C.composition) {
    auto [x, y, z] = k;
    json w = write_comps(c);
    if (!w.empty()) comp[nm(x) + "->" + nm(y) + "->" + nm(z)] = w;
  }
  for (const auto& [x, v] : C.identities) ids[nm(x)] = write(v);
  return {{"objects", C.objects}, {"homs", homs}, {"compose", comp}, {"identities", ids}};
}

inline FiniteDGCategory read_category(const json& j, const std::string& where = "category") {
  FiniteDGCategory C;
  const json& oj = field(j, "objects", where);
  if (!oj.is_array()) fail(where + ".objects", "expected an array of names");
  for (const auto& o : oj) C.objects.push_back(o.get<std::string>());
  auto idx = [&](const std::string& name, const std::string& w) {
    for (int i = 0; i < C.size(); ++i)
      if (C.objects[static_cast<std::size_t>(i)] == name) return i;
    fail(w, "unknown object '" + name + "'");
  };
  if (j.contains("homs"))
    for (const auto& [k, v] : j.at("homs").items()) {
      auto parts = split_arrow(k);
      const std::string w = where + ".homs[" + k + "]";
      if (parts.size() != 2) fail(w, "expected a key 'X->Y'");
      C.homs[{idx(parts[0], w), idx(parts[1], w)}] = read_complex(v, w);
    }
  if (j.contains("compose"))
    for (const auto& [k, v] : j.at("compose").items()) {
      auto parts = split_arrow(k);
      const std::string w = where + ".compose[" + k + "]";
      if (parts.size() != 3) fail(w, "expected a key 'X->Y->Z'");
      const int x = idx(parts[0], w), y = idx(parts[1], w), z = idx(parts[2], w);
      C.composition[{x, y, z}] = read_comps(v, tensor(C.hom(y, z), C.hom(x, y)), C.hom(x, z), 0, w);
    }
  if (j.contains("identities"))
    for (const auto& [k, v] : j.at("identities").items()) {
      const std::string w = where + ".identities[" + k + "]";
      const int x = idx(k, w);
      IntVec id = read_vec(v, w);
      if (id.size() != C.hom(x, x).rank(0)) fail(w, "degree 0 identity has length " + std::to_string(id.size()) +
                                                        ", expected " + std::to_string(C.hom(x, x).rank(0)));
      C.identities[x] = id;
    }
  return C;
}

template <class Module>
json write_module(const Module& M) {
  const FiniteDGCategory& C = *M.base;
  json values = json::object(), actions = json::object();
  auto nm = [&](int i) { return C.objects[static_cast<std::size_t>(i)]; };
  for (int u = 0; u < C.size(); ++u)
    if (!M.value(u).is_zero_object()) values[nm(u)] = write(M.value(u));
  for (const auto& [k, a] : M.actions) {
    json w = write_comps(a);
    if (!w.empty()) actions[nm(k.first) + "->" + nm(k.second)] = w;
  }
  return {{"values", values}, {"actions", actions}};
}

/// Right modules: actions "U->V" are MV (x) C(U, V) -> MU; left modules: C(U, V) (x) NU -> NV.
template <class Module>
Module read_module(const json& j, const CategoryPtr& C, const std::string& where) {
  constexpr bool right = std::is_same_v<Module, RightModule>;
  Module M{C, std::vector<Complex>(static_cast<std::size_t>(C->size())), {}};
  if (j.contains("values"))
    for (const auto& [k, v] : j.at("values").items()) {
      const std::string w = where + ".values[" + k + "]";
      int u = -1;
      for (int i = 0; i < C->size(); ++i)
        if (C->objects[static_cast<std::size_t>(i)] == k) u = i;
      if (u < 0) fail(w, "unknown object '" + k + "'");
      M.values[static_cast<std::size_t>(u)] = read_complex(v, w);
    }
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) {
      if constexpr (right)
        M.actions[{u, v}] = Proto(tensor(M.value(v), C->hom(u, v)), M.value(u), 0);
      else
        M.actions[{u, v}] = Proto(tensor(C->hom(u, v), M.value(u)), M.value(v), 0);
    }
  if (j.contains("actions"))
    for (const auto& [k, a] : j.at("actions").items()) {
      const std::string w = where + ".actions[" + k + "]";
      auto parts = split_arrow(k);
      if (parts.size() != 2) fail(w, "expected a key 'U->V'");
      const int u = C->index_of(parts[0]), v = C->index_of(parts[1]);
      const Proto& shell = M.actions.at({u, v});
      M.actions[{u, v}] = read_comps(a, shell.source(), shell.target(), 0, w);
    }
  return M;
}

// --- double complexes ---

inline json write(const DoubleComplex& A) {
  json cols = json::object(), delta = json::object();
  for (const auto& [m, c] : A.columns) cols[std::to_string(m)] = write(c);
  for (const auto& [m, d] : A.delta) delta[std::to_string(m)] = write_comps(d);
  return {{"columns", cols}, {"delta", delta}};
}

inline DoubleComplex read_double_complex(const json& j, const std::string& where = "double complex") {
  DoubleComplex A;
  for (const auto& [k, v] : field(j, "columns", where).items())
    A.columns[to_int(json(k), where + ".columns")] = read_complex(v, where + ".columns[" + k + "]");
  if (j.contains("delta"))
    for (const auto& [k, v] : j.at("delta").items()) {
      const int m = to_int(json(k), where + ".delta");
      A.delta[m] = read_comps(v, A.column(m), A.column(m - 1), 0, where + ".delta[" + k + "]");
    }
  if (auto r = A.validate(); !r.ok()) fail(where + ".delta", r.violations[0]);
  return A;
}

// --- Cauchy data ---

inline json write(const Elem& e) { return {{"degree", e.degree}, {"v", write(e.v)}}; }

inline Elem read_elem(const json& j, const std::string& where) {
  return {to_int(field(j, "degree", where), where + ".degree"), read_vec(field(j, "v", where), where + ".v")};
}

/// {"category", "M", "N", "eta": [{"object", "x", "y"}], "eps": {"U,V": comps}}.
inline json write(const CauchyData& cd) {
  const FiniteDGCategory& C = *cd.M.base;
  auto nm = [&](int i) { return C.objects[static_cast<std::size_t>(i)]; };
  json eta = json::array(), eps = json::object();
  for (const auto& t : cd.eta) eta.push_back({{"object", nm(t.object)}, {"x", write(t.x)}, {"y", write(t.y)}});
  for (const auto& [k, e] : cd.eps) {
    json w = write_comps(e);
    if (!w.empty()) eps[nm(k.first) + "," + nm(k.second)] = w;
  }
  return {{"category", write(C)}, {"M", write_module(cd.M)}, {"N", write_module(cd.N)}, {"eta", eta}, {"eps", eps}};
}

inline CauchyData read_cauchy(const json& j) {
  auto C = std::make_shared<const FiniteDGCategory>(read_category(field(j, "category", "cauchy"), "category"));
  CauchyData cd{read_module<RightModule>(field(j, "M", "cauchy"), C, "M"),
                read_module<LeftModule>(field(j, "N", "cauchy"), C, "N"), {}, {}};
  if (j.contains("eta"))
    for (std::size_t i = 0; i < j.at("eta").size(); ++i) {
      const json& t = j.at("eta")[i];
      const std::string w = "eta[" + std::to_string(i) + "]";
      cd.eta.push_back({C->index_of(field(t, "object", w).get<std::string>()), read_elem(field(t, "x", w), w + ".x"),
                        read_elem(field(t, "y", w), w + ".y")});
    }
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) cd.eps[{u, v}] = Proto(tensor(cd.N.value(u), cd.M.value(v)), C->hom(v, u), 0);
  if (j.contains("eps"))
    for (const auto& [k, e] : j.at("eps").items()) {
      const std::string w = "eps[" + k + "]";
      const auto comma = k.find(',');
      if (comma == std::string::npos) fail(w, "expected a key 'U,V'");
      const int u = C->index_of(k.substr(0, comma)), v = C->index_of(k.substr(comma + 1));
      const Proto& shell = cd.eps.at({u, v});
      cd.eps[{u, v}] = read_comps(e, shell.source(), shell.target(), 0, w);
    }
  return cd;
}

// --- files ---

inline json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot write file");
  out << j.dump(2) << "\n";
}

}  // namespace dgkit::io
