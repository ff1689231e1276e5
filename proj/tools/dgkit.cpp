#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dgkit/acceptance.hpp"
#include "dgkit/io.hpp"

using namespace dgkit;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct Flags {
  bool json = false;
  int probe_depth = 1;
  int window = -1;
  std::uint64_t seed = acceptance::Options{}.seed;
  std::string output;
};

struct Report {
  int status = kOk;
  std::vector<std::string> lines;
  json data = json::object();
  std::optional<json> artifact;  // written to --output when given
};

GradedGroups homology_range(const Complex& A) {
  GradedGroups out;
  for (int n = A.lo(); n <= A.hi(); ++n) out[n] = homology_at(A, n);
  return out;
}

json groups_json(const GradedGroups& g) {
  json out = json::object();
  for (const auto& [n, grp] : g) out[std::to_string(n)] = grp.to_string();
  return out;
}

void describe_complex(Report& r, const std::string& label, const Complex& A) {
  std::string ranks;
  for (auto k : A.ranks()) ranks += (ranks.empty() ? "" : " ") + std::to_string(k);
  r.lines.push_back(label + ": " + (A.is_zero_object() ? "0" : "lo " + std::to_string(A.lo()) + ", ranks " + ranks));
  GradedGroups h = homology_range(A);
  r.lines.push_back(format_graded(h));
  r.data[label] = io::write(A);
  r.data["homology"] = groups_json(h);
  r.artifact = io::write(A);
}

Complex load_complex(const std::string& path) { return io::read_complex(io::load(path), path); }

Report homology_verb(const std::string& path) {
  Report r;
  GradedGroups h = homology_range(load_complex(path));
  r.lines.push_back(format_graded(h));
  r.data["homology"] = groups_json(h);
  return r;
}

Report tensor_verb(const std::string& a, const std::string& b) {
  Report r;
  describe_complex(r, "tensor", tensor(load_complex(a), load_complex(b)));
  return r;
}

Report hom_verb(const std::string& b, const std::string& c) {
  Report r;
  describe_complex(r, "hom", hom_complex(load_complex(b), load_complex(c)));
  return r;
}

Report cone_verb(const std::string& f_path, bool of_identity) {
  Proto f = io::read_proto(io::load(f_path), f_path);
  if (of_identity) f = identity(f.source());
  if (!is_chain_map(f)) throw ParseError(f_path + ": not a chain map");
  Report r;
  describe_complex(r, "cone", mapping_cone(f).cone);
  return r;
}

Report cokernel_verb(const std::string& f_path, const std::string& t_path, const Flags& fl) {
  Proto f = io::read_proto(io::load(f_path), f_path);
  Proto t = io::read_proto(io::load(t_path), t_path);
  Report r;
  if (!is_chain_map(f) || !is_protosplitting(f, t)) {
    r.status = kVerificationFailed;
    r.lines.push_back(!is_chain_map(f) ? "f is not a chain map" : "f t f != f: t is not a protosplitting of f");
    r.data["verified"] = false;
    return r;
  }
  ProtosplitCokernel c = cokernel_protosplit(f, t);
  describe_complex(r, "cokernel", c.C);
  const bool universal = check_cokernel_property(f, c.w, probe_family({f.source(), f.target(), c.C}, fl.probe_depth));
  r.lines.push_back(std::string("universal property against probes: ") + (universal ? "holds" : "fails"));
  r.data["verified"] = universal;
  r.data["w"] = io::write(c.w);
  r.data["s"] = io::write(c.s);
  if (!universal) r.status = kVerificationFailed;
  return r;
}

Report tot_verb(const std::string& path, const Flags& fl) {
  DoubleComplex A = io::read_double_complex(io::load(path), path);
  Report r;
  describe_complex(r, "tot", total_complex(A));
  TotViaColimit t = tot_via_weighted_colimit(A, fl.window);
  const bool ok = t.verify();
  r.lines.push_back(std::string("colimit comparison: ") + (ok ? "chain isomorphism" : "not a chain isomorphism"));
  r.data["verified"] = ok;
  if (!ok) r.status = kVerificationFailed;
  return r;
}

Report colim_verb(const std::string& path, const Flags& fl) {
  json j = io::load(path);
  auto C = std::make_shared<const FiniteDGCategory>(io::read_category(io::field(j, "category", path), "category"));
  if (auto v = validate_dg_category(*C); !v.ok()) throw ParseError("category: " + v.violations[0]);
  RightModule W = io::read_module<RightModule>(io::field(j, "weight", path), C, "weight");
  LeftModule F = io::read_module<LeftModule>(io::field(j, "diagram", path), C, "diagram");
  if (auto v = validate_right_module(W); !v.ok()) throw ParseError("weight: " + v.violations[0]);
  if (auto v = validate_left_module(F); !v.ok()) throw ParseError("diagram: " + v.violations[0]);
  Coend co = coend_tensor(W, F);
  Report r;
  GradedGroups g = co.presented.groups();
  r.lines.push_back("coend groups: " + format_graded(g, "C"));
  r.data["groups"] = groups_json(g);
  if (!co.presented.is_free()) {
    r.lines.push_back("coend has torsion; no free colimit complex");
    r.data["verified"] = false;
    r.status = kVerificationFailed;
    return r;
  }
  WeightedColimit wc = weighted_colimit(W, F);
  describe_complex(r, "colim", wc.colim());
  const bool ok = verify_weighted_colimit(wc, W, F, probe_family({Complex::K(0), LZ()}, fl.probe_depth));
  r.lines.push_back(std::string("weighted colimit property: ") + (ok ? "holds" : "fails"));
  r.data["verified"] = ok;
  if (!ok) r.status = kVerificationFailed;
  return r;
}

Report verify_cauchy_verb(const std::string& path) {
  CauchyData cd = io::read_cauchy(io::load(path));
  CauchyReport c = verify_cauchy_data(cd);
  Report r;
  r.data["verified"] = c.ok;
  if (c.ok) {
    r.lines.push_back("Cauchy data verified");
  } else {
    r.status = kVerificationFailed;
    r.lines.push_back("Cauchy data rejected: " + c.witness);
    r.data["witness"] = c.witness;
  }
  return r;
}

Report verify_category_verb(const std::string& path) {
  FiniteDGCategory C = io::read_category(io::load(path), path);
  ValidationReport v = validate_dg_category(C);
  Report r;
  r.data["verified"] = v.ok();
  r.data["violations"] = v.violations;
  if (v.ok()) {
    r.lines.push_back("DG-category with " + std::to_string(C.size()) + " objects verified");
  } else {
    r.status = kVerificationFailed;
    for (const auto& s : v.violations) r.lines.push_back(s);
  }
  return r;
}

Report suite_verb(const Flags& fl) {
  Report r;
  json items = json::array();
  for (const auto& res : acceptance::run_all({fl.seed, fl.probe_depth, fl.window})) {
    r.lines.push_back(acceptance::format_line(res));
    items.push_back({{"id", res.id}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}});
    if (!res.pass) r.status = kVerificationFailed;
  }
  r.data["criteria"] = items;
  return r;
}

void emit(const Report& r, const Flags& fl) {
  if (fl.json) {
    json out = r.data;
    out["status"] = r.status;
    out["report"] = r.lines;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
  }
  if (!fl.output.empty()) io::save(fl.output, r.artifact ? *r.artifact : r.data);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain complexes over Z, DG-categories and their colimits"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_flag("--json", fl.json, "print a machine-readable JSON report");
  app.add_option("--probe-depth", fl.probe_depth, "probe-family depth for universal-property checks")->check(CLI::NonNegativeNumber);
  app.add_option("--window", fl.window, "window W of the L category (-1: smallest that fits)");
  app.add_option("--seed", fl.seed, "seed for randomly generated checks");
  app.add_option("-o,--output", fl.output, "write the computed object as JSON");

  std::vector<std::string> paths;
  std::string f_path, t_path;
  bool of_identity = false;
  auto add = [&](const char* name, const char* help, std::size_t n) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (n) sub->add_option("inputs", paths, "input JSON files")->required()->expected(static_cast<int>(n));
    return sub;
  };
  CLI::App* homology = add("homology", "homology groups of a complex", 1);
  CLI::App* tensor_cmd = add("tensor", "tensor product of two complexes", 2);
  CLI::App* hom = add("hom", "hom complex [B, C]", 2);
  CLI::App* cone = add("cone", "mapping cone of a chain map", 0);
  cone->add_option("--f", f_path, "chain map JSON")->required();
  cone->add_flag("--map-cone-of-identity", of_identity, "take the cone of the identity of the source of f");
  CLI::App* coker = add("cokernel-protosplit", "cokernel of f along a protosplitting t", 0);
  coker->add_option("--f", f_path, "chain map JSON")->required();
  coker->add_option("--t", t_path, "protosplitting JSON")->required();
  CLI::App* tot = add("tot", "total complex of a double complex, checked against the weighted colimit", 1);
  CLI::App* colim = add("colim", "weighted colimit of a diagram", 1);
  CLI::App* cauchy = add("verify-cauchy", "check Cauchy data", 1);
  CLI::App* category = add("verify-category", "check the DG-category axioms", 1);
  CLI::App* suite = add("suite", "run every acceptance criterion", 0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Report r;
    if (*homology) r = homology_verb(paths[0]);
    else if (*tensor_cmd) r = tensor_verb(paths[0], paths[1]);
    else if (*hom) r = hom_verb(paths[0], paths[1]);
    else if (*cone) r = cone_verb(f_path, of_identity);
    else if (*coker) r = cokernel_verb(f_path, t_path, fl);
    else if (*tot) r = tot_verb(paths[0], fl);
    else if (*colim) r = colim_verb(paths[0], fl);
    else if (*cauchy) r = verify_cauchy_verb(paths[0]);
    else if (*category) r = verify_category_verb(paths[0]);
    else if (*suite) r = suite_verb(fl);
    emit(r, fl);
    return r.status;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
  }
  return kInputError;
}
