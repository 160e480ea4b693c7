// gmc: invariants of polarized varieties from cone data, component
// classification, and counting-function checks.
//
// Exit codes: 0 success, 2 malformed input, 3 mathematical precondition
// failure, 4 oracle mismatch.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmc/catalog.hpp"
#include "gmc/counting.hpp"
#include "gmc/covers.hpp"
#include "gmc/json_io.hpp"
#include "gmc/variety.hpp"

namespace {

using namespace gmc;
using nlohmann::json;
namespace gj = gmc::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitOracle = 4;

struct Options {
  std::string variety;
  std::string polarization;
  bool as_json = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::BadInput, path + ": " + e.what());
  }
}

// A variety from a JSON file or a catalog entry, with the entry when there is one.
struct Source {
  std::optional<catalog::CatalogEntry> entry;
  std::optional<Variety> variety;

  const Variety& x() const { return *variety; }
};

Source load_source(const std::string& where) {
  if (where.empty()) fail(ErrorCode::BadInput, "--variety is required");
  Source s;
  if (where.rfind("builtin:", 0) == 0) {
    s.entry = catalog::load(where.substr(8));
    s.variety = s.entry->require_variety();
  } else {
    json j = read_json_file(where);
    s.variety.emplace(gj::variety_from(j.contains("variety") ? j["variety"] : j));
  }
  return s;
}

Polarization parse_polarization(const std::string& text, const Source& src) {
  if (text.empty()) return src.entry ? src.entry->default_polarization() : src.x().anticanonical();
  if (text == "anticanonical") return src.x().anticanonical();
  json j;
  if (!text.empty() && text.front() == '[') {
    try {
      j = json::parse(text);
    } catch (const json::exception&) {
      fail(ErrorCode::BadInput, "malformed polarization '" + text + "'");
    }
  } else {
    j = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) j.push_back(item);
  }
  return gj::polarization_from(j, src.x());
}

std::string vec_text(const QVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string vec_text(const ZVec& v) { return vec_text(to_q(v)); }

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string decimal(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_invariants(const Options& o) {
  auto src = load_source(o.variety);
  auto l = parse_polarization(o.polarization, src);
  auto rep = compute_invariants(src.x(), l);
  if (o.as_json) {
    json j = gj::to_json(rep);
    j["variety"] = src.x().name();
    j["polarization"] = gj::to_json(l.cls);
    print_json(j);
    return kExitOk;
  }
  std::cout << "variety       " << src.x().name() << "\n"
            << "polarization  " << vec_text(l.cls) << "\n"
            << "big           " << (rep.big ? "yes" : "no") << "\n"
            << "L in Eff      " << (rep.nef_checked ? "yes" : "no") << "\n"
            << "a             " << to_string(rep.a) << "\n";
  if (rep.a) {
    std::cout << "b             " << rep.b << "  (dim F = " << rep.face_dim << (rep.b_agrees ? ", agrees" : ", DISAGREES")
              << ")\n";
  }
  std::cout << "r             " << to_string(rep.r) << "\n";
  if (rep.a) {
    std::cout << "F(X,L) rays  ";
    for (const auto& g : rep.face_F.generators()) std::cout << " " << vec_text(g);
    std::cout << "\n"
              << "alpha         " << to_string(rep.alpha) << "\n";
  }
  return kExitOk;
}

int cmd_alpha(const Options& o, bool oracle, std::int64_t kmax, double tol) {
  auto src = load_source(o.variety);
  auto l = parse_polarization(o.polarization, src);
  Rat alpha = alpha_constant(src.x(), l);
  json j{{"variety", src.x().name()}, {"alpha", gj::to_json(alpha)}};
  int code = kExitOk;
  std::optional<OracleResult> res;
  if (oracle) {
    res = ehrhart_leading_oracle(src.x(), l, kmax);
    double diff = std::abs(to_double(res->estimate) - to_double(alpha));
    bool ok = diff <= tol;
    j["oracle"] = {{"estimate", to_double(res->estimate)},
                   {"kmin", res->kmin},
                   {"kmax", res->kmax},
                   {"difference", diff},
                   {"tolerance", tol},
                   {"agrees", ok}};
    if (!ok) code = kExitOracle;
  }
  if (o.as_json) {
    print_json(j);
  } else {
    std::cout << "alpha   " << to_string(alpha) << "  (" << decimal(to_double(alpha)) << ")\n";
    if (res) {
      std::cout << "oracle  " << decimal(to_double(res->estimate)) << "  (levels " << res->kmin << ".." << res->kmax
                << ", |diff| " << decimal(j["oracle"]["difference"].get<double>(), 4) << ", tol " << tol << ") "
                << (code == kExitOk ? "agrees" : "MISMATCH") << "\n";
    }
  }
  if (code != kExitOk) std::cerr << "oracle estimate differs from alpha by more than " << tol << "\n";
  return code;
}

struct Classified {
  ComponentCatalog catalog;
  std::vector<ThinMapRecord> maps;
};

Classified classify_inputs(const Source& src, const Polarization& l, const std::string& maps_file,
                           const std::string& comps_file, int dmax) {
  Classified out;
  if (!maps_file.empty())
    out.maps = gj::maps_from(read_json_file(maps_file));
  else if (src.entry)
    out.maps = src.entry->thin_maps;
  std::vector<ComponentRecord> comps;
  if (!comps_file.empty())
    comps = gj::components_from(read_json_file(comps_file), l, rationality_index(src.x(), l));
  else if (src.entry)
    comps = src.entry->component_list(dmax);
  else
    fail(ErrorCode::BadInput, "--components is required for a variety read from a file");
  out.catalog = ComponentCatalog::classify(comps, BaseInvariants::of(src.x(), l), out.maps);
  return out;
}

int cmd_classify(const Options& o, const std::string& maps_file, const std::string& comps_file, int dmax) {
  auto src = load_source(o.variety);
  auto l = parse_polarization(o.polarization, src);
  auto c = classify_inputs(src, l, maps_file, comps_file, dmax);
  if (o.as_json) {
    json arr = json::array();
    for (const auto& it : c.catalog.items()) {
      json e = gj::to_json(it.component);
      e["verdict"] = gj::to_json(it.verdict);
      arr.push_back(e);
    }
    print_json({{"variety", src.x().name()}, {"components", arr}});
    return kExitOk;
  }
  std::cout << std::left << std::setw(10) << "id" << std::setw(6) << "deg" << std::setw(9) << "mor_dim"
            << "verdict\n";
  for (const auto& it : c.catalog.items()) {
    std::cout << std::setw(10) << it.component.id << std::setw(6) << it.component.degree_units << std::setw(9)
              << it.component.mor_dim << to_string(it.verdict.reason);
    if (!it.verdict.witness.empty()) std::cout << " (" << it.verdict.witness << ")";
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_count(const Options& o, std::string model, std::int64_t q, int dmax, bool compare, const std::string& maps_file,
              const std::string& comps_file) {
  auto src = load_source(o.variety);
  auto l = parse_polarization(o.polarization, src);
  if (model.empty())
    model = (src.entry && (!src.entry->component_rule.empty() || !src.entry->components.empty())) || !comps_file.empty()
                ? "components"
                : "strong-manin";
  LevelTable table;
  if (model == "strong-manin") {
    table = strong_manin_model(src.x(), l, dmax);
  } else if (model == "components") {
    table = LevelTable::from(classify_inputs(src, l, maps_file, comps_file, dmax).catalog);
  } else {
    fail(ErrorCode::BadInput, "unknown model '" + model + "' (expected strong-manin or components)");
  }
  gj::CountReport rep;
  rep.q = q;
  rep.d = dmax;
  rep.n = counting_N(table, q, dmax);
  rep.per_level = per_level(table, q, dmax);
  rep.includes_boundary_classes = table.includes_boundary_classes;
  if (compare) rep.predicted = predicted_N(AsymptoticParams::of(src.x(), l), q, dmax);
  if (o.as_json) {
    json j = gj::to_json(rep);
    j["variety"] = src.x().name();
    j["model"] = model;
    print_json(j);
    return kExitOk;
  }
  std::cout << "variety    " << src.x().name() << "\n"
            << "model      " << model << (rep.includes_boundary_classes ? " (boundary classes included)" : "") << "\n"
            << "N(q=" << q << ", d=" << dmax << ") = " << rep.n.str() << "\n";
  if (rep.predicted) {
    std::cout << "predicted  " << decimal(to_double(*rep.predicted)) << "\n"
              << "ratio      " << decimal(rep.ratio_decimal()) << "\n";
  }
  std::cout << std::left << std::setw(6) << "i" << std::setw(14) << "classes" << "contribution\n";
  for (const auto& lc : rep.per_level)
    std::cout << std::setw(6) << lc.i << std::setw(14) << lc.classes.str() << lc.contribution.str() << "\n";
  return kExitOk;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorCode::BadInput, "malformed integer '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

int cmd_multiset(const Options& o, const std::string& degrees, int d) {
  auto degs = parse_int_list(degrees);
  Int n = multiset_count(degs, d);
  if (o.as_json)
    print_json({{"degrees", degs}, {"d", d}, {"count", n.str()}});
  else
    std::cout << n.str() << "\n";
  return kExitOk;
}

int cmd_rank(const Options& o, const std::string& file) {
  json j = read_json_file(file);
  int s = gj::detail::get_as<int>(gj::detail::field(j, "num_generators", file), "num_generators");
  ZMat rel = gj::zmat_from(gj::detail::field(j, "relations", file), static_cast<std::size_t>(std::max(s, 0)));
  int rank = lambda_quotient_rank(s, rel);
  if (o.as_json)
    print_json({{"num_generators", s}, {"rank", rank}});
  else
    std::cout << rank << "\n";
  return kExitOk;
}

int cmd_hilb2(const Options& o, int m, int n, bool oracle) {
  Int closed = hilb2_component_count(m, n);
  json j{{"m", m}, {"n", n}, {"count", closed.str()}};
  int code = kExitOk;
  if (oracle) {
    Int brute = hilb2_orbit_count(m, n);
    j["oracle"] = brute.str();
    j["agrees"] = brute == closed;
    if (brute != closed) code = kExitOracle;
  }
  if (o.as_json) {
    print_json(j);
  } else {
    std::cout << closed.str();
    if (oracle) std::cout << "  (orbit count " << j["oracle"].get<std::string>() << ", " << (code ? "MISMATCH" : "agrees") << ")";
    std::cout << "\n";
  }
  if (code != kExitOk) std::cerr << "closed form and orbit count differ\n";
  return code;
}

int cmd_catalog_list(const Options& o) {
  json arr = json::array();
  for (const auto& e : catalog::load_all()) arr.push_back({{"name", e.name}, {"description", e.description}, {"source", e.source}});
  if (o.as_json) {
    print_json(arr);
    return kExitOk;
  }
  for (const auto& e : arr)
    std::cout << std::left << std::setw(24) << e["name"].get<std::string>() << e["description"].get<std::string>()
              << "  [" << e["source"].get<std::string>() << "]\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of polarized varieties for geometric Manin-type counting"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_variety) {
    if (needs_variety) {
      sub->add_option("--variety", o.variety, "JSON file or builtin:NAME")->required();
      sub->add_option("--polarization", o.polarization, "anticanonical, a list like 1,2, or a JSON array");
    }
    sub->add_flag("--json", o.as_json, "emit JSON");
  };

  auto* inv = app.add_subcommand("invariants", "a, b, r, F(X,L) and alpha");
  add_common(inv, true);

  bool oracle = false;
  std::int64_t kmax = 60;
  double tol = 0.01;
  auto* alpha = app.add_subcommand("alpha", "alpha constant, optionally checked by lattice-point counts");
  add_common(alpha, true);
  alpha->add_flag("--oracle", oracle, "compare with the Ehrhart estimate");
  alpha->add_option("--kmax", kmax, "largest level counted")->check(CLI::PositiveNumber);
  alpha->add_option("--tol", tol, "allowed absolute difference")->check(CLI::NonNegativeNumber);

  std::string maps_file, comps_file;
  int dmax = 10;
  auto* cls = app.add_subcommand("classify", "Manin-component verdicts");
  add_common(cls, true);
  cls->add_option("--maps", maps_file, "thin-map records (JSON)");
  cls->add_option("--components", comps_file, "component records (JSON)");
  cls->add_option("--dmax", dmax, "degree bound for built-in component families")->check(CLI::PositiveNumber);

  std::string model;
  std::int64_t q = 2;
  bool compare = false;
  auto* count = app.add_subcommand("count", "the counting function N(X,L,q,d)");
  add_common(count, true);
  count->add_option("--model", model, "strong-manin or components");
  count->add_option("--q", q, "q >= 2")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 30));
  count->add_option("--dmax", dmax, "largest degree d")->check(CLI::PositiveNumber);
  count->add_flag("--compare", compare, "also evaluate the predicted asymptotic");
  count->add_option("--maps", maps_file, "thin-map records (JSON)");
  count->add_option("--components", comps_file, "component records (JSON)");

  auto* chains = app.add_subcommand("chains", "chain counting combinatorics");
  chains->require_subcommand(1);
  std::string degrees;
  int d = 0;
  auto* multiset = chains->add_subcommand("multiset", "multisets of generators with given total degree");
  add_common(multiset, false);
  multiset->add_option("--degrees", degrees, "comma-separated positive degrees")->required();
  multiset->add_option("--d", d, "total degree")->required()->check(CLI::NonNegativeNumber);
  std::string relations;
  auto* rank = chains->add_subcommand("rank", "free rank of the generator lattice modulo relations");
  add_common(rank, false);
  rank->add_option("--relations", relations, "JSON {num_generators, relations}")->required();

  int m = 0, n = 0;
  auto* hilb = app.add_subcommand("hilb2", "components of class mF1 + nF2 on Hilb^2(P1 x P1)");
  add_common(hilb, false);
  hilb->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  hilb->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  hilb->add_flag("--oracle", oracle, "cross-check against the orbit count");

  auto* cat = app.add_subcommand("catalog", "built-in examples");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "names, descriptions and sources");
  add_common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*inv) return cmd_invariants(o);
    if (*alpha) return cmd_alpha(o, oracle, kmax, tol);
    if (*cls) return cmd_classify(o, maps_file, comps_file, dmax);
    if (*count) return cmd_count(o, model, q, dmax, compare, maps_file, comps_file);
    if (*multiset) return cmd_multiset(o, degrees, d);
    if (*rank) return cmd_rank(o, relations);
    if (*hilb) return cmd_hilb2(o, m, n, oracle);
    if (*list) return cmd_catalog_list(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
