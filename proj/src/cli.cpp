#include "cml/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cml/builtins.hpp"
#include "cml/errors.hpp"
#include "cml/identities.hpp"
#include "cml/io.hpp"
#include "cml/mincond.hpp"
#include "cml/multgroup.hpp"
#include "cml/structure.hpp"
#include "cml/subloops.hpp"

namespace cml {

namespace {

using nlohmann::json;

struct Options {
  bool as_json = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cap = 0;  // 0: per-operation default
  int threads = 0;
  bool exhaustive = false;
  std::string builtin;
  std::string input_file;
  std::string subloop_file;
  std::string chains_file;
  std::string gens;
  int level = 1;
  int exit_code = 0;
};

ScanConfig scan_config(const Options& o) {
  ScanConfig cfg;
  cfg.threads = o.threads;
  cfg.exhaustive_quad = o.exhaustive;
  cfg.seed = o.seed;
  return cfg;
}

json base_report(const Options& o) {
  json j;
  j["version"] = kToolVersion;
  j["seed"] = o.seed;
  return j;
}

void emit(std::ostream& out, const Options& o, const json& j) {
  if (o.as_json) {
    out << j.dump(2) << "\n";
    return;
  }
  // flat text rendering, stable order (json objects iterate sorted)
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else {
          out << prefix << ": " << node.dump() << "\n";
        }
      };
  walk(j, "");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(std::stoi(cur));
  }
  return out;
}

json subloop_indices_json(const SubloopSet& h) {
  return json(h.indices());
}

// ---- per-verb actions ------------------------------------------------------

void cmd_catalog(const Options& o, std::ostream& out) {
  if (o.as_json) {
    json j = base_report(o);
    j["catalog"] = catalog();
    out << j.dump(2) << "\n";
    return;
  }
  for (const std::string& line : catalog()) out << line << "\n";
}

void cmd_validate(Options& o, std::ostream& out) {
  json j = base_report(o);
  try {
    CayleyLoop q = load_loop(o.builtin, o.input_file);
    CmlCheck c = is_cml(q, scan_config(o));
    j["valid"] = true;
    j["order"] = q.size();
    j["identity"] = q.identity();
    if (!q.name().empty()) j["name"] = q.name();
    j["commutative"] = c.commutative;
    j["cml"] = c.ok();
    if (!c.ok() && c.witness)
      j["witness"] = {c.witness->x, c.witness->y, c.witness->z};
    o.exit_code = 0;
  } catch (const NotLatinSquare& e) {
    j["valid"] = false;
    j["reason"] = e.what();
    o.exit_code = 1;
  } catch (const NoIdentity& e) {
    j["valid"] = false;
    j["reason"] = e.what();
    o.exit_code = 1;
  }
  emit(out, o, j);
}

void cmd_info(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  StructureSummary s = structure_summary(q, scan_config(o));
  json j = base_report(o);
  if (!q.name().empty()) j["name"] = q.name();
  j["order"] = s.order;
  j["exponent"] = s.exponent;
  j["center_order"] = s.center_order;
  j["class"] = s.cls;
  j["series_orders"] = s.series_orders;
  json primary = json::object();
  for (const auto& [p, ord] : s.primary) primary[std::to_string(p)] = ord;
  j["primary"] = primary;
  emit(out, o, j);
}

void cmd_check_identities(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  ScanConfig cfg = scan_config(o);
  CmlCheck c = is_cml(q, cfg);
  json j = base_report(o);
  j["commutative"] = c.commutative;
  j["moufang"] = c.moufang;
  bool all = c.ok();
  if (c.ok()) {
    IdentityReport rep = check_identities(q, cfg);
    json arr = json::array();
    for (const IdentityCheck& ch : rep.checks) {
      json cj;
      cj["identity"] = ch.id;
      cj["exhaustive"] = ch.exhaustive;
      cj["checked"] = ch.checked;
      cj["passed"] = ch.passed;
      if (!ch.witness.empty()) cj["witness"] = ch.witness;
      arr.push_back(cj);
      all = all && ch.passed;
    }
    j["identities"] = arr;
  } else if (c.witness) {
    j["witness"] = {c.witness->x, c.witness->y, c.witness->z};
  }
  j["all_passed"] = all;
  o.exit_code = all ? 0 : 1;
  emit(out, o, j);
}

void cmd_center(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  SubloopSet z = center(q, scan_config(o));
  json j = base_report(o);
  j["order"] = q.size();
  j["center_order"] = z.size();
  j["center"] = subloop_indices_json(z);
  emit(out, o, j);
}

void cmd_series(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  CentralSeries s = upper_central_series(q, scan_config(o));
  json j = base_report(o);
  j["class"] = s.cls;
  json orders = json::array();
  json terms = json::array();
  for (const SubloopSet& t : s.terms) {
    orders.push_back(t.size());
    terms.push_back(subloop_indices_json(t));
  }
  j["series_orders"] = orders;
  j["terms"] = terms;
  emit(out, o, j);
}

void cmd_decompose(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  PrimaryDecomposition d = p_decomposition(q);
  json j = base_report(o);
  json comps = json::object();
  for (const auto& [p, comp] : d.components) {
    json cj;
    cj["order"] = comp.size();
    cj["elements"] = subloop_indices_json(comp);
    comps[std::to_string(p)] = cj;
  }
  j["components"] = comps;
  emit(out, o, j);
}

void cmd_subloops(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  std::vector<SubloopSet> subs = all_subloops(q, o.cap ? o.cap : 50000);
  json j = base_report(o);
  j["count"] = subs.size();
  std::map<int, int> histogram;
  for (const SubloopSet& h : subs) ++histogram[h.size()];
  json hist = json::object();
  for (const auto& [ord, cnt] : histogram) hist[std::to_string(ord)] = cnt;
  j["orders"] = hist;
  if (o.as_json) {
    json arr = json::array();
    for (const SubloopSet& h : subs) arr.push_back(subloop_indices_json(h));
    j["subloops"] = arr;
  }
  emit(out, o, j);
}

void cmd_normal_closure(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  std::vector<int> gens = parse_int_list(o.gens);
  for (int g : gens)
    if (g < 0 || g >= q.size()) throw ParseError("generator out of range");
  SubloopSet h = normal_closure(q, gens);
  json j = base_report(o);
  j["generators"] = gens;
  j["order"] = h.size();
  j["closure"] = subloop_indices_json(h);
  j["normal"] = is_normal(q, h).normal;
  emit(out, o, j);
}

void cmd_cogenerators(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  SubloopSet b = cogenerator_subloop(q);
  CogeneratingCheck c = is_cogenerating(q, b, o.seed);
  json j = base_report(o);
  j["cogenerator_order"] = b.size();
  j["cogenerator"] = subloop_indices_json(b);
  json cj;
  cj["ok"] = c.ok;
  cj["tested"] = c.tested;
  cj["exhaustive"] = c.exhaustive;
  if (!c.ok) cj["counterexample"] = c.counterexample;
  j["cogenerating"] = cj;
  o.exit_code = c.ok ? 0 : 1;
  emit(out, o, j);
}

void cmd_multgroup(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  GroupSummary s = mult_group_summary(q, o.cap ? o.cap : 10000000);
  json j = base_report(o);
  j["degree"] = s.degree;
  j["order"] = s.order;
  j["is_3_group"] = s.is_3_group;
  j["center_order"] = s.center_order;
  j["derived_order"] = s.derived_order;
  json census = json::object();
  for (const auto& [ord, cnt] : s.census) census[std::to_string(ord)] = cnt;
  j["census"] = census;
  emit(out, o, j);
}

void cmd_structured(Options& o, std::ostream& out) {
  StructuredCml q = structured_from_file(o.input_file);
  json j = base_report(o);
  j["summands"] = q.summand_primes();
  j["finite_part_order"] = q.finite_part().size();

  std::set<int> primes(q.summand_primes().begin(), q.summand_primes().end());
  for (int x = 0; x < q.finite_part().size(); ++x) {
    int m = q.finite_part().order_of(x);
    for (int p = 2; p <= m; ++p)
      if (m % p == 0) {
        primes.insert(p);
        while (m % p == 0) m /= p;
      }
  }
  json socles = json::object();
  for (int p : primes)
    socles[std::to_string(p)] = socle(q, p).residual_order();
  j["socles"] = socles;

  StructuredSubloop b = s_cogenerator_subloop(q);
  j["cogenerator_order"] = b.residual_order();
  SCogeneratingCheck c = s_is_cogenerating(q, b, 200, o.seed);
  json cj;
  cj["ok"] = c.ok;
  cj["trials"] = c.trials;
  j["cogenerating"] = cj;

  json series = json::array();
  for (const SeriesStep& s : quasicyclic_factor_series(q)) {
    json sj;
    sj["kind"] = s.kind == FactorKind::Quasicyclic ? "quasicyclic" : "prime";
    sj["prime"] = s.prime;
    sj["full_summands"] = s.term.full().size();
    sj["residual_order"] = s.term.residual_order();
    series.push_back(sj);
  }
  j["series"] = series;
  o.exit_code = c.ok ? 0 : 1;
  emit(out, o, j);
}

void cmd_truncate(Options& o, std::ostream& out) {
  StructuredCml q = structured_from_file(o.input_file);
  Truncation t = truncate(q, o.level, o.cap ? o.cap : 3000);
  if (o.as_json) {
    json j = base_report(o);
    j["level"] = o.level;
    j["order"] = t.loop.size();
    json elems = json::array();
    for (const SElem& e : t.elements) elems.push_back(selem_to_json(e));
    j["elements"] = elems;
    out << j.dump(2) << "\n";
    return;
  }
  out << write_cayley_text(t.loop);
}

void cmd_complement(Options& o, std::ostream& out) {
  StructuredCml q = structured_from_file(o.input_file);
  std::ifstream in(o.subloop_file);
  if (!in) throw ParseError("cannot open " + o.subloop_file);
  json bj;
  try {
    in >> bj;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  StructuredSubloop b = subloop_from_json(q, bj);
  StructuredSubloop k = divisible_complement(q, b);
  json j = base_report(o);
  j["complement"] = subloop_to_json(q, k);
  j["complement_order"] = k.residual_order();

  bool all_ok = true;
  json ver = json::object();
  for (int lvl = 0; lvl <= 2; ++lvl) {
    ComplementVerification v = verify_complement_at_level(q, k, lvl);
    json vj;
    vj["injective"] = v.injective;
    vj["k_embeds"] = v.k_embeds;
    if (v.k_embeds) vj["covers_truncation"] = v.covers_truncation;
    vj["ok"] = v.ok();
    ver[std::to_string(lvl)] = vj;
    all_ok = all_ok && v.ok();
  }
  j["verification"] = ver;
  o.exit_code = all_ok ? 0 : 1;
  emit(out, o, j);
}

void cmd_chain_test(Options& o, std::ostream& out) {
  CayleyLoop q = load_loop(o.builtin, o.input_file);
  std::ifstream in(o.chains_file);
  if (!in) throw ParseError("cannot open " + o.chains_file);
  json cj;
  try {
    in >> cj;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!cj.is_array()) throw ParseError("chain file must be an array of arrays");
  std::vector<std::vector<int>> chain;
  for (const auto& lst : cj) {
    std::vector<int> gens;
    for (const auto& v : lst) gens.push_back(v.get<int>());
    chain.push_back(std::move(gens));
  }
  int idx = chain_stabilizes(q, chain);
  json j = base_report(o);
  j["chain_length"] = chain.size();
  j["stabilization_index"] = idx;
  emit(out, o, j);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computational toolkit for commutative Moufang loops"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;

  app.add_flag("--json", o.as_json, "emit JSON reports");
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--cap", o.cap, "size cap for closures/enumerations");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
  app.add_flag("--exhaustive", o.exhaustive,
               "force the exhaustive quadruple scan");

  auto add_loop_input = [&](CLI::App* sub) {
    sub->add_option("--builtin", o.builtin, "builtin loop expression");
    sub->add_option("--input", o.input_file, "Cayley table file");
  };

  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::function<void()> fn) {
    sub->callback([&action, fn]() { action = fn; });
  };

  CLI::App* c;
  c = app.add_subcommand("validate", "validate a Cayley table");
  add_loop_input(c);
  bind(c, [&] { cmd_validate(o, out); });

  c = app.add_subcommand("info", "order, exponent, center, class, primary parts");
  add_loop_input(c);
  bind(c, [&] { cmd_info(o, out); });

  c = app.add_subcommand("check-identities", "the CML associator identities");
  add_loop_input(c);
  bind(c, [&] { cmd_check_identities(o, out); });

  c = app.add_subcommand("center", "central elements");
  add_loop_input(c);
  bind(c, [&] { cmd_center(o, out); });

  c = app.add_subcommand("series", "upper central series");
  add_loop_input(c);
  bind(c, [&] { cmd_series(o, out); });

  c = app.add_subcommand("decompose", "primary decomposition");
  add_loop_input(c);
  bind(c, [&] { cmd_decompose(o, out); });

  c = app.add_subcommand("subloops", "enumerate all subloops");
  add_loop_input(c);
  bind(c, [&] { cmd_subloops(o, out); });

  c = app.add_subcommand("normal-closure", "normal closure of a generator set");
  add_loop_input(c);
  c->add_option("--gens", o.gens, "comma-separated element indices")->required();
  bind(c, [&] { cmd_normal_closure(o, out); });

  c = app.add_subcommand("cogenerators", "cogenerator subloop and its check");
  add_loop_input(c);
  bind(c, [&] { cmd_cogenerators(o, out); });

  c = app.add_subcommand("multgroup", "multiplication group report");
  add_loop_input(c);
  bind(c, [&] { cmd_multgroup(o, out); });

  c = app.add_subcommand("structured", "analyze a structured CML descriptor");
  c->add_option("--input", o.input_file, "descriptor JSON file")->required();
  bind(c, [&] { cmd_structured(o, out); });

  c = app.add_subcommand("truncate", "finite truncation of a structured CML");
  c->add_option("--input", o.input_file, "descriptor JSON file")->required();
  c->add_option("--level", o.level, "truncation level k");
  bind(c, [&] { cmd_truncate(o, out); });

  c = app.add_subcommand("complement", "complement of the divisible part");
  c->add_option("--input", o.input_file, "descriptor JSON file")->required();
  c->add_option("--subloop", o.subloop_file, "subloop B descriptor JSON")
      ->required();
  bind(c, [&] { cmd_complement(o, out); });

  c = app.add_subcommand("chain-test", "stabilization of a subloop chain");
  add_loop_input(c);
  c->add_option("--chains", o.chains_file, "JSON array of generator lists")
      ->required();
  bind(c, [&] { cmd_chain_test(o, out); });

  c = app.add_subcommand("catalog", "list builtin loops");
  bind(c, [&] { cmd_catalog(o, out); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
    action();
    return o.exit_code;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const NotLatinSquare& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoIdentity& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownName& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "property violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cml
