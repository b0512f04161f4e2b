#include "cml/io.hpp"

#include <fstream>
#include <sstream>

#include "cml/builtins.hpp"
#include "cml/errors.hpp"

namespace cml {

CayleyLoop read_cayley_text(std::istream& in) {
  std::string name;
  std::string line;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string prefix = "# name:";
      if (line.rfind(prefix, 0) == 0) {
        name = line.substr(prefix.size());
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
      }
      continue;
    }
    std::istringstream head(line);
    if (!(head >> n) || n < 1) throw ParseError("expected loop order");
    break;
  }
  if (n < 1) throw ParseError("missing loop order line");

  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!(in >> table[r][c]))
        throw ParseError("table ended early at row " + std::to_string(r));
  return CayleyLoop::validate(table, name);
}

CayleyLoop read_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_cayley_text(in);
}

std::string write_cayley_text(const CayleyLoop& q) {
  std::ostringstream out;
  if (!q.name().empty()) out << "# name: " << q.name() << "\n";
  out << q.size() << "\n";
  for (int r = 0; r < q.size(); ++r) {
    for (int c = 0; c < q.size(); ++c) {
      if (c) out << ' ';
      out << q.mul(r, c);
    }
    out << "\n";
  }
  return out.str();
}

CayleyLoop load_loop(const std::string& builtin, const std::string& file) {
  if (!builtin.empty() && !file.empty())
    throw ParseError("give either a builtin name or a file, not both");
  if (!builtin.empty()) return make_builtin(builtin);
  if (!file.empty()) return read_cayley_file(file);
  throw ParseError("no input loop given");
}

StructuredCml structured_from_json(const nlohmann::json& j) {
  if (!j.contains("summands") || !j["summands"].is_array())
    throw ParseError("descriptor needs a \"summands\" array");
  std::vector<int> primes;
  for (const auto& p : j["summands"]) primes.push_back(p.get<int>());
  if (!j.contains("finite_part") || !j["finite_part"].is_object())
    throw ParseError("descriptor needs a \"finite_part\" object");
  const auto& fp = j["finite_part"];
  CayleyLoop c =
      load_loop(fp.value("builtin", std::string{}), fp.value("file", std::string{}));
  return StructuredCml(std::move(primes), std::move(c));
}

StructuredCml structured_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  return structured_from_json(j);
}

nlohmann::json structured_descriptor(const StructuredCml& q) {
  nlohmann::json j;
  j["summands"] = q.summand_primes();
  nlohmann::json fp;
  if (!q.finite_part().name().empty())
    fp["builtin"] = q.finite_part().name();
  else
    fp["order"] = q.finite_part().size();
  j["finite_part"] = fp;
  return j;
}

nlohmann::json selem_to_json(const SElem& e) {
  nlohmann::json j;
  std::vector<std::string> fracs;
  for (const Fraction& f : e.div) fracs.push_back(fraction_to_string(f));
  j["div"] = fracs;
  j["fin"] = e.fin;
  return j;
}

SElem selem_from_json(const StructuredCml& q, const nlohmann::json& j) {
  SElem e;
  if (!j.contains("div") || !j["div"].is_array())
    throw ParseError("element needs a \"div\" array of fraction strings");
  for (const auto& s : j["div"])
    e.div.push_back(fraction_from_string(s.get<std::string>()));
  e.fin = j.value("fin", 0);
  q.check_element(e);
  return e;
}

StructuredSubloop subloop_from_json(const StructuredCml& q,
                                    const nlohmann::json& j) {
  std::vector<int> full;
  if (j.contains("full"))
    for (const auto& i : j["full"]) full.push_back(i.get<int>());
  std::vector<SElem> gens;
  if (j.contains("residual_gens"))
    for (const auto& g : j["residual_gens"]) gens.push_back(selem_from_json(q, g));
  StructuredSubloop closed = s_generate(q, gens);
  return StructuredSubloop(q, std::move(full),
                           std::vector<SElem>(closed.residual()));
}

nlohmann::json subloop_to_json(const StructuredCml& q,
                               const StructuredSubloop& h) {
  nlohmann::json j;
  j["full"] = h.full();
  nlohmann::json gens = nlohmann::json::array();
  for (const SElem& e : h.residual()) gens.push_back(selem_to_json(e));
  j["residual_gens"] = gens;
  return j;
}

}  // namespace cml
