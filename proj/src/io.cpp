#include "brokenlines/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace brokenlines {

nlohmann::json domain_to_json(const Domain& d) {
  if (d.is_rect()) return {{"type", "rect"}, {"N", d.n()}, {"M", d.m()}};
  return {{"type", "hex"},
          {"t0", d.t_min()},
          {"t1", d.t_max()},
          {"t01", {d.kink_low(), d.kink_high()}},
          {"xminus", d.lower_path()},
          {"xplus", d.upper_path()}};
}

Domain domain_from_json(const nlohmann::json& j) {
  try {
    std::string type = j.at("type").get<std::string>();
    if (type == "rect") return Domain::rect(j.at("N").get<int>(), j.at("M").get<int>());
    if (type == "hex") {
      auto t01 = j.at("t01").get<std::vector<int>>();
      if (t01.size() != 2) throw Error("hex t01 needs two entries");
      return Domain::hex(j.at("t0").get<int>(), j.at("t1").get<int>(), {t01[0], t01[1]},
                         j.at("xminus").get<std::vector<int>>(), j.at("xplus").get<std::vector<int>>());
    }
    throw Error("unknown domain type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed domain JSON: ") + e.what());
  }
}

namespace {

nlohmann::json number_json(double v, Arithmetic mode) {
  if (mode == Arithmetic::Integer) return static_cast<long long>(v);
  return v;
}

}  // namespace

nlohmann::json field_to_json(const FlowField& f) {
  nlohmann::json j;
  j["domain"] = domain_to_json(f.domain());
  j["mode"] = to_string(f.mode());
  auto& es = j["edges"] = nlohmann::json::array();
  for (std::size_t k = 0; k < f.masses().size(); ++k) {
    const EdgeId& e = f.domain().edges()[k];
    es.push_back({{"t", e.base.t},
                  {"x", e.base.x},
                  {"slope", e.slope == Slope::Up ? "up" : "down"},
                  {"mass", number_json(f.masses()[k], f.mode())}});
  }
  return j;
}

FlowField field_from_json(const nlohmann::json& j) {
  try {
    auto d = make_domain(domain_from_json(j.at("domain")));
    std::string mode_s = j.value("mode", std::string("float"));
    Arithmetic mode;
    if (mode_s == "float")
      mode = Arithmetic::Float;
    else if (mode_s == "int")
      mode = Arithmetic::Integer;
    else
      throw Error("field mode must be 'float' or 'int'");
    std::vector<double> mass(d->edges().size(), 0.0);
    std::vector<bool> seen(mass.size(), false);
    for (const auto& e : j.at("edges")) {
      std::string s = e.at("slope").get<std::string>();
      if (s != "up" && s != "down") throw Error("edge slope must be 'up' or 'down'");
      EdgeId id{{e.at("t").get<int>(), e.at("x").get<int>()}, s == "up" ? Slope::Up : Slope::Down};
      auto k = d->edge_index(id);
      if (!k) throw Error("edge " + to_string(id) + " is not in the domain closure");
      if (seen[*k]) throw Error("edge " + to_string(id) + " listed twice");
      seen[*k] = true;
      mass[*k] = e.at("mass").get<double>();
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) throw Error("edge " + to_string(d->edges()[k]) + " has no mass entry");
    return FlowField(d, std::move(mass), mode);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed field JSON: ") + e.what());
  }
}

nlohmann::json brick_to_json(const BrickDiagram& b) {
  nlohmann::json j;
  j["domain"] = domain_to_json(b.domain());
  j["breakpoints"] = b.breakpoints();
  auto& ps = j["p"] = nlohmann::json::array();
  for (const Site& d : b.dual_points())
    ps.push_back({{"t", d.t}, {"x", d.x}, {"p", b.p(d)}, {"k", b.k(d)}});
  return j;
}

nlohmann::json path_to_json(const LatticePath& p) {
  auto a = nlohmann::json::array();
  for (const Site& y : p.sites) a.push_back({y.t, y.x});
  return a;
}

nlohmann::json lpp_to_json(const LppResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["path"] = r.path ? path_to_json(*r.path) : nlohmann::json(nullptr);
  return j;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& tok, const std::string& where) {
  std::string t = trim(tok);
  double v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw Error("bad number '" + t + "' in " + where);
  return v;
}

}  // namespace

std::vector<std::vector<double>> read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> m;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(parse_double(tok, "matrix CSV"));
    if (!m.empty() && row.size() != m[0].size()) throw Error("matrix CSV rows differ in length");
    m.push_back(std::move(row));
  }
  if (m.empty()) throw Error("matrix CSV is empty");
  return m;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::vector<double>>& m) {
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
    out << "\n";
  }
}

void write_decomposition_csv(std::ostream& out, const Domain& d, const Decomposition& dec) {
  out << "# domain " << domain_to_json(d).dump() << "\n";
  out << "# mode " << to_string(dec.mode) << "\n";
  out << "j,weight,sites\n";
  for (std::size_t j = 0; j < dec.lines.size(); ++j) {
    out << j + 1 << "," << format_number(dec.lines[j].weight) << ",";
    const auto& s = dec.lines[j].trace.sites();
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i].t << ":" << s[i].x;
    out << "\n";
  }
}

DecompositionFile read_decomposition_csv(std::istream& in) {
  DecompositionFile f;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("# domain ", 0) == 0) {
      try {
        f.domain = make_domain(domain_from_json(nlohmann::json::parse(line.substr(9))));
      } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad domain line in decomposition CSV: ") + e.what());
      }
      continue;
    }
    if (line.rfind("# mode ", 0) == 0) {
      std::string m = trim(line.substr(7));
      if (m != "float" && m != "int") throw Error("bad mode line in decomposition CSV");
      f.dec.mode = m == "int" ? Arithmetic::Integer : Arithmetic::Float;
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      if (line != "j,weight,sites") throw Error("decomposition CSV lacks the j,weight,sites header");
      header = true;
      continue;
    }
    auto c1 = line.find(','), c2 = line.find(',', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw Error("bad decomposition row: " + line);
    double w = parse_double(line.substr(c1 + 1, c2 - c1 - 1), "decomposition CSV");
    std::vector<Site> sites;
    std::stringstream ss(line.substr(c2 + 1));
    std::string tok;
    while (ss >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw Error("bad site '" + tok + "' in decomposition CSV");
      sites.push_back({static_cast<int>(parse_double(tok.substr(0, colon), "site")),
                       static_cast<int>(parse_double(tok.substr(colon + 1), "site"))});
    }
    f.dec.lines.push_back({BrokenTrace(std::move(sites)), w});
  }
  if (!f.domain) throw Error("decomposition CSV lacks a '# domain' line");
  if (!header) throw Error("decomposition CSV lacks the j,weight,sites header");
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

nlohmann::json read_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace brokenlines
