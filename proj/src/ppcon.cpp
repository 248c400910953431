#include "boolpp/ppcon.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace boolpp {

bool FiniteRelation::contains(const std::vector<int>& t) const {
  return std::binary_search(tuples.begin(), tuples.end(), t);
}

const FiniteRelation* FiniteStructure::find(std::string_view name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

FiniteStructure FiniteStructure::from_boolean(const Structure& s) {
  FiniteStructure f;
  f.domain_size = 2;
  for (const auto& r : s.relations) {
    FiniteRelation fr{r.name(), r.arity(), {}};
    for (auto t : r.tuples()) {
      std::vector<int> v;
      for (int j = 0; j < r.arity(); ++j) v.push_back(argument_bit(t, r.arity(), j));
      fr.tuples.push_back(std::move(v));
    }
    std::sort(fr.tuples.begin(), fr.tuples.end());
    f.relations.push_back(std::move(fr));
  }
  return f;
}

Relation eval_pp(const Structure& a, const PpFormula& phi, const std::string& name) {
  if (phi.free_vars < 1 || phi.free_vars > kMaxArity) throw Error("pp formula: unsupported number of free variables");
  const int total = phi.free_vars + phi.existential_vars;
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  auto in_range = [&](int v) {
    if (v < 0 || v >= total) throw Error("pp formula: variable index out of range");
  };
  for (auto [u, v] : phi.equalities) {
    in_range(u);
    in_range(v);
    int ru = find(u), rv = find(v);
    if (ru != rv) parent[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
  }

  // Atoms over representatives, each checked once its last variable is set.
  struct Check {
    const Relation* rel;
    std::vector<int> args;
  };
  std::vector<std::vector<Check>> due(static_cast<std::size_t>(total));
  for (const auto& atom : phi.atoms) {
    const Relation* rel = a.find(atom.relation);
    if (!rel) throw Error("pp formula: unknown relation \"" + atom.relation + "\"");
    if (static_cast<int>(atom.args.size()) != rel->arity())
      throw Error("pp formula: relation " + atom.relation + " expects " + std::to_string(rel->arity()) + " arguments");
    Check c{rel, {}};
    int last = 0;
    for (int v : atom.args) {
      in_range(v);
      c.args.push_back(find(v));
      last = std::max(last, c.args.back());
    }
    due[static_cast<std::size_t>(last)].push_back(std::move(c));
  }
  std::vector<int> reps;
  for (int v = 0; v < total; ++v)
    if (find(v) == v) reps.push_back(v);

  std::vector<int> value(static_cast<std::size_t>(total), 0);
  std::set<std::uint32_t> out;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == reps.size()) {
      std::uint32_t t = 0;
      for (int v = 0; v < phi.free_vars; ++v) t = (t << 1) | static_cast<std::uint32_t>(value[static_cast<std::size_t>(find(v))]);
      out.insert(t);
      return;
    }
    const int r = reps[i];
    for (int b = 0; b < 2; ++b) {
      value[static_cast<std::size_t>(r)] = b;
      bool ok = true;
      for (const auto& c : due[static_cast<std::size_t>(r)]) {
        std::uint32_t t = 0;
        for (int v : c.args) t = (t << 1) | static_cast<std::uint32_t>(value[static_cast<std::size_t>(v)]);
        if (!c.rel->contains(t)) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
    }
  };
  go(0);
  return Relation(name, phi.free_vars, std::vector<std::uint32_t>(out.begin(), out.end()));
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
}

std::string singleton_name(const Structure& s, bool value) {
  for (const auto& r : s.relations)
    if (r.arity() == 1 && r.tuples().size() == 1 && r.tuples().front() == (value ? 1u : 0u)) return r.name();
  return {};
}

std::string element_string(int e, int n) {
  std::string s;
  for (int j = n - 1; j >= 0; --j) s += static_cast<char>('0' + ((e >> j) & 1));
  return s;
}

}  // namespace

PpFormula parse_pp_formula(std::string_view text, const std::vector<std::string>& free_names, const Structure& source) {
  PpFormula phi;
  phi.free_vars = static_cast<int>(free_names.size());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < free_names.size(); ++i) index[free_names[i]] = static_cast<int>(i);
  auto var = [&](const std::string& name) {
    if (!is_identifier(name)) throw Error("pp formula: bad variable \"" + name + "\"");
    auto [it, fresh] = index.emplace(name, phi.free_vars + phi.existential_vars);
    if (fresh) ++phi.existential_vars;
    return it->second;
  };

  std::string body(text);
  replace_all(body, "∧", "&");
  body = trim(body);
  if (body.empty() || body == "true") return phi;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, '&')) {
    part = trim(part);
    if (part.empty()) throw Error("pp formula: empty conjunct");
    if (auto open = part.find('('); open != std::string::npos) {
      if (part.back() != ')') throw Error("pp formula: expected ')' in \"" + part + "\"");
      PpAtom atom;
      atom.relation = trim(part.substr(0, open));
      const Relation* r = source.find(atom.relation);
      if (!r) throw Error("pp formula: no relation \"" + atom.relation + "\" in " + (source.name.empty() ? "the source" : source.name));
      std::stringstream args(part.substr(open + 1, part.size() - open - 2));
      std::string arg;
      while (std::getline(args, arg, ',')) atom.args.push_back(var(trim(arg)));
      if (static_cast<int>(atom.args.size()) != r->arity())
        throw Error("pp formula: " + atom.relation + " takes " + std::to_string(r->arity()) + " arguments");
      phi.atoms.push_back(std::move(atom));
      continue;
    }
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Error("pp formula: cannot parse \"" + part + "\"");
    std::string lhs = trim(part.substr(0, eq)), rhs = trim(part.substr(eq + 1));
    if (rhs == "0" || rhs == "1") {
      std::string rel = singleton_name(source, rhs == "1");
      if (rel.empty())
        throw Error("pp formula: \"" + part + "\" needs a unary {" + rhs + "} relation in " +
                    (source.name.empty() ? "the source" : source.name));
      phi.atoms.push_back({rel, {var(lhs)}});
    } else {
      phi.equalities.emplace_back(var(lhs), var(rhs));
    }
  }
  return phi;
}

FiniteStructure build_power(const PpPower& p) {
  const int n = p.dimension;
  if (n < 1 || n > 4) throw Error("pp-power dimension must be between 1 and 4");
  FiniteStructure out;
  out.domain_size = 1 << n;
  for (const auto& pr : p.relations) {
    if (pr.arity < 1) throw Error("power relation " + pr.name + ": arity must be positive");
    if (pr.formula.free_vars != pr.arity * n)
      throw Error("power relation " + pr.name + ": formula needs " + std::to_string(pr.arity * n) + " free variables");
    Relation r = eval_pp(p.source, pr.formula, pr.name);
    FiniteRelation fr{pr.name, pr.arity, {}};
    const std::uint32_t mask = (1u << n) - 1;
    for (auto t : r.tuples()) {
      std::vector<int> v;
      for (int b = 0; b < pr.arity; ++b) v.push_back(static_cast<int>((t >> ((pr.arity - 1 - b) * n)) & mask));
      fr.tuples.push_back(std::move(v));
    }
    std::sort(fr.tuples.begin(), fr.tuples.end());
    out.relations.push_back(std::move(fr));
  }
  return out;
}

namespace {

void require_same_signature(const FiniteStructure& a, const FiniteStructure& b) {
  auto sig = [](const FiniteStructure& s) {
    std::set<std::pair<std::string, int>> out;
    for (const auto& r : s.relations) out.emplace(r.name, r.arity);
    return out;
  };
  if (sig(a) != sig(b)) throw Error("structures do not have the same signature");
}

std::string tuple_text(const std::vector<int>& t, const std::function<std::string(int)>& show) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + show(t[i]);
  return s + ")";
}

bool check_map(const FiniteStructure& a, const FiniteStructure& b, const std::vector<int>& map, std::string* detail,
               const std::function<std::string(int)>& show_a, const std::function<std::string(int)>& show_b) {
  if (static_cast<int>(map.size()) != a.domain_size) {
    if (detail) *detail = "map has " + std::to_string(map.size()) + " entries for a domain of size " + std::to_string(a.domain_size);
    return false;
  }
  for (int v : map)
    if (v < 0 || v >= b.domain_size) {
      if (detail) *detail = "map value " + std::to_string(v) + " is outside the target domain";
      return false;
    }
  for (const auto& r : a.relations) {
    const FiniteRelation* rb = b.find(r.name);
    if (!rb || rb->arity != r.arity) {
      if (detail) *detail = "relation " + r.name + " is missing on the other side";
      return false;
    }
    for (const auto& t : r.tuples) {
      std::vector<int> image;
      for (int e : t) image.push_back(map[static_cast<std::size_t>(e)]);
      if (!rb->contains(image)) {
        if (detail)
          *detail = r.name + " atom over " + tuple_text(t, show_a) + " gives " + tuple_text(image, show_b) +
                    ", not in " + r.name;
        return false;
      }
    }
  }
  return true;
}

std::string plain(int e) { return std::to_string(e); }

}  // namespace

bool is_homomorphism(const FiniteStructure& a, const FiniteStructure& b, const std::vector<int>& map,
                     std::string* detail) {
  return check_map(a, b, map, detail, plain, plain);
}

std::optional<std::vector<int>> find_homomorphism(const FiniteStructure& a, const FiniteStructure& b) {
  require_same_signature(a, b);
  // Each tuple of A is checked when its largest element gets its image.
  struct Due {
    const FiniteRelation* target;
    const std::vector<int>* tuple;
  };
  std::vector<std::vector<Due>> due(static_cast<std::size_t>(a.domain_size));
  for (const auto& r : a.relations) {
    const FiniteRelation* rb = b.find(r.name);
    for (const auto& t : r.tuples) due[static_cast<std::size_t>(*std::max_element(t.begin(), t.end()))].push_back({rb, &t});
  }
  std::vector<int> map(static_cast<std::size_t>(a.domain_size), -1);
  std::vector<int> image;
  std::function<bool(int)> go = [&](int e) {
    if (e == a.domain_size) return true;
    for (int v = 0; v < b.domain_size; ++v) {
      map[static_cast<std::size_t>(e)] = v;
      bool ok = true;
      for (const auto& d : due[static_cast<std::size_t>(e)]) {
        image.clear();
        for (int x : *d.tuple) image.push_back(map[static_cast<std::size_t>(x)]);
        if (!d.target->contains(image)) {
          ok = false;
          break;
        }
      }
      if (ok && go(e + 1)) return true;
    }
    map[static_cast<std::size_t>(e)] = -1;
    return false;
  };
  if (go(0)) return map;
  return std::nullopt;
}

bool hom_equivalent(const FiniteStructure& a, const FiniteStructure& b) {
  return find_homomorphism(a, b).has_value() && find_homomorphism(b, a).has_value();
}

CertificateCheck verify_certificate(const PpCertificate& c) {
  CertificateCheck out;
  const int n = c.power.dimension;
  FiniteStructure power;
  try {
    power = build_power(c.power);
  } catch (const Error& e) {
    out.detail = std::string("pp-power: ") + e.what();
    return out;
  }
  FiniteStructure target = FiniteStructure::from_boolean(c.target);
  try {
    require_same_signature(power, target);
  } catch (const Error&) {
    out.detail = "the pp-power and the target have different signatures";
    return out;
  }
  auto show_power = [n](int e) {
    std::string s = "(";
    for (int j = n - 1; j >= 0; --j) s += std::string(j == n - 1 ? "" : ",") + static_cast<char>('0' + ((e >> j) & 1));
    return s + ")";
  };
  std::string detail;
  if (!check_map(power, target, c.hom_to_target, &detail, show_power, plain)) {
    out.detail = "hom_to_target: " + detail;
    return out;
  }
  if (!check_map(target, power, c.hom_from_target, &detail, plain, show_power)) {
    out.detail = "hom_from_target: " + detail;
    return out;
  }
  out.ok = true;
  out.detail = "homomorphically equivalent to a pp-power of dimension " + std::to_string(n);
  return out;
}

std::string power_var_name(int block, int coord) {
  static const char* letters = "xyzuvw";
  if (block < 0 || block >= 6) throw Error("power relations support at most 6 arguments");
  return std::string(1, letters[block]) + std::to_string(coord + 1);
}

namespace {

std::vector<std::string> power_free_names(int arity, int n) {
  std::vector<std::string> out;
  for (int b = 0; b < arity; ++b)
    for (int j = 0; j < n; ++j) out.push_back(power_var_name(b, j));
  return out;
}

}  // namespace

PpCertificate identity_certificate(const Structure& a) {
  PpCertificate c;
  c.source = a;
  c.target = a;
  c.power.source = a;
  c.power.dimension = 1;
  for (const auto& r : a.relations) {
    PpFormula phi;
    phi.free_vars = r.arity();
    PpAtom atom{r.name(), {}};
    for (int j = 0; j < r.arity(); ++j) atom.args.push_back(j);
    phi.atoms.push_back(std::move(atom));
    c.power.relations.push_back({r.name(), r.arity(), std::move(phi)});
  }
  c.hom_to_target = {0, 1};
  c.hom_from_target = {0, 1};
  return c;
}

namespace {

Structure resolve_structure(const std::string& name, const std::string& base_dir) {
  if (name.ends_with(".json")) {
    std::filesystem::path p(name);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_structure(p.string());
  }
  return canonical(name);
}

int parse_element(const std::string& bits, int n, const std::string& what) {
  if (static_cast<int>(bits.size()) != n || bits.find_first_not_of("01") != std::string::npos)
    throw Error(what + ": \"" + bits + "\" is not a " + std::to_string(n) + "-bit element");
  int e = 0;
  for (char ch : bits) e = (e << 1) | (ch == '1');
  return e;
}

}  // namespace

PpCertificate parse_certificate(std::string_view text, const std::string& base_dir) {
  std::map<std::string, std::string> header;
  std::vector<std::string> relation_lines;
  std::stringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto space = line.find_first_of(" \t");
    std::string key = line.substr(0, space);
    std::string rest = space == std::string::npos ? "" : trim(line.substr(space));
    if (key == "relation")
      relation_lines.push_back(rest);
    else if (key == "source" || key == "target" || key == "dimension" || key == "hom_to_target" ||
             key == "hom_from_target") {
      if (!header.emplace(key, rest).second) throw Error("certificate: duplicate \"" + key + "\" line");
    } else
      throw Error("certificate: unknown line \"" + line + "\"");
  }
  for (const char* key : {"source", "target", "dimension", "hom_to_target", "hom_from_target"})
    if (!header.count(key)) throw Error(std::string("certificate: missing \"") + key + "\" line");

  PpCertificate c;
  c.source = resolve_structure(header["source"], base_dir);
  c.target = resolve_structure(header["target"], base_dir);
  c.power.source = c.source;
  int n = 0;
  try {
    n = std::stoi(header["dimension"]);
  } catch (const std::exception&) {
    throw Error("certificate: bad dimension");
  }
  if (n < 1 || n > 4) throw Error("certificate: dimension must be between 1 and 4");
  c.power.dimension = n;

  for (const auto& rl : relation_lines) {
    auto colon = rl.find(':');
    if (colon == std::string::npos) throw Error("certificate: relation line needs ':' before the formula");
    std::stringstream head(rl.substr(0, colon));
    PowerRelation pr;
    if (!(head >> pr.name >> pr.arity) || pr.arity < 1) throw Error("certificate: relation line needs a name and an arity");
    pr.formula = parse_pp_formula(rl.substr(colon + 1), power_free_names(pr.arity, n), c.source);
    c.power.relations.push_back(std::move(pr));
  }

  c.hom_to_target.assign(std::size_t{1} << n, -1);
  c.hom_from_target.assign(2, -1);
  auto read_pairs = [&](const std::string& body, const std::string& what, bool to_target) {
    std::stringstream ss(body);
    std::string pair;
    while (ss >> pair) {
      auto arrow = pair.find("->");
      if (arrow == std::string::npos) throw Error(what + ": expected a->b, got \"" + pair + "\"");
      std::string from = pair.substr(0, arrow), to = pair.substr(arrow + 2);
      if (to_target) {
        int e = parse_element(from, n, what);
        if (to != "0" && to != "1") throw Error(what + ": image must be 0 or 1");
        c.hom_to_target[static_cast<std::size_t>(e)] = to == "1";
      } else {
        if (from != "0" && from != "1") throw Error(what + ": argument must be 0 or 1");
        c.hom_from_target[from == "1"] = parse_element(to, n, what);
      }
    }
  };
  read_pairs(header["hom_to_target"], "hom_to_target", true);
  read_pairs(header["hom_from_target"], "hom_from_target", false);
  for (int v : c.hom_to_target)
    if (v < 0) throw Error("hom_to_target: every element of the power needs an image");
  for (int v : c.hom_from_target)
    if (v < 0) throw Error("hom_from_target: both 0 and 1 need an image");
  return c;
}

PpCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string format_certificate(const PpCertificate& c) {
  const int n = c.power.dimension;
  std::ostringstream out;
  out << "source " << c.source.name << "\n";
  out << "target " << c.target.name << "\n";
  out << "dimension " << n << "\n";
  for (const auto& pr : c.power.relations) {
    const auto& phi = pr.formula;
    auto free_names = power_free_names(pr.arity, n);
    auto name = [&](int v) { return v < phi.free_vars ? free_names[static_cast<std::size_t>(v)] : "e" + std::to_string(v - phi.free_vars + 1); };
    std::vector<std::string> parts;
    for (const auto& a : phi.atoms) {
      std::string s = a.relation + "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? "," : "") + name(a.args[i]);
      parts.push_back(s + ")");
    }
    for (auto [u, v] : phi.equalities) parts.push_back(name(u) + " = " + name(v));
    out << "relation " << pr.name << " " << pr.arity << " :";
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? " & " : " ") << parts[i];
    out << "\n";
  }
  out << "hom_to_target";
  for (std::size_t e = 0; e < c.hom_to_target.size(); ++e)
    out << " " << element_string(static_cast<int>(e), n) << "->" << c.hom_to_target[e];
  out << "\nhom_from_target";
  for (std::size_t v = 0; v < c.hom_from_target.size(); ++v)
    out << " " << v << "->" << element_string(c.hom_from_target[v], n);
  out << "\n";
  return out.str();
}

std::string stcon_to_b2_text() {
  return R"(# (B2, <=) as a 2-dimensional pp-power of D_STCON.
source D_STCON
target B2_LEQ
dimension 2
relation zero 1 : x1 = 0 & x2 = 1
relation one 1 : x1 = 1 & x2 = 0
relation B2 2 : leq(x2,y1)
relation leq 2 : leq(x1,y1) & leq(y2,x2)
hom_to_target 00->1 01->0 10->1 11->1
hom_from_target 0->01 1->10
)";
}

PpCertificate stcon_to_b2() { return parse_certificate(stcon_to_b2_text()); }

}  // namespace boolpp
