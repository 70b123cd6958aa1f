#include "lcak/definition.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "lcak/errors.hpp"

namespace lcak {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double parse_number(const std::string& s, int line) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DefinitionError(line, "expected a number, found '" + s + "'");
  return v;
}

struct Entry {
  int line;
  std::string key;
  std::string value;
};

struct RawDefinition {
  std::map<std::string, std::vector<Entry>> sections;
  std::vector<Entry> domain;  // key holds the whole condition
};

RawDefinition split_sections(std::string_view text) {
  static const char* known[] = {"manifold", "domain", "metric", "J", "conformal", "sample"};
  RawDefinition raw;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw DefinitionError(line_no, "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw DefinitionError(line_no, "unknown section [" + section + "]");
      if (raw.sections.count(section)) throw DefinitionError(line_no, "duplicate section [" + section + "]");
      raw.sections[section];
      continue;
    }
    if (section.empty()) throw DefinitionError(line_no, "content before the first section");
    if (section == "domain") {
      raw.domain.push_back({line_no, t, ""});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw DefinitionError(line_no, "expected 'key = value'");
    raw.sections[section].push_back({line_no, trim(std::string_view(t).substr(0, eq)),
                                     trim(std::string_view(t).substr(eq + 1))});
  }
  return raw;
}

Expr parse_at(const std::string& src, const std::vector<std::string>& coords, int line) {
  if (src.empty()) throw DefinitionError(line, "empty expression");
  try {
    return parse_expr(src, coords);
  } catch (const Error& e) {
    throw DefinitionError(line, e.what());
  }
}

DomainConstraint parse_constraint(const Entry& e, const std::vector<std::string>& coords) {
  DomainConstraint c;
  c.source = e.key;
  const std::string& s = e.key;
  std::size_t at = s.find("!=");
  std::size_t len = 2;
  if (at != std::string::npos) {
    c.kind = DomainConstraint::Kind::not_equal;
  } else if ((at = s.find('>')) != std::string::npos) {
    c.kind = DomainConstraint::Kind::greater;
    len = 1;
  } else if ((at = s.find('<')) != std::string::npos) {
    c.kind = DomainConstraint::Kind::less;
    len = 1;
  } else {
    throw DefinitionError(e.line, "domain condition needs one of '>', '<', '!='");
  }
  if (at + len < s.size() && s[at + len] == '=')
    throw DefinitionError(e.line, "domain conditions are open: use '>' or '<'");
  c.lhs = parse_at(trim(std::string_view(s).substr(0, at)), coords, e.line);
  c.rhs = parse_at(trim(std::string_view(s).substr(at + len)), coords, e.line);
  return c;
}

// "g_3_1" -> (2, 0) for prefix "g".
std::pair<int, int> parse_index_key(const Entry& e, const std::string& prefix, int dim) {
  const std::string& k = e.key;
  if (k.rfind(prefix + "_", 0) != 0) throw DefinitionError(e.line, "expected key " + prefix + "_i_j, found '" + k + "'");
  const auto parts = std::string_view(k).substr(prefix.size() + 1);
  const auto sep = parts.find('_');
  if (sep == std::string_view::npos) throw DefinitionError(e.line, "expected key " + prefix + "_i_j");
  int i = 0;
  int j = 0;
  auto r1 = std::from_chars(parts.data(), parts.data() + sep, i);
  auto r2 = std::from_chars(parts.data() + sep + 1, parts.data() + parts.size(), j);
  if (r1.ec != std::errc() || r1.ptr != parts.data() + sep || r2.ec != std::errc() ||
      r2.ptr != parts.data() + parts.size())
    throw DefinitionError(e.line, "malformed index in '" + k + "'");
  if (i < 1 || j < 1 || i > dim || j > dim)
    throw DefinitionError(e.line, "index out of range in '" + k + "'");
  return {i - 1, j - 1};
}

}  // namespace

ChartManifold parse_definition(std::string_view text) {
  const RawDefinition raw = split_sections(text);
  auto section = [&](const std::string& s) -> const std::vector<Entry>* {
    auto it = raw.sections.find(s);
    return it == raw.sections.end() ? nullptr : &it->second;
  };

  const auto* header = section("manifold");
  if (!header) throw DefinitionError(0, "missing [manifold] section");
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  for (const auto& e : *header) {
    if (e.key == "name") {
      name = e.value;
    } else if (e.key == "dim") {
      dim = static_cast<int>(parse_number(e.value, e.line));
      if (std::to_string(dim) != e.value) throw DefinitionError(e.line, "dim must be an integer");
    } else if (e.key == "coords") {
      coords = split_commas(e.value);
    } else {
      throw DefinitionError(e.line, "unknown key '" + e.key + "' in [manifold]");
    }
  }
  if (name.empty()) throw DefinitionError(0, "[manifold] needs a name");
  if (dim < 4 || dim > 8 || dim % 2 != 0) throw DefinitionError(0, "dim must be 4, 6 or 8");
  if (coords.empty())
    for (int i = 1; i <= dim; ++i) coords.push_back("x" + std::to_string(i));
  if (static_cast<int>(coords.size()) != dim) throw DefinitionError(0, "coords must list dim names");

  std::vector<DomainConstraint> domain;
  for (const auto& e : raw.domain) domain.push_back(parse_constraint(e, coords));

  const auto n = static_cast<std::size_t>(dim);
  std::vector<Expr> metric(n * n);
  std::vector<int> metric_line(n * n, 0);
  const auto* metric_section = section("metric");
  if (!metric_section) throw DefinitionError(0, "missing [metric] section");
  for (const auto& e : *metric_section) {
    auto [i, j] = parse_index_key(e, "g", dim);
    const Expr ex = parse_at(e.value, coords, e.line);
    const auto ij = static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
    const auto ji = static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i);
    if (metric_line[ij] != 0 && metric_line[ij] != e.line && metric[ij].to_string() != ex.to_string())
      throw DefinitionError(e.line, "metric entry " + e.key + " conflicts with its symmetric partner");
    metric[ij] = ex;
    metric[ji] = ex;
    metric_line[ij] = e.line;
    metric_line[ji] = e.line;
  }

  std::vector<Expr> J(n * n);
  const auto* j_section = section("J");
  if (!j_section) throw DefinitionError(0, "missing [J] section");
  std::vector<bool> seen(n * n, false);
  for (const auto& e : *j_section) {
    auto [i, j] = parse_index_key(e, "J", dim);
    const auto ij = static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
    if (seen[ij]) throw DefinitionError(e.line, "duplicate entry " + e.key);
    seen[ij] = true;
    J[ij] = parse_at(e.value, coords, e.line);
  }

  std::optional<Expr> f;
  if (const auto* conf = section("conformal")) {
    for (const auto& e : *conf) {
      if (e.key != "f") throw DefinitionError(e.line, "unknown key '" + e.key + "' in [conformal]");
      f = parse_at(e.value, coords, e.line);
    }
  }

  std::vector<SampleRange> box(n);
  if (const auto* sample = section("sample")) {
    for (const auto& e : *sample) {
      std::size_t idx = n;
      for (std::size_t i = 0; i < n; ++i)
        if (coords[i] == e.key) idx = i;
      if (idx == n) throw DefinitionError(e.line, "unknown coordinate '" + e.key + "' in [sample]");
      const auto parts = split_commas(e.value);
      if (parts.size() != 2) throw DefinitionError(e.line, "expected 'lo, hi'");
      box[idx] = {parse_number(parts[0], e.line), parse_number(parts[1], e.line)};
      if (!(box[idx].lo < box[idx].hi)) throw DefinitionError(e.line, "empty sample range");
    }
  }

  return ChartManifold(name, coords, std::move(domain), std::move(metric), std::move(J), std::move(f),
                       std::move(box));
}

ChartManifold load_definition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DefinitionError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_definition(ss.str());
}

std::string serialize_definition(const ChartManifold& M) {
  const int n = M.dim();
  std::ostringstream os;
  os << "[manifold]\nname = " << M.name() << "\ndim = " << n << "\ncoords = ";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << M.coord_names()[static_cast<std::size_t>(i)];
  os << "\n\n[domain]\n";
  for (const auto& c : M.domain()) {
    const char* op = c.kind == DomainConstraint::Kind::greater ? " > "
                     : c.kind == DomainConstraint::Kind::less  ? " < "
                                                               : " != ";
    os << c.lhs.to_string() << op << c.rhs.to_string() << "\n";
  }
  os << "\n[metric]\n";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!M.metric_expr(i, j).is_zero_constant())
        os << "g_" << i + 1 << "_" << j + 1 << " = " << M.metric_expr(i, j).to_string() << "\n";
  os << "\n[J]\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!M.J_expr(i, j).is_zero_constant())
        os << "J_" << i + 1 << "_" << j + 1 << " = " << M.J_expr(i, j).to_string() << "\n";
  if (M.conformal_exponent()) os << "\n[conformal]\nf = " << M.conformal_exponent()->to_string() << "\n";
  os << "\n[sample]\n";
  for (int i = 0; i < n; ++i) {
    const auto& r = M.sample_box()[static_cast<std::size_t>(i)];
    os << M.coord_names()[static_cast<std::size_t>(i)] << " = " << Expr::constant(r.lo).to_string() << ", "
       << Expr::constant(r.hi).to_string() << "\n";
  }
  return os.str();
}

}  // namespace lcak
