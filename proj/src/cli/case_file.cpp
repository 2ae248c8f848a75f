#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "tomlink/cli.hpp"

namespace tomlink::cli {

CaseError::CaseError(const std::string& source, int line, int column, std::string field, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         (field.empty() ? "" : field + ": ") + what),
      line_(line),
      column_(column),
      field_(std::move(field)) {}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // 1-based column of the value
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k{"id", "source", "ambient", "centre", "tom_index", "basket", "basket_complete",
                            "declared_nodes", "matrix", "matrix_weights", "analysis"};
    for (int i = 0; i < 10; ++i) {
      auto [r, c] = upper_pair(i);
      k.insert("a" + std::to_string(r) + std::to_string(c));
    }
    return k;
  }();
  return keys;
}

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Entry> entries)
      : source_(std::move(source)), entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const Entry& get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw CaseError(source_, 0, 0, key, "missing required key");
    return it->second;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what, int offset = 0) const {
    const Entry& e = get(key);
    throw CaseError(source_, e.line, e.column + offset, key, what);
  }

  std::vector<long> integers(const std::string& key, std::size_t count) const {
    const Entry& e = get(key);
    std::vector<long> out;
    std::size_t pos = 0;
    const std::string& v = e.value;
    while (pos < v.size()) {
      while (pos < v.size() && (v[pos] == ' ' || v[pos] == '\t')) ++pos;
      if (pos == v.size()) break;
      std::size_t end = pos;
      while (end < v.size() && v[end] != ' ' && v[end] != '\t') ++end;
      std::string tok = v.substr(pos, end - pos);
      try {
        std::size_t used = 0;
        long x = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(x);
      } catch (const std::exception&) {
        fail(key, "expected an integer, found '" + tok + "'", static_cast<int>(pos));
      }
      pos = end;
    }
    if (out.size() != count)
      fail(key, "expected " + std::to_string(count) + " integers, found " + std::to_string(out.size()));
    return out;
  }

  bool boolean(const std::string& key) const {
    const std::string& v = get(key).value;
    if (v == "true") return true;
    if (v == "false") return false;
    fail(key, "expected true or false");
  }

  Polynomial polynomial(const std::string& key, const RingPtr& ring) const {
    try {
      return parse_polynomial(get(key).value, ring);
    } catch (const AlgebraError& e) {
      static const std::regex col(R"(parse error at column (\d+): (.*))");
      std::smatch m;
      std::string what = e.what();
      if (std::regex_match(what, m, col)) fail(key, m[2].str(), std::stoi(m[1].str()) - 1);
      fail(key, what);
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

std::map<std::string, Entry> tokenize(const std::string& text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  static const std::regex key_re("[a-z][a-z0-9_]*");
  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    std::size_t lead = 0;
    if (trim(body, &lead).empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw CaseError(source, line, static_cast<int>(lead) + 1, "", "expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    if (!std::regex_match(key, key_re)) throw CaseError(source, line, static_cast<int>(lead) + 1, "", "malformed key '" + key + "'");
    if (!known_keys().count(key)) throw CaseError(source, line, static_cast<int>(lead) + 1, key, "unknown key");
    std::size_t vlead = 0;
    std::string value = trim(body.substr(eq + 1), &vlead);
    int column = static_cast<int>(eq + 1 + vlead) + 1;
    if (value.empty()) throw CaseError(source, line, column, key, "empty value");
    if (entries.count(key)) throw CaseError(source, line, static_cast<int>(lead) + 1, key, "duplicate key");
    entries[key] = Entry{value, line, column};
  }
  return entries;
}

Basket read_basket(const Reader& rd) {
  Basket b;
  const std::string& v = rd.get("basket").value;
  static const std::regex item(R"(\s*(?:(\d+)\s*\*\s*)?(1/\d+\(\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*\))\s*(?:@\s*([a-z0-9_,]+))?\s*)");
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t end = v.find(';', start);
    if (end == std::string::npos) end = v.size();
    std::string part = v.substr(start, end - start);
    std::smatch m;
    if (!std::regex_match(part, m, item)) rd.fail("basket", "cannot read basket item '" + trim(part) + "'", static_cast<int>(start));
    long n = m[1].matched ? std::stol(m[1].str()) : 1;
    if (n < 1) rd.fail("basket", "multiplicity must be positive", static_cast<int>(start));
    QuotientPoint q;
    try {
      q = parse_quotient_point(m[2].str());
    } catch (const AlgebraError& e) {
      rd.fail("basket", e.what(), static_cast<int>(start));
    }
    if (!q.is_terminal()) rd.fail("basket", q.to_string() + " is not terminal", static_cast<int>(start));
    for (long i = 0; i < n; ++i) b.points.push_back({q, m[3].matched ? m[3].str() : ""});
    start = end + 1;
  }
  return b;
}

}  // namespace

WeightMatrix5 infer_matrix_weights(const std::array<Polynomial, 10>& entries) {
  std::array<std::optional<long>, 10> m;
  for (std::size_t i = 0; i < 10; ++i) {
    if (entries[i].is_zero()) continue;
    if (!is_homogeneous(entries[i]))
      throw AlgebraError("entry a" + std::to_string(upper_pair(static_cast<int>(i)).first) +
                         std::to_string(upper_pair(static_cast<int>(i)).second) + " is not homogeneous");
    m[i] = bidegree_of(entries[i]).top;
  }
  auto idx = [](int p, int q) { return static_cast<std::size_t>(p < q ? upper_index(p, q) : upper_index(q, p)); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= 5; ++i)
      for (int l = i + 1; l <= 5; ++l) {
        if (m[idx(i, l)]) continue;
        for (int j = 1; j <= 5 && !m[idx(i, l)]; ++j)
          for (int k = 1; k <= 5; ++k) {
            std::set<int> s{i, j, k, l};
            if (s.size() != 4) continue;
            auto ij = m[idx(i, j)], kl = m[idx(k, l)], jk = m[idx(j, k)];
            if (ij && kl && jk) {
              // m_il + m_jk = m_ij + m_kl
              m[idx(i, l)] = *ij + *kl - *jk;
              changed = true;
              break;
            }
          }
      }
  }
  WeightMatrix5 w;
  for (std::size_t i = 0; i < 10; ++i) {
    if (!m[i]) throw AlgebraError("matrix weights cannot be inferred; give matrix_weights");
    w.m[i] = *m[i];
  }
  w.validate();
  return w;
}

CaseFile parse_case_text(const std::string& text, const std::string& name) {
  Reader rd(name, tokenize(text, name));
  CaseFile cf;
  cf.path = name;
  cf.id = rd.get("id").value;
  if (rd.has("source")) cf.source = rd.get("source").value;

  auto amb = rd.integers("ambient", 8);
  std::copy(amb.begin(), amb.end(), cf.ambient.begin());
  FanoCase& fc = cf.fano;
  fc.id = cf.id;
  fc.a = amb[0];
  fc.b = amb[1];
  fc.c = amb[2];
  fc.d = {amb[3], amb[4], amb[5], amb[6]};
  fc.r = amb[7];
  for (long w : amb)
    if (w < 1) rd.fail("ambient", "weights must be positive");
  if (fc.a > fc.b || fc.b > fc.c) rd.fail("ambient", "orbinate weights not sorted");
  if (fc.a != 1) rd.fail("ambient", "min(a,b,c) must be 1");
  for (std::size_t j = 0; j + 1 < 4; ++j)
    if (fc.d[j] < fc.d[j + 1]) rd.fail("ambient", "ideal weights not sorted");

  if (rd.has("centre")) {
    QuotientPoint q;
    try {
      q = parse_quotient_point(rd.get("centre").value);
    } catch (const AlgebraError& e) {
      rd.fail("centre", e.what());
    }
    if (q != fc.centre()) rd.fail("centre", "centre " + q.to_string() + " disagrees with ambient " + fc.centre().to_string());
  }

  if (rd.has("tom_index")) {
    auto k = rd.integers("tom_index", 1)[0];
    if (k < 1 || k > 5) rd.fail("tom_index", "must be between 1 and 5");
    cf.tom_index = static_cast<int>(k);
  }
  fc.fmt.k = cf.tom_index;

  if (rd.has("basket")) {
    fc.basket = read_basket(rd);
    cf.basket_complete = rd.has("basket_complete") ? rd.boolean("basket_complete") : true;
  } else {
    fc.basket.points.push_back({fc.centre(), "s"});
    cf.basket_complete = rd.has("basket_complete") ? rd.boolean("basket_complete") : false;
    if (cf.basket_complete) rd.fail("basket_complete", "no basket given");
  }
  bool centre = false;
  for (const auto& p : fc.basket.points) centre = centre || p.point == fc.centre();
  if (!centre) rd.fail("basket", "basket does not contain the centre " + fc.centre().to_string());

  if (rd.has("declared_nodes")) {
    long n = rd.integers("declared_nodes", 1)[0];
    if (n < 0) rd.fail("declared_nodes", "must be nonnegative");
    fc.declared_nodes = n;
  }
  if (rd.has("analysis")) {
    const std::string& a = rd.get("analysis").value;
    if (a != "full" && a != "structural") rd.fail("analysis", "expected full or structural");
    cf.structural = a == "structural";
  }

  if (rd.has("matrix_weights")) {
    auto w = rd.integers("matrix_weights", 10);
    std::copy(w.begin(), w.end(), cf.matrix_weights.m.begin());
    cf.matrix_weights_given = true;
    try {
      cf.matrix_weights.validate();
    } catch (const AlgebraError& e) {
      rd.fail("matrix_weights", e.what());
    }
  }

  RingPtr R = z_ring_for(fc.a, fc.b, fc.c, fc.d);
  bool explicit_entries = false;
  for (int i = 0; i < 10; ++i) {
    auto [r, c] = upper_pair(i);
    explicit_entries = explicit_entries || rd.has("a" + std::to_string(r) + std::to_string(c));
  }
  if (rd.has("matrix") == explicit_entries) {
    if (explicit_entries) rd.fail("matrix", "give either matrix = GENERAL <seed> or the entries a12..a45, not both");
    throw CaseError(name, 0, 0, "matrix", "missing: give matrix = GENERAL <seed> or the entries a12..a45");
  }
  if (rd.has("matrix")) {
    static const std::regex general(R"(GENERAL\s+(\d+))");
    std::smatch m;
    const std::string& v = rd.get("matrix").value;
    if (!std::regex_match(v, m, general)) rd.fail("matrix", "expected GENERAL <seed>");
    if (!cf.matrix_weights_given) rd.fail("matrix", "GENERAL requires matrix_weights");
    cf.general_seed = std::stoull(m[1].str());
    try {
      fc.M = build_general_tom(cf.matrix_weights, fc.fmt, R, *cf.general_seed);
    } catch (const AlgebraError& e) {
      rd.fail("matrix_weights", e.what());
    }
  } else {
    std::array<Polynomial, 10> up;
    for (int i = 0; i < 10; ++i) {
      auto [r, c] = upper_pair(i);
      std::string key = "a" + std::to_string(r) + std::to_string(c);
      if (!rd.has(key)) throw CaseError(name, 0, 0, key, "missing matrix entry");
      up[static_cast<std::size_t>(i)] = rd.polynomial(key, R);
    }
    if (!cf.matrix_weights_given) {
      try {
        cf.matrix_weights = infer_matrix_weights(up);
      } catch (const AlgebraError& e) {
        throw CaseError(name, rd.get("a12").line, 1, "matrix", e.what());
      }
    }
    try {
      fc.M = SkewMatrix5(R, cf.matrix_weights, up);
    } catch (const AlgebraError& e) {
      throw CaseError(name, rd.get("a12").line, 1, "matrix", e.what());
    }
  }
  const std::string mkey = rd.has("matrix") ? "matrix" : "a12";
  if (!check_tom(fc.M, fc.fmt))
    throw CaseError(name, rd.get(mkey).line, 1, "matrix", "matrix is not in Tom_" + std::to_string(cf.tom_index) + " format");
  try {
    validate_case(fc);
  } catch (const AlgebraError& e) {
    throw CaseError(name, 0, 0, "case", e.what());
  }
  return cf;
}

CaseFile parse_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CaseError(path, 0, 0, "", "cannot open case file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case_text(ss.str(), path);
}

}  // namespace tomlink::cli
