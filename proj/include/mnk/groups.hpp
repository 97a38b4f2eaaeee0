#pragma once
//
// Finitely presented groups: a small text format, the presentations assigned
// to each (n, k), Todd-Coxeter coset enumeration, and a check that concrete
// automorphisms satisfy a presentation and generate the whole group.
//
// Text format:   gens: r,t ; rels: r^5, t^2, (t*r)^2, s*r^3 = r^3*s
// Words are concatenations of generator names (with or without '*'),
// parenthesized subwords, and exponents '^k', '^-k' or '^(integer expr)'.
// "a = b" means a*b^-1; chains "a = b = c" give one relator per '='.
// A literal 1 is the empty word.
//

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mnk/error.hpp"
#include "mnk/symmetry.hpp"

namespace mnk {

/// Letters are +(g+1) for generator g and -(g+1) for its inverse.
using Word = std::vector<int>;

struct Relator {
  std::string source;  // as printed (symbolic exponents kept)
  Word word;           // after substitution, not reduced
};

struct PresentedGroup {
  std::vector<std::string> generators;
  std::vector<Relator> relators;
  std::string provenance;

  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word word_power(const Word& w, long long e) {
  const Word base = e < 0 ? invert(w) : w;
  Word out;
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

namespace detail {

class WordParser {
 public:
  WordParser(const std::string& text, const std::vector<std::string>& gens) : s_(text), gens_(gens) {}

  Word parse_product() {
    Word out;
    while (true) {
      skip_ws();
      if (eof() || peek() == ')' || peek() == ',' || peek() == '=' || peek() == ';') break;
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      Word f = parse_factor();
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

 private:
  Word parse_factor() {
    skip_ws();
    Word base;
    if (peek() == '(') {
      ++pos_;
      base = parse_product();
      skip_ws();
      if (eof() || peek() != ')') fail("expected ')'");
      ++pos_;
    } else if (peek() == '1' && !next_is_digit()) {
      ++pos_;
    } else {
      base = parse_generator();
    }
    skip_ws();
    if (!eof() && peek() == '^') {
      ++pos_;
      skip_ws();
      base = word_power(base, parse_exponent());
    }
    return base;
  }

  bool next_is_digit() const {
    return pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]));
  }

  Word parse_generator() {
    std::size_t best = 0;
    int which = -1;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (s_.compare(pos_, gens_[g].size(), gens_[g]) == 0 && gens_[g].size() > best) {
        best = gens_[g].size();
        which = static_cast<int>(g);
      }
    if (which < 0) fail("unknown generator");
    pos_ += best;
    return {which + 1};
  }

  long long parse_exponent() {
    skip_ws();
    if (!eof() && peek() == '(') {
      ++pos_;
      const long long v = expr();
      skip_ws();
      if (eof() || peek() != ')') fail("expected ')' in exponent");
      ++pos_;
      return v;
    }
    bool neg = false;
    if (!eof() && (peek() == '-' || peek() == '+')) neg = s_[pos_++] == '-';
    return neg ? -integer() : integer();
  }

  long long expr() {
    long long v = term();
    for (skip_ws(); !eof() && (peek() == '+' || peek() == '-'); skip_ws()) {
      const char op = s_[pos_++];
      const long long rhs = term();
      v = op == '+' ? v + rhs : v - rhs;
    }
    return v;
  }
  long long term() {
    long long v = unary();
    for (skip_ws(); !eof() && peek() == '*'; skip_ws()) {
      ++pos_;
      v *= unary();
    }
    return v;
  }
  long long unary() {
    skip_ws();
    if (!eof() && peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (!eof() && peek() == '(') {
      ++pos_;
      const long long v = expr();
      skip_ws();
      if (eof() || peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    return integer();
  }
  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Splits on `sep` at parenthesis depth 0.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

/// Parses one relation (possibly a chain of '='), appending one relator per '='.
inline std::vector<Relator> parse_relation(const std::string& text, const std::vector<std::string>& gens) {
  const auto parts = detail::split_top(text, '=');
  std::vector<Word> sides;
  for (const auto& part : parts) {
    const std::string p = detail::trim(part);
    detail::WordParser wp(p, gens);
    if (p.empty()) wp.fail("empty side of relation");
    Word w = wp.parse_product();
    wp.skip_ws();
    if (!wp.eof()) wp.fail("unexpected character");
    sides.push_back(std::move(w));
  }
  std::vector<Relator> out;
  const std::string src = detail::trim(text);
  if (sides.size() == 1) {
    out.push_back({src, sides[0]});
    return out;
  }
  for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
    Word w = sides[i];
    const Word rhs = invert(sides[i + 1]);
    w.insert(w.end(), rhs.begin(), rhs.end());
    out.push_back({src, w});
  }
  return out;
}

inline PresentedGroup parse_presentation(const std::string& text) {
  const auto semi = detail::split_top(text, ';');
  if (semi.size() != 2) throw Error(ErrorKind::ParseError, "expected 'gens: ... ; rels: ...'");
  auto field = [&](const std::string& part, const std::string& key) {
    const std::string t = detail::trim(part);
    if (t.rfind(key, 0) != 0) throw Error(ErrorKind::ParseError, "expected '" + key + "'");
    std::string rest = detail::trim(t.substr(key.size()));
    if (rest.empty() || rest[0] != ':') throw Error(ErrorKind::ParseError, "expected ':' after " + key);
    return detail::trim(rest.substr(1));
  };
  PresentedGroup g;
  for (const auto& name : detail::split_top(field(semi[0], "gens"), ',')) {
    const std::string n = detail::trim(name);
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }))
      throw Error(ErrorKind::ParseError, "bad generator name '" + n + "'");
    if (g.generator_index(n) >= 0) throw Error(ErrorKind::ParseError, "duplicate generator " + n);
    g.generators.push_back(n);
  }
  const std::string rels = field(semi[1], "rels");
  if (!rels.empty())
    for (const auto& rel : detail::split_top(rels, ',')) {
      auto rs = parse_relation(rel, g.generators);
      g.relators.insert(g.relators.end(), rs.begin(), rs.end());
    }
  return g;
}

/// Letters joined by '*', inverses as g^-1, runs as g^e; a word that is a
/// proper power of a shorter word prints as (w)^e.
inline std::string format_word(const Word& w, const std::vector<std::string>& gens) {
  if (w.empty()) return "1";
  auto plain = [&](const Word& u) {
    std::string out;
    for (std::size_t i = 0; i < u.size();) {
      std::size_t j = i;
      while (j < u.size() && u[j] == u[i]) ++j;
      long long e = static_cast<long long>(j - i) * (u[i] > 0 ? 1 : -1);
      if (!out.empty()) out += "*";
      out += gens[std::abs(u[i]) - 1];
      if (e != 1) out += "^" + std::to_string(e);
      i = j;
    }
    return out;
  };
  for (std::size_t period = 1; period < w.size(); ++period) {
    if (w.size() % period) continue;
    bool ok = true;
    for (std::size_t i = period; i < w.size() && ok; ++i) ok = w[i] == w[i - period];
    if (!ok) continue;
    const Word base(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(period));
    bool single_run = std::all_of(base.begin(), base.end(), [&](int x) { return x == base[0]; });
    if (single_run) break;  // plain() already prints g^e
    return "(" + plain(base) + ")^" + std::to_string(w.size() / period);
  }
  return plain(w);
}

inline std::string serialize_presentation(const PresentedGroup& g) {
  std::string out = "gens: ";
  for (std::size_t i = 0; i < g.generators.size(); ++i) out += (i ? "," : "") + g.generators[i];
  out += " ; rels: ";
  for (std::size_t i = 0; i < g.relators.size(); ++i)
    out += (i ? ", " : "") + format_word(g.relators[i].word, g.generators);
  return out;
}

inline PresentedGroup stated_presentation(int n, int k) {
  if (n < 4) throw Error(ErrorKind::UnsupportedN, "need n >= 4");
  if (k < 0 || k >= n) throw Error(ErrorKind::InvalidStep, "k out of range");
  auto make = [](std::vector<std::string> gens, const std::vector<std::pair<std::string, std::string>>& rels,
                 std::string tag) {
    PresentedGroup g;
    g.generators = std::move(gens);
    g.provenance = std::move(tag);
    for (const auto& [src, text] : rels)
      for (auto& r : parse_relation(text, g.generators)) g.relators.push_back({src, r.word});
    return g;
  };
  const std::string N = std::to_string(n);
  auto dihedral = [&](std::string tag) {
    return make({"r", "t"}, {{"r^n = 1", "r^" + N}, {"t^2 = 1", "t^2"}, {"(tr)^2 = 1", "(t*r)^2"}},
                std::move(tag));
  };
  if (n % 3 != 0) {
    if (n % 2 == 1 && k == (n - 1) / 2)
      return make({"t", "u"},
                  {{"t^2 = 1", "t^2"}, {"u^2 = 1", "u^2"}, {"(ut)^(2n) = 1", "(u*t)^" + std::to_string(2 * n)}},
                  "not_div3_middle");
    return dihedral("not_div3");
  }
  if (k % 3 != 1) return dihedral("div3_k_not_1");
  const int m = n / 3, l = (k - 1) / 3;
  if (m % 2 == 1 && l == (m - 1) / 2)
    return make({"s", "t", "u"},
                {{"s^2 = 1", "s^2"},
                 {"t^2 = 1", "t^2"},
                 {"u^2 = 1", "u^2"},
                 {"(st)^2 = 1", "(s*t)^2"},
                 {"(ut)^6 = 1", "(u*t)^6"},
                 {"susus = tutut", "s*u*s*u*s = t*u*t*u*t"}},
                "div3_k_1_special");
  return make({"r", "s", "t"},
              {{"r^(3m) = 1", "r^" + std::to_string(3 * m)},
               {"s^2 = 1", "s^2"},
               {"t^2 = 1", "t^2"},
               {"(tr)^2 = 1", "(t*r)^2"},
               {"(st)^2 = 1", "(s*t)^2"},
               {"sr^3 = r^3s", "s*r^3 = r^3*s"},
               {"(str)^3 = r^(3(m-2l-2))", "(s*t*r)^3 = r^(" + std::to_string(3 * (m - 2 * l - 2)) + ")"}},
              "div3_k_1");
}

enum class EnumerationStatus { Completed, CapExceeded };

struct EnumerationResult {
  EnumerationStatus status = EnumerationStatus::Completed;
  long long order = 0;         // valid when Completed
  long long cosets_defined = 0;
};

inline constexpr long long kDefaultCosetCap = 1000000;

namespace detail {

class CosetTable {
 public:
  CosetTable(int ngens, long long cap) : cols_(2 * ngens), cap_(cap) { add_row(); }

  struct CapHit {};

  static int col(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv_col(int c) { return c ^ 1; }

  int get(int c, int x) const { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  void set(int c, int x, int v) { table_[static_cast<std::size_t>(c) * cols_ + x] = v; }
  bool alive(int c) const { return parent_[c] == c; }
  int size() const { return static_cast<int>(parent_.size()); }
  int cols() const { return cols_; }
  long long defined() const { return static_cast<long long>(parent_.size()); }

  int define(int c, int x) {
    if (static_cast<long long>(parent_.size()) >= cap_) throw CapHit{};
    const int d = add_row();
    set(c, x, d);
    set(d, inv_col(x), c);
    return d;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && get(f, w[i]) >= 0) f = get(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && get(b, inv_col(w[j])) >= 0) b = get(b, inv_col(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set(f, w[i], b);
        set(b, inv_col(w[i]), f);
        return;
      }
      define(f, w[i]);
    }
  }

  long long live_count() const {
    long long n = 0;
    for (int c = 0; c < size(); ++c) n += alive(c);
    return n;
  }

 private:
  int add_row() {
    table_.insert(table_.end(), cols_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(parent_.size()) - 1;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int e = queue[qi];
      for (int x = 0; x < cols_; ++x) {
        const int f = get(e, x);
        if (f < 0) continue;
        set(f, inv_col(x), -1);
        const int mu = rep(e), nu = rep(f);
        if (get(mu, x) >= 0)
          merge(nu, get(mu, x), queue);
        else if (get(nu, inv_col(x)) >= 0)
          merge(mu, get(nu, inv_col(x)), queue);
        else {
          set(mu, x, nu);
          set(nu, inv_col(x), mu);
        }
      }
    }
  }

  int cols_;
  long long cap_;
  std::vector<int> table_;
  std::vector<int> parent_;
};

}  // namespace detail

/// Todd-Coxeter over the trivial subgroup (HLT strategy).
inline EnumerationResult coset_enumerate(const PresentedGroup& g, long long cap = kDefaultCosetCap) {
  if (cap < 1) throw Error(ErrorKind::OutOfRange, "coset cap must be >= 1");
  std::vector<std::vector<int>> rels;
  for (const auto& r : g.relators) {
    const Word w = cyclic_reduce(r.word);
    if (w.empty()) continue;
    std::vector<int> cols;
    for (int x : w) cols.push_back(detail::CosetTable::col(x));
    rels.push_back(std::move(cols));
  }
  detail::CosetTable table(static_cast<int>(g.generators.size()), cap);
  EnumerationResult res;
  try {
    for (int c = 0; c < table.size(); ++c) {
      for (const auto& w : rels) {
        if (!table.alive(c)) break;
        table.scan_and_fill(c, w);
      }
      for (int x = 0; x < table.cols() && table.alive(c); ++x)
        if (table.get(c, x) < 0) table.define(c, x);
    }
    res.status = EnumerationStatus::Completed;
    res.order = table.live_count();
  } catch (const detail::CosetTable::CapHit&) {
    res.status = EnumerationStatus::CapExceeded;
  }
  res.cosets_defined = table.defined();
  return res;
}

struct RelatorCheck {
  std::string source;
  std::string word;
  bool holds = false;
};

struct IsomorphismCertificate {
  std::vector<std::pair<std::string, Seed>> assignment;  // generator -> seed of its image
  std::vector<RelatorCheck> relators;
  int generated_order = 0;
  bool surjective = false;
  EnumerationResult enumeration;
  int aut_order = 0;
  bool order_match = false;
  bool verdict = false;
};

inline const std::optional<CombIso>& generator_image(const AutGroupData& aut, const std::string& name) {
  static const std::optional<CombIso> none;
  if (name == "r") return aut.r;
  if (name == "s") return aut.s;
  if (name == "t") return aut.t;
  if (name == "u") return aut.u;
  return none;
}

/// x1 ... xk evaluates to img(x1) o ... o img(xk).
inline CombIso evaluate(const Word& w, const std::vector<CombIso>& images, const CombIso& identity) {
  CombIso out = identity;
  for (int x : w) {
    const CombIso& g = images[std::abs(x) - 1];
    out = compose(out, x > 0 ? g : inverse(g));
  }
  return out;
}

inline IsomorphismCertificate verify_isomorphism(const PresentedGroup& g, const AutGroupData& aut,
                                                 long long cap = kDefaultCosetCap) {
  IsomorphismCertificate cert;
  std::vector<CombIso> images;
  for (const auto& name : g.generators) {
    const auto& img = generator_image(aut, name);
    if (!img)
      throw Error(ErrorKind::MissingGenerator,
                  "generator " + name + " has no automorphism in Aut(CD_{" + std::to_string(aut.n) + "," +
                      std::to_string(aut.k) + "})");
    images.push_back(*img);
    cert.assignment.emplace_back(name, Seed{img->piece_map[0], img->vertex_maps[0]});
  }
  const CombIso id = compose(inverse(aut.elements.front()), aut.elements.front());
  bool all_hold = true;
  for (const auto& r : g.relators) {
    RelatorCheck rc{r.source, format_word(r.word, g.generators), is_identity(evaluate(r.word, images, id))};
    all_hold = all_hold && rc.holds;
    cert.relators.push_back(std::move(rc));
  }
  cert.generated_order = static_cast<int>(generated_subgroup(images, id).size());
  cert.aut_order = aut.order;
  cert.surjective = cert.generated_order == aut.order;
  cert.enumeration = coset_enumerate(g, cap);
  cert.order_match =
      cert.enumeration.status == EnumerationStatus::Completed && cert.enumeration.order == aut.order;
  cert.verdict = all_hold && cert.surjective && cert.order_match;
  return cert;
}

/// r = utut, when both r and u are automorphisms.
inline std::optional<bool> r_equals_utut(const AutGroupData& aut) {
  if (!aut.r || !aut.u || !aut.t) return std::nullopt;
  const CombIso ut = compose(*aut.u, *aut.t);
  return *aut.r == compose(ut, ut);
}

}  // namespace mnk
