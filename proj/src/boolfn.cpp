#include "boolpp/boolfn.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <utility>

namespace boolpp {

namespace {

std::size_t word_count(int arity) {
  return arity <= 6 ? 1 : (std::size_t{1} << (arity - 6));
}

std::uint64_t tail_mask(int arity) {
  return arity >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << arity)) - 1);
}

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxArity)
    throw Error("arity " + std::to_string(arity) + " outside [1, " + std::to_string(kMaxArity) + "]");
}

}  // namespace

IndexMap::IndexMap(int target_arity, std::vector<int> image)
    : target_arity_(target_arity), image_(std::move(image)) {
  if (target_arity_ < 1) throw Error("index map target arity must be positive");
  for (int v : image_)
    if (v < 0 || v >= target_arity_) throw Error("index map entry out of range");
}

IndexMap IndexMap::from_one_based(int target_arity, std::span<const int> image) {
  std::vector<int> zero_based;
  zero_based.reserve(image.size());
  for (int v : image) zero_based.push_back(v - 1);
  return IndexMap(target_arity, std::move(zero_based));
}

IndexMap IndexMap::identity(int arity) {
  std::vector<int> image(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) image[static_cast<std::size_t>(i)] = i;
  return IndexMap(arity, std::move(image));
}

IndexMap IndexMap::then(const IndexMap& sigma) const {
  if (sigma.source_arity() != target_arity_) throw Error("index maps do not compose");
  std::vector<int> image;
  image.reserve(image_.size());
  for (int v : image_) image.push_back(sigma[v]);
  return IndexMap(sigma.target_arity(), std::move(image));
}

BoolFn::BoolFn(int arity) : arity_(arity) {
  check_arity(arity);
  words_.assign(word_count(arity), 0);
}

BoolFn::BoolFn(int arity, std::vector<std::uint64_t> words) : arity_(arity), words_(std::move(words)) {
  check_arity(arity);
  if (words_.size() != word_count(arity)) throw Error("table word count does not match arity");
  mask_tail();
}

void BoolFn::mask_tail() { words_.back() &= tail_mask(arity_); }

BoolFn BoolFn::from_bits(int arity, std::string_view bits) {
  BoolFn f(arity);
  if (bits.size() != f.table_size())
    throw Error("table for arity " + std::to_string(arity) + " needs " + std::to_string(f.table_size()) +
                " bits, got " + std::to_string(bits.size()));
  for (std::uint32_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw Error("table bits must be 0 or 1");
    f.set(i, bits[i] == '1');
  }
  return f;
}

BoolFn BoolFn::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("expected \"arity:bits\", got \"" + std::string(text) + "\"");
  int arity = 0;
  auto head = text.substr(0, colon);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), arity);
  if (ec != std::errc{} || ptr != head.data() + head.size()) throw Error("bad arity in \"" + std::string(text) + "\"");
  return from_bits(arity, text.substr(colon + 1));
}

BoolFn BoolFn::from_function(int arity, const std::function<bool(std::uint32_t)>& at_index) {
  BoolFn f(arity);
  for (std::uint32_t i = 0; i < f.table_size(); ++i) f.set(i, at_index(i));
  return f;
}

BoolFn BoolFn::projection(int i, int arity) {
  check_arity(arity);
  if (i < 1 || i > arity) throw Error("projection index out of range");
  return from_function(arity, [&](std::uint32_t x) { return argument_bit(x, arity, i - 1) != 0; });
}

BoolFn BoolFn::constant(bool value, int arity) {
  return from_function(arity, [&](std::uint32_t) { return value; });
}

void BoolFn::set(std::uint32_t index, bool value) {
  auto bit = std::uint64_t{1} << (index & 63);
  if (value)
    words_[index >> 6] |= bit;
  else
    words_[index >> 6] &= ~bit;
}

std::uint32_t table_index(std::span<const int> args) {
  std::uint32_t index = 0;
  for (int a : args) {
    if (a != 0 && a != 1) throw Error("arguments must be 0 or 1");
    index = (index << 1) | static_cast<std::uint32_t>(a);
  }
  return index;
}

bool BoolFn::eval(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw Error("eval: expected " + std::to_string(arity_) + " arguments, got " + std::to_string(args.size()));
  return at(table_index(args));
}

bool BoolFn::is_idempotent() const { return !at(0) && at(table_size() - 1); }

bool BoolFn::is_constant() const {
  bool first = at(0);
  for (std::uint32_t i = 1; i < table_size(); ++i)
    if (at(i) != first) return false;
  return true;
}

int BoolFn::projection_index() const {
  for (int i = 1; i <= arity_; ++i)
    if (*this == projection(i, arity_)) return i - 1;
  return -1;
}

std::string BoolFn::bits() const {
  std::string s(table_size(), '0');
  for (std::uint32_t i = 0; i < table_size(); ++i)
    if (at(i)) s[i] = '1';
  return s;
}

std::string BoolFn::to_string() const { return std::to_string(arity_) + ":" + bits(); }

std::strong_ordering operator<=>(const BoolFn& a, const BoolFn& b) {
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  // Compare by table in index order so sorted slices list tables lexicographically.
  for (std::uint32_t i = 0; i < a.table_size(); ++i)
    if (a.at(i) != b.at(i)) return a.at(i) ? std::strong_ordering::greater : std::strong_ordering::less;
  return std::strong_ordering::equal;
}

BoolFn minor(const BoolFn& f, const IndexMap& pi) {
  if (pi.source_arity() != f.arity())
    throw Error("minor: map source arity " + std::to_string(pi.source_arity()) + " != operation arity " +
                std::to_string(f.arity()));
  const int n = f.arity();
  const int r = pi.target_arity();
  BoolFn g(r);
  for (std::uint32_t x = 0; x < g.table_size(); ++x) {
    std::uint32_t src = 0;
    for (int j = 0; j < n; ++j) src = (src << 1) | static_cast<std::uint32_t>(argument_bit(x, r, pi[j]));
    g.set(x, f.at(src));
  }
  return g;
}

BoolFn compose(const BoolFn& f, std::span<const BoolFn> gs) {
  if (static_cast<int>(gs.size()) != f.arity())
    throw Error("compose: operation of arity " + std::to_string(f.arity()) + " given " + std::to_string(gs.size()) +
                " arguments");
  const int k = gs.front().arity();
  for (const auto& g : gs)
    if (g.arity() != k) throw Error("compose: inner operations have different arities");

  const int n = f.arity();
  const std::size_t nw = gs.front().words().size();
  std::vector<std::uint64_t> out(nw, 0), term(nw);
  for (std::uint32_t a = 0; a < f.table_size(); ++a) {
    if (!f.at(a)) continue;
    std::fill(term.begin(), term.end(), ~std::uint64_t{0});
    for (int j = 0; j < n; ++j) {
      const auto& w = gs[static_cast<std::size_t>(j)].words();
      if (argument_bit(a, n, j))
        for (std::size_t t = 0; t < nw; ++t) term[t] &= w[t];
      else
        for (std::size_t t = 0; t < nw; ++t) term[t] &= ~w[t];
    }
    for (std::size_t t = 0; t < nw; ++t) out[t] |= term[t];
  }
  return BoolFn(k, std::move(out));
}

BoolFn dual(const BoolFn& f) {
  const std::uint32_t top = f.table_size() - 1;
  return BoolFn::from_function(f.arity(), [&](std::uint32_t x) { return !f.at(top ^ x); });
}

namespace {

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

BoolFn threshold_d(int n) {
  // d_n = OR_i AND_{j != i} x_j, i.e. at least n-1 arguments are 1.
  return BoolFn::from_function(n, [&](std::uint32_t x) { return popcount(x) >= n - 1; });
}

std::string strip_dual(std::string_view name, bool& is_dual) {
  is_dual = false;
  std::string s(name);
  for (const char* suffix : {"^d", "^D", "^Δ", "Δ", "^dual"}) {
    std::string_view sv(suffix);
    if (s.size() > sv.size() && s.compare(s.size() - sv.size(), sv.size(), sv) == 0) {
      is_dual = true;
      s.resize(s.size() - sv.size());
      break;
    }
  }
  return s;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

BoolFn named(std::string_view raw) {
  bool want_dual = false;
  std::string name = strip_dual(raw, want_dual);
  auto result = [&](BoolFn f) { return want_dual ? dual(f) : f; };

  if (name == "0") return result(BoolFn::constant(false));
  if (name == "1") return result(BoolFn::constant(true));
  if (name == "c" || name == "not" || name == "¬") return result(BoolFn::from_bits(1, "10"));
  if (name == "id") return result(BoolFn::projection(1, 1));
  if (name == "and" || name == "∧") return result(BoolFn::from_bits(2, "0001"));
  if (name == "or" || name == "∨") return result(BoolFn::from_bits(2, "0111"));
  if (name == "xor" || name == "⊕") return result(BoolFn::from_bits(2, "0110"));
  if (name == "xnor" || name == "xor'" || name == "⊕′" || name == "⊕'") return result(BoolFn::from_bits(2, "1001"));
  if (name == "impl" || name == "→" || name == "->") return result(BoolFn::from_bits(2, "1101"));
  if (name == "star" || name == "∗" || name == "*") return result(BoolFn::from_bits(2, "0100"));
  if (name == "m") return result(BoolFn::from_bits(3, "01101001"));
  if (name == "p") return result(BoolFn::from_bits(3, "00000111"));
  if (name == "q") return result(BoolFn::from_bits(3, "00001001"));
  if (name.size() > 1 && (name[0] == 'd')) {
    std::string_view rest(name);
    rest.remove_prefix(name[1] == '_' ? 2 : 1);
    int n = 0;
    if (parse_int(rest, n)) {
      if (n < 3 || n > kMaxArity) throw Error("d_n needs 3 <= n <= " + std::to_string(kMaxArity));
      return result(threshold_d(n));
    }
  }
  // pi<i>_<n> or proj(i,n)
  if (name.rfind("pi", 0) == 0 || name.rfind("proj", 0) == 0) {
    std::string_view rest(name);
    rest.remove_prefix(name[1] == 'i' ? 2 : 4);
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    auto sep = rest.find_first_of("_,");
    int i = 0, n = 0;
    if (sep != std::string_view::npos && parse_int(rest.substr(0, sep), i) && parse_int(rest.substr(sep + 1), n)) {
      if (n < 1 || n > kMaxArity || i < 1 || i > n) throw Error("projection needs 1 <= i <= n");
      return result(BoolFn::projection(i, n));
    }
  }
  throw Error("unknown operation name \"" + std::string(raw) + "\"");
}

std::string canonical_name(const BoolFn& f) {
  static const char* const kNames[] = {"0", "1", "c", "and", "or", "xor", "xnor", "impl", "star", "m",
                                        "p", "q", "p^d", "q^d", "impl^d", "star^d"};
  for (const char* n : kNames)
    if (named(n) == f) return n;
  if (f.arity() >= 3 && f == threshold_d(f.arity())) return "d" + std::to_string(f.arity());
  if (f.arity() >= 3 && f == dual(threshold_d(f.arity()))) return "d" + std::to_string(f.arity()) + "^d";
  if (int i = f.projection_index(); i >= 0)
    return "pi" + std::to_string(i + 1) + "_" + std::to_string(f.arity());
  return {};
}

std::size_t BoolFnHash::operator()(const BoolFn& f) const noexcept {
  std::size_t h = static_cast<std::size_t>(f.arity()) * 0x9e3779b97f4a7c15ull;
  for (auto w : f.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace boolpp
