#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boolpp {

/// Raised for malformed input: arity mismatches, unknown names, bad files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest arity a BoolFn may carry. Tables are 2^arity bits.
inline constexpr int kMaxArity = 16;

/// A map {1..source_arity} -> {1..target_arity}, stored 0-based.
class IndexMap {
 public:
  IndexMap(int target_arity, std::vector<int> image);

  /// Builds from 1-based entries, as written in identities.
  static IndexMap from_one_based(int target_arity, std::span<const int> image);
  static IndexMap identity(int arity);

  int source_arity() const { return static_cast<int>(image_.size()); }
  int target_arity() const { return target_arity_; }
  int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  /// (sigma . this): first apply this map, then sigma.
  IndexMap then(const IndexMap& sigma) const;

 private:
  int target_arity_;
  std::vector<int> image_;
};

/// An operation {0,1}^n -> {0,1} stored as a truth table.
///
/// The entry for (x1,...,xn) lives at index sum_j xj * 2^(n-j), so x1 is
/// the most significant bit. Arity 0 is rejected; constants are unary.
class BoolFn {
 public:
  /// Constant-zero operation of the given arity.
  explicit BoolFn(int arity);
  BoolFn(int arity, std::vector<std::uint64_t> words);

  /// Table given as a string of '0'/'1' in index order.
  static BoolFn from_bits(int arity, std::string_view bits);
  /// Parses the "arity:bits" rendering, e.g. "3:00010111".
  static BoolFn parse(std::string_view text);
  static BoolFn from_function(int arity, const std::function<bool(std::uint32_t)>& at_index);
  static BoolFn projection(int i, int arity);  // 1-based i
  static BoolFn constant(bool value, int arity = 1);

  int arity() const { return arity_; }
  std::uint32_t table_size() const { return 1u << arity_; }

  bool at(std::uint32_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  void set(std::uint32_t index, bool value);

  bool eval(std::span<const int> args) const;
  bool eval(std::initializer_list<int> args) const {
    return eval(std::span<const int>(args.begin(), args.size()));
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  /// Whole table as one word; only for arity <= 6.
  std::uint64_t word() const { return words_[0]; }

  bool is_idempotent() const;
  bool is_constant() const;
  /// The argument position f projects onto, 0-based, or -1.
  int projection_index() const;

  std::string bits() const;
  /// "arity:bits".
  std::string to_string() const;

  friend bool operator==(const BoolFn&, const BoolFn&) = default;
  friend std::strong_ordering operator<=>(const BoolFn& a, const BoolFn& b);

 private:
  void mask_tail();

  int arity_;
  std::vector<std::uint64_t> words_;
};

/// Index of the cell addressed by the argument bits in `args`.
std::uint32_t table_index(std::span<const int> args);

/// Value of argument x_{j+1} inside table cell `index` of an n-ary table.
inline int argument_bit(std::uint32_t index, int n, int j) {
  return static_cast<int>((index >> (n - 1 - j)) & 1u);
}

/// f_pi(x1..xr) = f(x_pi(1), ..., x_pi(n)).
BoolFn minor(const BoolFn& f, const IndexMap& pi);

/// h(x) = f(g1(x), ..., gn(x)).
BoolFn compose(const BoolFn& f, std::span<const BoolFn> gs);

/// f^dual(x) = c(f(c(x1), ..., c(xn))).
BoolFn dual(const BoolFn& f);

/// Named operations: 0, 1, c, and, or, xor, xnor, impl, star, d<n>, m, p,
/// q, pi<i>_<n>, and their duals via a trailing "^d" (e.g. "p^d").
/// Unicode spellings (∧, ∨, ⊕, ⊕′, →, ∗, Δ) are accepted too.
BoolFn named(std::string_view name);

/// Label used when rendering a generator back to text, if it has one.
std::string canonical_name(const BoolFn& f);

struct BoolFnHash {
  std::size_t operator()(const BoolFn& f) const noexcept;
};

}  // namespace boolpp
