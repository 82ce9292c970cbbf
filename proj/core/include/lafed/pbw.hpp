#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lafed/chart.hpp"

namespace lafed {

// Sorted PBW monomial e_1^b1 ... e_r^br.
struct UMono {
  std::array<std::uint8_t, kMaxRank> e{};

  int order() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  static UMono gen(int i) {
    UMono m;
    m.e[i] = 1;
    return m;
  }
  // Smallest generator index present, or -1 for the unit.
  int first() const {
    for (int i = 0; i < kMaxRank; ++i)
      if (e[i]) return i;
    return -1;
  }
  int last() const {
    for (int i = kMaxRank - 1; i >= 0; --i)
      if (e[i]) return i;
    return -1;
  }
  UMono without(int i) const {
    UMono m = *this;
    --m.e[i];
    return m;
  }
  UMono with(int i) const {
    UMono m = *this;
    ++m.e[i];
    return m;
  }
  std::vector<int> word() const;  // ascending generator word
  auto operator<=>(const UMono&) const = default;
};

std::string to_string(const UMono& m);

// Element of UE in normal form: sum of f_b e^b with coefficients on the left.
struct PbwElement {
  std::map<UMono, Poly> terms;

  static PbwElement one() { return function(Poly(1)); }
  static PbwElement function(const Poly& f);
  static PbwElement gen(int i);
  static PbwElement mono(const UMono& m, const Poly& f = Poly(1));

  bool is_zero() const { return terms.empty(); }
  int order() const;  // -1 for zero
  void add(const UMono& m, const Poly& f);
  PbwElement& operator+=(const PbwElement& o);
  PbwElement& operator-=(const PbwElement& o);
  PbwElement& operator*=(const Q& c);
  friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
  friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }
  friend PbwElement operator*(const Q& c, PbwElement a) { return a *= c; }
  bool operator==(const PbwElement& o) const { return terms == o.terms; }
  std::string str(int n) const;
};

// Multinomial expansion of Delta^(k)(e^b): pairs (integer weight, k+1 slots).
using Split = std::pair<Q, std::vector<UMono>>;

// Universal enveloping algebra of a chart with memoized normal ordering.
class Enveloping {
 public:
  explicit Enveloping(AlgebroidChart chart) : chart_(std::move(chart)) {}
  const AlgebroidChart& chart() const { return chart_; }
  int r() const { return chart_.r(); }

  // e_i * (f e^b) in normal form.
  PbwElement gen_times(int i, const PbwElement& p) const;
  // e^m * p
  PbwElement mono_times(const UMono& m, const PbwElement& p) const;
  // e^a * e^b
  const PbwElement& mono_mono(const UMono& a, const UMono& b) const;
  PbwElement mul(const PbwElement& a, const PbwElement& b) const;

  // rho: UE -> End(O), generators act by the anchor derivations.
  Poly anchor_apply(const UMono& m, const Poly& f) const;
  Poly anchor_apply(const PbwElement& p, const Poly& f) const;

  // Delta^(k)(e^m) with k+1 slots, Delta^(0) = id.
  const std::vector<Split>& delta(const UMono& m, int k) const;

 private:
  const PbwElement& gen_mono(int i, const UMono& m) const;

  AlgebroidChart chart_;
  mutable std::map<std::pair<int, UMono>, PbwElement> gen_cache_;
  mutable std::map<std::pair<UMono, UMono>, PbwElement> mono_cache_;
  mutable std::map<std::pair<UMono, int>, std::vector<Split>> delta_cache_;
};

// A letter of a word in UE: a generator (gen >= 0) or a function (gen = -1).
struct Letter {
  int gen = -1;
  Poly f;
  static Letter g(int i) { return {i, Poly()}; }
  static Letter fn(const Poly& p) { return {-1, p}; }
};

enum class RewriteOrder { Leftmost, Rightmost };

// Normal form of a word by explicit rewriting, always picking the leftmost or
// rightmost redex. Independent of the memoized product above.
PbwElement pbw_normalize(const AlgebroidChart& chart, const std::vector<Letter>& word,
                         RewriteOrder order = RewriteOrder::Leftmost);

}  // namespace lafed
