#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpack {

// Absolute tolerance for all capacity and completeness comparisons. Weights
// are normalized fractions, so accumulated rounding error stays orders of
// magnitude below this at the instance sizes this toolkit targets.
inline constexpr double kEps = 1e-9;

enum class errc {
  non_positive_capacity,
  negative_weight,
  item_exceeds_capacity,       // raw item cannot fit in any bin
  item_exceeds_unit_capacity,  // normalized weight above 1 reached the packer
  rho_override_too_small,
  malformed_boundaries,
  not_a_permutation,
  instance_too_large,
  parse_error,
  internal_invariant,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// One item's two weights, each normalized to its bin capacity.
struct Item {
  double s = 0.0;
  double l = 0.0;
};

// Ties are s-heavy.
inline bool is_s_heavy(const Item& item) { return item.s >= item.l; }
inline bool is_l_heavy(const Item& item) { return item.l > item.s; }

struct RawItem {
  double size = 0.0;
  double load = 0.0;
};

// Items in arbitrary positive units together with the bin capacities they
// must respect.
struct RawInstance {
  std::vector<RawItem> items;
  double cap_s = 1.0;
  double cap_l = 1.0;
};

// Normalized instance. Invariants (enforced by make_instance / normalize):
// every weight lies in [0, 1], and rho >= every weight with rho <= 1. When
// derived, rho equals the exact maximum weight (0 for an empty instance).
struct Instance {
  std::vector<Item> items;
  double rho = 0.0;
};

// Validates weights and derives rho. A caller-supplied rho models the case
// where the weight ceiling is an application parameter rather than an
// instance property; it must dominate the derived maximum.
Instance make_instance(std::vector<Item> items,
                       std::optional<double> rho_override = std::nullopt);

Instance normalize(const RawInstance& raw,
                   std::optional<double> rho_override = std::nullopt);

// A bin partition of an instance. `order` is the permuted item array as an
// index map: order[p] is the original index of the item at permuted position
// p. `boundaries` delimits bins: bin i holds permuted positions
// [boundaries[i], boundaries[i+1]). Both are 0-based internally; the JSON
// report layer is 1-based.
struct Packing {
  std::vector<std::size_t> order;
  std::vector<std::size_t> boundaries;  // front() == 0, back() == n

  std::size_t bin_count() const {
    return boundaries.empty() ? 0 : boundaries.size() - 1;
  }
  // Original-index sets per bin, in permuted order.
  std::vector<std::vector<std::size_t>> bins() const;
};

struct BinCheck {
  double s_sum = 0.0;
  double l_sum = 0.0;
  bool s_complete = false;
  bool l_complete = false;
  bool complete = false;
};

enum class CaseClass { all_complete, all_s_complete, all_l_complete, violation };

std::string_view to_string(CaseClass c);

struct VerificationReport {
  bool feasible = true;
  std::vector<BinCheck> per_bin;
  CaseClass case_class = CaseClass::all_complete;
  // Set only when reference_bins was supplied and rho < 1 (the bound is
  // vacuous at rho = 1).
  std::optional<bool> bound_ok;
};

// Throws on malformed boundaries or a non-permutation order; never inspects
// how the packing was produced.
void validate_packing_shape(std::size_t n, const Packing& packing);

// Independent check of any packing: per-bin sums, feasibility, completeness
// classification over all bins but the last, and an optional bound
// certificate q <= reference/(1 - rho) + 1.
VerificationReport verify(const Instance& instance, const Packing& packing,
                          std::optional<int> reference_bins = std::nullopt);

}  // namespace vpack
