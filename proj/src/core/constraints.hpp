#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/dist.hpp"
#include "core/typespace.hpp"

namespace sanov {

enum class Relation { eq, ge, le };

const char* relation_name(Relation r);

// One linear relation on distributions: <f, q> {=, >=, <=} alpha,
// where f assigns a real value to each symbol.
struct LinearConstraint {
  std::vector<double> f;
  Relation relation = Relation::eq;
  double alpha = 0.0;
};

// Intersection of linear relations over a common alphabet: a closed convex
// subset of the simplex. Closed-set convention: points within
// boundary_tolerance of a constraint boundary count as members.
class ConstraintSet {
 public:
  explicit ConstraintSet(std::vector<LinearConstraint> constraints,
                         double boundary_tolerance = 1e-12);

  int64_t alphabet_size() const { return k_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  double boundary_tolerance() const { return boundary_tolerance_; }

  // True iff every relation is an equality (a linear family).
  bool is_linear_family() const;

  bool contains(const Dist& q) const;
  bool contains_type(const TypeVector& t) const;

 private:
  std::vector<LinearConstraint> constraints_;
  int64_t k_;
  double boundary_tolerance_;
};

// Sanity check of an asserted subset relation B ⊆ A: returns false when some
// sample lies in B but not in A. True means "not refuted by these samples".
bool is_subset_witness(const ConstraintSet& b, const ConstraintSet& a,
                       std::span<const Dist> samples);

}  // namespace sanov
