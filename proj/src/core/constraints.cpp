#include "core/constraints.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace sanov {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::eq: return "eq";
    case Relation::ge: return "ge";
    case Relation::le: return "le";
  }
  return "eq";
}

ConstraintSet::ConstraintSet(std::vector<LinearConstraint> constraints, double boundary_tolerance)
    : constraints_(std::move(constraints)), boundary_tolerance_(boundary_tolerance) {
  if (constraints_.empty()) {
    throw Error(ErrorKind::validation, "constraint set must not be empty");
  }
  if (!(boundary_tolerance_ >= 0.0) || !std::isfinite(boundary_tolerance_)) {
    throw Error(ErrorKind::validation, "boundary tolerance must be a nonnegative finite value");
  }
  k_ = static_cast<int64_t>(constraints_[0].f.size());
  if (k_ < 2) {
    throw Error(ErrorKind::validation, "constraints[0].f: needs at least 2 entries");
  }
  for (size_t i = 0; i < constraints_.size(); ++i) {
    const LinearConstraint& c = constraints_[i];
    if (static_cast<int64_t>(c.f.size()) != k_) {
      throw Error(ErrorKind::validation,
                  "constraints[" + std::to_string(i) + "].f: length " +
                      std::to_string(c.f.size()) + " != alphabet size " + std::to_string(k_));
    }
    for (size_t u = 0; u < c.f.size(); ++u) {
      if (!std::isfinite(c.f[u])) {
        throw Error(ErrorKind::validation, "constraints[" + std::to_string(i) + "].f[" +
                                               std::to_string(u) + "] is not finite");
      }
    }
    if (!std::isfinite(c.alpha)) {
      throw Error(ErrorKind::validation,
                  "constraints[" + std::to_string(i) + "].alpha is not finite");
    }
  }
}

bool ConstraintSet::is_linear_family() const {
  for (const LinearConstraint& c : constraints_) {
    if (c.relation != Relation::eq) return false;
  }
  return true;
}

bool ConstraintSet::contains(const Dist& q) const {
  if (q.size() != k_) {
    throw Error(ErrorKind::validation, "contains: alphabet sizes differ (" +
                                           std::to_string(q.size()) + " vs " +
                                           std::to_string(k_) + ")");
  }
  for (const LinearConstraint& c : constraints_) {
    KahanSum dot;
    for (int64_t u = 0; u < k_; ++u) dot.add(c.f[static_cast<size_t>(u)] * q[u]);
    double v = dot.value();
    switch (c.relation) {
      case Relation::eq:
        if (std::abs(v - c.alpha) > boundary_tolerance_) return false;
        break;
      case Relation::ge:
        if (v < c.alpha - boundary_tolerance_) return false;
        break;
      case Relation::le:
        if (v > c.alpha + boundary_tolerance_) return false;
        break;
    }
  }
  return true;
}

bool ConstraintSet::contains_type(const TypeVector& t) const {
  return contains(t.as_dist());
}

bool is_subset_witness(const ConstraintSet& b, const ConstraintSet& a,
                       std::span<const Dist> samples) {
  if (b.alphabet_size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "is_subset_witness: alphabet sizes differ");
  }
  for (const Dist& q : samples) {
    if (b.contains(q) && !a.contains(q)) return false;
  }
  return true;
}

}  // namespace sanov
