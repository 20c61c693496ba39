#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "derivkit/error.hpp"
#include "derivkit/multipoly.hpp"

namespace derivkit {

/// A K-derivation of K[vars], stored as the images D(v) of the variables.
/// Applying it uses D(f) = sum_v D(v) * df/dv.
class Derivation {
 public:
  Derivation(std::vector<std::string> vars, std::vector<MultiPoly> images)
      : vars_(std::move(vars)) {
    if (images.size() != vars_.size())
      throw std::invalid_argument("derivation needs one image per variable");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
    images_.reserve(images.size());
    for (auto& im : images) images_.push_back(im.over(vars_));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<MultiPoly>& images() const { return images_; }
  const MultiPoly& image(std::size_t i) const { return images_.at(i); }

  std::optional<std::size_t> var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
  }

  MultiPoly variable(const std::string& name) const { return MultiPoly::variable(vars_, name); }

  MultiPoly apply(const MultiPoly& f) const {
    MultiPoly g = f.over(vars_);
    MultiPoly out(vars_);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (images_[i].is_zero() || !g.uses_var(i)) continue;
      out += images_[i] * g.partial(i);
    }
    return out;
  }

  /// D^j(f); D^0 is the identity.
  MultiPoly apply_iterated(const MultiPoly& f, unsigned j) const {
    MultiPoly g = f.over(vars_);
    for (unsigned k = 0; k < j && !g.is_zero(); ++k) g = apply(g);
    return g;
  }

  Degree max_image_degree() const {
    Degree d;
    for (const auto& im : images_) d = max(d, im.total_degree());
    return d;
  }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.vars_ == b.vars_ && a.images_ == b.images_;
  }

 private:
  std::vector<std::string> vars_;
  std::vector<MultiPoly> images_;
};

}  // namespace derivkit
