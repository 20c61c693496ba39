#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/families.hpp"
#include "derivkit/linalg.hpp"

namespace derivkit {

struct Member {
  MultiPoly preimage;
  /// Dimension of the kernel of D on polynomials of degree <= bound.
  std::size_t kernel_dim = 0;
};

struct NotFoundUpTo {
  unsigned bound = 0;
};

/// A global non-membership claim backed by a theorem tag. `claim` names
/// the proven statement; `m` records the exponent used for claims that
/// hold for all sufficiently large exponents.
struct CertifiedNonMember {
  std::string theorem;
  std::string claim;
  MultiPoly target;
  std::optional<unsigned> m;
  unsigned sanity_bound = 0;
};

struct NoCertificate {};

using ImageResult = std::variant<Member, NotFoundUpTo, CertifiedNonMember>;
using CertificateResult = std::variant<CertifiedNonMember, NoCertificate>;

/// All exponent vectors of total degree <= bound in descending graded-lex order.
inline std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned bound) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) { return GrlexLess{}(b, a); });
  return out;
}

/// Looks for f with deg f <= bound and D(f) = target by exact elimination
/// over the coefficients of f. Higher monomials are preferred as pivots and
/// free coefficients are set to zero. Never claims global non-membership.
inline ImageResult image_membership(const Derivation& d, const MultiPoly& target, unsigned bound) {
  const MultiPoly t = target.over(d.vars());
  const auto monos = monomials_up_to(d.vars().size(), bound);

  std::map<Exponents, SparseEchelon::Row, GrlexLess> rows;
  for (std::size_t col = 0; col < monos.size(); ++col) {
    MultiPoly img = d.apply(MultiPoly::monomial(d.vars(), monos[col], 1));
    for (const auto& [e, c] : img.terms()) rows[e].emplace_back(col, c);
  }
  for (const auto& [e, c] : t.terms()) rows.try_emplace(e);

  SparseEchelon ech(monos.size());
  for (auto& [e, row] : rows) {
    auto it = t.terms().find(e);
    if (!ech.add(std::move(row), it == t.terms().end() ? Rat(0) : it->second)) return NotFoundUpTo{bound};
  }
  auto x = ech.particular();
  MultiPoly pre(d.vars());
  for (std::size_t col = 0; col < monos.size(); ++col)
    if (sgn(x[col]) != 0) pre.add_term(monos[col], x[col]);
  if (!(d.apply(pre) == t)) throw std::logic_error("image preimage failed verification");
  return Member{pre, ech.kernel_dim()};
}

inline constexpr unsigned kDefaultSanityBound = 8;
inline constexpr unsigned kDefaultMMin = 5;

namespace detail {

inline CertifiedNonMember checked_certificate(const Derivation& d, CertifiedNonMember c) {
  auto r = image_membership(d, c.target, c.sanity_bound);
  if (std::holds_alternative<Member>(r))
    throw std::logic_error("certified non-member " + to_string(c.target) + " has a preimage");
  return c;
}

inline bool is_xy_variable(const MultiPoly& t, const std::vector<std::string>& vars, std::size_t i) {
  return t.over(vars) == MultiPoly::variable(vars, i);
}

/// Index of the first component with gamma != 0 and k > 1.
template <class Comps>
std::optional<std::size_t> steep_component(const Comps& comps) {
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!is_zero(comps[i].gamma) && comps[i].k > 1) return i;
  return std::nullopt;
}

}  // namespace detail

/// Matches (family, target) against the proven global non-membership
/// claims. Each issued certificate is cross-checked by image_membership at
/// `sanity_bound`.
inline CertificateResult certified_nonmembership(const Family& fam, const MultiPoly& target,
                                                 unsigned m_min = kDefaultMMin,
                                                 unsigned sanity_bound = kDefaultSanityBound) {
  if (const auto* f = std::get_if<FamilyB>(&fam)) {
    const Derivation d = to_derivation(*f);
    if (sgn(f->a0) != 0 && f->a1.deg() >= 1 && detail::is_xy_variable(target, d.vars(), 0))
      return detail::checked_certificate(
          d, {"P2.2", "x-not-in-image", MultiPoly::variable(d.vars(), 0), std::nullopt, sanity_bound});
    return NoCertificate{};
  }
  if (const auto* f = std::get_if<FamilyDiagX>(&fam)) {
    const Derivation d = to_derivation(*f);
    std::optional<std::size_t> idx = detail::steep_component(f->comps);
    std::string claim = "steep-variable-not-in-image";
    if (!idx) {
      for (std::size_t i = 0; i < f->comps.size() && !idx; ++i)
        if (f->comps[i].gamma.deg() >= 1) idx = i;
      claim = "variable-with-nonconstant-rate-not-in-image";
    }
    if (idx && detail::is_xy_variable(target, d.vars(), *idx + 1))
      return detail::checked_certificate(
          d, {"T5.1", claim, MultiPoly::variable(d.vars(), *idx + 1), std::nullopt, sanity_bound});
    return NoCertificate{};
  }
  if (const auto* f = std::get_if<FamilyDiag>(&fam)) {
    const Derivation d = to_derivation(*f);
    auto i0 = detail::steep_component(f->comps);
    if (!i0) return NoCertificate{};
    const bool has_zero =
        std::any_of(f->comps.begin(), f->comps.end(), [](const DiagComponent& c) { return c.k == 0; });
    if (has_zero) {
      if (detail::is_xy_variable(target, d.vars(), *i0))
        return detail::checked_certificate(
            d, {"T5.3", "steep-variable-not-in-image", MultiPoly::variable(d.vars(), *i0), std::nullopt,
                sanity_bound});
      return NoCertificate{};
    }
    // y_i0 * y_p^m with p != i0 and m >= m_min.
    const MultiPoly t = target.over(d.vars());
    if (t.size() != 1 || t.terms().begin()->second != 1) return NoCertificate{};
    const Exponents& e = t.terms().begin()->first;
    if (e[*i0] != 1) return NoCertificate{};
    for (std::size_t p = 0; p < e.size(); ++p) {
      if (p == *i0 || e[p] < m_min) continue;
      bool only = true;
      for (std::size_t q = 0; q < e.size(); ++q)
        if (q != p && q != *i0 && e[q] != 0) only = false;
      if (only)
        return detail::checked_certificate(d, {"T5.3", "steep-variable-times-power-not-in-image", t, e[p],
                                               sanity_bound});
    }
    return NoCertificate{};
  }
  return NoCertificate{};
}

struct MzVerdict {
  bool mz = false;
  std::string theorem;
  std::optional<CertifiedNonMember> nonmember;
  std::optional<bool> locally_finite;
  /// Explicit preimage of 1 when 1 is in the image and it is known.
  std::optional<MultiPoly> one_preimage;
  std::string note;
};

/// a0^-1 * (y - A(x)) with A' = a1, A(0) = 0; D maps it to 1.
inline MultiPoly one_in_image(const FamilyB& f) {
  if (sgn(f.a0) == 0) throw std::invalid_argument("1 is not in the image when a0 = 0");
  const auto& vars = detail::xy_vars();
  MultiPoly y = MultiPoly::variable(vars, 1);
  return (y - MultiPoly::from_uni(antiderivative(f.a1), vars, 0)) * Rat(1 / f.a0);
}

namespace detail {

/// The canonical non-member for a family known not to be MZ.
inline CertifiedNonMember nonmember_witness(const Family& fam, unsigned m_min, unsigned sanity_bound) {
  MultiPoly target;
  if (std::holds_alternative<FamilyB>(fam)) {
    target = MultiPoly::variable(xy_vars(), 0);
  } else if (const auto* f = std::get_if<FamilyDiagX>(&fam)) {
    auto vars = diagx_vars(*f);
    auto idx = steep_component(f->comps);
    if (!idx)
      for (std::size_t i = 0; i < f->comps.size() && !idx; ++i)
        if (f->comps[i].gamma.deg() >= 1) idx = i;
    target = MultiPoly::variable(vars, *idx + 1);
  } else if (const auto* f = std::get_if<FamilyDiag>(&fam)) {
    auto vars = numbered_y(f->comps.size());
    auto i0 = *steep_component(f->comps);
    bool has_zero = false;
    for (const auto& c : f->comps) has_zero |= c.k == 0;
    if (has_zero) {
      target = MultiPoly::variable(vars, i0);
    } else {
      Exponents e(vars.size(), 0);
      e[i0] = 1;
      e[i0 == 0 ? 1 : 0] = m_min;
      target = MultiPoly::monomial(vars, e, 1);
    }
  }
  auto c = certified_nonmembership(fam, target, m_min, sanity_bound);
  return std::get<CertifiedNonMember>(c);
}

}  // namespace detail

/// Mathieu-Zhao status of the image for families B, DiagX and Diag.
/// Other families throw UnsupportedFamily.
inline MzVerdict decide_mz(const Family& fam, unsigned m_min = kDefaultMMin,
                           unsigned sanity_bound = kDefaultSanityBound) {
  MzVerdict v;
  if (const auto* f = std::get_if<FamilyB>(&fam)) {
    v.theorem = "C2.3";
    const bool simple = sgn(f->a0) != 0 && f->a1.deg() >= 1;
    v.mz = !simple;
    v.locally_finite = locally_finite_closed_form(fam);
    if (sgn(f->a0) != 0) v.one_preimage = one_in_image(*f);
    if (simple)
      v.nonmember = detail::nonmember_witness(fam, m_min, sanity_bound);
    else if (sgn(f->a0) == 0)
      v.note = "image is the ideal (y)";
    else
      v.note = "locally finite with 1 in the image";
    return v;
  }
  if (const auto* f = std::get_if<FamilyDiagX>(&fam)) {
    const bool all_nonzero = std::all_of(f->comps.begin(), f->comps.end(),
                                         [](const DiagXComponent& c) { return !c.gamma.is_zero(); });
    v.theorem = all_nonzero ? "T5.1" : "C5.2";
    v.locally_finite = locally_finite_closed_form(fam);
    v.mz = *v.locally_finite;
    v.one_preimage = MultiPoly::variable(diagx_vars(*f), 0);
    if (!v.mz) v.nonmember = detail::nonmember_witness(fam, m_min, sanity_bound);
    return v;
  }
  if (const auto* f = std::get_if<FamilyDiag>(&fam)) {
    if (f->comps.size() < 2) throw UnsupportedFamily("diagonal family needs n >= 2");
    for (const auto& c : f->comps)
      if (sgn(c.gamma) == 0) throw UnsupportedFamily("diagonal family needs nonzero rates");
    v.theorem = "T5.3";
    v.locally_finite = locally_finite_closed_form(fam);
    v.mz = std::all_of(f->comps.begin(), f->comps.end(), [](const DiagComponent& c) { return c.k <= 1; });
    if (!v.mz) v.nonmember = detail::nonmember_witness(fam, m_min, sanity_bound);
    return v;
  }
  throw UnsupportedFamily("no Mathieu-Zhao decision for family " + family_name(fam));
}

}  // namespace derivkit
