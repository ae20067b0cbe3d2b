#ifndef TG_IDEAL_HPP
#define TG_IDEAL_HPP

#include <array>
#include <string>
#include <vector>

#include "tg/ring.hpp"

namespace tg {

// Ideal of Z[A^+-1], represented by a strong Groebner basis (over Z[A]) of
// its A-saturated contraction. Basis elements have a nonzero constant term
// and positive leading coefficient; the list is auto-reduced and sorted by
// ascending degree, then lexicographic coefficients, so equal ideals have
// identical bases.
class IdealZA {
  public:
    IdealZA() = default;  // zero ideal
    explicit IdealZA(const std::vector<LaurentPoly>& generators);

    bool isZero() const { return basis_.empty(); }
    bool isUnitIdeal() const;

    // Membership in the extended ideal of the Laurent ring.
    bool contains(const LaurentPoly& f) const;

    bool operator==(const IdealZA& o) const { return basis_ == o.basis_; }
    bool operator!=(const IdealZA& o) const { return !(*this == o); }

    // Basis elements as Laurent polynomials in A, canonical order.
    std::vector<LaurentPoly> basis() const;

    std::string str() const;  // "( g1 ; g2 ; ... )"

  private:
    // dense coefficient vectors, constant term first, no leading zeros
    std::vector<std::vector<Int>> basis_;
};

IdealZA parseIdeal(const std::string& text);

// Ideal of Z[zeta]/(zeta^4+1) as the Hermite normal form of its rank-<=4
// integer lattice in the basis 1, zeta, zeta^2, zeta^3. Equal ideals have
// identical matrices.
class CyclotomicIdeal {
  public:
    CyclotomicIdeal() = default;  // zero ideal
    explicit CyclotomicIdeal(const std::vector<Cyclotomic>& generators);

    bool isZero() const;
    bool isFullRing() const;
    bool contains(const Cyclotomic& v) const;

    // rows = HNF basis vectors (may be fewer than 4 when the rank is lower)
    const std::vector<std::array<Int, 4>>& rows() const { return rows_; }

    bool operator==(const CyclotomicIdeal& o) const { return rows_ == o.rows_; }

  private:
    std::vector<std::array<Int, 4>> rows_;
};

// Image of the ideal under A -> zeta (zeta a primitive eighth root of unity).
CyclotomicIdeal evalIdealAtZeta(const IdealZA& ideal);

}  // namespace tg

#endif
