#ifndef HDLINK_INVARIANTS_HPP
#define HDLINK_INVARIANTS_HPP

#include "framing.hpp"

namespace hdl {

// Result of one invariant evaluation: the value(s), every linking number
// appearing in the formula keyed by its symbol, and the redundant-expression
// checks that were verified before the value was accepted.
struct InvariantReport {
    std::string which; // "V", "W" or "H"
    std::vector<Rat> values;
    std::vector<std::pair<std::string, Rat>> intermediates;
    struct Check {
        std::string name;
        bool ok = true;
    };
    std::vector<Check> consistency;
    std::optional<Rat> smale_term;
    std::string smale_note;

    bool all_ok() const {
        for (const auto& c : consistency)
            if (!c.ok) return false;
        return true;
    }
    const Rat* find(const std::string& key) const {
        for (const auto& kv : intermediates)
            if (kv.first == key) return &kv.second;
        return nullptr;
    }
};

// V-invariant of a 3-component spherical link (ell = 2). Resolves the input
// to a generic projection, checks that all six expressions of E(f) agree
// (three domain linking numbers, three ambient ones), then evaluates
//   V = E/2 - [ lk_X(L+_XY, L-_XZ) + lk_X(L-_XY, L+_XZ) + cyclic ] / 2
// and asserts integrality. Throws ConsistencyFailure or NonInteger.
InvariantReport invariant_V(const SimplicialLink& link, uint64_t seed = 0);

// W-invariant of a 2-component spherical link:
//   W1 = lk_X(L_XX, L_XY)/2 - lk_Y(L+_YX, L-_YX)   (adjusted orientation)
// and symmetrically W2. When a component projects to an immersion (always
// the case when the locus is curve-only), also verifies
// E_X = lk_X(L_XX, L_XY)/2 = lk_R5(X cap X, Y) in the unadjusted orientation
// and the immersion-form recomposition of W. Asserts the lattice property:
// both values integers with even sum. Throws ConsistencyFailure,
// LatticeViolation.
InvariantReport invariant_W(const SimplicialLink& link, uint64_t seed = 0);

// Haefliger invariant of a long knot whose projection is a generic
// immersion: H = lk(L+, L-)/2 + E(f)/6 + smale_term/3, integrality asserted.
// The rotation term is an input; pass the value certified by the generator.
InvariantReport invariant_H(const SimplicialLink& knot, const Rat& smale_term,
                            uint64_t seed = 0);

// Swap over- and under-crossings of the projection on a subset A1 of the
// image double-point curves (indices into double_locus(knot).curves): a PL
// bump in the dropped coordinate raises the under sheet above the over sheet
// on a tubular neighborhood of the under-sheet preimage of A1. The input
// must already be generic; the neighborhood must clear every other locus
// curve (the link is refined a bounded number of times to achieve this).
// Throws NeighborhoodOverlap or SelectorInvalid.
SimplicialLink crossing_change(const SimplicialLink& knot,
                               const std::vector<int>& selector);

// Reorder the components of a link.
SimplicialLink permute_components(const SimplicialLink& link,
                                  const std::vector<int>& perm);

// Symmetry behaviour of V on a 3-component link: mirror acts trivially,
// reversing any one component negates the value, and (ell even) every
// component permutation preserves it.
struct SymmetryReport {
    Rat base;
    struct Entry {
        std::string name;
        Rat value;
        bool ok = true;
    };
    std::vector<Entry> entries;
    bool all_ok() const {
        for (const auto& e : entries)
            if (!e.ok) return false;
        return true;
    }
};
SymmetryReport symmetry_suite(const SimplicialLink& link, uint64_t seed = 0);

} // namespace hdl

#endif
