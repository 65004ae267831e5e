// Bubble-sort trace that drives the sorting gadgets.
//
// psi_0 = kappa(phi_0) with phi_0 the (j,t) pairs in lexicographic order.
// Textbook bubble sort on psi (repeated left-to-right passes of adjacent
// swaps) yields psi_1..psi_k, one per transposition, and
// phi_l = kappa^{-1}(psi_l).
#pragma once

#include <vector>

#include "intsched/formula.hpp"

namespace intsched::sat {

struct BubbleTrace {
    std::size_t k = 0;
    std::vector<std::vector<Pair>> phi;   // k + 1 sequences of (j,t)
    std::vector<std::vector<Pair>> psi;   // k + 1 sequences of (i,s)
    std::vector<Pair> gt;                 // per l: pair whose index grows, called tau
    std::vector<Pair> lt;                 // per l: pair whose index shrinks
    std::vector<std::size_t> iota_star;   // per l: index of gt[l] in phi_l
    std::vector<std::vector<std::size_t>> position;  // [l][4j + t] = iota(l, j, t)

    std::size_t iota(std::size_t l, std::size_t j, std::size_t t) const {
        return position[l][4 * j + t];
    }
    const Pair& tau(std::size_t l) const { return gt[l]; }
};

BubbleTrace bubble_trace(const SatStarFormula& formula, const OccurrenceMap& map);

}  // namespace intsched::sat
