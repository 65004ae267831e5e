#include "intsched/bubble.hpp"

namespace intsched::sat {

namespace {

std::vector<std::size_t> positions(const std::vector<Pair>& phi) {
    std::vector<std::size_t> pos(phi.size());
    for (std::size_t index = 0; index < phi.size(); ++index) {
        pos[4 * phi[index].first + phi[index].second] = index;
    }
    return pos;
}

}  // namespace

BubbleTrace bubble_trace(const SatStarFormula& formula, const OccurrenceMap& map) {
    const std::size_t n = formula.variable_count;
    BubbleTrace trace;
    std::vector<Pair> phi;
    std::vector<Pair> psi;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            phi.emplace_back(j, t);
            psi.push_back(map(j, t));
        }
    }
    trace.phi.push_back(phi);
    trace.psi.push_back(psi);
    trace.position.push_back(positions(phi));

    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t p = 0; p + 1 < psi.size(); ++p) {
            if (psi[p + 1] < psi[p]) {
                trace.gt.push_back(phi[p]);
                trace.lt.push_back(phi[p + 1]);
                trace.iota_star.push_back(p);
                std::swap(psi[p], psi[p + 1]);
                std::swap(phi[p], phi[p + 1]);
                trace.phi.push_back(phi);
                trace.psi.push_back(psi);
                trace.position.push_back(positions(phi));
                swapped = true;
            }
        }
    }
    trace.k = trace.gt.size();
    return trace;
}

}  // namespace intsched::sat
