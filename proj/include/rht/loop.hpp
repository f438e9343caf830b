#ifndef RHT_LOOP_HPP
#define RHT_LOOP_HPP

#include "rht/cdga.hpp"

namespace rht {

/* Free-loop-space model (^V (x) ^Vbar, D) of a simply connected Sullivan
 * algebra (^V, d): |vbar| = |v| - 1, D v = dv and D vbar = -S dv, where S
 * is the degree -1 derivation with Sv = vbar, S vbar = 0. */
struct LoopModel {
    DGAlgebra base;  /* ^V */
    DGAlgebra total; /* ^V (x) ^Vbar with the differential D */
    std::size_t base_gens = 0;

    std::size_t bar_index(std::size_t i) const { return base_gens + i; }

    /* monomials in the bar generators only, of a fixed degree */
    std::vector<ExpVec> words_of_degree(int d) const;

    int word_length(const ExpVec& total_mono) const;
    int word_degree(const ExpVec& word) const { return total.monomial_degree(word); }

    /* split a total monomial into its ^V part (over base generators)
     * and its bar part (over total generators, V part zeroed) */
    std::pair<ExpVec, ExpVec> split(const ExpVec& total_mono) const;

    /* embed a base element into the total algebra */
    Element embed(const Element& base_element) const;
};

LoopModel build_loop_model(const DGAlgebra& base);

/* H^*(^V (x) ^Vbar, D) over a window */
CohomologyReport loop_cohomology(const LoopModel& lm, int lo, int hi);

}  // namespace rht

#endif
