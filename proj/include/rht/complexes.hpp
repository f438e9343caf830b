#ifndef RHT_COMPLEXES_HPP
#define RHT_COMPLEXES_HPP

#include <map>

#include "rht/linalg.hpp"

namespace rht {

/* A cochain complex held degreewise as sparse matrices d_k : C^k -> C^{k+1}.
 * Degrees outside `dims` are zero. */
struct DegreewiseComplex {
    std::map<int, std::size_t> dims;
    std::map<int, la::SparseMatrix> d;

    std::size_t dim(int k) const;
    la::SparseMatrix diff(int k) const; /* zero matrix when absent */

    struct HomologyAt {
        la::SubspaceBasis cycles;
        la::SubspaceBasis boundaries;
        std::vector<la::SparseVec> reps;
        std::size_t betti = 0;
    };
    HomologyAt homology(int k) const;

    /* d_{k+1} d_k = 0 over all stored degrees */
    void check_composes_to_zero() const;
};

/* A chain map given by blocks T_k : src^k -> tgt^{k+shift}. */
struct ChainMapBlocks {
    int shift = 0;
    std::map<int, la::SparseMatrix> blocks;

    la::SparseMatrix block(int k, std::size_t rows, std::size_t cols) const;
};

/* Verify d_tgt T = sign T d_src on every degree where both sides exist. */
bool chain_map_commutes(const DegreewiseComplex& src, const DegreewiseComplex& tgt,
                        const ChainMapBlocks& t, int sign, int lo, int hi);

struct HMapDegree {
    int degree = 0;
    std::size_t source_betti = 0;
    std::size_t target_betti = 0;
    std::size_t rank = 0;
    bool injective = false;
    bool bijective = false;
};

/* The induced map on cohomology, degree by degree over [lo, hi]. */
std::vector<HMapDegree> induced_on_cohomology(const DegreewiseComplex& src,
                                              const DegreewiseComplex& tgt,
                                              const ChainMapBlocks& t, int lo, int hi);

}  // namespace rht

#endif
