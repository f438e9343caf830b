#ifndef RHT_HOCHSCHILD_HPP
#define RHT_HOCHSCHILD_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/complexes.hpp"
#include "rht/loop.hpp"
#include "rht/poincare.hpp"

namespace rht {

/* A bounded graded module over ^V, given through a morphism rho into a
 * finite-dimensional carrier algebra, or the dual of such a module.
 * Everything is stored as matrices: per-degree dimensions, differential,
 * and one action matrix per ^V generator. */
class CoefficientModule {
public:
    static CoefficientModule from_algebra(const DGAlgebra& carrier, const AlgebraMorphism& rho,
                                          std::string label);

    /* Graded dual placed in upper degrees [-hi, -lo], with
     *   d(phi) = -(-1)^{|phi|} phi d   and   (a phi)(x) = (-1)^{|a||phi|} phi(a x).
     * The double dual matches the original through iota(m) with
     * iota(m)(phi) = (-1)^{|m||phi|} phi(m), i.e. diff'' = -diff and
     * act''_g = (-1)^{|g|} act_g in the aligned bases. */
    CoefficientModule dualize() const;

    const std::string& label() const { return label_; }
    bool dual() const { return dual_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const DGAlgebra& base() const { return base_; }

    std::size_t dim(int j) const;
    std::string basis_label(int j, std::size_t i) const;
    la::SparseMatrix diff(int j) const; /* M^j -> M^{j+1} */
    /* action of rho(mono) for a base monomial: M^j -> M^{j + deg mono} */
    la::SparseMatrix action(const ExpVec& base_mono, int j) const;

    bool is_algebra() const { return carrier_.has_value(); }
    const DGAlgebra& carrier() const { return *carrier_; }
    const AlgebraMorphism& rho() const { return *rho_; }
    /* the carrier element behind basis index i of degree j (algebra case) */
    Element carrier_element(int j, std::size_t i) const;

    bool same_shape(const CoefficientModule& other) const;

private:
    la::SparseMatrix gen_action(std::size_t gen, int j) const;

    std::string label_;
    bool dual_ = false;
    int lo_ = 0, hi_ = -1;
    DGAlgebra base_;
    std::optional<DGAlgebra> carrier_;
    std::optional<AlgebraMorphism> rho_;
    std::vector<std::size_t> dims_;                        /* [j - lo] */
    std::vector<std::vector<std::string>> labels_;         /* [j - lo] */
    std::vector<la::SparseMatrix> diff_;                   /* [j - lo]: j -> j+1 */
    std::vector<std::vector<la::SparseMatrix>> gen_act_;   /* [gen][j - lo] */
};

/* A degree-t map of ^V-modules given by per-degree blocks;
 * linearity carries the Koszul sign th(a m) = (-1)^{t|a|} a th(m) and the
 * chain identity reads d th = (-1)^t th d. */
struct CoefficientMap {
    std::string label;
    int degree = 0;
    CoefficientModule source;
    CoefficientModule target;
    std::map<int, la::SparseMatrix> blocks;

    la::SparseMatrix block(int j) const;
};

/* degree-0 map from an algebra morphism between the two carriers */
CoefficientMap coefficient_map_from_morphism(const CoefficientModule& src,
                                             const CoefficientModule& tgt,
                                             const AlgebraMorphism& theta, std::string label);
CoefficientMap coefficient_map_from_shriek(const CoefficientModule& src,
                                           const CoefficientModule& tgt, const ShriekMap& fs,
                                           std::string label);
/* pi : M -> M^# of degree -formal_dim, blocks are the pairing transposes */
CoefficientMap pi_map(const CoefficientModule& src, const CoefficientModule& dual,
                      const DualityData& dd);
CoefficientMap pi_inverse_map(const CoefficientModule& dual, const CoefficientModule& src,
                              const DualityData& dd);
CoefficientMap compose(const CoefficientMap& outer, const CoefficientMap& inner);
/* multiplication by a cocycle of the carrier, m -> alpha m */
CoefficientMap multiplication_map(const CoefficientModule& mod, const Element& alpha);

/* throws when the blocks are not ^V-linear or fail the chain identity */
void validate_coefficient_map(const CoefficientMap& t);

/* The Hochschild cochain complex Hom_{^V}(^V (x) ^Vbar, M) over a cochain
 * degree window: gamma of degree k sends a bar word w to M^{|w|+k}, and
 * (D gamma)(w) = d(gamma w) - (-1)^k gamma(D w), with
 * gamma(a w) = (-1)^{|a| k} rho(a) gamma(w). */
class HochschildComplex {
public:
    struct BasisElt {
        ExpVec word;
        int word_deg = 0;
        int word_len = 0;
        std::size_t m_index = 0;
    };

    static HochschildComplex build(const LoopModel& lm, const CoefficientModule& coeff, int lo,
                                   int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const LoopModel& loop() const { return lm_; }
    const CoefficientModule& coeff() const { return coeff_; }

    const std::vector<BasisElt>& basis(int k) const; /* stored for [lo-1, hi+1] */
    std::size_t dim(int k) const;
    la::SparseMatrix diff(int k) const;
    std::optional<std::size_t> index_of(int k, const ExpVec& word, std::size_t m_index) const;

    DegreewiseComplex as_complex() const;
    std::string basis_elt_str(int k, std::size_t i) const;
    std::string cochain_str(int k, const la::SparseVec& v) const;

private:
    LoopModel lm_;
    CoefficientModule coeff_;
    int lo_ = 0, hi_ = -1;
    std::map<int, std::vector<BasisElt>> basis_;
    std::map<int, std::map<std::pair<ExpVec, std::size_t>, std::size_t>> index_;
    std::map<int, la::SparseMatrix> d_;
};

struct HHDegree {
    int degree = 0;
    std::size_t betti = 0;
    std::map<int, std::size_t> hodge_betti; /* bar word length -> betti */
    std::vector<std::string> representatives;
};

struct HHReport {
    std::vector<HHDegree> by_degree;
    std::size_t betti(int degree) const;
};

/* Betti numbers with representative cochains and the word-length blocks;
 * checks that the word-length pieces sum to the total. */
HHReport hh_cohomology(const HochschildComplex& hc);

/* The differential restricted to one bar word length; throws when the
 * assembled matrices are not block diagonal. */
std::map<int, DegreewiseComplex> hodge_decompose(const HochschildComplex& hc);

/* Postcomposition with a coefficient map, as matrices per degree; verifies
 * theta and the chain identity of the produced blocks. */
ChainMapBlocks induced_map(const HochschildComplex& src, const HochschildComplex& tgt,
                           const CoefficientMap& theta);

ChainMapBlocks multiply_by_class(const HochschildComplex& src, const HochschildComplex& tgt,
                                 const Element& alpha);

struct Theorem1Record {
    bool hypotheses_ok = false;
    std::string failure;
    Element x;      /* cocycle preimage of the small volume */
    Element x_star; /* its Poincare dual */
    Element alpha;  /* f_!(1) */
    bool alpha_equals_x_star = false;
    bool pass = false;
    std::size_t identities_checked = 0;
    std::vector<std::pair<int, std::size_t>> per_degree; /* degree -> basis count */
    std::string first_mismatch;
};

/* Chain-level check that CH(f_!) CH(f) equals multiplication by x^* on
 * every cochain basis element of every degree in [lo, hi]. */
Theorem1Record verify_theorem1(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                               const DualityData& ddA, const DualityData& ddB, int lo, int hi);

/* Betti numbers of the hard-coded small complex
 * (^x/(x^{N+1}) (x) ^(z1, z2N), D z1 = (N+1) x^N z2N), N = n+k, with z1 in
 * upper degree -1 and z2N in upper degree -2N. Independent of the Hom
 * complex pipeline. */
std::map<int, std::size_t> cp_small_complex_oracle(int n, int k, int lo, int hi);

struct CorollaryRecord {
    bool hypotheses_ok = false;
    std::string failure;
    Scalar c;
    std::vector<HMapDegree> per_degree;
    bool injective_all = false;
};

/* Dual-coefficient composite (pi_A)_*^{-1}, f_*, (pi_B)_* on HH and its
 * per-degree injectivity. */
CorollaryRecord corollary_shriek_on_homology(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                                             const DualityData& ddA, const DualityData& ddB,
                                             int lo, int hi);

/* Cup product along the diagonal with Delta(vbar) = vbar (x) 1 + 1 (x) vbar;
 * Koszul signs come from moving gamma2 past the left tensor factor.
 * Coefficients must be the algebra itself. */
la::SparseVec cup_product(const HochschildComplex& hc, int k1, const la::SparseVec& g1, int k2,
                          const la::SparseVec& g2);

/* the word-length-0 cochain 1 -> 1 in degree 0 */
la::SparseVec unit_cochain(const HochschildComplex& hc);

}  // namespace rht

#endif
