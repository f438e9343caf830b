#ifndef RHT_DERIVATIONS_HPP
#define RHT_DERIVATIONS_HPP

#include "rht/hochschild.hpp"

namespace rht {

/* Complex of rho-derivations Der(^V, B; rho) over a homological degree
 * window: Der_n collects theta with theta(v) in B^{|v| - n}, and
 * delta theta = d_B theta - (-1)^n theta d. Stored as bases and matrices;
 * in DegreewiseComplex form the key of Der_n is -n. */
class DerivationComplex {
public:
    struct BasisElt {
        std::size_t gen = 0;     /* generator of ^V */
        std::size_t m_index = 0; /* basis index in B^{|v| - n} */
    };

    static DerivationComplex build(const AlgebraMorphism& rho, int lo, int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const AlgebraMorphism& rho() const { return rho_; }
    const DGAlgebra& source() const { return rho_.source; }
    const DGAlgebra& target() const { return rho_.target; }

    const std::vector<BasisElt>& basis(int n) const; /* stored for [lo-1, hi+1] */
    std::size_t dim(int n) const;
    la::SparseMatrix delta(int n) const; /* Der_n -> Der_{n-1} */

    /* the derivation behind a coordinate vector in Der_n */
    ExtendedDerivation realize(int n, const la::SparseVec& v) const;
    std::string basis_elt_str(int n, std::size_t i) const;

    DegreewiseComplex as_complex() const; /* key -n */

private:
    AlgebraMorphism rho_;
    int lo_ = 1, hi_ = 0;
    std::map<int, std::vector<BasisElt>> basis_;
    std::map<int, la::SparseMatrix> delta_;
};

/* Postcomposition with a degree-0 chain map of target algebras, as blocks
 * keyed like as_complex (key -n). */
ChainMapBlocks der_pushforward(const DerivationComplex& src, const DerivationComplex& tgt,
                               const std::function<Element(const Element&)>& value_map);

/* The splitting B = f(A) (+) Z induced by p = (1/c) f_! when the
 * model-level degree c is nonzero. */
struct Splitting {
    Scalar c;
    ShriekMap f_shriek;
    std::map<int, la::SparseMatrix> p_blocks; /* B^j -> A^j */
    std::map<int, la::SubspaceBasis> z_basis; /* ker p per degree */

    bool direct_sum = false;   /* B = f(A) (+) Z per degree */
    bool dz_in_z = false;      /* d Z <= Z */
    bool submodule = false;    /* f(A) Z <= Z */
    bool retraction = false;   /* p f = id_A, p is A-linear */
    std::string detail;

    bool all() const { return direct_sum && dz_in_z && submodule && retraction; }
    Element apply_p(const DGAlgebra& b, const DGAlgebra& a, const Element& e) const;
};

Splitting compute_splitting(const AlgebraMorphism& f, const DualityData& ddA,
                            const DualityData& ddB);

struct InjectionRecord {
    bool hypotheses_ok = false;
    std::string failure;
    Scalar c;
    bool retraction_identity = false; /* p_* f_* = id at chain level */
    std::vector<HMapDegree> per_degree;
    bool injective_all = false;
    bool iso_all = false;
};

/* H(f_*) injective on derivation homology, plus the chain-level retraction;
 * window in homological degrees n >= 1. */
InjectionRecord verify_injection_theorem(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                                         const DualityData& ddA, const DualityData& ddB, int lo,
                                         int hi);

struct Theorem2Record {
    bool hypotheses_ok = false;
    std::string failure;
    Scalar c;
    bool retraction_identity = false; /* induced(p) induced(f) = id on CH(A;A) */
    std::vector<HMapDegree> per_degree;
    bool injective_all = false;
};

/* HH(f) : HH(A;A) -> HH(A;B) injective per degree, with the chain-level
 * retraction through p; cochain degree window. */
Theorem2Record verify_theorem2(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                               const DualityData& ddA, const DualityData& ddB, int lo, int hi);

/* theta -> gamma with gamma(vbar) = theta(v), landing in the word-length-1
 * block; homological degree n maps to cochain degree 1 - n. Returns blocks
 * keyed by the derivation key -n with shift +1. */
ChainMapBlocks embed_derivations(const DerivationComplex& der, const HochschildComplex& hc);

struct MappingSpaceRow {
    int n = 0;
    std::size_t dim = 0;
    bool in_iso_range = false; /* the cited identification needs n >= 2 */
};

std::vector<MappingSpaceRow> mapping_space_report(const DerivationComplex& der, int lo, int hi);

}  // namespace rht

#endif
