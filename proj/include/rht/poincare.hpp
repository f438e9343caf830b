#ifndef RHT_POINCARE_HPP
#define RHT_POINCARE_HPP

#include <map>
#include <string>
#include <vector>

#include "rht/cdga.hpp"

namespace rht {

/* Orientation functional on the top degree of a finite-dimensional cdga. */
struct PDStructure {
    DGAlgebra algebra;
    int formal_dim = 0;
    /* values of eps on basis_of_degree(formal_dim), in basis order */
    std::vector<Scalar> orientation;
};

/* eps given by one designated volume monomial; the remaining top basis
 * monomials evaluate to zero. */
PDStructure make_pd(const DGAlgebra& algebra, int formal_dim, const ExpVec& volume,
                    const Scalar& value);
/* default orientation: the last top-degree basis monomial gets eps = 1 */
PDStructure make_pd(const DGAlgebra& algebra);

struct PDValidation {
    bool ok = false;
    std::string message; /* first failure */
    int formal_dim = 0;
    std::vector<std::pair<int, std::size_t>> pairing_ranks; /* degree -> rank */
};

/* Both duality axioms: eps vanishes on exact top classes, and every
 * complementary-degree multiplication pairing is square and nondegenerate. */
PDValidation check_pd(const PDStructure& pd);

/* Dual bases and the module isomorphism pi: A -> A^# with pi(a)(x) = eps(ax).
 * Functionals on A^j are stored as coordinates in the dual monomial basis. */
class DualityData {
public:
    explicit DualityData(PDStructure pd); /* throws HypothesisError when check_pd fails */

    const PDStructure& pd() const { return pd_; }
    const DGAlgebra& algebra() const { return pd_.algebra; }
    int formal_dim() const { return pd_.formal_dim; }

    Scalar eps(const Element& top_element) const;
    /* the top class omega with eps(omega) = 1 */
    Element fundamental_class() const;

    /* pairing G_k[i][j] = eps(a_i b_j), a_i in A^k, b_j in A^{n-k} */
    la::SparseMatrix pairing(int k) const;
    /* matrix of pi on A^k, valued in coordinates on the dual basis of A^{n-k} */
    la::SparseMatrix pi_matrix(int k) const;
    /* elements a_j^* of A^{n-k} with eps(a_i a_j^*) = delta_ij */
    std::vector<Element> dual_basis(int k) const;
    /* pi^{-1} of a functional on A^{n-k}, as an element of A^k */
    Element pi_inverse(int k, const la::SparseVec& functional) const;

private:
    PDStructure pd_;
};

/* The wrong-way map f_! : B -> A of degree m-n, defined per degree by the
 * commuting square pi_A f_! = f^# pi_B. */
struct ShriekMap {
    int shift = 0; /* m - n */
    DGAlgebra domain;   /* B */
    DGAlgebra codomain; /* A */
    std::map<int, la::SparseMatrix> blocks; /* degree j: B^j -> A^{j+shift} */

    Element apply(const Element& b) const;
};

ShriekMap shriek(const AlgebraMorphism& f, const DualityData& ddA, const DualityData& ddB);

/* The unique c with f_!(1_B) = c 1_A; c = 0 signals a model-level
 * degree-zero map (normal return, used to gate the splitting). */
Scalar degree_scalar(const AlgebraMorphism& f, const DualityData& ddA, const DualityData& ddB);

struct PreimageResult {
    enum class Status { Ok, NoPreimage, NoCocyclePreimage } status = Status::NoPreimage;
    Element x;
};

/* Solve f(x) = omega_B inside ker d first; the two failure modes are
 * reported separately. */
PreimageResult preimage_cocycle(const AlgebraMorphism& f, const Element& omega_B);

/* x^* = pi^{-1}(x^#), the Poincare dual of a homogeneous cocycle x taken
 * against the monomial basis of its degree. */
Element poincare_dual_class(const DualityData& dd, const Element& x);

/* true when rank f equals dim B^j for every j in [0, formal_dim B] */
bool morphism_surjective(const AlgebraMorphism& f, int top);

struct ShriekChecks {
    bool square_commutes = false;   /* pi_A f_! = f^# pi_B, per degree */
    bool module_linear = false;     /* f_!(f(a) b) = a f_!(b) on bases */
    bool composite_is_mult = false; /* f_! f = multiplication by f_!(1) */
    bool chain_map = false;         /* d f_! = (-1)^{m-n} f_! d */
    std::string detail;             /* first failure */

    bool all() const { return square_commutes && module_linear && composite_is_mult && chain_map; }
};

ShriekChecks verify_shriek(const AlgebraMorphism& f, const DualityData& ddA,
                           const DualityData& ddB, const ShriekMap& fs);

}  // namespace rht

#endif
