#ifndef RHT_CDGA_HPP
#define RHT_CDGA_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rht/linalg.hpp"
#include "rht/scalar.hpp"

namespace rht {

struct Generator {
    std::string name;
    int degree = 0;

    bool odd() const { return degree % 2 != 0; }
};

/* Exponent vector over the declared generators; odd generators carry
 * exponent at most 1. Declaration order fixes the normal form. */
using ExpVec = std::vector<int>;

/* Sparse Q-linear combination of normal-form monomials. */
struct Element {
    std::map<ExpVec, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    bool operator==(const Element& rhs) const { return terms == rhs.terms; }

    void add_term(const ExpVec& mono, const Scalar& c);
};

enum class AlgebraKind { SullivanFree, FiniteDimensional };

/* Graded-commutative differential algebra over Q, presented by generators,
 * an optional relation list and a differential given on generators.
 * Immutable once finalized; all operations are pure. */
class DGAlgebra {
public:
    DGAlgebra() = default;
    DGAlgebra(AlgebraKind kind, std::vector<Generator> gens);

    /* setup, before finalize() */
    void add_relation(const Element& rel);
    void set_differential(const std::string& gen, const Element& value);
    void finalize();

    AlgebraKind kind() const { return kind_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t gen_count() const { return gens_.size(); }
    int generator_index(std::string_view name) const; /* -1 when absent */
    const std::vector<Element>& relations() const { return relations_; }
    const Element& d_of_generator(std::size_t i) const { return diff_[i]; }

    bool finite_dimensional() const;
    int top_degree() const; /* throws HypothesisError when not finite dimensional */

    int monomial_degree(const ExpVec& m) const;
    bool is_homogeneous(const Element& e) const;
    /* degree of a homogeneous element; throws on mixed degrees (0 for zero) */
    int degree_of(const Element& e) const;

    Element one() const;
    Element zero() const { return Element{}; }
    Element generator_element(std::size_t i) const;
    Element monomial_element(const ExpVec& m) const; /* normal form of m */

    /* Normal-form product with Koszul signs and relation reduction. */
    Element mul(const Element& a, const Element& b) const;
    Element d(const Element& e) const;

    /* Complete normal-form monomial basis of one degree (cached). */
    std::vector<ExpVec> basis_of_degree(int n) const;

    /* True when every generator degree is >= 2 (so H^0 = Q, H^1 = 0). */
    bool simply_connected() const;

    /* structural sanity used by tests: d(d(gen)) == 0 for every generator */
    void check_differential_squares_to_zero() const;

    bool same_presentation(const DGAlgebra& other) const;

private:
    Element reduce_monomial(const ExpVec& m, const Scalar& c) const;
    void enumerate(int n, std::size_t i, ExpVec& cur, std::vector<ExpVec>& out) const;

    AlgebraKind kind_ = AlgebraKind::SullivanFree;
    std::vector<Generator> gens_;
    std::vector<Element> relations_;
    std::vector<Element> diff_;
    /* per generator: 0 = unbounded, k>0 = g^k reduces to 0 */
    std::vector<int> power_cap_;
    /* non-power relations as lead monomial -> substituted tail */
    std::vector<std::pair<ExpVec, Element>> general_rels_;
    bool finalized_ = false;

    /* per-degree basis cache, guarded for concurrent readers; created at
     * finalize() and shared by copies of the then-immutable algebra */
    struct BasisCache {
        std::mutex mu;
        std::map<int, std::vector<ExpVec>> map;
    };
    std::shared_ptr<BasisCache> basis_cache_;
};

/* Product of two bare monomials in the free algebra: Koszul sign and
 * merged exponents, or nullopt when an odd generator squares. */
std::optional<std::pair<int, ExpVec>> free_mul(const std::vector<Generator>& gens, const ExpVec& a,
                                               const ExpVec& b);

/* Normal form of an ordered factor list (generator index, exponent),
 * e.g. parsed input y*x^2; applies Koszul signs and relations. */
Element normal_form(const DGAlgebra& alg, const std::vector<std::pair<int, int>>& factors,
                    const Scalar& coeff);

std::string element_str(const DGAlgebra& alg, const Element& e);

/* CDGA morphism determined by generator images. */
struct AlgebraMorphism {
    DGAlgebra source;
    DGAlgebra target;
    std::vector<Element> images; /* per source generator */
};

AlgebraMorphism identity_morphism(const DGAlgebra& alg);
AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);
Element apply(const AlgebraMorphism& f, const Element& e);
/* degree preservation, relation vanishing and f d = d f on generators */
void validate_morphism(const AlgebraMorphism& f);

/* The unique f-derivation with prescribed generator values. `offset` is the
 * cohomological degree shift: values land in degree |g| + offset, and the
 * twisted Leibniz rule reads th(xy) = th(x) f(y) + (-1)^{offset |x|} f(x) th(y). */
class ExtendedDerivation {
public:
    ExtendedDerivation(AlgebraMorphism along, std::vector<Element> values, int offset);

    Element eval(const Element& e) const;
    Element eval_monomial(const ExpVec& m) const;
    int offset() const { return offset_; }
    const AlgebraMorphism& along() const { return along_; }

private:
    AlgebraMorphism along_;
    std::vector<Element> values_;
    int offset_;
};

/* matrix of d : A^n -> A^{n+1} in the monomial bases */
la::SparseMatrix differential_matrix(const DGAlgebra& alg, int n);
/* matrix of a degree-preserving morphism in degree n */
la::SparseMatrix morphism_matrix(const AlgebraMorphism& f, int n);

la::SparseVec coords(const DGAlgebra& alg, int degree, const Element& e);
Element element_from_coords(const DGAlgebra& alg, int degree, const la::SparseVec& v);

struct DegreeHomology {
    int degree = 0;
    std::size_t betti = 0;
    std::vector<Element> representatives;
};

struct CohomologyReport {
    std::vector<DegreeHomology> by_degree;

    std::size_t betti(int degree) const;
};

/* H^n(A, d) for n in [lo, hi], with representative cocycles. */
CohomologyReport cohomology(const DGAlgebra& alg, int lo, int hi);

struct QuasiIsoDegree {
    int degree = 0;
    std::size_t source_betti = 0;
    std::size_t target_betti = 0;
    bool bijective = false;
};

struct QuasiIsoReport {
    bool ok = false;
    std::vector<QuasiIsoDegree> by_degree;
};

/* Is H(f) an isomorphism in every degree of the window? */
QuasiIsoReport verify_quasi_iso(const AlgebraMorphism& f, int lo, int hi);

}  // namespace rht

#endif
