#include "rht/poincare.hpp"

#include <algorithm>
#include <cassert>

namespace rht {

PDStructure make_pd(const DGAlgebra& algebra, int formal_dim, const ExpVec& volume,
                    const Scalar& value)
{
    PDStructure pd{algebra, formal_dim, {}};
    auto basis = algebra.basis_of_degree(formal_dim);
    pd.orientation.assign(basis.size(), Scalar(0));
    auto it = std::lower_bound(basis.begin(), basis.end(), volume);
    if (it == basis.end() || *it != volume)
        throw SpecParseError("volume monomial does not lie in the stated degree");
    pd.orientation[static_cast<std::size_t>(it - basis.begin())] = value;
    return pd;
}

PDStructure make_pd(const DGAlgebra& algebra)
{
    int top = algebra.top_degree();
    auto basis = algebra.basis_of_degree(top);
    if (basis.empty())
        throw HypothesisError("no top-degree class to orient");
    return make_pd(algebra, top, basis.back(), Scalar(1));
}

namespace {

Scalar eps_of_coords(const PDStructure& pd, const la::SparseVec& v)
{
    Scalar acc = 0;
    for (const auto& [i, c] : v)
        acc += pd.orientation[i] * c;
    return acc;
}

}  // namespace

PDValidation check_pd(const PDStructure& pd)
{
    PDValidation val;
    val.formal_dim = pd.formal_dim;
    const DGAlgebra& a = pd.algebra;
    int n = pd.formal_dim;

    if (!a.finite_dimensional()) {
        val.message = "algebra is not finite dimensional";
        return val;
    }
    if (a.top_degree() != n) {
        val.message = "top degree " + std::to_string(a.top_degree()) +
                      " does not match the stated formal dimension " + std::to_string(n);
        return val;
    }
    auto top_basis = a.basis_of_degree(n);
    if (pd.orientation.size() != top_basis.size()) {
        val.message = "orientation length does not match the top-degree basis";
        return val;
    }
    bool nonzero = false;
    for (const auto& c : pd.orientation)
        nonzero = nonzero || c != 0;
    if (!nonzero) {
        val.message = "orientation functional is zero";
        return val;
    }

    /* eps(d A^{n-1}) = 0 */
    for (const auto& m : a.basis_of_degree(n - 1)) {
        Element dm = a.d(a.monomial_element(m));
        if (eps_of_coords(pd, coords(a, n, dm)) != 0) {
            val.message = "eps does not vanish on exact top classes";
            return val;
        }
    }

    /* nondegenerate square pairings in complementary degrees */
    for (int k = 0; k <= n; ++k) {
        auto bk = a.basis_of_degree(k);
        auto bnk = a.basis_of_degree(n - k);
        if (bk.size() != bnk.size()) {
            val.message = "pairing is not square in degree " + std::to_string(k);
            return val;
        }
        la::SparseMatrix g(bk.size(), bnk.size());
        for (std::size_t i = 0; i < bk.size(); ++i)
            for (std::size_t j = 0; j < bnk.size(); ++j) {
                Element prod = a.mul(a.monomial_element(bk[i]), a.monomial_element(bnk[j]));
                Scalar v = eps_of_coords(pd, coords(a, n, prod));
                if (v != 0)
                    g.set(i, j, v);
            }
        std::size_t r = la::rank(g);
        val.pairing_ranks.emplace_back(k, r);
        if (r != bk.size()) {
            val.message = "degenerate pairing in degree " + std::to_string(k);
            return val;
        }
    }

    val.ok = true;
    return val;
}

DualityData::DualityData(PDStructure pd) : pd_(std::move(pd))
{
    PDValidation v = check_pd(pd_);
    if (!v.ok)
        throw HypothesisError("not a Poincare duality structure: " + v.message);
}

Scalar DualityData::eps(const Element& top_element) const
{
    if (top_element.is_zero())
        return Scalar(0);
    return eps_of_coords(pd_, coords(pd_.algebra, pd_.formal_dim, top_element));
}

Element DualityData::fundamental_class() const
{
    /* the unique omega in the one-dimensional top degree with eps(omega) = 1 */
    auto basis = pd_.algebra.basis_of_degree(pd_.formal_dim);
    assert(basis.size() == 1);
    Scalar c = pd_.orientation[0];
    Element e;
    e.add_term(basis[0], Scalar(1) / c);
    return e;
}

la::SparseMatrix DualityData::pairing(int k) const
{
    const DGAlgebra& a = pd_.algebra;
    int n = pd_.formal_dim;
    auto bk = a.basis_of_degree(k);
    auto bnk = a.basis_of_degree(n - k);
    la::SparseMatrix g(bk.size(), bnk.size());
    for (std::size_t i = 0; i < bk.size(); ++i)
        for (std::size_t j = 0; j < bnk.size(); ++j) {
            Element prod = a.mul(a.monomial_element(bk[i]), a.monomial_element(bnk[j]));
            Scalar v = eps_of_coords(pd_, coords(a, n, prod));
            if (v != 0)
                g.set(i, j, v);
        }
    return g;
}

la::SparseMatrix DualityData::pi_matrix(int k) const
{
    return pairing(k).transpose();
}

std::vector<Element> DualityData::dual_basis(int k) const
{
    const DGAlgebra& a = pd_.algebra;
    int n = pd_.formal_dim;
    la::SparseMatrix g = pairing(k);
    std::vector<Element> duals;
    for (std::size_t j = 0; j < a.basis_of_degree(k).size(); ++j) {
        auto sol = la::solve(g, la::SparseVec{{j, Scalar(1)}});
        if (!sol)
            throw HypothesisError("degenerate pairing in degree " + std::to_string(k));
        duals.push_back(element_from_coords(a, n - k, *sol));
    }
    return duals;
}

Element DualityData::pi_inverse(int k, const la::SparseVec& functional) const
{
    auto sol = la::solve(pi_matrix(k), functional);
    if (!sol)
        throw HypothesisError("pi is not surjective in degree " + std::to_string(k));
    return element_from_coords(pd_.algebra, k, *sol);
}

Element ShriekMap::apply(const Element& b) const
{
    if (b.is_zero())
        return Element{};
    int j = domain.degree_of(b);
    auto it = blocks.find(j);
    if (it == blocks.end())
        return Element{};
    return element_from_coords(codomain, j + shift, it->second.apply(coords(domain, j, b)));
}

ShriekMap shriek(const AlgebraMorphism& f, const DualityData& ddA, const DualityData& ddB)
{
    const DGAlgebra& a = ddA.algebra();
    const DGAlgebra& b = ddB.algebra();
    int m = ddA.formal_dim();
    int n = ddB.formal_dim();

    ShriekMap fs;
    fs.shift = m - n;
    fs.domain = b;
    fs.codomain = a;

    for (int j = 0; j <= n; ++j) {
        std::size_t dim_b = b.basis_of_degree(j).size();
        std::size_t dim_a = a.basis_of_degree(j + fs.shift).size();
        if (dim_b == 0) {
            fs.blocks.emplace(j, la::SparseMatrix(dim_a, 0));
            continue;
        }
        /* f^# pi_B : B^j -> functionals on A^{n-j} */
        la::SparseMatrix rhs = morphism_matrix(f, n - j).transpose() * ddB.pi_matrix(j);
        la::SparseMatrix pia = ddA.pi_matrix(j + fs.shift);
        la::SparseMatrix block(dim_a, dim_b);
        for (std::size_t c = 0; c < dim_b; ++c) {
            auto sol = la::solve(pia, rhs.column(c));
            if (!sol)
                throw HypothesisError("pi_A is not invertible in degree " +
                                      std::to_string(j + fs.shift));
            for (const auto& [r, v] : *sol)
                block.set(r, c, v);
        }
        fs.blocks.emplace(j, std::move(block));
    }
    return fs;
}

Scalar degree_scalar(const AlgebraMorphism& f, const DualityData& ddA, const DualityData& ddB)
{
    if (ddA.formal_dim() != ddB.formal_dim())
        throw HypothesisError("degree scalar needs equal formal dimensions");
    ShriekMap fs = shriek(f, ddA, ddB);
    Element img = fs.apply(ddB.algebra().one());
    if (img.is_zero())
        return Scalar(0);
    return img.terms.begin()->second;
}

PreimageResult preimage_cocycle(const AlgebraMorphism& f, const Element& omega_B)
{
    const DGAlgebra& a = f.source;
    const DGAlgebra& b = f.target;
    int n = b.degree_of(omega_B);

    la::SparseMatrix fm = morphism_matrix(f, n);
    la::SparseMatrix dm = differential_matrix(a, n);
    la::SparseVec target = coords(b, n, omega_B);

    /* stack [f; d] x = (omega, 0) to look for a cocycle preimage first */
    la::SparseMatrix stacked(fm.rows() + dm.rows(), fm.cols());
    for (std::size_t r = 0; r < fm.rows(); ++r)
        for (const auto& [c, v] : fm.row(r))
            stacked.set(r, c, v);
    for (std::size_t r = 0; r < dm.rows(); ++r)
        for (const auto& [c, v] : dm.row(r))
            stacked.set(fm.rows() + r, c, v);

    PreimageResult res;
    if (auto sol = la::solve(stacked, target)) {
        res.status = PreimageResult::Status::Ok;
        res.x = element_from_coords(a, n, *sol);
        return res;
    }
    res.status = la::solve(fm, target) ? PreimageResult::Status::NoCocyclePreimage
                                       : PreimageResult::Status::NoPreimage;
    return res;
}

Element poincare_dual_class(const DualityData& dd, const Element& x)
{
    const DGAlgebra& a = dd.algebra();
    if (!a.d(x).is_zero())
        throw HypothesisError("poincare dual requested for a non-cocycle");
    int j = a.degree_of(x);
    /* x^# in the dual monomial basis of A^j, then x^* = pi^{-1}(x^#) */
    return dd.pi_inverse(dd.formal_dim() - j, coords(a, j, x));
}

bool morphism_surjective(const AlgebraMorphism& f, int top)
{
    for (int j = 0; j <= top; ++j)
        if (la::rank(morphism_matrix(f, j)) != f.target.basis_of_degree(j).size())
            return false;
    return true;
}

ShriekChecks verify_shriek(const AlgebraMorphism& f, const DualityData& ddA,
                           const DualityData& ddB, const ShriekMap& fs)
{
    ShriekChecks out;
    const DGAlgebra& a = ddA.algebra();
    const DGAlgebra& b = ddB.algebra();
    int m = ddA.formal_dim();
    int n = ddB.formal_dim();

    out.square_commutes = true;
    for (int j = 0; j <= n; ++j) {
        la::SparseMatrix lhs = ddA.pi_matrix(j + fs.shift) * fs.blocks.at(j);
        la::SparseMatrix rhs = morphism_matrix(f, n - j).transpose() * ddB.pi_matrix(j);
        if (!(lhs == rhs)) {
            out.square_commutes = false;
            out.detail = "square fails in degree " + std::to_string(j);
            break;
        }
    }

    out.module_linear = true;
    for (int i = 0; i <= m && out.module_linear; ++i)
        for (const auto& am : a.basis_of_degree(i)) {
            Element ae = a.monomial_element(am);
            Element fa = apply(f, ae);
            for (int j = 0; j <= n; ++j)
                for (const auto& bm : b.basis_of_degree(j)) {
                    Element be = b.monomial_element(bm);
                    Element lhs = fs.apply(b.mul(fa, be));
                    Element rhs = a.mul(ae, fs.apply(be));
                    if (!(lhs == rhs)) {
                        out.module_linear = false;
                        out.detail = "module linearity fails on (" + element_str(a, ae) + ", " +
                                     element_str(b, be) + ")";
                        break;
                    }
                }
        }

    Element alpha = fs.apply(b.one());
    out.composite_is_mult = true;
    for (int i = 0; i <= m && out.composite_is_mult; ++i)
        for (const auto& am : a.basis_of_degree(i)) {
            Element ae = a.monomial_element(am);
            if (!(fs.apply(apply(f, ae)) == a.mul(ae, alpha))) {
                out.composite_is_mult = false;
                out.detail = "f_! f != multiplication by f_!(1) on " + element_str(a, ae);
            }
        }

    int sigma = fs.shift % 2 == 0 ? 1 : -1;
    out.chain_map = true;
    for (int j = 0; j <= n && out.chain_map; ++j)
        for (const auto& bm : b.basis_of_degree(j)) {
            Element be = b.monomial_element(bm);
            Element lhs = a.d(fs.apply(be));
            Element rhs = fs.apply(b.d(be)).scaled(Scalar(sigma));
            if (!(lhs == rhs)) {
                out.chain_map = false;
                out.detail = "chain identity fails on " + element_str(b, be);
            }
        }

    return out;
}

}  // namespace rht
