#include "rht/derivations.hpp"

#include <cassert>

namespace rht {

namespace {

int par(long e)
{
    return e % 2 != 0 ? -1 : 1;
}

}  // namespace

DerivationComplex DerivationComplex::build(const AlgebraMorphism& rho, int lo, int hi)
{
    /* the target only needs finite type: every basis_of_degree is finite */
    validate_morphism(rho);

    DerivationComplex dc;
    dc.rho_ = rho;
    dc.lo_ = lo;
    dc.hi_ = hi;

    const DGAlgebra& v = rho.source;
    const DGAlgebra& b = rho.target;

    for (int n = lo - 1; n <= hi + 1; ++n) {
        std::vector<BasisElt> basis;
        for (std::size_t g = 0; g < v.gen_count(); ++g) {
            std::size_t dimb = b.basis_of_degree(v.generators()[g].degree - n).size();
            for (std::size_t mi = 0; mi < dimb; ++mi)
                basis.push_back({g, mi});
        }
        dc.basis_.emplace(n, std::move(basis));
    }

    for (int n = lo; n <= hi + 1; ++n) {
        const auto& cols = dc.basis_.at(n);
        const auto& rows = dc.basis_.at(n - 1);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_index;
        for (std::size_t r = 0; r < rows.size(); ++r)
            row_index.emplace(std::make_pair(rows[r].gen, rows[r].m_index), r);

        la::SparseMatrix d(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            ExtendedDerivation th = dc.realize(n, la::SparseVec{{c, Scalar(1)}});
            /* (delta th)(v_j) = d_B th(v_j) - (-1)^n th(d v_j) */
            for (std::size_t g = 0; g < v.gen_count(); ++g) {
                int val_deg = v.generators()[g].degree - (n - 1);
                Element val = b.d(th.eval(v.generator_element(g))) -
                              th.eval(v.d_of_generator(g)).scaled(Scalar(par(n)));
                if (val.is_zero())
                    continue;
                for (const auto& [mi, coeff] : coords(b, val_deg, val)) {
                    auto it = row_index.find(std::make_pair(g, mi));
                    assert(it != row_index.end());
                    d.set(it->second, c, coeff);
                }
            }
        }
        dc.delta_.emplace(n, std::move(d));
    }

    dc.as_complex().check_composes_to_zero();
    return dc;
}

const std::vector<DerivationComplex::BasisElt>& DerivationComplex::basis(int n) const
{
    static const std::vector<BasisElt> empty;
    auto it = basis_.find(n);
    return it == basis_.end() ? empty : it->second;
}

std::size_t DerivationComplex::dim(int n) const
{
    return basis(n).size();
}

la::SparseMatrix DerivationComplex::delta(int n) const
{
    auto it = delta_.find(n);
    if (it != delta_.end())
        return it->second;
    return la::SparseMatrix(dim(n - 1), dim(n));
}

ExtendedDerivation DerivationComplex::realize(int n, const la::SparseVec& vvec) const
{
    const DGAlgebra& v = rho_.source;
    const DGAlgebra& b = rho_.target;
    std::vector<Element> values(v.gen_count());
    const auto& basis = basis_.at(n);
    for (const auto& [i, c] : vvec) {
        const BasisElt& e = basis.at(i);
        int deg = v.generators()[e.gen].degree - n;
        values[e.gen] += element_from_coords(b, deg, la::SparseVec{{e.m_index, c}});
    }
    return ExtendedDerivation(rho_, std::move(values), -n);
}

std::string DerivationComplex::basis_elt_str(int n, std::size_t i) const
{
    const BasisElt& e = basis(n).at(i);
    const DGAlgebra& b = rho_.target;
    int deg = rho_.source.generators()[e.gen].degree - n;
    auto bb = b.basis_of_degree(deg);
    Element m;
    m.add_term(bb.at(e.m_index), Scalar(1));
    return "(" + rho_.source.generators()[e.gen].name + " -> " + element_str(b, m) + ")";
}

DegreewiseComplex DerivationComplex::as_complex() const
{
    DegreewiseComplex c;
    for (const auto& [n, basis] : basis_)
        c.dims.emplace(-n, basis.size());
    for (const auto& [n, m] : delta_)
        c.d.emplace(-n, m); /* delta: Der_n -> Der_{n-1} raises the key */
    return c;
}

ChainMapBlocks der_pushforward(const DerivationComplex& src, const DerivationComplex& tgt,
                               const std::function<Element(const Element&)>& value_map)
{
    if (!src.source().same_presentation(tgt.source()))
        throw std::logic_error("pushforward across different Sullivan sources");

    const DGAlgebra& v = src.source();
    const DGAlgebra& tb = tgt.target();

    ChainMapBlocks out;
    out.shift = 0;
    for (int n = src.lo() - 1; n <= src.hi() + 1; ++n) {
        const auto& cols = src.basis(n);
        const auto& rows = tgt.basis(n);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_index;
        for (std::size_t r = 0; r < rows.size(); ++r)
            row_index.emplace(std::make_pair(rows[r].gen, rows[r].m_index), r);

        la::SparseMatrix b(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& e = cols[c];
            int deg = v.generators()[e.gen].degree - n;
            Element img = value_map(
                element_from_coords(src.target(), deg, la::SparseVec{{e.m_index, Scalar(1)}}));
            if (img.is_zero())
                continue;
            for (const auto& [mi, coeff] : coords(tb, deg, img)) {
                auto it = row_index.find(std::make_pair(e.gen, mi));
                assert(it != row_index.end());
                b.set(it->second, c, coeff);
            }
        }
        out.blocks.emplace(-n, std::move(b));
    }
    return out;
}

Element Splitting::apply_p(const DGAlgebra& b, const DGAlgebra& a, const Element& e) const
{
    if (e.is_zero())
        return Element{};
    int j = b.degree_of(e);
    auto it = p_blocks.find(j);
    if (it == p_blocks.end())
        return Element{};
    return element_from_coords(a, j, it->second.apply(coords(b, j, e)));
}

Splitting compute_splitting(const AlgebraMorphism& f, const DualityData& ddA,
                            const DualityData& ddB)
{
    if (ddA.formal_dim() != ddB.formal_dim())
        throw HypothesisError("the splitting needs equal formal dimensions");
    int m = ddA.formal_dim();

    Splitting sp;
    sp.f_shriek = shriek(f, ddA, ddB);
    Element one_img = sp.f_shriek.apply(ddB.algebra().one());
    sp.c = one_img.is_zero() ? Scalar(0) : one_img.terms.begin()->second;
    if (sp.c == 0)
        throw HypothesisError("model-level degree is zero: no splitting");

    const DGAlgebra& a = ddA.algebra();
    const DGAlgebra& b = ddB.algebra();
    Scalar inv = Scalar(1) / sp.c;
    for (int j = 0; j <= m; ++j) {
        la::SparseMatrix p = sp.f_shriek.blocks.at(j).scaled(inv);
        sp.z_basis.emplace(j, la::kernel_basis(p));
        sp.p_blocks.emplace(j, std::move(p));
    }

    /* B = f(A) (+) Z per degree */
    sp.direct_sum = true;
    for (int j = 0; j <= m; ++j) {
        la::SparseMatrix fm = morphism_matrix(f, j);
        std::vector<la::SparseVec> span;
        for (std::size_t c = 0; c < fm.cols(); ++c)
            span.push_back(fm.column(c));
        std::size_t fa_dim = la::rank(fm);
        for (const auto& z : sp.z_basis.at(j).vectors)
            span.push_back(z);
        std::size_t total = la::rank(la::SparseMatrix::from_columns(fm.rows(), span));
        bool ok = fa_dim == a.basis_of_degree(j).size() && /* f injective */
                  fa_dim + sp.z_basis.at(j).dim() == b.basis_of_degree(j).size() &&
                  total == b.basis_of_degree(j).size();
        if (!ok) {
            sp.direct_sum = false;
            sp.detail = "no direct sum in degree " + std::to_string(j);
        }
    }

    /* d Z <= Z, i.e. p(d z) = 0 */
    sp.dz_in_z = true;
    for (int j = 0; j <= m; ++j)
        for (const auto& z : sp.z_basis.at(j).vectors) {
            Element ze = element_from_coords(b, j, z);
            Element dz = b.d(ze);
            if (!sp.apply_p(b, a, dz).is_zero()) {
                sp.dz_in_z = false;
                sp.detail = "dZ leaves Z in degree " + std::to_string(j);
            }
        }

    /* f(A) Z <= Z */
    sp.submodule = true;
    for (int i = 0; i <= m; ++i)
        for (const auto& am : a.basis_of_degree(i)) {
            Element fa = apply(f, a.monomial_element(am));
            for (int j = 0; j <= m - i; ++j)
                for (const auto& z : sp.z_basis.at(j).vectors) {
                    Element prod = b.mul(fa, element_from_coords(b, j, z));
                    if (!sp.apply_p(b, a, prod).is_zero()) {
                        sp.submodule = false;
                        sp.detail = "f(A) Z leaves Z";
                    }
                }
        }

    /* p f = id and A-linearity p(f(a) b) = a p(b) */
    sp.retraction = true;
    for (int i = 0; i <= m; ++i)
        for (const auto& am : a.basis_of_degree(i)) {
            Element ae = a.monomial_element(am);
            if (!(sp.apply_p(b, a, apply(f, ae)) == ae)) {
                sp.retraction = false;
                sp.detail = "p f != id on " + element_str(a, ae);
            }
            for (int j = 0; j <= m - i; ++j)
                for (const auto& bm : b.basis_of_degree(j)) {
                    Element be = b.monomial_element(bm);
                    Element lhs = sp.apply_p(b, a, b.mul(apply(f, ae), be));
                    Element rhs = a.mul(ae, sp.apply_p(b, a, be));
                    if (!(lhs == rhs)) {
                        sp.retraction = false;
                        sp.detail = "p is not A-linear";
                    }
                }
        }

    return sp;
}

InjectionRecord verify_injection_theorem(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                                         const DualityData& ddA, const DualityData& ddB, int lo,
                                         int hi)
{
    InjectionRecord rec;
    Splitting sp;
    try {
        sp = compute_splitting(f, ddA, ddB);
    } catch (const HypothesisError& e) {
        rec.failure = e.what();
        return rec;
    }
    rec.c = sp.c;
    if (!sp.all()) {
        rec.failure = "splitting invariants failed: " + sp.detail;
        return rec;
    }
    rec.hypotheses_ok = true;

    const DGAlgebra& a = ddA.algebra();
    const DGAlgebra& b = ddB.algebra();

    DerivationComplex derA = DerivationComplex::build(phi, lo, hi);
    DerivationComplex derB = DerivationComplex::build(compose(f, phi), lo, hi);

    ChainMapBlocks fstar =
        der_pushforward(derA, derB, [&](const Element& e) { return apply(f, e); });
    ChainMapBlocks pstar =
        der_pushforward(derB, derA, [&](const Element& e) { return sp.apply_p(b, a, e); });

    /* p_* f_* = id at chain level */
    rec.retraction_identity = true;
    for (int n = lo; n <= hi; ++n) {
        la::SparseMatrix comp = pstar.blocks.at(-n) * fstar.blocks.at(-n);
        if (!(comp == la::SparseMatrix::identity(derA.dim(n))))
            rec.retraction_identity = false;
    }

    DegreewiseComplex ca = derA.as_complex();
    DegreewiseComplex cb = derB.as_complex();
    if (!chain_map_commutes(ca, cb, fstar, 1, -hi, -lo))
        throw BrokenComplexError("derivation pushforward is not a chain map");

    rec.per_degree = induced_on_cohomology(ca, cb, fstar, -hi, -lo);
    /* present in homological order n = lo..hi */
    std::reverse(rec.per_degree.begin(), rec.per_degree.end());
    for (auto& d : rec.per_degree)
        d.degree = -d.degree;

    rec.injective_all = true;
    rec.iso_all = true;
    for (const auto& d : rec.per_degree) {
        rec.injective_all = rec.injective_all && d.injective;
        rec.iso_all = rec.iso_all && d.bijective;
    }
    return rec;
}

Theorem2Record verify_theorem2(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                               const DualityData& ddA, const DualityData& ddB, int lo, int hi)
{
    Theorem2Record rec;
    Splitting sp;
    try {
        sp = compute_splitting(f, ddA, ddB);
    } catch (const HypothesisError& e) {
        rec.failure = e.what();
        return rec;
    }
    rec.c = sp.c;
    if (!sp.all()) {
        rec.failure = "splitting invariants failed: " + sp.detail;
        return rec;
    }
    rec.hypotheses_ok = true;

    LoopModel lm = build_loop_model(phi.source);
    CoefficientModule coeffA = CoefficientModule::from_algebra(ddA.algebra(), phi, "A");
    CoefficientModule coeffB =
        CoefficientModule::from_algebra(ddB.algebra(), compose(f, phi), "B");

    HochschildComplex hcA = HochschildComplex::build(lm, coeffA, lo, hi);
    HochschildComplex hcB = HochschildComplex::build(lm, coeffB, lo, hi);

    ChainMapBlocks hhf =
        induced_map(hcA, hcB, coefficient_map_from_morphism(coeffA, coeffB, f, "f"));

    /* p as a coefficient map: blocks of (1/c) f_! in degrees [0, m] */
    CoefficientMap pmap{"p", 0, coeffB, coeffA, {}};
    for (const auto& [j, b] : sp.p_blocks)
        pmap.blocks.emplace(j, b);
    ChainMapBlocks hhp = induced_map(hcB, hcA, pmap);

    rec.retraction_identity = true;
    for (int k = lo; k <= hi; ++k) {
        la::SparseMatrix comp = hhp.blocks.at(k) * hhf.blocks.at(k);
        if (!(comp == la::SparseMatrix::identity(hcA.dim(k))))
            rec.retraction_identity = false;
    }

    rec.per_degree = induced_on_cohomology(hcA.as_complex(), hcB.as_complex(), hhf, lo, hi);
    rec.injective_all = true;
    for (const auto& d : rec.per_degree)
        rec.injective_all = rec.injective_all && d.injective;
    return rec;
}

ChainMapBlocks embed_derivations(const DerivationComplex& der, const HochschildComplex& hc)
{
    if (!der.source().same_presentation(hc.loop().base))
        throw std::logic_error("derivations and cochains live over different Sullivan algebras");
    if (!hc.coeff().is_algebra() || !hc.coeff().carrier().same_presentation(der.target()))
        throw std::logic_error("coefficient carrier mismatch");

    const LoopModel& lm = hc.loop();
    ChainMapBlocks out;
    out.shift = 1; /* key -n maps to cochain degree 1 - n */
    for (int n = der.lo() - 1; n <= der.hi() + 1; ++n) {
        int k = 1 - n;
        const auto& cols = der.basis(n);
        la::SparseMatrix b(hc.dim(k), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& e = cols[c];
            ExpVec bar(lm.total.gen_count(), 0);
            bar[lm.bar_index(e.gen)] = 1;
            auto idx = hc.index_of(k, bar, e.m_index);
            if (!idx)
                throw std::logic_error("embedding target degree is outside the built window");
            b.set(*idx, c, Scalar(1));
        }
        out.blocks.emplace(-n, std::move(b));
    }

    /* strict chain square: D embed = embed delta */
    if (!chain_map_commutes(der.as_complex(), hc.as_complex(), out, 1, -der.hi() - 1,
                            -der.lo() + 1))
        throw BrokenComplexError("derivation embedding is not a chain map");
    return out;
}

std::vector<MappingSpaceRow> mapping_space_report(const DerivationComplex& der, int lo, int hi)
{
    std::vector<MappingSpaceRow> rows;
    DegreewiseComplex c = der.as_complex();
    for (int n = lo; n <= hi; ++n) {
        MappingSpaceRow r;
        r.n = n;
        r.dim = c.homology(-n).betti;
        r.in_iso_range = n >= 2;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace rht
