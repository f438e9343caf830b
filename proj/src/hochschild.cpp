#include "rht/hochschild.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

namespace rht {

namespace {

int par(long e)
{
    return e % 2 != 0 ? -1 : 1;
}

}  // namespace

CoefficientModule CoefficientModule::from_algebra(const DGAlgebra& carrier,
                                                  const AlgebraMorphism& rho, std::string label)
{
    if (!carrier.finite_dimensional())
        throw HypothesisError("coefficient carrier must be bounded");
    if (!carrier.same_presentation(rho.target))
        throw std::logic_error("rho does not land in the carrier");
    validate_morphism(rho);

    CoefficientModule m;
    m.label_ = std::move(label);
    m.base_ = rho.source;
    m.carrier_ = carrier;
    m.rho_ = rho;
    m.lo_ = 0;
    m.hi_ = carrier.top_degree();

    int span = m.hi_ - m.lo_ + 1;
    m.dims_.resize(span);
    m.labels_.resize(span);
    m.diff_.resize(span);
    for (int j = m.lo_; j <= m.hi_; ++j) {
        auto basis = carrier.basis_of_degree(j);
        m.dims_[j - m.lo_] = basis.size();
        for (const auto& mono : basis)
            m.labels_[j - m.lo_].push_back(element_str(carrier, carrier.monomial_element(mono)));
        m.diff_[j - m.lo_] = differential_matrix(carrier, j);
    }

    m.gen_act_.resize(m.base_.gen_count());
    for (std::size_t g = 0; g < m.base_.gen_count(); ++g) {
        int dg = m.base_.generators()[g].degree;
        const Element& img = rho.images[g];
        m.gen_act_[g].resize(span);
        for (int j = m.lo_; j <= m.hi_; ++j) {
            auto basis = carrier.basis_of_degree(j);
            la::SparseMatrix act(carrier.basis_of_degree(j + dg).size(), basis.size());
            for (std::size_t c = 0; c < basis.size(); ++c) {
                Element prod = carrier.mul(img, carrier.monomial_element(basis[c]));
                for (const auto& [r, v] : coords(carrier, j + dg, prod))
                    act.set(r, c, v);
            }
            m.gen_act_[g][j - m.lo_] = std::move(act);
        }
    }
    return m;
}

CoefficientModule CoefficientModule::dualize() const
{
    CoefficientModule d;
    d.label_ = label_ + "#";
    d.dual_ = !dual_;
    d.base_ = base_;
    d.lo_ = -hi_;
    d.hi_ = -lo_;

    int span = d.hi_ - d.lo_ + 1;
    d.dims_.resize(span);
    d.labels_.resize(span);
    d.diff_.resize(span);
    for (int j = d.lo_; j <= d.hi_; ++j) {
        d.dims_[j - d.lo_] = dim(-j);
        for (std::size_t i = 0; i < dim(-j); ++i)
            d.labels_[j - d.lo_].push_back(basis_label(-j, i) + "#");
        /* d#(phi) = -(-1)^{|phi|} phi d */
        d.diff_[j - d.lo_] = diff(-j - 1).transpose().scaled(Scalar(-par(j)));
    }

    d.gen_act_.resize(base_.gen_count());
    for (std::size_t g = 0; g < base_.gen_count(); ++g) {
        int dg = base_.generators()[g].degree;
        d.gen_act_[g].resize(span);
        for (int j = d.lo_; j <= d.hi_; ++j)
            /* (a phi)(x) = (-1)^{|a||phi|} phi(a x) */
            d.gen_act_[g][j - d.lo_] =
                gen_action(g, -j - dg).transpose().scaled(Scalar(par(static_cast<long>(dg) * j)));
    }
    return d;
}

std::size_t CoefficientModule::dim(int j) const
{
    if (j < lo_ || j > hi_)
        return 0;
    return dims_[j - lo_];
}

std::string CoefficientModule::basis_label(int j, std::size_t i) const
{
    assert(j >= lo_ && j <= hi_ && i < labels_[j - lo_].size());
    return labels_[j - lo_][i];
}

la::SparseMatrix CoefficientModule::diff(int j) const
{
    if (j < lo_ || j > hi_)
        return la::SparseMatrix(dim(j + 1), dim(j));
    return diff_[j - lo_];
}

la::SparseMatrix CoefficientModule::gen_action(std::size_t gen, int j) const
{
    int dg = base_.generators()[gen].degree;
    if (j < lo_ || j > hi_)
        return la::SparseMatrix(dim(j + dg), dim(j));
    return gen_act_[gen][j - lo_];
}

la::SparseMatrix CoefficientModule::action(const ExpVec& base_mono, int j) const
{
    assert(base_mono.size() == base_.gen_count());
    /* rho(v1^e1 ... vk^ek) m = rho(v1)^e1 ( ... (rho(vk)^ek m)): the last
     * generator acts first */
    la::SparseMatrix acc = la::SparseMatrix::identity(dim(j));
    int cur = j;
    for (std::size_t g = base_.gen_count(); g-- > 0;) {
        int dg = base_.generators()[g].degree;
        for (int e = 0; e < base_mono[g]; ++e) {
            acc = gen_action(g, cur) * acc;
            cur += dg;
        }
    }
    return acc;
}

Element CoefficientModule::carrier_element(int j, std::size_t i) const
{
    if (!is_algebra())
        throw std::logic_error("carrier element of a dual module");
    auto basis = carrier_->basis_of_degree(j);
    assert(i < basis.size());
    return carrier_->monomial_element(basis[i]);
}

bool CoefficientModule::same_shape(const CoefficientModule& other) const
{
    if (lo_ != other.lo_ || hi_ != other.hi_ || !base_.same_presentation(other.base_))
        return false;
    return dims_ == other.dims_;
}

la::SparseMatrix CoefficientMap::block(int j) const
{
    auto it = blocks.find(j);
    if (it != blocks.end())
        return it->second;
    return la::SparseMatrix(target.dim(j + degree), source.dim(j));
}

CoefficientMap coefficient_map_from_morphism(const CoefficientModule& src,
                                             const CoefficientModule& tgt,
                                             const AlgebraMorphism& theta, std::string label)
{
    if (!src.is_algebra() || !tgt.is_algebra())
        throw std::logic_error("morphism coefficient maps need algebra carriers");
    validate_morphism(theta);
    CoefficientMap t{std::move(label), 0, src, tgt, {}};
    for (int j = src.lo(); j <= src.hi(); ++j) {
        auto basis = src.carrier().basis_of_degree(j);
        la::SparseMatrix b(tgt.dim(j), basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            Element img = apply(theta, src.carrier().monomial_element(basis[c]));
            for (const auto& [r, v] : coords(tgt.carrier(), j, img))
                b.set(r, c, v);
        }
        t.blocks.emplace(j, std::move(b));
    }
    return t;
}

CoefficientMap coefficient_map_from_shriek(const CoefficientModule& src,
                                           const CoefficientModule& tgt, const ShriekMap& fs,
                                           std::string label)
{
    if (!src.is_algebra() || !tgt.is_algebra())
        throw std::logic_error("shriek coefficient maps need algebra carriers");
    CoefficientMap t{std::move(label), fs.shift, src, tgt, {}};
    for (const auto& [j, b] : fs.blocks)
        t.blocks.emplace(j, b);
    return t;
}

CoefficientMap pi_map(const CoefficientModule& src, const CoefficientModule& dual,
                      const DualityData& dd)
{
    if (!src.is_algebra() || !src.carrier().same_presentation(dd.algebra()))
        throw std::logic_error("pi map needs the duality carrier");
    int m = dd.formal_dim();
    CoefficientMap t{"pi_" + src.label(), -m, src, dual, {}};
    for (int j = 0; j <= m; ++j)
        t.blocks.emplace(j, dd.pi_matrix(j));
    return t;
}

CoefficientMap pi_inverse_map(const CoefficientModule& dual, const CoefficientModule& src,
                              const DualityData& dd)
{
    int m = dd.formal_dim();
    CoefficientMap t{"pi_inv_" + src.label(), m, dual, src, {}};
    for (int jp = -m; jp <= 0; ++jp) {
        la::SparseMatrix p = dd.pi_matrix(jp + m); /* (dim(m-j'), dim(j'+m)) */
        la::SparseMatrix inv(p.cols(), p.rows());
        for (std::size_t c = 0; c < p.rows(); ++c) {
            auto sol = la::solve(p, la::SparseVec{{c, Scalar(1)}});
            if (!sol)
                throw HypothesisError("pi is not invertible");
            for (const auto& [r, v] : *sol)
                inv.set(r, c, v);
        }
        t.blocks.emplace(jp, std::move(inv));
    }
    return t;
}

CoefficientMap compose(const CoefficientMap& outer, const CoefficientMap& inner)
{
    if (!outer.source.same_shape(inner.target))
        throw std::logic_error("coefficient maps do not compose");
    CoefficientMap t{outer.label + "." + inner.label, outer.degree + inner.degree, inner.source,
                     outer.target, {}};
    for (int j = inner.source.lo(); j <= inner.source.hi(); ++j)
        t.blocks.emplace(j, outer.block(j + inner.degree) * inner.block(j));
    return t;
}

CoefficientMap multiplication_map(const CoefficientModule& mod, const Element& alpha)
{
    if (!mod.is_algebra())
        throw HypothesisError("multiplication needs algebra coefficients");
    const DGAlgebra& a = mod.carrier();
    if (!a.d(alpha).is_zero())
        throw HypothesisError("multiplication by a non-cocycle is not a chain map");
    int t = alpha.is_zero() ? 0 : a.degree_of(alpha);
    CoefficientMap out{"mult", t, mod, mod, {}};
    for (int j = mod.lo(); j <= mod.hi(); ++j) {
        auto basis = a.basis_of_degree(j);
        la::SparseMatrix b(mod.dim(j + t), basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            Element prod = a.mul(alpha, a.monomial_element(basis[c]));
            for (const auto& [r, v] : coords(a, j + t, prod))
                b.set(r, c, v);
        }
        out.blocks.emplace(j, std::move(b));
    }
    return out;
}

void validate_coefficient_map(const CoefficientMap& t)
{
    const CoefficientModule& src = t.source;
    const CoefficientModule& tgt = t.target;
    if (!src.base().same_presentation(tgt.base()))
        throw std::logic_error("coefficient map across different base algebras");

    /* chain identity d th = (-1)^t th d */
    for (int j = src.lo() - 1; j <= src.hi(); ++j) {
        la::SparseMatrix lhs = tgt.diff(j + t.degree) * t.block(j);
        la::SparseMatrix rhs = (t.block(j + 1) * src.diff(j)).scaled(Scalar(par(t.degree)));
        if (!(lhs == rhs))
            throw SpecParseError("coefficient map '" + t.label +
                                 "' fails the chain identity in degree " + std::to_string(j));
    }

    /* Koszul linearity over every generator */
    for (std::size_t g = 0; g < src.base().gen_count(); ++g) {
        int dg = src.base().generators()[g].degree;
        ExpVec mono(src.base().gen_count(), 0);
        mono[g] = 1;
        int sign = par(static_cast<long>(dg) * t.degree);
        for (int j = src.lo() - dg; j <= src.hi(); ++j) {
            la::SparseMatrix lhs = t.block(j + dg) * src.action(mono, j);
            la::SparseMatrix rhs =
                (tgt.action(mono, j + t.degree) * t.block(j)).scaled(Scalar(sign));
            if (!(lhs == rhs))
                throw SpecParseError("coefficient map '" + t.label +
                                     "' is not module linear over generator " +
                                     src.base().generators()[g].name);
        }
    }
}

HochschildComplex HochschildComplex::build(const LoopModel& lm, const CoefficientModule& coeff,
                                           int lo, int hi)
{
    if (!lm.base.same_presentation(coeff.base()))
        throw std::logic_error("coefficients live over a different Sullivan algebra");

    HochschildComplex hc;
    hc.lm_ = lm;
    hc.coeff_ = coeff;
    hc.lo_ = lo;
    hc.hi_ = hi;

    int klo = lo - 1, khi = hi + 1;
    for (int k = klo; k <= khi; ++k) {
        std::vector<BasisElt> basis;
        std::map<std::pair<ExpVec, std::size_t>, std::size_t> index;
        int wlo = std::max(0, coeff.lo() - k);
        int whi = coeff.hi() - k;
        for (int wdeg = wlo; wdeg <= whi; ++wdeg) {
            std::size_t mdim = coeff.dim(wdeg + k);
            if (mdim == 0)
                continue;
            for (const auto& w : lm.words_of_degree(wdeg)) {
                int len = lm.word_length(w);
                for (std::size_t mi = 0; mi < mdim; ++mi) {
                    index.emplace(std::make_pair(w, mi), basis.size());
                    basis.push_back({w, wdeg, len, mi});
                }
            }
        }
        hc.basis_.emplace(k, std::move(basis));
        hc.index_.emplace(k, std::move(index));
    }

    /* expansion of D on a bar word: terms (coeff, V part, bar part) */
    std::map<ExpVec, std::vector<std::tuple<Scalar, ExpVec, ExpVec, int>>> dword;
    auto expand = [&](const ExpVec& w) {
        auto it = dword.find(w);
        if (it != dword.end())
            return;
        std::vector<std::tuple<Scalar, ExpVec, ExpVec, int>> terms;
        Element dw = lm.total.d(lm.total.monomial_element(w));
        for (const auto& [mono, c] : dw.terms) {
            if (lm.word_length(mono) != lm.word_length(w))
                throw BrokenComplexError("Hodge violation: D changed the bar word length");
            auto [vpart, wpart] = lm.split(mono);
            terms.emplace_back(c, vpart, wpart, lm.base.monomial_degree(vpart));
        }
        dword.emplace(w, std::move(terms));
    };

    for (int k = klo; k < khi; ++k) {
        const auto& cols = hc.basis_.at(k);
        const auto& rows = hc.basis_.at(k + 1);
        const auto& col_index = hc.index_.at(k);
        la::SparseMatrix d(rows.size(), cols.size());

        /* value differential: (w0, m0) -> (w0, m') */
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const BasisElt& e = cols[c];
            int mdeg = e.word_deg + k;
            for (const auto& [r, v] : coeff.diff(mdeg).column(e.m_index)) {
                auto it = hc.index_.at(k + 1).find(std::make_pair(e.word, r));
                assert(it != hc.index_.at(k + 1).end());
                d.set(it->second, c, v);
            }
        }

        /* evaluation against D w: rows (w, m'), columns (w', m0) for each
         * term a w' of D w, with
         * (D gamma)(w) -= (-1)^k c (-1)^{|a| k} rho(a) gamma(w') */
        std::size_t r0 = 0;
        while (r0 < rows.size()) {
            const ExpVec& w = rows[r0].word;
            std::size_t rend = r0;
            while (rend < rows.size() && rows[rend].word == w)
                ++rend;
            expand(w);
            for (const auto& [cw, vpart, wpart, adeg] : dword.at(w)) {
                int wpdeg = rows[r0].word_deg + 1 - adeg;
                la::SparseMatrix act = coeff.action(vpart, wpdeg + k);
                if (act.cols() == 0)
                    continue;
                Scalar factor = cw * Scalar(-par(k)) * Scalar(par(static_cast<long>(adeg) * k));
                for (std::size_t m0 = 0; m0 < act.cols(); ++m0) {
                    auto cit = col_index.find(std::make_pair(wpart, m0));
                    if (cit == col_index.end())
                        continue;
                    for (const auto& [mp, v] : act.column(m0)) {
                        auto rit = hc.index_.at(k + 1).find(std::make_pair(w, mp));
                        assert(rit != hc.index_.at(k + 1).end());
                        d.set(rit->second, cit->second, d.at(rit->second, cit->second) + factor * v);
                    }
                }
            }
            r0 = rend;
        }
        hc.d_.emplace(k, std::move(d));
    }

    hc.as_complex().check_composes_to_zero();
    return hc;
}

const std::vector<HochschildComplex::BasisElt>& HochschildComplex::basis(int k) const
{
    static const std::vector<BasisElt> empty;
    auto it = basis_.find(k);
    return it == basis_.end() ? empty : it->second;
}

std::size_t HochschildComplex::dim(int k) const
{
    return basis(k).size();
}

la::SparseMatrix HochschildComplex::diff(int k) const
{
    auto it = d_.find(k);
    if (it != d_.end())
        return it->second;
    return la::SparseMatrix(dim(k + 1), dim(k));
}

std::optional<std::size_t> HochschildComplex::index_of(int k, const ExpVec& word,
                                                       std::size_t m_index) const
{
    auto it = index_.find(k);
    if (it == index_.end())
        return std::nullopt;
    auto jt = it->second.find(std::make_pair(word, m_index));
    if (jt == it->second.end())
        return std::nullopt;
    return jt->second;
}

DegreewiseComplex HochschildComplex::as_complex() const
{
    DegreewiseComplex c;
    for (const auto& [k, b] : basis_)
        c.dims.emplace(k, b.size());
    for (const auto& [k, m] : d_)
        c.d.emplace(k, m);
    return c;
}

std::string HochschildComplex::basis_elt_str(int k, std::size_t i) const
{
    const BasisElt& e = basis(k).at(i);
    Element w;
    w.add_term(e.word, Scalar(1));
    return "(" + element_str(lm_.total, w) + " -> " +
           coeff_.basis_label(e.word_deg + k, e.m_index) + ")";
}

std::string HochschildComplex::cochain_str(int k, const la::SparseVec& v) const
{
    if (v.empty())
        return "0";
    std::string out;
    for (const auto& [i, c] : v) {
        if (!out.empty())
            out += " + ";
        if (c != 1)
            out += scalar_str(c) + "*";
        out += basis_elt_str(k, i);
    }
    return out;
}

std::size_t HHReport::betti(int degree) const
{
    for (const auto& d : by_degree)
        if (d.degree == degree)
            return d.betti;
    return 0;
}

std::map<int, DegreewiseComplex> hodge_decompose(const HochschildComplex& hc)
{
    /* index lists per word length and degree */
    std::map<int, std::map<int, std::vector<std::size_t>>> pick;
    for (int k = hc.lo() - 1; k <= hc.hi() + 1; ++k) {
        const auto& basis = hc.basis(k);
        for (std::size_t i = 0; i < basis.size(); ++i)
            pick[basis[i].word_len][k].push_back(i);
    }

    /* cross-length entries would signal a sign bug */
    for (int k = hc.lo() - 1; k <= hc.hi(); ++k) {
        const auto& rows = hc.basis(k + 1);
        const auto& cols = hc.basis(k);
        la::SparseMatrix d = hc.diff(k);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : d.row(r)) {
                (void)v;
                if (rows[r].word_len != cols[c].word_len)
                    throw BrokenComplexError("Hochschild differential is not Hodge diagonal");
            }
    }

    std::map<int, DegreewiseComplex> out;
    for (const auto& [len, by_deg] : pick) {
        DegreewiseComplex sub;
        for (const auto& [k, idx] : by_deg)
            sub.dims.emplace(k, idx.size());
        for (int k = hc.lo() - 1; k <= hc.hi(); ++k) {
            auto it = by_deg.find(k);
            auto jt = by_deg.find(k + 1);
            std::size_t nc = it == by_deg.end() ? 0 : it->second.size();
            std::size_t nr = jt == by_deg.end() ? 0 : jt->second.size();
            la::SparseMatrix d(nr, nc);
            if (nc && nr) {
                la::SparseMatrix full = hc.diff(k);
                std::map<std::size_t, std::size_t> rpos;
                for (std::size_t r = 0; r < nr; ++r)
                    rpos.emplace(jt->second[r], r);
                for (std::size_t c = 0; c < nc; ++c)
                    for (const auto& [r, v] : full.column(it->second[c])) {
                        auto rp = rpos.find(r);
                        if (rp != rpos.end())
                            d.set(rp->second, c, v);
                    }
            }
            sub.d.emplace(k, std::move(d));
        }
        out.emplace(len, std::move(sub));
    }
    return out;
}

HHReport hh_cohomology(const HochschildComplex& hc)
{
    HHReport report;
    DegreewiseComplex full = hc.as_complex();
    auto blocks = hodge_decompose(hc);
    for (int k = hc.lo(); k <= hc.hi(); ++k) {
        HHDegree deg;
        deg.degree = k;
        auto h = full.homology(k);
        deg.betti = h.betti;
        for (const auto& rep : h.reps)
            deg.representatives.push_back(hc.cochain_str(k, rep));
        std::size_t total = 0;
        for (const auto& [len, sub] : blocks) {
            std::size_t b = sub.homology(k).betti;
            if (b != 0)
                deg.hodge_betti.emplace(len, b);
            total += b;
        }
        if (total != deg.betti)
            throw BrokenComplexError("Hodge pieces do not sum to the total Betti number");
        report.by_degree.push_back(std::move(deg));
    }
    return report;
}

ChainMapBlocks induced_map(const HochschildComplex& src, const HochschildComplex& tgt,
                           const CoefficientMap& theta)
{
    validate_coefficient_map(theta);
    if (!theta.source.same_shape(src.coeff()))
        throw std::logic_error("induced map: source coefficients do not match");
    if (!theta.target.same_shape(tgt.coeff()))
        throw std::logic_error("induced map: target coefficients do not match");

    int t = theta.degree;
    int klo = std::max(src.lo() - 1, tgt.lo() - 1 - t);
    int khi = std::min(src.hi() + 1, tgt.hi() + 1 - t);

    ChainMapBlocks out;
    out.shift = t;
    for (int k = klo; k <= khi; ++k) {
        const auto& cols = src.basis(k);
        la::SparseMatrix b(tgt.dim(k + t), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& e = cols[c];
            for (const auto& [r, v] : theta.block(e.word_deg + k).column(e.m_index)) {
                auto idx = tgt.index_of(k + t, e.word, r);
                assert(idx.has_value());
                b.set(*idx, c, v);
            }
        }
        out.blocks.emplace(k, std::move(b));
    }

    /* chain identity of the produced blocks */
    int sign = par(t);
    for (int k = klo; k < khi; ++k) {
        la::SparseMatrix lhs = tgt.diff(k + t) * out.blocks.at(k);
        la::SparseMatrix rhs = (out.blocks.at(k + 1) * src.diff(k)).scaled(Scalar(sign));
        if (!(lhs == rhs))
            throw BrokenComplexError("induced map '" + theta.label +
                                     "' is not a chain map in degree " + std::to_string(k));
    }
    return out;
}

ChainMapBlocks multiply_by_class(const HochschildComplex& src, const HochschildComplex& tgt,
                                 const Element& alpha)
{
    return induced_map(src, tgt, multiplication_map(src.coeff(), alpha));
}

Theorem1Record verify_theorem1(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                               const DualityData& ddA, const DualityData& ddB, int lo, int hi)
{
    Theorem1Record rec;
    const DGAlgebra& a = ddA.algebra();
    int m = ddA.formal_dim();
    int n = ddB.formal_dim();
    int shift = m - n;

    if (!morphism_surjective(f, n)) {
        rec.failure = "f is not surjective";
        return rec;
    }
    auto pre = preimage_cocycle(f, ddB.fundamental_class());
    if (pre.status != PreimageResult::Status::Ok) {
        rec.failure = pre.status == PreimageResult::Status::NoPreimage
                          ? "the small volume has no preimage"
                          : "the small volume has no cocycle preimage";
        return rec;
    }
    rec.hypotheses_ok = true;
    rec.x = pre.x;
    rec.x_star = poincare_dual_class(ddA, rec.x);

    ShriekMap fs = shriek(f, ddA, ddB);
    rec.alpha = fs.apply(ddB.algebra().one());
    rec.alpha_equals_x_star = rec.alpha == rec.x_star;

    LoopModel lm = build_loop_model(phi.source);
    CoefficientModule coeffA = CoefficientModule::from_algebra(a, phi, "A");
    CoefficientModule coeffB =
        CoefficientModule::from_algebra(ddB.algebra(), compose(f, phi), "B");

    HochschildComplex hcA = HochschildComplex::build(lm, coeffA, lo, hi + shift);
    HochschildComplex hcB = HochschildComplex::build(lm, coeffB, lo, hi);

    ChainMapBlocks chf =
        induced_map(hcA, hcB, coefficient_map_from_morphism(coeffA, coeffB, f, "f"));
    ChainMapBlocks chfs =
        induced_map(hcB, hcA, coefficient_map_from_shriek(coeffB, coeffA, fs, "f_!"));
    ChainMapBlocks mult = multiply_by_class(hcA, hcA, rec.x_star);

    rec.pass = true;
    for (int k = lo; k <= hi; ++k) {
        rec.per_degree.emplace_back(k, hcA.dim(k));
        la::SparseMatrix lhs = chfs.blocks.at(k) * chf.blocks.at(k);
        const la::SparseMatrix& rhs = mult.blocks.at(k);
        if (lhs == rhs) {
            rec.identities_checked += hcA.dim(k);
            continue;
        }
        /* locate the first offending basis cochain */
        for (std::size_t c = 0; c < hcA.dim(k); ++c) {
            if (lhs.column(c) == rhs.column(c)) {
                ++rec.identities_checked;
                continue;
            }
            if (rec.first_mismatch.empty())
                rec.first_mismatch =
                    "degree " + std::to_string(k) + ", basis " + hcA.basis_elt_str(k, c);
        }
        rec.pass = false;
    }
    return rec;
}

std::map<int, std::size_t> cp_small_complex_oracle(int n, int k, int lo, int hi)
{
    if (n < 1 || k < 0)
        throw HypothesisError("oracle needs n >= 1, k >= 0");
    int bign = n + k;

    /* basis of (^x/(x^{N+1}) (x) ^(z1, z2N)) in one upper degree:
     * triples x^a z1^e z2N^b with degree 2a - e - 2N b */
    auto basis_at = [&](int j) {
        std::vector<std::tuple<int, int, int>> out;
        for (int e = 0; e <= 1; ++e)
            for (int a = 0; a <= bign; ++a) {
                int rem = 2 * a - e - j;
                if (rem < 0 || rem % (2 * bign) != 0)
                    continue;
                out.emplace_back(a, e, rem / (2 * bign));
            }
        return out;
    };

    auto diff_at = [&](int j) {
        auto dom = basis_at(j);
        auto cod = basis_at(j + 1);
        la::SparseMatrix d(cod.size(), dom.size());
        for (std::size_t c = 0; c < dom.size(); ++c) {
            auto [a, e, b] = dom[c];
            if (e != 1 || a != 0)
                continue; /* D(x^a z2N^b) = 0 and x^{a+N} = 0 once a > 0 */
            auto want = std::make_tuple(bign, 0, b + 1);
            for (std::size_t r = 0; r < cod.size(); ++r)
                if (cod[r] == want)
                    d.set(r, c, Scalar(bign + 1));
        }
        return d;
    };

    std::map<int, std::size_t> betti;
    for (int j = lo; j <= hi; ++j) {
        std::size_t dim = basis_at(j).size();
        std::size_t r1 = la::rank(diff_at(j));
        std::size_t r0 = la::rank(diff_at(j - 1));
        betti.emplace(j, dim - r1 - r0);
    }
    return betti;
}

CorollaryRecord corollary_shriek_on_homology(const AlgebraMorphism& f, const AlgebraMorphism& phi,
                                             const DualityData& ddA, const DualityData& ddB,
                                             int lo, int hi)
{
    CorollaryRecord rec;
    int m = ddA.formal_dim();
    if (ddB.formal_dim() != m) {
        rec.failure = "formal dimensions differ";
        return rec;
    }
    rec.c = degree_scalar(f, ddA, ddB);
    if (rec.c == 0) {
        rec.failure = "model-level degree is zero";
        return rec;
    }
    rec.hypotheses_ok = true;

    LoopModel lm = build_loop_model(phi.source);
    CoefficientModule coeffA = CoefficientModule::from_algebra(ddA.algebra(), phi, "A");
    CoefficientModule coeffB =
        CoefficientModule::from_algebra(ddB.algebra(), compose(f, phi), "B");
    CoefficientModule dualA = coeffA.dualize();
    CoefficientModule dualB = coeffB.dualize();

    HochschildComplex hcAd = HochschildComplex::build(lm, dualA, lo, hi);
    HochschildComplex hcA = HochschildComplex::build(lm, coeffA, lo + m, hi + m);
    HochschildComplex hcB = HochschildComplex::build(lm, coeffB, lo + m, hi + m);
    HochschildComplex hcBd = HochschildComplex::build(lm, dualB, lo, hi);

    ChainMapBlocks u = induced_map(hcAd, hcA, pi_inverse_map(dualA, coeffA, ddA));
    ChainMapBlocks v =
        induced_map(hcA, hcB, coefficient_map_from_morphism(coeffA, coeffB, f, "f"));
    ChainMapBlocks w = induced_map(hcB, hcBd, pi_map(coeffB, dualB, ddB));

    ChainMapBlocks composite;
    composite.shift = 0;
    for (int kk = lo - 1; kk <= hi + 1; ++kk) {
        if (!u.blocks.count(kk) || !v.blocks.count(kk + m) || !w.blocks.count(kk + m))
            continue;
        composite.blocks.emplace(kk,
                                 w.blocks.at(kk + m) * (v.blocks.at(kk + m) * u.blocks.at(kk)));
    }

    rec.per_degree =
        induced_on_cohomology(hcAd.as_complex(), hcBd.as_complex(), composite, lo, hi);
    rec.injective_all = true;
    for (const auto& d : rec.per_degree)
        rec.injective_all = rec.injective_all && d.injective;
    return rec;
}

la::SparseVec cup_product(const HochschildComplex& hc, int k1, const la::SparseVec& g1, int k2,
                          const la::SparseVec& g2)
{
    const CoefficientModule& mod = hc.coeff();
    if (!mod.is_algebra())
        throw HypothesisError("cup products need algebra coefficients");
    const DGAlgebra& carrier = mod.carrier();
    const LoopModel& lm = hc.loop();
    const DGAlgebra& total = lm.total;

    /* value of a cochain on one bar word */
    auto value_on = [&](int k, const la::SparseVec& g, const ExpVec& w, int wdeg) {
        Element val;
        std::size_t mdim = mod.dim(wdeg + k);
        for (std::size_t mi = 0; mi < mdim; ++mi) {
            auto idx = hc.index_of(k, w, mi);
            if (!idx)
                continue;
            auto it = g.find(*idx);
            if (it != g.end())
                val += mod.carrier_element(wdeg + k, mi).scaled(it->second);
        }
        return val;
    };

    int kout = k1 + k2;
    la::SparseVec out;
    for (const auto& e : hc.basis(kout)) {
        if (e.m_index != 0)
            continue; /* one pass per distinct word */
        const ExpVec& w = e.word;

        /* Delta(w) as tensor terms (wl, wr, coeff) */
        std::vector<std::tuple<ExpVec, ExpVec, Scalar>> terms{
            {ExpVec(total.gen_count(), 0), ExpVec(total.gen_count(), 0), Scalar(1)}};
        for (std::size_t g = lm.base_gens; g < total.gen_count(); ++g) {
            for (int rep = 0; rep < w[g]; ++rep) {
                ExpVec bar(total.gen_count(), 0);
                bar[g] = 1;
                int bar_deg = total.generators()[g].degree;
                std::vector<std::tuple<ExpVec, ExpVec, Scalar>> next;
                for (const auto& [wl, wr, c] : terms) {
                    /* (wl (x) wr)(vbar (x) 1): sign from moving vbar past wr */
                    if (auto fm = free_mul(total.generators(), wl, bar)) {
                        int s = par(static_cast<long>(total.monomial_degree(wr)) * bar_deg);
                        next.emplace_back(fm->second, wr, c * fm->first * s);
                    }
                    if (auto fm = free_mul(total.generators(), wr, bar))
                        next.emplace_back(wl, fm->second, c * fm->first);
                }
                terms = std::move(next);
            }
        }

        Element val;
        for (const auto& [wl, wr, c] : terms) {
            int dl = total.monomial_degree(wl);
            int dr = total.monomial_degree(wr);
            Element v1 = value_on(k1, g1, wl, dl);
            if (v1.is_zero())
                continue;
            Element v2 = value_on(k2, g2, wr, dr);
            if (v2.is_zero())
                continue;
            /* Koszul: gamma2 moves past wl */
            int s = par(static_cast<long>(k2) * dl);
            val += carrier.mul(v1, v2).scaled(c * s);
        }
        if (val.is_zero())
            continue;
        for (const auto& [mi, c] : coords(carrier, e.word_deg + kout, val)) {
            auto idx = hc.index_of(kout, w, mi);
            assert(idx.has_value());
            out.emplace(*idx, c);
        }
    }
    return out;
}

la::SparseVec unit_cochain(const HochschildComplex& hc)
{
    if (!hc.coeff().is_algebra())
        throw HypothesisError("unit cochain needs algebra coefficients");
    ExpVec one_word(hc.loop().total.gen_count(), 0);
    auto idx = hc.index_of(0, one_word, 0);
    if (!idx)
        throw std::logic_error("degree 0 is outside the built window");
    return la::SparseVec{{*idx, Scalar(1)}};
}

}  // namespace rht
