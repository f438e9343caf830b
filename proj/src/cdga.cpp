#include "rht/cdga.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rht {

Element& Element::operator+=(const Element& rhs)
{
    for (const auto& [m, c] : rhs.terms)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& rhs)
{
    for (const auto& [m, c] : rhs.terms)
        add_term(m, -c);
    return *this;
}

Element Element::operator+(const Element& rhs) const
{
    Element e = *this;
    e += rhs;
    return e;
}

Element Element::operator-(const Element& rhs) const
{
    Element e = *this;
    e -= rhs;
    return e;
}

Element Element::operator-() const
{
    return scaled(Scalar(-1));
}

Element Element::scaled(const Scalar& c) const
{
    Element e;
    if (c == 0)
        return e;
    for (const auto& [m, x] : terms)
        e.terms.emplace(m, c * x);
    return e;
}

void Element::add_term(const ExpVec& mono, const Scalar& c)
{
    if (c == 0)
        return;
    auto it = terms.find(mono);
    if (it == terms.end()) {
        terms.emplace(mono, c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

std::optional<std::pair<int, ExpVec>> free_mul(const std::vector<Generator>& gens, const ExpVec& a,
                                               const ExpVec& b)
{
    assert(a.size() == gens.size() && b.size() == gens.size());
    ExpVec prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        prod[i] = a[i] + b[i];
        if (gens[i].odd() && prod[i] > 1)
            return std::nullopt;
    }
    /* Koszul sign: each odd factor of b moves left past the later odd factors of a */
    long swaps = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!gens[i].odd() || b[i] == 0)
            continue;
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (gens[j].odd() && a[j] != 0)
                swaps += static_cast<long>(b[i]) * a[j];
    }
    return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(prod));
}

namespace {

int exp_degree(const std::vector<Generator>& gens, const ExpVec& m)
{
    int d = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        d += m[i] * gens[i].degree;
    return d;
}

/* graded lexicographic order: by degree, then by exponent vector */
bool grlex_less(const std::vector<Generator>& gens, const ExpVec& a, const ExpVec& b)
{
    int da = exp_degree(gens, a), db = exp_degree(gens, b);
    if (da != db)
        return da < db;
    return a < b;
}

bool divides(const ExpVec& lead, const ExpVec& m)
{
    for (std::size_t i = 0; i < lead.size(); ++i)
        if (lead[i] > m[i])
            return false;
    return true;
}

}  // namespace

DGAlgebra::DGAlgebra(AlgebraKind kind, std::vector<Generator> gens)
    : kind_(kind), gens_(std::move(gens))
{
    std::set<std::string> seen;
    for (const auto& g : gens_) {
        if (g.degree < 1)
            throw SpecParseError("generator " + g.name + " must have degree >= 1");
        if (!seen.insert(g.name).second)
            throw SpecParseError("duplicate generator name " + g.name);
    }
    diff_.assign(gens_.size(), Element{});
    power_cap_.assign(gens_.size(), 0);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].odd())
            power_cap_[i] = 2;
}

int DGAlgebra::generator_index(std::string_view name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

void DGAlgebra::add_relation(const Element& rel)
{
    if (finalized_)
        throw std::logic_error("algebra already finalized");
    if (rel.is_zero())
        return;
    relations_.push_back(rel);
}

void DGAlgebra::set_differential(const std::string& gen, const Element& value)
{
    if (finalized_)
        throw std::logic_error("algebra already finalized");
    int i = generator_index(gen);
    if (i < 0)
        throw SpecParseError("unknown generator in differential: " + gen);
    diff_[static_cast<std::size_t>(i)] = value;
}

void DGAlgebra::finalize()
{
    if (finalized_)
        return;
    if (kind_ == AlgebraKind::SullivanFree && !relations_.empty())
        throw SpecParseError("a free Sullivan algebra cannot carry relations");

    /* split relations into monomial powers (direct truncation) and general
     * homogeneous ones, reduced by substituting the leading monomial */
    for (const Element& rel : relations_) {
        if (!is_homogeneous(rel))
            throw SpecParseError("relations must be homogeneous");
        if (rel.terms.size() == 1) {
            const auto& [m, c] = *rel.terms.begin();
            (void)c;
            int nz = -1;
            bool pure = true;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0)
                    continue;
                if (nz >= 0) {
                    pure = false;
                    break;
                }
                nz = static_cast<int>(i);
            }
            if (pure && nz >= 0) {
                std::size_t g = static_cast<std::size_t>(nz);
                if (power_cap_[g] == 0 || m[g] < power_cap_[g])
                    power_cap_[g] = m[g];
                continue;
            }
        }
        /* general relation: lead = grlex-largest monomial */
        ExpVec lead = rel.terms.begin()->first;
        for (const auto& [m, c] : rel.terms) {
            (void)c;
            if (grlex_less(gens_, lead, m))
                lead = m;
        }
        Scalar c0 = rel.terms.at(lead);
        Element tail;
        for (const auto& [m, c] : rel.terms)
            if (m != lead)
                tail.add_term(m, -c / c0);
        general_rels_.emplace_back(lead, std::move(tail));
    }

    /* the supported relation class is triangular: no lead divides the
     * support of another relation */
    for (const auto& [lead, tail] : general_rels_) {
        for (const auto& [lead2, tail2] : general_rels_) {
            if (&lead == &lead2)
                continue;
            if (divides(lead, lead2))
                throw SpecParseError("relation set is not triangular");
            for (const auto& [m, c] : tail2.terms) {
                (void)c;
                if (divides(lead, m))
                    throw SpecParseError("relation set is not triangular");
            }
        }
    }

    finalized_ = true;
    basis_cache_ = std::make_shared<BasisCache>();

    /* differential degree and d^2 = 0 checks */
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (diff_[i].is_zero())
            continue;
        if (!is_homogeneous(diff_[i]) || degree_of(diff_[i]) != gens_[i].degree + 1) {
            finalized_ = false;
            throw SpecParseError("differential of " + gens_[i].name + " must raise degree by 1");
        }
    }
    check_differential_squares_to_zero();

    /* d must preserve the relation ideal */
    for (const Element& rel : relations_) {
        if (!d(rel).is_zero()) {
            finalized_ = false;
            throw SpecParseError("differential does not preserve the relation ideal");
        }
    }
}

void DGAlgebra::check_differential_squares_to_zero() const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!d(diff_[i]).is_zero())
            throw BrokenComplexError("d^2 != 0 on generator " + gens_[i].name);
}

bool DGAlgebra::finite_dimensional() const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (power_cap_[i] == 0)
            return false;
    return true;
}

int DGAlgebra::top_degree() const
{
    if (!finite_dimensional())
        throw HypothesisError("algebra is not finite dimensional");
    int cand = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        cand += (power_cap_[i] - 1) * gens_[i].degree;
    for (int n = cand; n >= 0; --n)
        if (!basis_of_degree(n).empty())
            return n;
    return 0;
}

int DGAlgebra::monomial_degree(const ExpVec& m) const
{
    return exp_degree(gens_, m);
}

bool DGAlgebra::is_homogeneous(const Element& e) const
{
    if (e.is_zero())
        return true;
    int d0 = monomial_degree(e.terms.begin()->first);
    for (const auto& [m, c] : e.terms) {
        (void)c;
        if (monomial_degree(m) != d0)
            return false;
    }
    return true;
}

int DGAlgebra::degree_of(const Element& e) const
{
    if (e.is_zero())
        return 0;
    if (!is_homogeneous(e))
        throw std::logic_error("degree of a mixed-degree element");
    return monomial_degree(e.terms.begin()->first);
}

Element DGAlgebra::one() const
{
    Element e;
    e.terms.emplace(ExpVec(gens_.size(), 0), Scalar(1));
    return e;
}

Element DGAlgebra::generator_element(std::size_t i) const
{
    ExpVec m(gens_.size(), 0);
    m[i] = 1;
    Element e;
    e.terms.emplace(std::move(m), Scalar(1));
    return e;
}

Element DGAlgebra::monomial_element(const ExpVec& m) const
{
    return reduce_monomial(m, Scalar(1));
}

Element DGAlgebra::reduce_monomial(const ExpVec& m, const Scalar& c) const
{
    assert(m.size() == gens_.size());
    if (c == 0)
        return Element{};
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (power_cap_[i] > 0 && m[i] >= power_cap_[i])
            return Element{};
    for (const auto& [lead, tail] : general_rels_) {
        if (!divides(lead, m))
            continue;
        ExpVec q(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            q[i] = m[i] - lead[i];
        auto fm = free_mul(gens_, lead, q);
        assert(fm.has_value());
        /* mono(m) = sign * lead * q; substitute lead by its tail */
        Element qe;
        qe.terms.emplace(std::move(q), Scalar(1));
        Element out = mul(tail, qe).scaled(c * fm->first);
        return out;
    }
    Element e;
    e.terms.emplace(m, c);
    return e;
}

Element DGAlgebra::mul(const Element& a, const Element& b) const
{
    Element out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            auto fm = free_mul(gens_, ma, mb);
            if (!fm)
                continue;
            out += reduce_monomial(fm->second, ca * cb * fm->first);
        }
    return out;
}

Element DGAlgebra::d(const Element& e) const
{
    Element out;
    for (const auto& [m, c] : e.terms) {
        int prefix_deg = 0;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (m[i] > 0 && !diff_[i].is_zero()) {
                ExpVec before(gens_.size(), 0), after(gens_.size(), 0);
                for (std::size_t j = 0; j < i; ++j)
                    before[j] = m[j];
                before[i] = m[i] - 1;
                for (std::size_t j = i + 1; j < gens_.size(); ++j)
                    after[j] = m[j];
                Element left = reduce_monomial(before, Scalar(1));
                Element right = reduce_monomial(after, Scalar(1));
                Element term = mul(mul(left, diff_[i]), right);
                Scalar coeff = c * m[i] * (prefix_deg % 2 == 0 ? 1 : -1);
                out += term.scaled(coeff);
            }
            prefix_deg += m[i] * gens_[i].degree;
        }
    }
    return out;
}

void DGAlgebra::enumerate(int n, std::size_t i, ExpVec& cur, std::vector<ExpVec>& out) const
{
    if (n == 0) {
        for (std::size_t j = i; j < gens_.size(); ++j)
            cur[j] = 0;
        /* staircase: skip monomials reducible by a general relation lead */
        for (const auto& [lead, tail] : general_rels_) {
            (void)tail;
            if (divides(lead, cur))
                return;
        }
        out.push_back(cur);
        return;
    }
    if (i == gens_.size() || n < 0)
        return;
    int deg = gens_[i].degree;
    int emax = n / deg;
    if (power_cap_[i] > 0)
        emax = std::min(emax, power_cap_[i] - 1);
    for (int e = 0; e <= emax; ++e) {
        cur[i] = e;
        enumerate(n - e * deg, i + 1, cur, out);
    }
    cur[i] = 0;
}

std::vector<ExpVec> DGAlgebra::basis_of_degree(int n) const
{
    if (!finalized_)
        throw std::logic_error("basis requested before finalize");
    if (n < 0)
        return {};
    std::lock_guard<std::mutex> lock(basis_cache_->mu);
    auto it = basis_cache_->map.find(n);
    if (it != basis_cache_->map.end())
        return it->second;
    std::vector<ExpVec> out;
    ExpVec cur(gens_.size(), 0);
    enumerate(n, 0, cur, out);
    std::sort(out.begin(), out.end());
    basis_cache_->map.emplace(n, out);
    return out;
}

bool DGAlgebra::simply_connected() const
{
    for (const auto& g : gens_)
        if (g.degree < 2)
            return false;
    return true;
}

bool DGAlgebra::same_presentation(const DGAlgebra& other) const
{
    if (gens_.size() != other.gens_.size())
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree)
            return false;
    auto rel_set = [](const DGAlgebra& a) {
        std::set<std::map<ExpVec, Scalar>> s;
        for (const auto& r : a.relations_)
            s.insert(r.terms);
        return s;
    };
    if (rel_set(*this) != rel_set(other))
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!(diff_[i] == other.diff_[i]))
            return false;
    return true;
}

Element normal_form(const DGAlgebra& alg, const std::vector<std::pair<int, int>>& factors,
                    const Scalar& coeff)
{
    Element acc = alg.one().scaled(coeff);
    for (const auto& [gen, exp] : factors) {
        if (gen < 0 || static_cast<std::size_t>(gen) >= alg.gen_count())
            throw SpecParseError("unknown generator index in term");
        Element g = alg.generator_element(static_cast<std::size_t>(gen));
        for (int k = 0; k < exp; ++k)
            acc = alg.mul(acc, g);
    }
    return acc;
}

std::string element_str(const DGAlgebra& alg, const Element& e)
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        Scalar a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        std::string monos;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!monos.empty())
                monos += "*";
            monos += alg.generators()[i].name;
            if (m[i] > 1)
                monos += "^" + std::to_string(m[i]);
        }
        if (monos.empty()) {
            os << scalar_str(a);
        } else {
            if (a != 1)
                os << scalar_str(a) << "*";
            os << monos;
        }
    }
    return os.str();
}

AlgebraMorphism identity_morphism(const DGAlgebra& alg)
{
    AlgebraMorphism f{alg, alg, {}};
    for (std::size_t i = 0; i < alg.gen_count(); ++i)
        f.images.push_back(alg.generator_element(i));
    return f;
}

AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner)
{
    AlgebraMorphism f{inner.source, outer.target, {}};
    for (const Element& img : inner.images)
        f.images.push_back(apply(outer, img));
    return f;
}

Element apply(const AlgebraMorphism& f, const Element& e)
{
    Element out;
    for (const auto& [m, c] : e.terms) {
        Element term = f.target.one();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k)
                term = f.target.mul(term, f.images[i]);
        out += term.scaled(c);
    }
    return out;
}

void validate_morphism(const AlgebraMorphism& f)
{
    if (f.images.size() != f.source.gen_count())
        throw SpecParseError("morphism image count mismatch");
    for (std::size_t i = 0; i < f.images.size(); ++i) {
        const Element& img = f.images[i];
        if (img.is_zero())
            continue;
        if (!f.target.is_homogeneous(img) ||
            f.target.degree_of(img) != f.source.generators()[i].degree)
            throw SpecParseError("morphism is not degree preserving on " +
                                 f.source.generators()[i].name);
    }
    for (const Element& rel : f.source.relations())
        if (!apply(f, rel).is_zero())
            throw SpecParseError("morphism does not kill a relation");
    for (std::size_t i = 0; i < f.source.gen_count(); ++i) {
        Element lhs = apply(f, f.source.d_of_generator(i));
        Element rhs = f.target.d(f.images[i]);
        if (!(lhs == rhs))
            throw SpecParseError("morphism does not commute with the differentials on " +
                                 f.source.generators()[i].name);
    }
}

ExtendedDerivation::ExtendedDerivation(AlgebraMorphism along, std::vector<Element> values,
                                       int offset)
    : along_(std::move(along)), values_(std::move(values)), offset_(offset)
{
    if (values_.size() != along_.source.gen_count())
        throw std::logic_error("derivation value count mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].is_zero())
            continue;
        int want = along_.source.generators()[i].degree + offset_;
        if (!along_.target.is_homogeneous(values_[i]) ||
            along_.target.degree_of(values_[i]) != want)
            throw std::logic_error("derivation value has wrong degree on " +
                                   along_.source.generators()[i].name);
    }
}

Element ExtendedDerivation::eval_monomial(const ExpVec& m) const
{
    const DGAlgebra& src = along_.source;
    const DGAlgebra& tgt = along_.target;
    std::size_t i = 0;
    while (i < m.size() && m[i] == 0)
        ++i;
    if (i == m.size())
        return Element{}; /* derivations vanish on 1 */

    ExpVec rest = m;
    rest[i] -= 1;
    Element rest_el;
    rest_el.terms.emplace(rest, Scalar(1));

    /* th(g * rest) = th(g) f(rest) + (-1)^{offset |g|} f(g) th(rest) */
    Element out = tgt.mul(values_[i], apply(along_, rest_el));
    Element tail = eval_monomial(rest);
    if (!tail.is_zero()) {
        int sign = (offset_ * src.generators()[i].degree) % 2 == 0 ? 1 : -1;
        out += tgt.mul(apply(along_, src.generator_element(i)), tail).scaled(Scalar(sign));
    }
    return out;
}

Element ExtendedDerivation::eval(const Element& e) const
{
    Element out;
    for (const auto& [m, c] : e.terms)
        out += eval_monomial(m).scaled(c);
    return out;
}

la::SparseMatrix differential_matrix(const DGAlgebra& alg, int n)
{
    auto dom = alg.basis_of_degree(n);
    auto cod = alg.basis_of_degree(n + 1);
    la::SparseMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Element img = alg.d(alg.monomial_element(dom[j]));
        for (const auto& [mono, c] : coords(alg, n + 1, img))
            m.set(mono, j, c);
    }
    return m;
}

la::SparseMatrix morphism_matrix(const AlgebraMorphism& f, int n)
{
    auto dom = f.source.basis_of_degree(n);
    auto cod = f.target.basis_of_degree(n);
    la::SparseMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Element img = apply(f, f.source.monomial_element(dom[j]));
        for (const auto& [r, c] : coords(f.target, n, img))
            m.set(r, j, c);
    }
    return m;
}

la::SparseVec coords(const DGAlgebra& alg, int degree, const Element& e)
{
    la::SparseVec v;
    if (e.is_zero())
        return v;
    auto basis = alg.basis_of_degree(degree);
    for (const auto& [m, c] : e.terms) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m)
            throw std::logic_error("element does not live in the stated degree");
        v.emplace(static_cast<std::size_t>(it - basis.begin()), c);
    }
    return v;
}

Element element_from_coords(const DGAlgebra& alg, int degree, const la::SparseVec& v)
{
    auto basis = alg.basis_of_degree(degree);
    Element e;
    for (const auto& [i, c] : v) {
        assert(i < basis.size());
        e.add_term(basis[i], c);
    }
    return e;
}

std::size_t CohomologyReport::betti(int degree) const
{
    for (const auto& d : by_degree)
        if (d.degree == degree)
            return d.betti;
    return 0;
}

CohomologyReport cohomology(const DGAlgebra& alg, int lo, int hi)
{
    CohomologyReport report;
    for (int n = lo; n <= hi; ++n) {
        DegreeHomology h;
        h.degree = n;
        if (alg.basis_of_degree(n).empty()) {
            report.by_degree.push_back(std::move(h));
            continue;
        }
        auto cycles = la::kernel_basis(differential_matrix(alg, n));
        auto boundaries = la::image_basis(differential_matrix(alg, n - 1));
        boundaries.ambient_dim = cycles.ambient_dim;
        auto q = la::quotient_dim_and_reps(cycles, boundaries);
        h.betti = q.dim;
        for (const auto& rep : q.representatives)
            h.representatives.push_back(element_from_coords(alg, n, rep));
        report.by_degree.push_back(std::move(h));
    }
    return report;
}

QuasiIsoReport verify_quasi_iso(const AlgebraMorphism& f, int lo, int hi)
{
    QuasiIsoReport report;
    report.ok = true;
    for (int n = lo; n <= hi; ++n) {
        QuasiIsoDegree qd;
        qd.degree = n;

        auto src_cycles = la::kernel_basis(differential_matrix(f.source, n));
        auto src_bound = la::image_basis(differential_matrix(f.source, n - 1));
        src_bound.ambient_dim = src_cycles.ambient_dim;
        auto src_q = la::quotient_dim_and_reps(src_cycles, src_bound);
        qd.source_betti = src_q.dim;

        auto tgt_cycles = la::kernel_basis(differential_matrix(f.target, n));
        auto tgt_bound = la::image_basis(differential_matrix(f.target, n - 1));
        tgt_bound.ambient_dim = tgt_cycles.ambient_dim;
        auto tgt_q = la::quotient_dim_and_reps(tgt_cycles, tgt_bound);
        qd.target_betti = tgt_q.dim;

        /* H(f) in the quotient bases */
        std::vector<la::SparseVec> hcols;
        bool chain_ok = true;
        for (const auto& rep : src_q.representatives) {
            Element img = apply(f, element_from_coords(f.source, n, rep));
            la::SparseVec iv = coords(f.target, n, img);
            std::vector<la::SparseVec> span = tgt_bound.vectors;
            span.insert(span.end(), tgt_q.representatives.begin(), tgt_q.representatives.end());
            auto sol = la::coords_in_span(la::SubspaceBasis{tgt_cycles.ambient_dim, span}, iv);
            if (!sol) {
                chain_ok = false;
                break;
            }
            la::SparseVec hv;
            for (const auto& [i, c] : *sol)
                if (i >= tgt_bound.vectors.size())
                    hv.emplace(i - tgt_bound.vectors.size(), c);
            hcols.push_back(std::move(hv));
        }
        std::size_t r =
            chain_ok ? la::rank(la::SparseMatrix::from_columns(tgt_q.dim, hcols)) : 0;
        qd.bijective = chain_ok && qd.source_betti == qd.target_betti && r == qd.source_betti;
        report.ok = report.ok && qd.bijective;
        report.by_degree.push_back(qd);
    }
    return report;
}

}  // namespace rht
