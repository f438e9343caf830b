#include "rht/loop.hpp"

#include <algorithm>
#include <cassert>

namespace rht {

std::vector<ExpVec> LoopModel::words_of_degree(int d) const
{
    std::vector<ExpVec> out;
    if (d < 0)
        return out;
    ExpVec cur(total.gen_count(), 0);
    const auto& gens = total.generators();

    /* bar generators sit after the base ones */
    auto rec = [&](auto&& self, int rem, std::size_t i) -> void {
        if (rem == 0) {
            for (std::size_t j = i; j < total.gen_count(); ++j)
                cur[j] = 0;
            out.push_back(cur);
            return;
        }
        if (i == total.gen_count() || rem < 0)
            return;
        int deg = gens[i].degree;
        int emax = rem / deg;
        if (gens[i].odd())
            emax = std::min(emax, 1);
        for (int e = 0; e <= emax; ++e) {
            cur[i] = e;
            self(self, rem - e * deg, i + 1);
        }
        cur[i] = 0;
    };
    rec(rec, d, base_gens);
    std::sort(out.begin(), out.end());
    return out;
}

int LoopModel::word_length(const ExpVec& total_mono) const
{
    int len = 0;
    for (std::size_t i = base_gens; i < total.gen_count(); ++i)
        len += total_mono[i];
    return len;
}

std::pair<ExpVec, ExpVec> LoopModel::split(const ExpVec& total_mono) const
{
    ExpVec v(base_gens, 0), w(total.gen_count(), 0);
    for (std::size_t i = 0; i < base_gens; ++i)
        v[i] = total_mono[i];
    for (std::size_t i = base_gens; i < total.gen_count(); ++i)
        w[i] = total_mono[i];
    return {v, w};
}

Element LoopModel::embed(const Element& base_element) const
{
    Element out;
    for (const auto& [m, c] : base_element.terms) {
        ExpVec t(total.gen_count(), 0);
        for (std::size_t i = 0; i < base_gens; ++i)
            t[i] = m[i];
        out.add_term(t, c);
    }
    return out;
}

LoopModel build_loop_model(const DGAlgebra& base)
{
    if (base.kind() != AlgebraKind::SullivanFree)
        throw HypothesisError("loop models are built over free Sullivan algebras");
    if (!base.simply_connected())
        throw HypothesisError("loop models need a simply connected base");

    std::vector<Generator> gens = base.generators();
    for (const auto& g : base.generators()) {
        std::string name = g.name + "b";
        while (std::any_of(gens.begin(), gens.end(),
                           [&](const Generator& h) { return h.name == name; }))
            name += "b";
        gens.push_back({name, g.degree - 1});
    }

    LoopModel lm;
    lm.base = base;
    lm.base_gens = base.gen_count();

    /* suspension S on the total algebra with zero differential */
    DGAlgebra plain(AlgebraKind::SullivanFree, gens);
    plain.finalize();
    std::vector<Element> s_values(gens.size());
    for (std::size_t i = 0; i < base.gen_count(); ++i)
        s_values[i] = plain.generator_element(base.gen_count() + i);
    ExtendedDerivation s(identity_morphism(plain), s_values, -1);

    DGAlgebra total(AlgebraKind::SullivanFree, gens);
    for (std::size_t i = 0; i < base.gen_count(); ++i) {
        Element dv;
        for (const auto& [m, c] : base.d_of_generator(i).terms) {
            ExpVec t(gens.size(), 0);
            for (std::size_t j = 0; j < base.gen_count(); ++j)
                t[j] = m[j];
            dv.add_term(t, c);
        }
        total.set_differential(gens[i].name, dv);
        total.set_differential(gens[base.gen_count() + i].name, -s.eval(dv));
    }
    total.finalize(); /* rechecks D^2 = 0 on every generator */
    lm.total = total;

    /* D preserves the bar word length (the Hodge property) */
    for (std::size_t i = 0; i < lm.total.gen_count(); ++i) {
        int want = i < lm.base_gens ? 0 : 1;
        for (const auto& [m, c] : lm.total.d_of_generator(i).terms) {
            (void)c;
            if (lm.word_length(m) != want)
                throw BrokenComplexError("loop differential does not preserve word length");
        }
    }
    return lm;
}

CohomologyReport loop_cohomology(const LoopModel& lm, int lo, int hi)
{
    return cohomology(lm.total, lo, hi);
}

}  // namespace rht
