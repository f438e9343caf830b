#include "rht/complexes.hpp"

namespace rht {

std::size_t DegreewiseComplex::dim(int k) const
{
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
}

la::SparseMatrix DegreewiseComplex::diff(int k) const
{
    auto it = d.find(k);
    if (it != d.end())
        return it->second;
    return la::SparseMatrix(dim(k + 1), dim(k));
}

DegreewiseComplex::HomologyAt DegreewiseComplex::homology(int k) const
{
    HomologyAt h;
    h.cycles = la::kernel_basis(diff(k));
    h.boundaries = la::image_basis(diff(k - 1));
    h.boundaries.ambient_dim = h.cycles.ambient_dim;
    auto q = la::quotient_dim_and_reps(h.cycles, h.boundaries);
    h.reps = q.representatives;
    h.betti = q.dim;
    return h;
}

void DegreewiseComplex::check_composes_to_zero() const
{
    for (const auto& [k, dk] : d) {
        auto it = d.find(k + 1);
        if (it == d.end())
            continue;
        if (!(it->second * dk).is_zero())
            throw BrokenComplexError("differential does not square to zero in degree " +
                                     std::to_string(k));
    }
}

la::SparseMatrix ChainMapBlocks::block(int k, std::size_t rows, std::size_t cols) const
{
    auto it = blocks.find(k);
    if (it != blocks.end())
        return it->second;
    return la::SparseMatrix(rows, cols);
}

bool chain_map_commutes(const DegreewiseComplex& src, const DegreewiseComplex& tgt,
                        const ChainMapBlocks& t, int sign, int lo, int hi)
{
    for (int k = lo; k < hi; ++k) {
        la::SparseMatrix tk = t.block(k, tgt.dim(k + t.shift), src.dim(k));
        la::SparseMatrix tk1 = t.block(k + 1, tgt.dim(k + 1 + t.shift), src.dim(k + 1));
        la::SparseMatrix lhs = tgt.diff(k + t.shift) * tk;
        la::SparseMatrix rhs = (tk1 * src.diff(k)).scaled(Scalar(sign));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

std::vector<HMapDegree> induced_on_cohomology(const DegreewiseComplex& src,
                                              const DegreewiseComplex& tgt,
                                              const ChainMapBlocks& t, int lo, int hi)
{
    std::vector<HMapDegree> out;
    for (int k = lo; k <= hi; ++k) {
        HMapDegree hd;
        hd.degree = k;
        auto hs = src.homology(k);
        auto ht = tgt.homology(k + t.shift);
        hd.source_betti = hs.betti;
        hd.target_betti = ht.betti;

        la::SparseMatrix tk = t.block(k, tgt.dim(k + t.shift), src.dim(k));
        std::vector<la::SparseVec> span = ht.boundaries.vectors;
        span.insert(span.end(), ht.reps.begin(), ht.reps.end());
        la::SubspaceBasis span_basis{ht.cycles.ambient_dim, span};

        std::vector<la::SparseVec> hcols;
        for (const auto& rep : hs.reps) {
            la::SparseVec img = tk.apply(rep);
            auto sol = la::coords_in_span(span_basis, img);
            if (!sol)
                throw BrokenComplexError("chain map image is not a cocycle in degree " +
                                         std::to_string(k));
            la::SparseVec hv;
            for (const auto& [i, c] : *sol)
                if (i >= ht.boundaries.vectors.size())
                    hv.emplace(i - ht.boundaries.vectors.size(), c);
            hcols.push_back(std::move(hv));
        }
        hd.rank = la::rank(la::SparseMatrix::from_columns(ht.betti, hcols));
        hd.injective = hd.rank == hd.source_betti;
        hd.bijective = hd.injective && hd.source_betti == hd.target_betti;
        out.push_back(hd);
    }
    return out;
}

}  // namespace rht
