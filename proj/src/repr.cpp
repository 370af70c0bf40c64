#include "hspsim/repr.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hspsim {

RootTable::RootTable(u64 n) : n_(n), roots_(n) {
    for (u64 k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots_[k] = {std::cos(theta), std::sin(theta)};
    }
}

Irrep sigma_affine(const GroupSpec& spec, u64 t, std::shared_ptr<const DlogTable> dlog) {
    if (spec.kind != GroupKind::affine) throw std::invalid_argument("sigma_affine: wrong family");
    if (!dlog) dlog = std::make_shared<DlogTable>(spec.p, spec.gamma);
    auto roots = std::make_shared<RootTable>(spec.p - 1);
    return {"sigma_" + std::to_string(t), 0, static_cast<i64>(t), 1,
            [t, dlog, roots](const GroupElement& g) {
                Matrix m(1, 1);
                m(0, 0) = (*roots)(static_cast<i64>(mod_mul(t, dlog->log(g.a), roots->n())));
                return m;
            }};
}

Irrep rho_affine(const GroupSpec& spec) {
    if (spec.kind != GroupKind::affine) throw std::invalid_argument("rho_affine: wrong family");
    u64 p = spec.p;
    auto roots = std::make_shared<RootTable>(p);
    return {"rho", 1, 0, static_cast<i64>(p - 1),
            [p, roots](const GroupElement& g) {
                Matrix m = Matrix::Zero(p - 1, p - 1);
                for (u64 j = 1; j < p; ++j)
                    m(j - 1, mod_mul(g.a, j, p) - 1) = (*roots)(static_cast<i64>(mod_mul(g.b, j, p)));
                return m;
            }};
}

Irrep sigma_qhedral(const GroupSpec& spec, u64 ell, std::shared_ptr<const DlogTable> dlog) {
    if (spec.kind != GroupKind::qhedral) throw std::invalid_argument("sigma_qhedral: wrong family");
    if (!dlog) dlog = std::make_shared<DlogTable>(spec.p, spec.a);
    auto roots = std::make_shared<RootTable>(spec.q);
    return {"sigma_" + std::to_string(ell), 0, static_cast<i64>(ell), 1,
            [ell, dlog, roots](const GroupElement& g) {
                Matrix m(1, 1);
                m(0, 0) = (*roots)(static_cast<i64>(mod_mul(ell, dlog->log(g.a), roots->n())));
                return m;
            }};
}

Irrep rho_qhedral(const GroupSpec& spec, u64 k, std::shared_ptr<const DlogTable> dlog) {
    if (spec.kind != GroupKind::qhedral) throw std::invalid_argument("rho_qhedral: wrong family");
    if (!dlog) dlog = std::make_shared<DlogTable>(spec.p, spec.a);
    u64 p = spec.p, q = spec.q;
    auto roots = std::make_shared<RootTable>(p);
    // k a^s mod p for s = 0..q-1
    auto kpow = std::make_shared<std::vector<u64>>(q);
    (*kpow)[0] = k % p;
    for (u64 s = 1; s < q; ++s) (*kpow)[s] = mod_mul((*kpow)[s - 1], spec.a, p);
    return {"rho_" + std::to_string(k), 1, static_cast<i64>(k), static_cast<i64>(q),
            [p, q, dlog, roots, kpow](const GroupElement& g) {
                u64 u = dlog->log(g.a);
                Matrix m = Matrix::Zero(q, q);
                for (u64 s = 0; s < q; ++s)
                    m(s, (s + u) % q) = (*roots)(static_cast<i64>(mod_mul((*kpow)[s], g.b, p)));
                return m;
            }};
}

std::vector<Irrep> all_irreps(const GroupSpec& spec) {
    std::vector<Irrep> out;
    if (spec.kind == GroupKind::affine) {
        auto dlog = std::make_shared<DlogTable>(spec.p, spec.gamma);
        for (u64 t = 0; t < spec.p - 1; ++t) out.push_back(sigma_affine(spec, t, dlog));
        out.push_back(rho_affine(spec));
    } else {
        auto dlog = std::make_shared<DlogTable>(spec.p, spec.a);
        for (u64 ell = 0; ell < spec.q; ++ell) out.push_back(sigma_qhedral(spec, ell, dlog));
        CosetStructure cs(spec.p, spec.a);
        for (u64 k : cs.reps()) out.push_back(rho_qhedral(spec, k, dlog));
    }
    return out;
}

Projector subgroup_projector(const Irrep& rep, const SubgroupDesc& h, const GroupSpec& spec) {
    auto elems = enumerate_subgroup(h, spec);
    Matrix acc = Matrix::Zero(rep.dim, rep.dim);
    for (const auto& g : elems) acc += rep.eval(g);
    acc /= static_cast<double>(elems.size());
    double tr = acc.trace().real();
    auto rank = static_cast<i64>(std::llround(tr));
    if (std::abs(tr - static_cast<double>(rank)) > 1e-9 ||
        (acc * acc - acc).cwiseAbs().maxCoeff() > 1e-9)
        throw std::logic_error("subgroup_projector: averaged matrix is not a projector");
    return {std::move(acc), rank};
}

OutcomeDistribution observe_rep_distribution(const SubgroupDesc& h, const GroupSpec& spec) {
    OutcomeDistribution dist({"type", "index"});
    double hsize = static_cast<double>(subgroup_order(h, spec));
    double gsize = static_cast<double>(spec.order());
    for (const auto& rep : all_irreps(spec)) {
        auto proj = subgroup_projector(rep, h, spec);
        if (proj.rank == 0) continue;
        double prob = static_cast<double>(rep.dim) * hsize / gsize * static_cast<double>(proj.rank);
        dist.add({rep.type, rep.index}, prob);
    }
    return dist;
}

BlockStructure block_structure(u64 p, u64 a) {
    CosetStructure cs(p, a);
    u64 q = cs.subgroup_order();
    BlockStructure bs;
    bs.order.reserve(p - 1);
    for (u64 r : cs.reps()) {
        size_t begin = bs.order.size();
        u64 x = r;
        for (u64 t = 0; t < q; ++t) {
            bs.order.push_back(x);
            x = mod_mul(x, a, p);
        }
        bs.blocks.emplace_back(begin, bs.order.size());
        bs.block_rep.push_back(r);
    }
    return bs;
}

}  // namespace hspsim
