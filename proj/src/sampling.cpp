#include "hspsim/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hspsim {

Matrix haar_unitary(i64 dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (i64 i = 0; i < dim; ++i)
        for (i64 j = 0; j < dim; ++j) g(i, j) = cplx{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (i64 i = 0; i < dim; ++i) {
        cplx d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

MeasurementBasis MeasurementBasis::adapted() {
    return {"adapted", [](const Irrep& rep, size_t) {
                return Matrix(Matrix::Identity(rep.dim, rep.dim));
            }};
}

MeasurementBasis MeasurementBasis::haar(u64 seed) {
    return {"random(" + std::to_string(seed) + ")", [seed](const Irrep& rep, size_t idx) {
                std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1)));
                return haar_unitary(rep.dim, rng);
            }};
}

Matrix fourier_coset_matrix(const Irrep& rep, const SubgroupDesc& h, const GroupElement& c,
                            const GroupSpec& spec) {
    auto elems = enumerate_subgroup(h, spec);
    Matrix acc = Matrix::Zero(rep.dim, rep.dim);
    for (const auto& g : elems) acc += rep.eval(multiply(c, g, spec));
    double norm = std::sqrt(static_cast<double>(rep.dim) /
                            (static_cast<double>(spec.order()) * static_cast<double>(elems.size())));
    return norm * acc;
}

OutcomeDistribution strong_sample_distribution(const SubgroupDesc& h, const GroupElement& c,
                                               const MeasurementBasis& basis,
                                               const GroupSpec& spec) {
    OutcomeDistribution dist({"type", "index", "row", "col"});
    dist.metadata()["basis"] = basis.id;
    auto reps = all_irreps(spec);
    for (size_t ri = 0; ri < reps.size(); ++ri) {
        const auto& rep = reps[ri];
        Matrix u = basis.unitary(rep, ri);
        Matrix m = u.adjoint() * fourier_coset_matrix(rep, h, c, spec) * u;
        for (i64 i = 0; i < rep.dim; ++i)
            for (i64 j = 0; j < rep.dim; ++j) {
                double pr = std::norm(m(i, j));
                if (pr > 0) dist.add({rep.type, rep.index, i, j}, pr);
            }
    }
    return dist;
}

OutcomeDistribution coset_averaged_distribution(const SubgroupDesc& h,
                                                const MeasurementBasis& basis,
                                                const GroupSpec& spec) {
    auto cosets = coset_representatives(h, spec);
    OutcomeDistribution dist({"type", "index", "row", "col"});
    dist.metadata()["basis"] = basis.id;
    double w = 1.0 / static_cast<double>(cosets.size());
    for (const auto& c : cosets) {
        auto one = strong_sample_distribution(h, c, basis, spec);
        for (auto& [o, pr] : one.pmf()) dist.add(o, w * pr);
    }
    return dist;
}

std::vector<double> column_fourier_conditional_pmf(u64 p, u64 a, u64 b, u64 k0) {
    u64 q = multiplicative_order(a, p);
    RootTable wp(p), wq1(p - 1);
    std::vector<cplx> acc(p - 1, cplx{0, 0});
    u64 x = k0 % p;
    for (u64 t = 0; t < q; ++t) {
        cplx cx = wp(-static_cast<i64>(mod_mul(b, x, p)));
        u64 e = 0;
        for (u64 l = 0; l < p - 1; ++l) {
            acc[l] += cx * wq1(static_cast<i64>(e));
            e += x;
            if (e >= p - 1) e -= p - 1;
        }
        x = mod_mul(x, a, p);
    }
    std::vector<double> pmf(p - 1);
    double norm = 1.0 / (static_cast<double>(q) * static_cast<double>(p - 1));
    for (u64 l = 0; l < p - 1; ++l) pmf[l] = std::norm(acc[l]) * norm;
    return pmf;
}

double maximal_case_prob(u64 p, u64 b, u64 l) {
    if (b == 0) return l == 0 ? 1.0 : 0.0;
    double theta = std::numbers::pi * (static_cast<double>(b) / static_cast<double>(p) -
                                       static_cast<double>(l) / static_cast<double>(p - 1));
    double ratio = std::sin(static_cast<double>(p - 1) * theta) / std::sin(theta);
    return ratio * ratio / (static_cast<double>(p - 1) * static_cast<double>(p - 1));
}

OutcomeDistribution row_fourier_distribution(const SubgroupDesc& h, const GroupSpec& spec) {
    if (spec.kind != GroupKind::affine || h.kind != SubgroupDesc::Kind::conjugate)
        throw std::invalid_argument("row_fourier_distribution: affine conjugate subgroups only");
    u64 p = spec.p;
    CosetStructure cs(p, h.a);
    double w = 1.0 / static_cast<double>(cs.reps().size());
    OutcomeDistribution dist({"k", "l"});
    for (u64 k0 : cs.reps()) {
        auto pmf = column_fourier_conditional_pmf(p, h.a, h.b, k0);
        for (u64 l = 0; l < p - 1; ++l)
            if (pmf[l] > 0) dist.add({static_cast<i64>(k0), static_cast<i64>(l)}, w * pmf[l]);
    }
    return dist;
}

OutcomeDistribution row_fourier_distribution_bruteforce(const SubgroupDesc& h,
                                                        const GroupElement& c,
                                                        const GroupSpec& spec) {
    if (spec.kind != GroupKind::affine || h.kind != SubgroupDesc::Kind::conjugate)
        throw std::invalid_argument("row_fourier_distribution_bruteforce: affine conjugates only");
    u64 p = spec.p;
    i64 d = static_cast<i64>(p - 1);
    auto rho = rho_affine(spec);
    Matrix b = rho.eval(c) * subgroup_projector(rho, h, spec).mat;
    RootTable wq1(p - 1);
    Matrix w(d, d);  // w(m-1, l) = omega_{p-1}^{l m} / sqrt(p-1)
    double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (i64 m = 1; m <= d; ++m)
        for (i64 l = 0; l < d; ++l) w(m - 1, l) = s * wq1(l * m);
    Matrix amp = b * w;
    double total = b.squaredNorm();
    CosetStructure cs(p, h.a);
    OutcomeDistribution dist({"k", "l"});
    for (u64 j = 1; j < p; ++j) {
        i64 k = static_cast<i64>(cs.rep(mod_mul(c.a, j, p)));
        for (i64 l = 0; l < d; ++l) {
            double pr = std::norm(amp(j - 1, l)) / total;
            if (pr > 0) dist.add({k, l}, pr);
        }
    }
    return dist;
}

u64 best_frequency(u64 p, u64 b) {
    double target = static_cast<double>(b) * static_cast<double>(p - 1) / static_cast<double>(p);
    return static_cast<u64>(std::llround(target)) % (p - 1);
}

u64 frequency_to_shift(u64 p, u64 l) {
    double target = static_cast<double>(l) * static_cast<double>(p) / static_cast<double>(p - 1);
    return static_cast<u64>(std::llround(target)) % p;
}

double coset_interval_fraction(u64 a, u64 k, const GroupSpec& spec) {
    u64 p = spec.p;
    u64 q = multiplicative_order(a, p);
    u64 x = k % p, count = 0;
    for (u64 t = 0; t < q; ++t) {
        if (6 * x > p && 6 * x < 5 * p) ++count;
        x = mod_mul(x, a, p);
    }
    return static_cast<double>(count) / static_cast<double>(q);
}

namespace {

struct InfoSetup {
    u64 p, q_h, q_t, b;
};

InfoSetup info_setup(const SubgroupDesc& truth, u64 hyp_a, const GroupSpec& spec) {
    u64 p = spec.p;
    if (mod_pow(hyp_a, spec.q, p) != 1)
        throw std::invalid_argument("info measurement: hypothesis generator outside the group");
    u64 q_h = multiplicative_order(hyp_a, p);
    if (q_h < 2) throw std::invalid_argument("info measurement: hypothesis order must be >= 2");
    u64 q_t, b;
    switch (truth.kind) {
        case SubgroupDesc::Kind::trivial:
            q_t = 1;
            b = 0;
            break;
        case SubgroupDesc::Kind::conjugate:
            q_t = multiplicative_order(truth.a, p);
            b = truth.b;
            break;
        default:
            throw std::invalid_argument("info measurement: truth must be trivial or a conjugate");
    }
    if (q_h % q_t != 0 || (q_t > 1 && mod_pow(truth.a, q_h, p) != 1))
        throw std::invalid_argument("info measurement: truth not inside the hypothesis subgroup");
    return {p, q_h, q_t, b};
}

}  // namespace

OutcomeDistribution info_measurement_distribution(const SubgroupDesc& truth, u64 hyp_a,
                                                  const GroupSpec& spec) {
    auto s = info_setup(truth, hyp_a, spec);
    // Block labels and positions are read off relative to the hypothesized
    // subgroup <hyp_a>, whatever the ambient group is.
    CosetStructure cs(s.p, hyp_a);
    auto nreps = static_cast<double>(cs.reps().size());
    OutcomeDistribution dist({"k", "u", "bit"});
    if (s.q_t < s.q_h) {
        // The conditional column support hits at most one arm of each measured
        // pair, so the interference bit is unbiased and every outcome is
        // equally likely.
        double w = 1.0 / (2.0 * nreps * static_cast<double>(s.q_h));
        for (u64 k : cs.reps())
            for (u64 u = 0; u < s.q_h; ++u) {
                dist.add({static_cast<i64>(k), static_cast<i64>(u), 0}, w);
                dist.add({static_cast<i64>(k), static_cast<i64>(u), 1}, w);
            }
        return dist;
    }
    double w = 1.0 / (nreps * static_cast<double>(s.q_h));
    u64 step1 = mod_sub(hyp_a, 1, s.p);
    for (u64 k : cs.reps()) {
        u64 x = k;  // k * hyp_a^u
        for (u64 u = 0; u < s.q_h; ++u) {
            u64 m = mod_mul(mod_mul(x, step1, s.p), s.b, s.p);
            double c = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(s.p));
            double p0 = c * c;
            dist.add({static_cast<i64>(k), static_cast<i64>(u), 0}, w * p0);
            dist.add({static_cast<i64>(k), static_cast<i64>(u), 1}, w * (1.0 - p0));
            x = mod_mul(x, hyp_a, s.p);
        }
    }
    return dist;
}

double info_bit0_probability(u64 k, u64 u, u64 hyp_a, u64 b, const GroupSpec& spec) {
    u64 p = spec.p;
    u64 x = mod_mul(k, mod_pow(hyp_a, u, p), p);
    u64 m = mod_mul(mod_mul(x, mod_sub(hyp_a, 1, p), p), b, p);
    double c = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(p));
    return c * c;
}

OutcomeDistribution random_basis_distribution(const SubgroupDesc& h, u64 seed,
                                              const GroupSpec& spec) {
    if (spec.kind != GroupKind::affine)
        throw std::invalid_argument("random_basis_distribution: affine ambient group only");
    auto rho = rho_affine(spec);
    auto proj = subgroup_projector(rho, h, spec);
    if (proj.rank == 0)
        throw std::invalid_argument("random_basis_distribution: projector has rank zero");
    std::mt19937_64 rng(seed);
    Matrix u = haar_unitary(rho.dim, rng);
    Matrix pu = proj.mat * u;
    OutcomeDistribution dist({"v"});
    dist.metadata()["seed"] = std::to_string(seed);
    for (i64 v = 0; v < rho.dim; ++v)
        dist.add({v}, pu.col(v).squaredNorm() / static_cast<double>(proj.rank));
    return dist;
}

OutcomeDistribution forgetful_abelian_distribution(const SubgroupDesc& h, const GroupSpec& spec) {
    u64 p = spec.p, q = spec.q;
    u64 base = spec.kind == GroupKind::affine ? spec.gamma : spec.a;
    DlogTable dlog(p, base);
    auto elems = enumerate_subgroup(h, spec);
    std::vector<u64> logs;
    logs.reserve(elems.size());
    for (const auto& g : elems) logs.push_back(dlog.log(g.a));
    RootTable wq(q), wp(p);
    double norm = 1.0 / (static_cast<double>(spec.order()) * static_cast<double>(elems.size()));
    OutcomeDistribution dist({"k", "l"});
    for (u64 k = 0; k < q; ++k)
        for (u64 l = 0; l < p; ++l) {
            cplx s{0, 0};
            for (size_t i = 0; i < elems.size(); ++i)
                s += wq(static_cast<i64>(mod_mul(k, logs[i], q))) *
                     wp(static_cast<i64>(mod_mul(l, elems[i].b, p)));
            double pr = std::norm(s) * norm;
            if (pr > 1e-15) dist.add({static_cast<i64>(k), static_cast<i64>(l)}, pr);
        }
    return dist;
}

}  // namespace hspsim
