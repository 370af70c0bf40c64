#include "hspsim/extension.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hspsim {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<u32> reduce_to_generators(const std::vector<u32>& elements,
                                      const std::function<u32(u32, u32)>& mul, u32 identity) {
    std::vector<u32> gens;
    std::set<u32> span = {identity};
    for (u32 x : elements) {
        if (span.count(x)) continue;
        gens.push_back(x);
        auto closed = generated_subgroup(gens, mul, identity);
        span = std::set<u32>(closed.begin(), closed.end());
    }
    return gens;
}

}  // namespace

u32 TableGroup::inv(u32 x) const {
    for (u32 y = 0; y < mult.size(); ++y)
        if (mult[x][y] == identity) return y;
    throw std::logic_error("table group element has no inverse");
}

std::vector<u32> generated_subgroup(const std::vector<u32>& gens,
                                    const std::function<u32(u32, u32)>& mul, u32 identity) {
    std::set<u32> seen = {identity};
    std::vector<u32> frontier = {identity};
    while (!frontier.empty()) {
        std::vector<u32> next;
        for (u32 x : frontier)
            for (u32 g : gens) {
                u32 y = mul(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

ExtensionGroup::ExtensionGroup(std::vector<std::string> names, std::vector<std::vector<u32>> table,
                               std::vector<u32> k_elements, std::vector<u32> transversal)
    : names_(std::move(names)),
      table_(std::move(table)),
      k_(std::move(k_elements)),
      transversal_(std::move(transversal)) {
    const size_t n = table_.size();
    require(n > 0 && names_.size() == n, "extension group: names/table size mismatch");
    for (const auto& row : table_) {
        require(row.size() == n, "extension group: table is not square");
        for (u32 v : row) require(v < n, "extension group: table entry out of range");
    }

    // Identity and inverses.
    bool found_identity = false;
    for (u32 e = 0; e < n && !found_identity; ++e) {
        bool ok = true;
        for (u32 x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
        if (ok) {
            identity_ = e;
            found_identity = true;
        }
    }
    require(found_identity, "extension group: no identity element");
    inv_.assign(n, 0);
    for (u32 x = 0; x < n; ++x) {
        bool ok = false;
        for (u32 y = 0; y < n && !ok; ++y)
            if (table_[x][y] == identity_ && table_[y][x] == identity_) {
                inv_[x] = y;
                ok = true;
            }
        require(ok, "extension group: element without inverse");
    }
    // Associativity: exhaustive for small tables, sampled otherwise.
    if (n <= 256) {
        for (u32 x = 0; x < n; ++x)
            for (u32 y = 0; y < n; ++y)
                for (u32 z = 0; z < n; ++z)
                    require(table_[table_[x][y]][z] == table_[x][table_[y][z]],
                            "extension group: table is not associative");
    } else {
        std::mt19937_64 rng(0);
        for (int i = 0; i < 4096; ++i) {
            u32 x = rng() % n, y = rng() % n, z = rng() % n;
            require(table_[table_[x][y]][z] == table_[x][table_[y][z]],
                    "extension group: table is not associative");
        }
    }

    // K must be a normal subgroup.
    std::set<u32> kset(k_.begin(), k_.end());
    require(kset.size() == k_.size() && kset.count(identity_), "extension group: bad K");
    for (u32 a : k_)
        for (u32 b : k_) require(kset.count(table_[a][b]), "extension group: K not closed");
    for (u32 g = 0; g < n; ++g)
        for (u32 a : k_)
            require(kset.count(table_[table_[g][a]][inv_[g]]), "extension group: K not normal");

    // The transversal must hit every K-coset exactly once.
    require(!transversal_.empty() && n % k_.size() == 0 &&
                transversal_.size() == n / k_.size(),
            "extension group: transversal size mismatch");
    coset_.assign(n, static_cast<u32>(transversal_.size()));
    for (u32 i = 0; i < transversal_.size(); ++i)
        for (u32 a : k_) {
            u32 g = table_[transversal_[i]][a];
            require(coset_[g] == transversal_.size(), "extension group: transversal overlaps");
            coset_[g] = i;
        }
    for (u32 g = 0; g < n; ++g)
        require(coset_[g] < transversal_.size(), "extension group: transversal incomplete");

    // Materialize the quotient and check the map is a homomorphism.
    const u32 m = static_cast<u32>(transversal_.size());
    quotient_.mult.assign(m, std::vector<u32>(m));
    for (u32 i = 0; i < m; ++i)
        for (u32 j = 0; j < m; ++j)
            quotient_.mult[i][j] = coset_[table_[transversal_[i]][transversal_[j]]];
    quotient_.identity = coset_[identity_];
    if (n <= 1024) {
        for (u32 x = 0; x < n; ++x)
            for (u32 y = 0; y < n; ++y)
                require(coset_[table_[x][y]] == quotient_.mult[coset_[x]][coset_[y]],
                        "extension group: quotient map is not a homomorphism");
    } else {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 4096; ++i) {
            u32 x = rng() % n, y = rng() % n;
            require(coset_[table_[x][y]] == quotient_.mult[coset_[x]][coset_[y]],
                    "extension group: quotient map is not a homomorphism");
        }
    }
}

ExtensionGroup ExtensionGroup::q8_times_cyclic(u64 n) {
    require(n >= 1 && n <= 10000, "q8_times_cyclic: n out of range");
    // Unit part: 0..3 = 1, i, j, k; q8 index = 2*unit + (sign < 0).
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_mul[4][4] = {{+1, +1, +1, +1},
                                       {+1, -1, +1, -1},
                                       {+1, -1, -1, +1},
                                       {+1, +1, -1, -1}};
    static const char* unit_name[4] = {"1", "i", "j", "k"};
    auto q8_mul = [](u32 x, u32 y) {
        u32 ux = x / 2, uy = y / 2;
        int s = sign_mul[ux][uy] * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
        return static_cast<u32>(2 * unit_mul[ux][uy] + (s < 0 ? 1 : 0));
    };
    const u32 N = static_cast<u32>(8 * n);
    std::vector<std::string> names(N);
    std::vector<std::vector<u32>> table(N, std::vector<u32>(N));
    for (u32 x = 0; x < N; ++x) {
        u32 qx = x / n, zx = x % n;
        names[x] = std::string(qx % 2 ? "-" : "+") + unit_name[qx / 2] + "," + std::to_string(zx);
        for (u32 y = 0; y < N; ++y)
            table[x][y] = q8_mul(qx, y / n) * static_cast<u32>(n) + (zx + y % n) % n;
    }
    std::vector<u32> K(2 * n);  // {+1, -1} x Z_n, the center
    std::iota(K.begin(), K.end(), u32{0});
    std::vector<u32> transversal = {0, static_cast<u32>(2 * n), static_cast<u32>(4 * n),
                                    static_cast<u32>(6 * n)};
    return ExtensionGroup(std::move(names), std::move(table), std::move(K),
                          std::move(transversal));
}

ExtensionGroup ExtensionGroup::from_qhedral(const GroupSpec& spec) {
    require(spec.kind == GroupKind::qhedral && spec.order() <= 4096,
            "from_qhedral: small q-hedral groups only");
    const u32 p = static_cast<u32>(spec.p), q = static_cast<u32>(spec.q);
    const u32 N = q * p;
    std::vector<u64> apow(q);
    for (u32 w = 0; w < q; ++w) apow[w] = mod_pow(spec.a, w, spec.p);
    std::vector<std::string> names(N);
    std::vector<std::vector<u32>> table(N, std::vector<u32>(N));
    for (u32 x = 0; x < N; ++x) {
        u32 wx = x / p, bx = x % p;
        names[x] = std::to_string(wx) + "," + std::to_string(bx);
        for (u32 y = 0; y < N; ++y) {
            u32 wy = y / p, by = y % p;
            u32 w = (wx + wy) % q;
            u32 b = static_cast<u32>(mod_add(bx, mod_mul(apow[wx], by, spec.p), spec.p));
            table[x][y] = w * p + b;
        }
    }
    std::vector<u32> K(p);
    std::iota(K.begin(), K.end(), u32{0});
    std::vector<u32> transversal(q);
    for (u32 w = 0; w < q; ++w) transversal[w] = w * p;
    return ExtensionGroup(std::move(names), std::move(table), std::move(K),
                          std::move(transversal));
}

ExtensionGroup ExtensionGroup::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return ExtensionGroup(j.at("elements").get<std::vector<std::string>>(),
                          j.at("mult_table").get<std::vector<std::vector<u32>>>(),
                          j.at("K").get<std::vector<u32>>(),
                          j.at("transversal").get<std::vector<u32>>());
}

std::string ExtensionGroup::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["elements"] = names_;
    j["mult_table"] = table_;
    j["K"] = k_;
    j["transversal"] = transversal_;
    return j.dump(2);
}

ExtOracle make_extension_oracle(const ExtensionGroup& ext, const std::vector<u32>& gens) {
    ExtensionGroup g = ext;
    auto mul = [g](u32 x, u32 y) { return g.mul(x, y); };
    std::vector<u32> elements = generated_subgroup(gens, mul, ext.identity());
    auto fn = [g, elements](u32 x) {
        u32 best = g.mul(x, elements[0]);
        for (u32 l : elements) best = std::min(best, g.mul(x, l));
        return OracleSymbol{best};
    };
    return ExtOracle(fn, elements);
}

ExtOracle multiset_oracle(const ExtOracle& f, const ExtensionGroup& ext) {
    ExtensionGroup g = ext;
    ExtOracle inner = f;  // copy shares the query counter
    std::optional<std::vector<u32>> truth;
    if (f.has_ground_truth()) {
        std::set<u32> image;
        for (u32 l : f.ground_truth()) image.insert(ext.coset_of(l));
        truth = std::vector<u32>(image.begin(), image.end());
    }
    auto fn = [g, inner](u32 h) {
        std::vector<OracleSymbol> vals;
        vals.reserve(g.k_elements().size());
        u32 t = g.transversal()[h];
        for (u32 k : g.k_elements()) vals.push_back(inner(g.mul(t, k)));
        std::sort(vals.begin(), vals.end());
        OracleSymbol flat;
        for (const auto& v : vals) flat.insert(flat.end(), v.begin(), v.end());
        return flat;
    };
    return ExtOracle(fn, truth);
}

HSolver brute_force_h_solver() {
    return [](const ExtOracle& fprime, const TableGroup& H) {
        OracleSymbol f0 = fprime(H.identity);
        std::vector<u32> stab;
        for (u32 h = 0; h < H.size(); ++h)
            if (fprime(h) == f0) stab.push_back(h);
        auto mul = [&H](u32 x, u32 y) { return H.mul(x, y); };
        return reduce_to_generators(stab, mul, H.identity);
    };
}

HSolver cyclic_abelian_h_solver(u64 seed) {
    return [seed](const ExtOracle& fprime, const TableGroup& H) {
        const u64 m = H.size();
        for (u32 i = 0; i < m; ++i)
            for (u32 j = 0; j < m; ++j)
                require(H.mul(i, j) == (i + j) % m,
                        "cyclic_abelian_h_solver: quotient is not Z_m under this indexing");
        AbelianSpec aspec{{m}};
        ExtOracle inner = fprime;
        std::optional<std::vector<AbelianElement>> truth;
        if (fprime.has_ground_truth()) {
            std::vector<AbelianElement> t;
            for (u32 h : fprime.ground_truth()) t.push_back({h});
            truth = std::move(t);
        }
        AbelianOracle af([inner](const AbelianElement& x) { return inner(static_cast<u32>(x[0])); },
                         truth);
        std::vector<u32> gens;
        for (const auto& g : abelian_hsp_solver(af, aspec, seed))
            gens.push_back(static_cast<u32>(g[0]));
        return gens;
    };
}

std::vector<u32> triple_elements(const SubgroupTriple& triple, const ExtensionGroup& ext) {
    std::vector<u32> gens = triple.S;
    for (const auto& [h, g] : triple.eta) gens.push_back(g);
    auto mul = [&ext](u32 x, u32 y) { return ext.mul(x, y); };
    return generated_subgroup(gens, mul, ext.identity());
}

SubgroupTriple solve_extension_hsp(const ExtOracle& f, const ExtensionGroup& ext,
                                   const HSolver& h_solver) {
    SubgroupTriple triple;
    auto mul = [&ext](u32 x, u32 y) { return ext.mul(x, y); };

    // Step 1: scan K, growing generators of the intersection incrementally.
    OracleSymbol f0;
    std::vector<std::pair<u32, OracleSymbol>> kvals;
    for (u32 k : ext.k_elements()) {
        auto v = f(k);
        if (k == ext.identity()) f0 = v;
        kvals.emplace_back(k, std::move(v));
    }
    std::set<u32> span = {ext.identity()};
    for (const auto& [k, v] : kvals) {
        if (v != f0 || span.count(k)) continue;
        triple.S.push_back(k);
        auto closed = generated_subgroup(triple.S, mul, ext.identity());
        span = std::set<u32>(closed.begin(), closed.end());
    }

    // Step 2: quotient HSP through the multiset oracle.
    auto fprime = multiset_oracle(f, ext);
    triple.T = h_solver(fprime, ext.quotient());

    // Step 3: locate one subgroup element in each generator's coset.
    for (u32 h : triple.T) {
        bool found = false;
        u32 t = ext.transversal()[h];
        for (u32 k : ext.k_elements()) {
            u32 g = ext.mul(t, k);
            if (f(g) == f0) {
                triple.eta[h] = g;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error(
                "promise violation: no hidden-subgroup element in a quotient generator's coset");
    }
    return triple;
}

u64 AbelianSpec::order() const {
    u64 n = 1;
    for (u64 m : moduli) n *= m;
    return n;
}

namespace {

AbelianElement abelian_unrank(u64 idx, const std::vector<u64>& moduli) {
    AbelianElement x(moduli.size());
    for (size_t j = moduli.size(); j-- > 0;) {
        x[j] = idx % moduli[j];
        idx /= moduli[j];
    }
    return x;
}

}  // namespace

AbelianOracle make_abelian_oracle(const AbelianSpec& spec,
                                  const std::vector<AbelianElement>& gens) {
    require(spec.order() <= 1'000'000, "abelian oracle: group too large");
    const auto moduli = spec.moduli;
    auto add = [moduli](const AbelianElement& x, const AbelianElement& y) {
        AbelianElement z(moduli.size());
        for (size_t j = 0; j < moduli.size(); ++j) z[j] = (x[j] + y[j]) % moduli[j];
        return z;
    };
    // Closure of the generating set.
    std::set<AbelianElement> seen = {AbelianElement(moduli.size(), 0)};
    std::vector<AbelianElement> frontier = {AbelianElement(moduli.size(), 0)};
    while (!frontier.empty()) {
        std::vector<AbelianElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = add(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    std::vector<AbelianElement> elements(seen.begin(), seen.end());
    auto fn = [elements, add](const AbelianElement& x) {
        AbelianElement best = add(x, elements[0]);
        for (const auto& l : elements) best = std::min(best, add(x, l));
        OracleSymbol sym;
        for (u64 v : best) sym.push_back(v);
        return sym;
    };
    return AbelianOracle(fn, elements);
}

std::vector<AbelianElement> abelian_hsp_solver(const AbelianOracle& f, const AbelianSpec& spec,
                                               u64 seed) {
    const auto& moduli = spec.moduli;
    const u64 n = spec.order();
    require(n <= 1'000'000, "abelian solver: group too large");
    if (!f.has_ground_truth())
        throw std::invalid_argument("abelian solver needs ground truth to drive exact sampling");
    const auto& hidden = f.ground_truth();

    u64 N = 1;
    for (u64 m : moduli) N = std::lcm(N, m);
    // chi_c(y) = exp(2 pi i sum_j c_j y_j (N / n_j) / N); exact annihilator
    // membership is an integer congruence.
    auto pairing = [&](const AbelianElement& c, const AbelianElement& y) {
        u64 acc = 0;
        for (size_t j = 0; j < moduli.size(); ++j)
            acc = (acc + c[j] % moduli[j] * ((y[j] % moduli[j]) * (N / moduli[j]) % N)) % N;
        return acc;
    };
    std::vector<AbelianElement> annihilator;
    for (u64 idx = 0; idx < n; ++idx) {
        auto c = abelian_unrank(idx, moduli);
        bool ok = true;
        for (const auto& y : hidden)
            if (pairing(c, y) != 0) {
                ok = false;
                break;
            }
        if (ok) annihilator.push_back(c);
    }

    std::mt19937_64 rng(seed);
    AbelianElement zero(moduli.size(), 0);
    OracleSymbol f0 = f(zero);
    auto add = [&](const AbelianElement& x, const AbelianElement& y) {
        AbelianElement z(moduli.size());
        for (size_t j = 0; j < moduli.size(); ++j) z[j] = (x[j] + y[j]) % moduli[j];
        return z;
    };

    std::vector<AbelianElement> samples;
    u64 budget = 16 + 8 * static_cast<u64>(std::ceil(std::log2(static_cast<double>(n) + 1)));
    while (true) {
        // Intersect the kernels of the sampled characters.
        std::vector<AbelianElement> kernel;
        for (u64 idx = 0; idx < n; ++idx) {
            auto y = abelian_unrank(idx, moduli);
            bool ok = true;
            for (const auto& c : samples)
                if (pairing(c, y) != 0) {
                    ok = false;
                    break;
                }
            if (ok) kernel.push_back(y);
        }
        std::vector<AbelianElement> gens;
        std::set<AbelianElement> span = {zero};
        for (const auto& y : kernel) {
            if (span.count(y)) continue;
            gens.push_back(y);
            std::vector<AbelianElement> frontier(span.begin(), span.end());
            while (!frontier.empty()) {
                std::vector<AbelianElement> next;
                for (const auto& x : frontier)
                    for (const auto& g : gens) {
                        auto z = add(x, g);
                        if (span.insert(z).second) next.push_back(z);
                    }
                frontier = std::move(next);
            }
        }
        bool consistent = true;
        for (const auto& g : gens)
            if (f(g) != f0) {
                consistent = false;
                break;
            }
        if (consistent) return gens;
        if (samples.size() >= budget)
            throw std::runtime_error("abelian solver: sample budget exhausted");
        // One state preparation costs one oracle query; the measured
        // character is uniform over the annihilator of the hidden subgroup.
        f(abelian_unrank(rng() % n, moduli));
        samples.push_back(annihilator[rng() % annihilator.size()]);
    }
}

}  // namespace hspsim
