#include "hspsim/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hspsim {

GroupSpec GroupSpec::affine(u64 p, u64 gamma) {
    if (!is_prime(p)) throw std::invalid_argument("GroupSpec: p is not prime");
    if (gamma == 0) gamma = primitive_root(p);
    if (multiplicative_order(gamma, p) != p - 1)
        throw std::invalid_argument("GroupSpec: gamma does not generate Z_p^*");
    return {p, p - 1, gamma, gamma, GroupKind::affine};
}

GroupSpec GroupSpec::qhedral(u64 p, u64 q, u64 a, u64 gamma) {
    if (!is_prime(p)) throw std::invalid_argument("GroupSpec: p is not prime");
    if (q == 0 || (p - 1) % q != 0) throw std::invalid_argument("GroupSpec: q does not divide p-1");
    if (gamma == 0) gamma = primitive_root(p);
    if (multiplicative_order(gamma, p) != p - 1)
        throw std::invalid_argument("GroupSpec: gamma does not generate Z_p^*");
    if (a == 0) a = mod_pow(gamma, (p - 1) / q, p);
    if (multiplicative_order(a, p) != q)
        throw std::invalid_argument("GroupSpec: a does not have order q");
    return {p, q, gamma, a, GroupKind::qhedral};
}

bool element_in_group(const GroupElement& g, const GroupSpec& spec) {
    if (g.a == 0 || g.a >= spec.p || g.b >= spec.p) return false;
    if (spec.kind == GroupKind::qhedral && mod_pow(g.a, spec.q, spec.p) != 1) return false;
    return true;
}

GroupElement multiply(const GroupElement& x, const GroupElement& y, const GroupSpec& spec) {
    if (!element_in_group(x, spec) || !element_in_group(y, spec))
        throw std::domain_error("multiply: element not in group");
    return {mod_mul(x.a, y.a, spec.p), mod_add(x.b, mod_mul(x.a, y.b, spec.p), spec.p)};
}

GroupElement inverse(const GroupElement& x, const GroupSpec& spec) {
    if (!element_in_group(x, spec)) throw std::domain_error("inverse: element not in group");
    u64 ai = mod_inv(x.a, spec.p);
    return {ai, mod_sub(0, mod_mul(ai, x.b, spec.p), spec.p)};
}

GroupElement conjugate_element(const GroupElement& x, const GroupElement& y, const GroupSpec& spec) {
    return multiply(multiply(x, y, spec), inverse(x, spec), spec);
}

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> exp_dist(0, spec.q - 1);
    std::uniform_int_distribution<u64> add_dist(0, spec.p - 1);
    u64 base = spec.kind == GroupKind::affine ? spec.gamma : spec.a;
    return {mod_pow(base, exp_dist(rng), spec.p), add_dist(rng)};
}

u64 subgroup_order(const SubgroupDesc& h, const GroupSpec& spec) {
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial: return 1;
        case SubgroupDesc::Kind::full: return spec.order();
        case SubgroupDesc::Kind::normal_nq: return multiplicative_order(h.a, spec.p) * spec.p;
        case SubgroupDesc::Kind::conjugate: return multiplicative_order(h.a, spec.p);
    }
    throw std::logic_error("subgroup_order: bad kind");
}

bool subgroup_contains(const SubgroupDesc& h, const GroupElement& g, const GroupSpec& spec) {
    u64 p = spec.p;
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial:
            return g == identity_element();
        case SubgroupDesc::Kind::full:
            return element_in_group(g, spec);
        case SubgroupDesc::Kind::normal_nq:
            return mod_pow(g.a, multiplicative_order(h.a, p), p) == 1;
        case SubgroupDesc::Kind::conjugate: {
            u64 qq = multiplicative_order(h.a, p);
            if (mod_pow(g.a, qq, p) != 1) return false;
            return g.b == mod_mul(mod_sub(1, g.a, p), h.b, p);
        }
    }
    throw std::logic_error("subgroup_contains: bad kind");
}

namespace {

// (is_normal_chain, multiplicative order, shift) identifying the subgroup.
std::tuple<int, u64, u64> canonical_key(const SubgroupDesc& h, const GroupSpec& spec) {
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial: return {0, 1, 0};
        case SubgroupDesc::Kind::full: return {1, spec.q, 0};
        case SubgroupDesc::Kind::normal_nq: return {1, multiplicative_order(h.a, spec.p), 0};
        case SubgroupDesc::Kind::conjugate: {
            u64 qq = multiplicative_order(h.a, spec.p);
            if (qq == 1) return {0, 1, 0};
            return {0, qq, h.b % spec.p};  // the subgroup depends on b only mod p
        }
    }
    throw std::logic_error("canonical_key: bad kind");
}

}  // namespace

bool same_subgroup(const SubgroupDesc& x, const SubgroupDesc& y, const GroupSpec& spec) {
    return canonical_key(x, spec) == canonical_key(y, spec);
}

std::vector<GroupElement> enumerate_subgroup(const SubgroupDesc& h, const GroupSpec& spec) {
    u64 n = subgroup_order(h, spec);
    if (n > kEnumerationCap) throw std::length_error("enumerate_subgroup: cap exceeded");
    std::vector<GroupElement> out;
    out.reserve(n);
    u64 p = spec.p;
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial:
            out.push_back(identity_element());
            break;
        case SubgroupDesc::Kind::full: {
            u64 base = spec.kind == GroupKind::affine ? spec.gamma : spec.a;
            u64 at = 1;
            for (u64 t = 0; t < spec.q; ++t) {
                for (u64 b = 0; b < p; ++b) out.push_back({at, b});
                at = mod_mul(at, base, p);
            }
            break;
        }
        case SubgroupDesc::Kind::normal_nq: {
            u64 qq = multiplicative_order(h.a, p);
            u64 at = 1;
            for (u64 t = 0; t < qq; ++t) {
                for (u64 b = 0; b < p; ++b) out.push_back({at, b});
                at = mod_mul(at, h.a, p);
            }
            break;
        }
        case SubgroupDesc::Kind::conjugate: {
            u64 qq = multiplicative_order(h.a, p);
            u64 at = 1;
            for (u64 t = 0; t < qq; ++t) {
                out.push_back({at, mod_mul(mod_sub(1, at, p), h.b, p)});
                at = mod_mul(at, h.a, p);
            }
            break;
        }
    }
    return out;
}

std::vector<GroupElement> coset_representatives(const SubgroupDesc& h, const GroupSpec& spec) {
    u64 count = spec.order() / subgroup_order(h, spec);
    if (count > kEnumerationCap) throw std::length_error("coset_representatives: cap exceeded");
    std::vector<GroupElement> out;
    out.reserve(count);
    u64 p = spec.p;
    u64 base = spec.kind == GroupKind::affine ? spec.gamma : spec.a;
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial:
            return enumerate_subgroup(SubgroupDesc::full(), spec);
        case SubgroupDesc::Kind::full:
            out.push_back(identity_element());
            break;
        case SubgroupDesc::Kind::normal_nq: {
            u64 qq = multiplicative_order(h.a, p);
            u64 at = 1;
            for (u64 t = 0; t < spec.q / qq; ++t) {
                out.push_back({at, 0});
                at = mod_mul(at, base, p);
            }
            break;
        }
        case SubgroupDesc::Kind::conjugate: {
            u64 qq = multiplicative_order(h.a, p);
            u64 at = 1;
            for (u64 t = 0; t < spec.q / qq; ++t) {
                for (u64 b = 0; b < p; ++b) out.push_back({at, b});
                at = mod_mul(at, base, p);
            }
            break;
        }
    }
    return out;
}

CosetStructure::CosetStructure(u64 p, u64 a) : p_(p), q_(multiplicative_order(a % p, p)) {
    a %= p;
    rep_.assign(p, 0);
    pos_.assign(p, 0);
    for (u64 x = 1; x < p; ++x) {
        if (rep_[x] != 0) continue;
        reps_.push_back(x);
        u64 y = x, t = 0;
        do {
            rep_[y] = x;
            pos_[y] = t;
            y = mod_mul(y, a, p);
            ++t;
        } while (y != x);
    }
}

HiddenOracle make_subgroup_oracle(const SubgroupDesc& h, const GroupSpec& spec) {
    u64 p = spec.p;
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial:
            return HiddenOracle([](const GroupElement& g) { return OracleSymbol{g.a, g.b}; }, h);
        case SubgroupDesc::Kind::full:
            return HiddenOracle([](const GroupElement&) { return OracleSymbol{1, 0}; }, h);
        case SubgroupDesc::Kind::normal_nq: {
            auto cs = std::make_shared<CosetStructure>(p, h.a);
            return HiddenOracle(
                [cs](const GroupElement& g) { return OracleSymbol{cs->rep(g.a), 0}; }, h);
        }
        case SubgroupDesc::Kind::conjugate: {
            auto cs = std::make_shared<CosetStructure>(p, h.a);
            u64 b = h.b;
            return HiddenOracle(
                [cs, p, b](const GroupElement& g) {
                    // Left coset gH is { (A, C - A b) : A in g.a <a> } with
                    // C = g.b + g.a b; the lex-minimal element has A = rep.
                    u64 c = mod_add(g.b, mod_mul(g.a, b, p), p);
                    u64 rep = cs->rep(g.a);
                    return OracleSymbol{rep, mod_sub(c, mod_mul(rep, b, p), p)};
                },
                h);
        }
    }
    throw std::logic_error("make_subgroup_oracle: bad kind");
}

namespace {

GroupElement random_subgroup_element(const SubgroupDesc& h, const GroupSpec& spec,
                                     std::mt19937_64& rng) {
    u64 p = spec.p;
    switch (h.kind) {
        case SubgroupDesc::Kind::trivial:
            return identity_element();
        case SubgroupDesc::Kind::full:
            return random_element(spec, rng);
        case SubgroupDesc::Kind::normal_nq: {
            u64 qq = multiplicative_order(h.a, p);
            std::uniform_int_distribution<u64> td(0, qq - 1), bd(0, p - 1);
            return {mod_pow(h.a, td(rng), p), bd(rng)};
        }
        case SubgroupDesc::Kind::conjugate: {
            u64 qq = multiplicative_order(h.a, p);
            std::uniform_int_distribution<u64> td(0, qq - 1);
            u64 at = mod_pow(h.a, td(rng), p);
            return {at, mod_mul(mod_sub(1, at, p), h.b, p)};
        }
    }
    throw std::logic_error("random_subgroup_element: bad kind");
}

}  // namespace

bool verify_subgroup_against_oracle(const HiddenOracle& f, const SubgroupDesc& h,
                                    const GroupSpec& spec, std::mt19937_64& rng) {
    u64 hsize = subgroup_order(h, spec);
    u64 ncosets_total = spec.order() / hsize;
    u64 ncosets = std::min<u64>(ncosets_total, 32);
    auto pairs_per_coset = static_cast<u64>(2 * std::ceil(std::log2(static_cast<double>(spec.p))));

    for (u64 i = 0; i < ncosets; ++i) {
        GroupElement g = random_element(spec, rng);
        OracleSymbol ref = f(g);
        for (u64 j = 0; j < pairs_per_coset; ++j) {
            GroupElement gh = multiply(g, random_subgroup_element(h, spec, rng), spec);
            if (f(gh) != ref) return false;
        }
    }
    // Distinctness across coset pairs: draw random elements and compare only
    // when they land in different candidate cosets.
    for (int i = 0; i < 32; ++i) {
        GroupElement g1 = random_element(spec, rng);
        GroupElement g2 = random_element(spec, rng);
        GroupElement d = multiply(inverse(g1, spec), g2, spec);
        if (subgroup_contains(h, d, spec)) continue;
        if (f(g1) == f(g2)) return false;
    }
    return true;
}

namespace {

nlohmann::json subgroup_to_jobj(const SubgroupDesc& h) {
    using K = SubgroupDesc::Kind;
    nlohmann::json j;
    switch (h.kind) {
        case K::trivial: j["kind"] = "trivial"; break;
        case K::full: j["kind"] = "full"; break;
        case K::normal_nq:
            j["kind"] = "normal";
            j["a"] = h.a;
            break;
        case K::conjugate:
            j["kind"] = "conjugate";
            j["a"] = h.a;
            j["b"] = h.b;
            break;
    }
    return j;
}

SubgroupDesc subgroup_from_jobj(const nlohmann::json& j) {
    std::string kind = j.at("kind");
    if (kind == "trivial") return SubgroupDesc::trivial();
    if (kind == "full") return SubgroupDesc::full();
    if (kind == "normal") return SubgroupDesc::normal_nq(j.at("a"));
    if (kind == "conjugate") return SubgroupDesc::conjugate(j.at("a"), j.value("b", 0));
    throw std::invalid_argument("subgroup_from_json: unknown kind " + kind);
}

nlohmann::json spec_to_jobj(const GroupSpec& spec) {
    return {{"p", spec.p},
            {"q", spec.q},
            {"gamma", spec.gamma},
            {"a", spec.a},
            {"kind", spec.kind == GroupKind::affine ? "affine" : "qhedral"}};
}

GroupSpec spec_from_jobj(const nlohmann::json& j) {
    u64 p = j.at("p");
    std::string kind = j.value("kind", j.value("q", p - 1) == p - 1 ? "affine" : "qhedral");
    if (kind == "affine") return GroupSpec::affine(p, j.value("gamma", 0));
    return GroupSpec::qhedral(p, j.at("q"), j.value("a", 0), j.value("gamma", 0));
}

}  // namespace

std::string spec_to_json(const GroupSpec& spec) { return spec_to_jobj(spec).dump(); }

std::string spec_to_json(const GroupSpec& spec, const SubgroupDesc& h) {
    auto j = spec_to_jobj(spec);
    j["subgroup"] = subgroup_to_jobj(h);
    return j.dump();
}

GroupSpec spec_from_json(const std::string& text) {
    return spec_from_jobj(nlohmann::json::parse(text));
}

GroupSpec spec_from_json(const std::string& text, SubgroupDesc& h_out) {
    auto j = nlohmann::json::parse(text);
    h_out = subgroup_from_jobj(j.at("subgroup"));
    return spec_from_jobj(j);
}

}  // namespace hspsim
