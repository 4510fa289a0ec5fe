#include "supercong/bernoulli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace supercong {

BernoulliTable bernoulli_table(std::int64_t p) {
    if (!is_prime(p) || p < 5) {
        throw PreconditionViolated("Bernoulli table needs a prime p >= 5");
    }
    std::size_t n = static_cast<std::size_t>(p - 2);
    std::vector<std::int64_t> b(n, 0);
    b[0] = 1;
    // fact[i] = i! mod p for i <= p-1; inverses via one extended Euclid each.
    std::vector<std::int64_t> fact(static_cast<std::size_t>(p), 1);
    for (std::int64_t i = 1; i < p; ++i) {
        fact[static_cast<std::size_t>(i)] =
            fact[static_cast<std::size_t>(i - 1)] * i % p;
    }
    std::vector<std::int64_t> inv_fact(static_cast<std::size_t>(p), 1);
    inv_fact[static_cast<std::size_t>(p - 1)] =
        mod_inverse_raw(fact[static_cast<std::size_t>(p - 1)], p);
    for (std::int64_t i = p - 1; i >= 1; --i) {
        inv_fact[static_cast<std::size_t>(i - 1)] =
            inv_fact[static_cast<std::size_t>(i)] * i % p;
    }
    auto binom = [&](std::int64_t nn, std::int64_t kk) {
        return fact[static_cast<std::size_t>(nn)] *
               inv_fact[static_cast<std::size_t>(kk)] % p *
               inv_fact[static_cast<std::size_t>(nn - kk)] % p;
    };
    for (std::int64_t m = 1; m < p - 2; ++m) {
        std::int64_t acc = 0;
        for (std::int64_t j = 0; j < m; ++j) {
            acc = (acc + binom(m + 1, j) * b[static_cast<std::size_t>(j)]) % p;
        }
        std::int64_t inv = mod_inverse_raw(m + 1, p);
        b[static_cast<std::size_t>(m)] = (p - acc) * inv % p;
    }
    return BernoulliTable{p, std::move(b)};
}

Residue bernoulli_mod(int i, const BernoulliTable& table) {
    std::int64_t p = table.p;
    if (i < 0 || i > p - 2) {
        throw IndexOutOfTable("B_" + std::to_string(i) +
                              " not available mod " + std::to_string(p));
    }
    if (i <= p - 3) {
        return Residue{table.values[static_cast<std::size_t>(i)], p};
    }
    return Residue{0, p}; // i == p-2 is odd and >= 3, so B_i = 0
}

Residue beta(int k, const BernoulliTable& table) {
    std::int64_t p = table.p;
    if (k < 3 || k % 2 == 0 || k > p - 2) {
        throw IndexOutOfTable("beta_" + std::to_string(k) +
                              " undefined mod " + std::to_string(p));
    }
    Residue b = bernoulli_mod(static_cast<int>(p) - k, table);
    return -b * mod_inverse(Residue{k, p});
}

BetaMonomial::BetaMonomial(std::vector<int> indices)
    : indices_(std::move(indices)) {
    for (int k : indices_) {
        if (k < 3 || k % 2 == 0) {
            throw PreconditionViolated("monomial index " + std::to_string(k) +
                                       " must be odd and >= 3");
        }
    }
    std::sort(indices_.begin(), indices_.end());
}

int BetaMonomial::weight() const {
    return std::accumulate(indices_.begin(), indices_.end(), 0);
}

Residue eval_monomial(const BetaMonomial& mono, const BernoulliTable& table) {
    Residue out{1, table.p};
    for (int k : mono.indices()) out = out * beta(k, table);
    return out;
}

namespace {

std::filesystem::path table_path(std::int64_t p, const std::string& cache_dir) {
    return std::filesystem::path(cache_dir) /
           ("bernoulli_" + std::to_string(p) + ".json");
}

bool table_is_valid(const BernoulliTable& t) {
    if (!is_prime(t.p) || t.p < 5) return false;
    if (t.values.size() != static_cast<std::size_t>(t.p - 2)) return false;
    if (t.values[0] != 1) return false;
    if (t.values.size() > 3 && t.values[3] != 0) return false;
    for (std::int64_t v : t.values) {
        if (v < 0 || v >= t.p) return false;
    }
    return true;
}

} // namespace

void store_bernoulli_table(const BernoulliTable& table,
                           const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    nlohmann::json j;
    j["version"] = 1;
    j["p"] = table.p;
    j["values"] = table.values;
    auto final_path = table_path(table.p, cache_dir);
    auto tmp_path = final_path;
    tmp_path += ".tmp";
    {
        std::ofstream out(tmp_path);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp_path, final_path);
}

bool load_bernoulli_table(std::int64_t p, const std::string& cache_dir,
                          BernoulliTable& out) {
    std::ifstream in(table_path(p, cache_dir));
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("version").get<int>() != 1) return false;
        if (j.at("p").get<std::int64_t>() != p) return false;
        BernoulliTable t;
        t.p = p;
        t.values = j.at("values").get<std::vector<std::int64_t>>();
        if (!table_is_valid(t)) return false;
        out = std::move(t);
        return true;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

BernoulliTable bernoulli_table_cached(std::int64_t p,
                                      const std::string& cache_dir) {
    BernoulliTable t;
    if (load_bernoulli_table(p, cache_dir, t)) return t;
    t = bernoulli_table(p);
    store_bernoulli_table(t, cache_dir);
    return t;
}

} // namespace supercong
