#pragma once

#include "diffcert/exact.hpp"
#include "diffcert/linode.hpp"
#include "diffcert/mpoly.hpp"

#include <random>

namespace gen {

using namespace diffcert;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    BigRat rational(int num_range = 9, int den_max = 4) {
        return BigRat(uniform(-num_range, num_range), uniform(1, den_max));
    }

    BigRat nonzero_rational(int num_range = 9, int den_max = 4) {
        BigRat r;
        while (r.is_zero()) r = rational(num_range, den_max);
        return r;
    }

    UniPoly unipoly(int max_degree, double density = 0.8) {
        std::vector<BigRat> c(static_cast<std::size_t>(uniform(0, max_degree)) + 1);
        for (auto& x : c) {
            if (coin(density)) x = rational();
        }
        return UniPoly(std::move(c));
    }

    UniPoly nonzero_unipoly(int max_degree) {
        UniPoly p;
        while (p.is_zero()) p = unipoly(max_degree);
        return p;
    }

    MultiPoly multipoly(std::size_t nvars, int max_terms, int max_exp) {
        MultiPoly p(nvars);
        int terms = uniform(0, max_terms);
        for (int t = 0; t < terms; ++t) {
            Exponents e(nvars + 1);
            for (auto& x : e) x = static_cast<std::uint32_t>(uniform(0, max_exp));
            p.add_term(e, rational());
        }
        return p;
    }

    MultiPoly nonzero_multipoly(std::size_t nvars, int max_terms, int max_exp) {
        MultiPoly p(nvars);
        while (p.is_zero()) p = multipoly(nvars, std::max(1, max_terms), max_exp);
        return p;
    }

    DiffOperator diff_operator(int max_order, int max_degree) {
        int n = uniform(1, max_order);
        std::vector<UniPoly> c(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < n; ++i) c[i] = unipoly(max_degree);
        c[n] = nonzero_unipoly(max_degree);
        return DiffOperator(std::move(c));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace gen
