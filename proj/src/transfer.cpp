#include "stmg/transfer.hpp"

#include <string>

#include "stmg/parallel.hpp"

namespace stmg {

namespace {

std::size_t coarse_count(std::size_t fine, Closure c, const char* what) {
    if (c == Closure::Dirichlet) {
        if (fine < 3 || fine % 2 == 0) {
            throw UsageError(std::string(what) + ": need an odd count >= 3, got " + std::to_string(fine));
        }
        return (fine - 1) / 2;
    }
    if (fine < 2 || fine % 2 != 0) {
        throw UsageError(std::string(what) + ": need an even periodic count, got " + std::to_string(fine));
    }
    return fine / 2;
}

void check_time(std::size_t n_t, const char* what) {
    if (n_t < 2 || n_t % 2 != 0) {
        throw UsageError(std::string(what) + ": n_t must be even, got " + std::to_string(n_t));
    }
}

}  // namespace

std::vector<double> restrict_space(std::span<const double> fine, Closure c) {
    const std::size_t nf = fine.size();
    const std::size_t nc = coarse_count(nf, c, "restrict_space");
    std::vector<double> out(nc);
    for (std::size_t k = 0; k < nc; ++k) {
        const double right = (2 * k + 2 < nf) ? fine[2 * k + 2] : fine[0];  // wrap only when periodic
        out[k] = 0.25 * fine[2 * k] + 0.5 * fine[2 * k + 1] + 0.25 * right;
    }
    return out;
}

std::vector<double> prolong_space(std::span<const double> coarse, Closure c) {
    const std::size_t nc = coarse.size();
    if (nc == 0) throw UsageError("prolong_space: empty input");
    const std::size_t nf = (c == Closure::Dirichlet) ? 2 * nc + 1 : 2 * nc;
    std::vector<double> out(nf, 0.0);
    for (std::size_t k = 0; k < nc; ++k) {
        out[2 * k + 1] = coarse[k];
        const double left = k > 0 ? coarse[k - 1] : (c == Closure::Periodic ? coarse[nc - 1] : 0.0);
        out[2 * k] = 0.5 * (left + coarse[k]);
    }
    if (c == Closure::Dirichlet) out[2 * nc] = 0.5 * coarse[nc - 1];
    return out;
}

SpaceTimeField restrict_space(const SpaceTimeField& fine, Closure c) {
    const std::size_t nc = coarse_count(fine.n_x(), c, "restrict_space");
    SpaceTimeField out(nc, fine.n_t());
    parallel_for(0, fine.n_t(), [&](std::size_t n) {
        auto r = restrict_space(fine.block(n), c);
        std::copy(r.begin(), r.end(), out.block(n).begin());
    });
    return out;
}

SpaceTimeField prolong_space(const SpaceTimeField& coarse, Closure c) {
    const std::size_t nf = (c == Closure::Dirichlet) ? 2 * coarse.n_x() + 1 : 2 * coarse.n_x();
    SpaceTimeField out(nf, coarse.n_t());
    parallel_for(0, coarse.n_t(), [&](std::size_t n) {
        auto p = prolong_space(coarse.block(n), c);
        std::copy(p.begin(), p.end(), out.block(n).begin());
    });
    return out;
}

SpaceTimeField restrict_time_f2(const SpaceTimeField& fine, Closure c) {
    check_time(fine.n_t(), "restrict_time_f2");
    const std::size_t nt = fine.n_t(), nx = fine.n_x(), nc = nt / 2;
    SpaceTimeField out(nx, nc);
    parallel_for(0, nc, [&](std::size_t k) {
        auto y = out.block(k);
        auto a = fine.block(2 * k);
        auto b = fine.block(2 * k + 1);
        const bool has_right = 2 * k + 2 < nt || c == Closure::Periodic;
        for (std::size_t j = 0; j < nx; ++j) y[j] = 0.25 * a[j] + 0.5 * b[j];
        if (has_right) {
            auto r = fine.block((2 * k + 2) % nt);
            for (std::size_t j = 0; j < nx; ++j) y[j] += 0.25 * r[j];
        }
    });
    return out;
}

SpaceTimeField prolong_time_f2(const SpaceTimeField& coarse, Closure c) {
    const std::size_t nc = coarse.n_t(), nx = coarse.n_x();
    if (nc == 0) throw UsageError("prolong_time_f2: empty input");
    SpaceTimeField out(nx, 2 * nc);
    parallel_for(0, nc, [&](std::size_t k) {
        auto mid = out.block(2 * k + 1);
        auto half = out.block(2 * k);
        auto here = coarse.block(k);
        std::copy(here.begin(), here.end(), mid.begin());
        for (std::size_t j = 0; j < nx; ++j) half[j] = 0.5 * here[j];
        if (k > 0 || c == Closure::Periodic) {
            auto left = coarse.block((k + nc - 1) % nc);
            for (std::size_t j = 0; j < nx; ++j) half[j] += 0.5 * left[j];
        }
    });
    return out;
}

SpaceTimeField restrict_field(const SpaceTimeField& fine, int mt, int mx, Closure c) {
    if ((mt != 1 && mt != 2 && mt != 4) || (mx != 1 && mx != 2)) {
        throw UsageError("unsupported coarsening factors (" + std::to_string(mt) + "," + std::to_string(mx) + ")");
    }
    if (fine.n_t() % static_cast<std::size_t>(mt) != 0) {
        throw UsageError("n_t = " + std::to_string(fine.n_t()) + " is not divisible by " + std::to_string(mt));
    }
    SpaceTimeField out = mx == 2 ? restrict_space(fine, c) : fine;
    for (int f = mt; f > 1; f /= 2) out = restrict_time_f2(out, c);
    return out;
}

SpaceTimeField prolong_field(const SpaceTimeField& coarse, int mt, int mx, Closure c) {
    if ((mt != 1 && mt != 2 && mt != 4) || (mx != 1 && mx != 2)) {
        throw UsageError("unsupported coarsening factors (" + std::to_string(mt) + "," + std::to_string(mx) + ")");
    }
    SpaceTimeField out = coarse;
    for (int f = mt; f > 1; f /= 2) out = prolong_time_f2(out, c);
    if (mx == 2) out = prolong_space(out, c);
    return out;
}

SpaceTimeField restrict_new(const SpaceTimeField& fine, Closure c) { return restrict_field(fine, 4, 2, c); }
SpaceTimeField prolong_new(const SpaceTimeField& coarse, Closure c) { return prolong_field(coarse, 4, 2, c); }

int transfer_stages(int mt, int mx) { return (mx == 2 ? 1 : 0) + (mt == 4 ? 2 : (mt == 2 ? 1 : 0)); }

}  // namespace stmg
