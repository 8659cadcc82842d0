#include "mls/fkl.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mls/stable.hpp"

namespace mls {

void FklAtoms::validate() const {
    const std::size_t n = gammas.size();
    if (signs.size() != n || sites.size() != n || weights.size() != n)
        throw std::invalid_argument("FklAtoms: sequence lengths differ");
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(gammas[i] > prev))
            throw std::invalid_argument("FklAtoms: arrival times not increasing");
        prev = gammas[i];
        if (signs[i] != 1.0 && signs[i] != -1.0)
            throw std::invalid_argument("FklAtoms: sign not in {-1,+1}");
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("FklAtoms: nonpositive weight");
    }
}

FklAtoms generate_atoms(const FklMeasure& measure, std::size_t n_terms, Rng& rng) {
    if (n_terms < 1) throw std::invalid_argument("generate_atoms: n_terms >= 1");
    FklAtoms atoms;
    atoms.gammas.reserve(n_terms);
    atoms.signs.reserve(n_terms);
    atoms.sites.reserve(n_terms);
    atoms.weights.reserve(n_terms);
    double arrival = 0.0;
    for (std::size_t i = 0; i < n_terms; ++i) {
        arrival += rng.exponential();
        atoms.gammas.push_back(arrival);
        atoms.signs.push_back(rng.sign());
        const double site = measure.sampler(rng);
        atoms.sites.push_back(site);
        atoms.weights.push_back(measure.weight(site));
    }
    return atoms;
}

double c_eta_cached(double alpha) {
    static std::map<std::int64_t, double> cache;
    static std::mutex mtx;
    const std::int64_t key = static_cast<std::int64_t>(std::llround(alpha * 1e4));
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double value = c_eta(static_cast<double>(key) * 1e-4);
    std::lock_guard lock(mtx);
    cache.emplace(key, value);
    return value;
}

double eval_field(const FieldKernel& kernel, const FklAtoms& atoms, double t,
                  double u) {
    const double alpha = kernel.alpha_fn(u);
    const double inv_alpha = 1.0 / alpha;
    // Kahan accumulation: terms are summed in arrival order and the series
    // converges conditionally.
    double sum = 0.0, comp = 0.0;
    const std::size_t n = atoms.count();
    for (std::size_t i = 0; i < n; ++i) {
        const double f = kernel.eval(t, u, atoms.sites[i]);
        if (f == 0.0) continue;
        const double term = atoms.signs[i] *
                            std::pow(atoms.weights[i] / atoms.gammas[i], inv_alpha) *
                            f;
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return std::pow(c_eta_cached(alpha), inv_alpha) * sum;
}

SamplePath eval_diagonal(const FieldKernel& kernel, const FklAtoms& atoms,
                         const std::vector<double>& t_grid) {
    SamplePath path;
    path.values.reserve(t_grid.size());
    for (double t : t_grid) path.values.push_back(eval_field(kernel, atoms, t, t));
    if (t_grid.empty()) {
        path.resolution = 2;
        path.t_start = path.t_end = 0.0;
        path.values.clear();
        return path;
    }
    path.t_start = t_grid.front();
    path.t_end = t_grid.back();
    path.resolution =
        t_grid.size() > 1
            ? static_cast<long>(std::lround(static_cast<double>(t_grid.size() - 1) /
                                            (path.t_end - path.t_start)))
            : 2;
    return path;
}

}  // namespace mls
