#include "mls/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "mls/io.hpp"

namespace mls {

namespace {

std::pair<double, double> infer_range(const std::string& form, double a, double b,
                                      double c, double d,
                                      std::pair<double, double> span) {
    double lo = 1e300, hi = -1e300;
    constexpr int kSamples = 10000;
    for (int i = 0; i <= kSamples; ++i) {
        const double t =
            span.first + (span.second - span.first) * static_cast<double>(i) / kSamples;
        double v;
        if (form == "affine" || form == "constant")
            v = a + b * t;
        else if (form == "logistic")
            v = a + b / (1.0 + std::exp(c + d * t));
        else
            v = a + b * std::sin(2.0 * std::numbers::pi * t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double pad = 1e-9 * (1.0 + std::abs(hi));
    return {lo - pad, hi + pad};
}

}  // namespace

IndexFunction IndexFunctionSpec::build(std::pair<double, double> span) const {
    if (!present) throw ConfigError("index function section missing");
    const auto rng = range ? *range : infer_range(form, a, b, c, d, span);
    if (form == "affine") return IndexFunction::affine(a, b, rng, span);
    if (form == "constant") return IndexFunction::constant(a, rng, span);
    if (form == "logistic") return IndexFunction::logistic(a, b, c, d, rng, span);
    if (form == "sinusoidal") return IndexFunction::sinusoidal(a, b, rng, span);
    throw ConfigError("unknown index function form: " + form);
}

std::string IndexFunctionSpec::describe() const {
    if (!present) return "absent";
    std::ostringstream os;
    os.precision(17);
    os << form << "(" << a << "," << b;
    if (form == "logistic") os << "," << c << "," << d;
    os << ")";
    return os.str();
}

void ExperimentSpec::validate() const {
    if (generator != "levy-increments" && generator != "levy-fkl" &&
        generator != "lmmm" && generator != "external-csv")
        throw ConfigError("unknown generator: " + generator);
    if (generator != "external-csv" && !alpha_spec.present)
        throw ConfigError("generator requires an [alpha] section");
    if (generator == "lmmm" && !h_spec.present)
        throw ConfigError("lmmm requires an [h] section");
    if (N < 2) throw ConfigError("N must be >= 2");
    if (n_terms < 1) throw ConfigError("n_terms must be >= 1");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (!seed_set) throw ConfigError("seed is required (no wall-clock default)");
    if (n_window_alpha <= 0 || n_window_alpha % 2 != 0 || n_window_h <= 0 ||
        n_window_h % 2 != 0)
        throw ConfigError("window sizes must be even and positive");
    if (!(p0 > 0.0 && p0 < 2.0)) throw ConfigError("p0 must lie in (0,2)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0,1)");
    if (p_count < 2) throw ConfigError("p_count must be >= 2");
    if (!(alpha_step > 0.0 && alpha_step <= 1.0))
        throw ConfigError("alpha_step must lie in (0,1]");
    if (boundary != "error" && boundary != "shrink-window")
        throw ConfigError("boundary must be `error` or `shrink-window`");
    if (t0_count < 1) throw ConfigError("t0_count must be >= 1");
}

EstimatorConfig ExperimentSpec::estimator_config(long n_window) const {
    EstimatorConfig cfg;
    cfg.n_window = n_window;
    cfg.p0 = p0;
    cfg.gamma = gamma;
    cfg.p_grid.reserve(static_cast<std::size_t>(p_count));
    for (int i = 0; i < p_count; ++i)
        cfg.p_grid.push_back(p0 + (2.0 - p0) * static_cast<double>(i) /
                                      static_cast<double>(p_count - 1));
    cfg.p_grid.back() = 2.0;
    const int steps = static_cast<int>(std::lround(2.0 / alpha_step));
    cfg.alpha_grid.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i)
        cfg.alpha_grid.push_back(2.0 * static_cast<double>(i) /
                                 static_cast<double>(steps));
    cfg.alpha_grid.front() = 0.0;
    cfg.alpha_grid.back() = 2.0;
    cfg.boundary = boundary == "error" ? BoundaryPolicy::Error
                                       : BoundaryPolicy::ShrinkWindow;
    cfg.validate();
    return cfg;
}

namespace {

using KvMap = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::map<std::string, KvMap> parse_sections(const std::string& text) {
    std::map<std::string, KvMap> sections;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            sections.try_emplace(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ConfigError("expected `key = value` at line " +
                              std::to_string(lineno));
        sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("bad numeric value for " + key + ": " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("bad integer value for " + key + ": " + v);
    }
}

IndexFunctionSpec parse_index_fn(const KvMap& kv, const std::string& section) {
    IndexFunctionSpec spec;
    spec.present = true;
    auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    const auto form = get("form");
    if (!form) throw ConfigError("[" + section + "] missing `form`");
    spec.form = *form;
    if (auto v = get("a")) spec.a = to_double(section + ".a", *v);
    if (auto v = get("b")) spec.b = to_double(section + ".b", *v);
    if (auto v = get("c")) spec.c = to_double(section + ".c", *v);
    if (auto v = get("d")) spec.d = to_double(section + ".d", *v);
    if (auto v = get("range")) {
        const auto comma = v->find(',');
        if (comma == std::string::npos)
            throw ConfigError("[" + section + "] range must be `lo,hi`");
        spec.range = {to_double("range", trim(v->substr(0, comma))),
                      to_double("range", trim(v->substr(comma + 1)))};
    }
    return spec;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse_string(const std::string& text) {
    const auto sections = parse_sections(text);
    ExperimentSpec spec;
    const auto exp_it = sections.find("experiment");
    if (exp_it == sections.end())
        throw ConfigError("config missing [experiment] section");
    for (const auto& [key, value] : exp_it->second) {
        if (key == "generator")
            spec.generator = value;
        else if (key == "N")
            spec.N = to_long(key, value);
        else if (key == "n_terms")
            spec.n_terms = static_cast<std::size_t>(to_long(key, value));
        else if (key == "replications")
            spec.replications = to_long(key, value);
        else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(std::stoull(value));
            spec.seed_set = true;
        } else if (key == "out")
            spec.out_dir = value;
        else
            throw ConfigError("unknown key in [experiment]: " + key);
    }
    if (auto it = sections.find("alpha"); it != sections.end())
        spec.alpha_spec = parse_index_fn(it->second, "alpha");
    if (auto it = sections.find("h"); it != sections.end())
        spec.h_spec = parse_index_fn(it->second, "h");
    if (auto it = sections.find("estimator"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "n_window_alpha")
                spec.n_window_alpha = to_long(key, value);
            else if (key == "n_window_h")
                spec.n_window_h = to_long(key, value);
            else if (key == "p0")
                spec.p0 = to_double(key, value);
            else if (key == "gamma")
                spec.gamma = to_double(key, value);
            else if (key == "p_count")
                spec.p_count = static_cast<int>(to_long(key, value));
            else if (key == "alpha_step")
                spec.alpha_step = to_double(key, value);
            else if (key == "boundary")
                spec.boundary = value;
            else if (key == "t0_count")
                spec.t0_count = static_cast<int>(to_long(key, value));
            else if (key == "t0_span")
                spec.t0_span = value;
            else
                throw ConfigError("unknown key in [estimator]: " + key);
        }
    }
    spec.validate();
    return spec;
}

ExperimentSpec ExperimentSpec::parse_file(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw InputError("cannot open config file: " + file);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str());
}

std::string ExperimentSpec::canonical() const {
    std::ostringstream os;
    os.precision(17);
    os << "[experiment]\n"
       << "generator = " << generator << "\n"
       << "N = " << N << "\n"
       << "n_terms = " << n_terms << "\n"
       << "replications = " << replications << "\n"
       << "seed = " << seed << "\n";
    if (alpha_spec.present) os << "[alpha]\nfn = " << alpha_spec.describe() << "\n";
    if (h_spec.present) os << "[h]\nfn = " << h_spec.describe() << "\n";
    os << "[estimator]\n"
       << "n_window_alpha = " << n_window_alpha << "\n"
       << "n_window_h = " << n_window_h << "\n"
       << "p0 = " << p0 << "\n"
       << "gamma = " << gamma << "\n"
       << "p_count = " << p_count << "\n"
       << "alpha_step = " << alpha_step << "\n"
       << "boundary = " << boundary << "\n"
       << "t0_count = " << t0_count << "\n"
       << "t0_span = " << t0_span << "\n";
    return os.str();
}

std::uint64_t ExperimentSpec::config_hash() const {
    const std::string text = canonical();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : text) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace mls
