#include "avgsa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "avgsa/error.hpp"
#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"

namespace avgsa {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::string, std::less<>>& key_sections() {
    static const std::map<std::string, std::string, std::less<>> table{
        {"alpha", "schedule"},
        {"a", "schedule"},
        {"q", "schedule"},
        {"c", "schedule"},
        {"c_prime", "schedule"},
        {"gamma0", "schedule"},
        {"model", "model"},
        {"sigma", "model"},
        {"y_const", "model"},
        {"kernel", "model"},
        {"r0", "model"},
        {"quad_abs_tol", "quadrature"},
        {"quad_rel_tol", "quadrature"},
        {"quad_max_subdivisions", "quadrature"},
        {"x_points", "experiment"},
        {"n_list", "experiment"},
        {"replicates", "experiment"},
        {"seed", "experiment"},
        {"v_exponent", "experiment"},
        {"tail_thresholds", "experiment"},
        {"two_sided", "experiment"},
        {"threads", "experiment"},
    };
    return table;
}

/// 1-based line of `key` inside `section` ("" for the top level); 0 if absent.
std::size_t locate(std::string_view text, std::string_view section, std::string_view key) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::string current;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        boost::algorithm::trim(line);
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            current = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        if (current == section && boost::algorithm::trim_copy(line.substr(0, eq)) == key) return no;
    }
    return 0;
}

std::size_t section_line(std::string_view text, std::string_view section) {
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        boost::algorithm::trim(line);
        if (line.size() >= 2 && line.front() == '[' && line.back() == ']' &&
            boost::algorithm::trim_copy(line.substr(1, line.size() - 2)) == section)
            return no;
    }
    return 0;
}

class Reader {
public:
    Reader(std::string_view text, std::string section, std::string key, std::string value)
        : line_(locate(text, section, key)), key_(std::move(key)), value_(std::move(value)) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("line " + std::to_string(line_) + ", key '" + key_ + "': " + why);
    }

    double real() const { return parse_real(value_); }

    std::uint64_t count() const { return parse_count(value_); }

    bool flag() const {
        if (value_ == "true" || value_ == "1") return true;
        if (value_ == "false" || value_ == "0") return false;
        fail("expected true or false, got '" + value_ + "'");
    }

    const std::string& text() const { return value_; }

    std::vector<std::string> items() const {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(value_);
        while (std::getline(in, item, ',')) {
            boost::algorithm::trim(item);
            if (item.empty()) fail("empty list entry");
            out.push_back(item);
        }
        return out;
    }

    std::vector<double> reals() const {
        std::vector<double> out;
        for (const auto& s : items()) out.push_back(parse_real(s));
        return out;
    }

    std::vector<std::uint64_t> counts() const {
        std::vector<std::uint64_t> out;
        for (const auto& s : items()) out.push_back(parse_count(s));
        return out;
    }

private:
    double parse_real(const std::string& s) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            fail("expected a finite number, got '" + s + "'");
        return v;
    }

    std::uint64_t parse_count(const std::string& s) const {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            fail("expected a non-negative integer, got '" + s + "'");
        return v;
    }

    std::size_t line_;
    std::string key_;
    std::string value_;
};

void apply(RunConfig& cfg, const Reader& r, std::string_view key) {
    auto& s = cfg.schedule;
    if (key == "alpha") s.alpha = r.real();
    else if (key == "a") s.a = r.real();
    else if (key == "q") s.q = r.real();
    else if (key == "c") s.c = r.real();
    else if (key == "c_prime") s.c_prime = r.real();
    else if (key == "gamma0") s.gamma0 = r.real();
    else if (key == "model") cfg.model = r.text();
    else if (key == "sigma") cfg.sigma = r.real();
    else if (key == "y_const") cfg.y_const = r.real();
    else if (key == "kernel") cfg.kernel = r.text();
    else if (key == "r0") cfg.r0 = r.real();
    else if (key == "quad_abs_tol") cfg.quadrature.abs_tol = r.real();
    else if (key == "quad_rel_tol") cfg.quadrature.rel_tol = r.real();
    else if (key == "quad_max_subdivisions") cfg.quadrature.max_subdivisions = static_cast<int>(r.count());
    else if (key == "x_points") cfg.x_points = r.reals();
    else if (key == "n_list") cfg.n_list = r.counts();
    else if (key == "replicates") cfg.replicates = static_cast<std::size_t>(r.count());
    else if (key == "seed") cfg.seed = r.count();
    else if (key == "v_exponent") cfg.v_exponent = r.real();
    else if (key == "tail_thresholds") cfg.tail_thresholds = r.reals();
    else if (key == "two_sided") cfg.two_sided = r.flag();
    else if (key == "threads") cfg.threads = static_cast<unsigned>(r.count());
}

std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F&& format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format(values[i]);
    }
    return out;
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in{std::string(text)};
    while (std::getline(in, part, ':')) parts.push_back(boost::algorithm::trim_copy(part));
    if (parts.size() != 3) throw ParseError("grid '" + std::string(text) + "' is not lo:hi:steps");
    GridSpec g;
    auto real = [&](const std::string& s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ParseError("grid '" + std::string(text) + "': bad number '" + s + "'");
        return v;
    };
    g.lo = real(parts[0]);
    g.hi = real(parts[1]);
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), g.steps);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size())
        throw ParseError("grid '" + std::string(text) + "': bad step count '" + parts[2] + "'");
    if (!(g.lo < g.hi)) throw ValidationError("grid '" + std::string(text) + "' needs lo < hi");
    if (g.steps < 1) throw ValidationError("grid '" + std::string(text) + "' needs steps >= 1");
    return g;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> out(steps + 1);
    const double width = hi - lo;
    for (std::size_t i = 0; i <= steps; ++i)
        out[i] = i == steps ? hi : lo + width * static_cast<double>(i) / static_cast<double>(steps);
    return out;
}

void RunConfig::validate() const {
    Kernel::from_name(kernel);
    Model::from_name(model, sigma, y_const);
    schedule.validate();
    quadrature.validate();
    if (!(sigma >= 0.0)) throw ValidationError("sigma must be >= 0");
    if (threads < 1) throw ValidationError("threads must be >= 1");
}

ExperimentPlan RunConfig::plan() const {
    validate();
    if (!seed) throw ValidationError("simulation needs an explicit seed (config key 'seed' or --seed)");
    ExperimentPlan p;
    p.model = Model::from_name(model, sigma, y_const);
    p.schedule = schedule;
    p.kernel = Kernel::from_name(kernel);
    p.x_points = x_points;
    p.n_list = n_list;
    p.replicates = replicates;
    p.master_seed = *seed;
    p.v_exponent = v_exponent;
    p.tail_thresholds = tail_thresholds;
    p.two_sided = two_sided;
    p.r0 = r0;
    p.threads = threads;
    p.quadrature = quadrature;
    return p;
}

Meta RunConfig::echo() const {
    Meta m{
        {"alpha", exact(schedule.alpha)},
        {"a", exact(schedule.a)},
        {"q", exact(schedule.q)},
        {"c", exact(schedule.c)},
        {"c_prime", exact(schedule.c_prime)},
        {"gamma0", exact(schedule.gamma0)},
        {"model", model},
        {"sigma", exact(sigma)},
        {"y_const", exact(y_const)},
        {"kernel", kernel},
        {"r0", exact(r0)},
        {"quad_abs_tol", exact(quadrature.abs_tol)},
        {"quad_rel_tol", exact(quadrature.rel_tol)},
        {"quad_max_subdivisions", std::to_string(quadrature.max_subdivisions)},
        {"x_points", join(x_points, exact)},
        {"n_list", join(n_list, [](std::uint64_t v) { return std::to_string(v); })},
        {"replicates", std::to_string(replicates)},
    };
    if (seed) m.emplace_back("seed", std::to_string(*seed));
    m.emplace_back("v_exponent", exact(v_exponent));
    if (!tail_thresholds.empty()) m.emplace_back("tail_thresholds", join(tail_thresholds, exact));
    m.emplace_back("two_sided", two_sided ? "true" : "false");
    m.emplace_back("threads", std::to_string(threads));
    return m;
}

RunConfig parse_config(std::string_view text) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError("line " + std::to_string(e.line()) + ": " + e.message());
    }

    RunConfig cfg;
    const auto& sections = key_sections();
    auto take = [&](const std::string& section, const std::string& key, const std::string& value) {
        const auto it = sections.find(key);
        if (it == sections.end())
            Reader(text, section, key, value).fail("unknown key");
        if (!section.empty() && it->second != section)
            Reader(text, section, key, value).fail("belongs in section [" + it->second + "]");
        apply(cfg, Reader(text, section, key, boost::algorithm::trim_copy(value)), key);
    };

    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            take("", name, node.data());
            continue;
        }
        const bool known = std::any_of(sections.begin(), sections.end(),
                                       [&](const auto& kv) { return kv.second == name; });
        if (!known)
            throw ParseError("line " + std::to_string(section_line(text, name)) + ": unknown section [" + name + "]");
        for (const auto& [key, leaf] : node) take(name, key, leaf.data());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_ini(const RunConfig& config) {
    const Meta echo = config.echo();
    const auto& sections = key_sections();
    std::string out;
    for (const char* section : {"schedule", "model", "quadrature", "experiment"}) {
        out += '[';
        out += section;
        out += "]\n";
        for (const auto& [key, value] : echo) {
            if (sections.find(key)->second != section) continue;
            out += key + " = " + value + "\n";
        }
    }
    return out;
}

bool operator==(const RunConfig& l, const RunConfig& r) {
    const auto& a = l.schedule;
    const auto& b = r.schedule;
    return l.command == r.command && a.alpha == b.alpha && a.a == b.a && a.q == b.q && a.c == b.c &&
           a.c_prime == b.c_prime && a.gamma0 == b.gamma0 && l.model == r.model && l.sigma == r.sigma &&
           l.y_const == r.y_const && l.kernel == r.kernel && l.r0 == r.r0 &&
           l.quadrature.abs_tol == r.quadrature.abs_tol && l.quadrature.rel_tol == r.quadrature.rel_tol &&
           l.quadrature.max_subdivisions == r.quadrature.max_subdivisions && l.x_points == r.x_points &&
           l.n_list == r.n_list && l.replicates == r.replicates && l.seed == r.seed &&
           l.v_exponent == r.v_exponent && l.tail_thresholds == r.tail_thresholds &&
           l.two_sided == r.two_sided && l.threads == r.threads;
}

}  // namespace avgsa
