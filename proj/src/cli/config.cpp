#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vatom::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void config_error(const std::string& message)
{
    throw Error(ErrorKind::Config, message);
}

double parse_number(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        config_error("'" + key + "': not a number: '" + text + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text)
{
    std::size_t v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        config_error("'" + key + "': not a count: '" + text + "'");
    return v;
}

GridSpec resolve_grid(const std::string& prefix, const std::map<std::string, std::string>& values,
                      double omega_r, const GridSpec& fallback)
{
    GridSpec g = fallback;
    auto get = [&](const char* field) -> const std::string* {
        auto it = values.find(prefix + "." + field);
        return it == values.end() ? nullptr : &it->second;
    };
    try {
        if (auto* v = get("start"))
            g.start = parse_scaled(*v, omega_r);
        if (auto* v = get("stop"))
            g.stop = parse_scaled(*v, omega_r);
    } catch (const Error& e) {
        config_error(prefix + ": " + e.what());
    }
    if (auto* v = get("count"))
        g.count = parse_count(prefix + ".count", *v);
    if (g.count < 1 || g.count > 1'000'000)
        config_error(prefix + ".count must lie in [1, 1000000]");
    if (g.count > 1 && !(g.start < g.stop))
        config_error(prefix + ": start must be below stop");
    return g;
}

}  // namespace

std::vector<double> RunConfig::sweep_points() const
{
    if (sweep)
        return sweep->grid.points();
    return default_detuning_grid(params);
}

std::vector<double> RunConfig::spectrum_points() const
{
    if (spectrum)
        return spectrum->points();
    return default_spectral_grid(params);
}

double parse_scaled(const std::string& raw, double omega_r)
{
    std::string text = trim(raw);
    constexpr std::string_view unit = "omega_r";
    if (text.size() >= unit.size() && text.compare(text.size() - unit.size(), unit.size(), unit) == 0) {
        std::string factor = trim(std::string_view(text).substr(0, text.size() - unit.size()));
        if (!factor.empty() && factor.back() == '*')
            factor = trim(std::string_view(factor).substr(0, factor.size() - 1));
        double k = 1.0;
        if (factor == "-")
            k = -1.0;
        else if (!factor.empty() && factor != "+")
            k = parse_number("value", factor);
        return k * omega_r;
    }
    return parse_number("value", text);
}

ConfigBuilder::ConfigBuilder(const RunConfig& base) : base_(base) {}

const std::vector<std::string>& ConfigBuilder::known_keys()
{
    static const std::vector<std::string> keys{
        "gamma",        "g",           "kappa",         "omega21",      "rabi",           "delta",
        "sweep.start",  "sweep.stop",  "sweep.count",   "sweep.variable", "spectrum.start", "spectrum.stop",
        "spectrum.count", "beta_variant", "secular_variant", "output",
    };
    return keys;
}

void ConfigBuilder::load_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        config_error("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    load_text(buffer.str(), path.string());
}

void ConfigBuilder::load_text(const std::string& text, const std::string& origin)
{
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            config_error(origin + ":" + std::to_string(number) + ": expected key=value");
        set(trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
    }
}

void ConfigBuilder::set(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        config_error("expected key=value, got '" + assignment + "'");
    set(trim(std::string_view(assignment).substr(0, eq)), trim(std::string_view(assignment).substr(eq + 1)));
}

void ConfigBuilder::set(const std::string& raw_key, const std::string& value)
{
    std::string key = raw_key == "omega" ? "rabi" : raw_key;
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        config_error("unknown config key '" + raw_key + "'");
    if (value.empty())
        config_error("empty value for '" + raw_key + "'");
    values_[key] = value;
}

RunConfig ConfigBuilder::resolve() const
{
    RunConfig cfg = base_;
    auto take = [&](const char* key, double& field) {
        if (auto it = values_.find(key); it != values_.end())
            field = parse_number(key, it->second);
    };
    take("gamma", cfg.params.gamma);
    take("g", cfg.params.g);
    take("kappa", cfg.params.kappa);
    take("omega21", cfg.params.omega21);
    take("rabi", cfg.params.rabi);

    double omega_r = 0.0;
    try {
        cfg.params.validate();
        omega_r = dressed_scalars(cfg.params).omega_r;
    } catch (const Error& e) {
        config_error(e.what());
    }

    if (auto it = values_.find("delta"); it != values_.end()) {
        try {
            cfg.params.delta = parse_scaled(it->second, omega_r);
        } catch (const Error& e) {
            config_error(std::string("delta: ") + e.what());
        }
    }

    const bool has_sweep = std::any_of(values_.begin(), values_.end(),
                                       [](const auto& kv) { return kv.first.rfind("sweep.", 0) == 0; });
    if (has_sweep || cfg.sweep) {
        SweepSpec s = cfg.sweep.value_or(SweepSpec{{-4.0 * omega_r, 4.0 * omega_r, 801}, SweepVariable::Delta});
        if (auto it = values_.find("sweep.variable"); it != values_.end())
            s.variable = parse_sweep_variable(it->second);
        s.grid = resolve_grid("sweep", values_, omega_r, s.grid);
        cfg.sweep = s;
    }
    const bool has_spectrum = std::any_of(values_.begin(), values_.end(),
                                          [](const auto& kv) { return kv.first.rfind("spectrum.", 0) == 0; });
    if (has_spectrum || cfg.spectrum) {
        GridSpec g = cfg.spectrum.value_or(GridSpec{-2.5 * omega_r, 2.5 * omega_r, 2001});
        cfg.spectrum = resolve_grid("spectrum", values_, omega_r, g);
    }

    try {
        if (auto it = values_.find("beta_variant"); it != values_.end())
            cfg.beta_variant = parse_beta_variant(it->second);
        if (auto it = values_.find("secular_variant"); it != values_.end())
            cfg.secular_variant = parse_secular_variant(it->second);
    } catch (const Error& e) {
        config_error(e.what());
    }
    if (auto it = values_.find("output"); it != values_.end())
        cfg.output = it->second;
    return cfg;
}

}  // namespace vatom::cli
