// sweep_config.cpp
#include <dqd/sweep_config.hpp>

#include <charconv>
#include <fstream>
#include <set>

namespace dqd {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s, int line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not a number");
    return v;
}

std::size_t parse_count(const std::string& s, int line) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not a count");
    return v;
}

struct AxisDraft {
    bool present = false;
    std::set<std::string> seen;
    Axis axis;
};

}  // namespace

SweepGrid parse_sweep_config(std::istream& in) {
    SweepGrid grid;
    AxisDraft drafts[2];
    bool have_measures = false;
    std::string section;
    std::string raw;
    int line = 0;

    auto fail = [&line](const std::string& msg) { throw ConfigError("line " + std::to_string(line) + ": " + msg); };

    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail("malformed section header");
            section = trim(text.substr(1, text.size() - 2));
            if (section != "fixed" && section != "axis1" && section != "axis2" && section != "output")
                fail("unknown section [" + section + "]");
            if (section == "axis1") drafts[0].present = true;
            if (section == "axis2") drafts[1].present = true;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) fail("empty key or value");

        if (section == "fixed") {
            const Param p = parse_param(key);
            if (grid.fixed.contains(p)) fail("duplicate fixed parameter " + key);
            grid.fixed[p] = parse_double(value, line);
        } else if (section == "axis1" || section == "axis2") {
            auto& d = drafts[section == "axis1" ? 0 : 1];
            if (!d.seen.insert(key).second) fail("duplicate key " + key);
            if (key == "param") d.axis.param = parse_param(value);
            else if (key == "min") d.axis.min = parse_double(value, line);
            else if (key == "max") d.axis.max = parse_double(value, line);
            else if (key == "count") d.axis.count = parse_count(value, line);
            else if (key == "scale") {
                if (value == "linear") d.axis.scale = Scale::linear;
                else if (value == "log") d.axis.scale = Scale::log;
                else fail("scale must be linear or log");
            } else fail("unknown axis key " + key);
        } else if (section == "output") {
            if (key != "measures") fail("unknown output key " + key);
            if (have_measures) fail("duplicate measures");
            have_measures = true;
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto comma = value.find(',', start);
                const std::string item = trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
                if (item.empty()) fail("empty measure name");
                grid.measures.push_back(parse_measure(item));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        } else {
            fail("key outside of any section");
        }
    }

    for (int i = 0; i < 2; ++i) {
        if (!drafts[i].present) continue;
        for (const char* k : {"param", "min", "max", "count"})
            if (!drafts[i].seen.contains(k))
                throw ConfigError("[axis" + std::to_string(i + 1) + "] is missing '" + k + "'");
    }
    if (!drafts[0].present) throw ConfigError("missing [axis1]");
    grid.axis1 = drafts[0].axis;
    if (drafts[1].present) grid.axis2 = drafts[1].axis;
    grid.validate();
    return grid;
}

SweepGrid load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_sweep_config(in);
}

}  // namespace dqd
