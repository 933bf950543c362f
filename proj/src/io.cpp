#include "fpairs/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpairs::io {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("atomic_write: cannot open " + tmp);
        out << content;
        if (!out) throw ConfigError("atomic_write: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json node_pair_to_json(const NodePair& pair) {
    json j;
    j["p"] = pair.lambda.exponent;
    j["q"] = pair.mu.exponent;
    j["lambda"] = pair.lambda.points;
    j["mu"] = pair.mu.points;
    j["truncation_radius"] =
        std::max(pair.lambda.truncation_radius, pair.mu.truncation_radius);
    return j;
}

NodePair node_pair_from_json(const json& j) {
    NodePair pair;
    const double radius = j.at("truncation_radius").get<double>();
    pair.lambda = NodeSequence::make(j.at("lambda").get<std::vector<double>>(),
                                     j.at("p").get<double>(), radius);
    pair.mu = NodeSequence::make(j.at("mu").get<std::vector<double>>(),
                                 j.at("q").get<double>(), radius);
    return pair;
}

void write_node_pair(const std::string& path, const NodePair& pair, int indent) {
    atomic_write(path, node_pair_to_json(pair).dump(indent) + "\n");
}

NodePair read_node_pair(const std::string& path) {
    return node_pair_from_json(json::parse(read_file(path)));
}

void write_grid_function_csv(const std::string& path, const GridFunction& f,
                             bool frequency_side) {
    const Grid& g = f.grid();
    const auto& vals = frequency_side ? f.freq() : f.space();
    std::ostringstream out;
    out << (frequency_side ? "xi,re,im\n" : "x,re,im\n");
    for (int k = 0; k < g.size; ++k) {
        const double t = frequency_side ? g.xi(k) : g.x(k);
        out << full_precision(t) << ',' << full_precision(vals[k].real()) << ','
            << full_precision(vals[k].imag()) << '\n';
    }
    atomic_write(path, out.str());
}

json grid_sidecar(const Grid& g) {
    json j;
    j["half_width"] = g.half_width;
    j["size"] = g.size;
    j["dx"] = g.dx;
    j["dxi"] = g.dxi;
    j["xi_half_width"] = g.xi_half_width;
    return j;
}

Grid grid_from_sidecar(const json& j) {
    return Grid::make(j.at("half_width").get<double>(), j.at("size").get<int>());
}

GridFunction read_grid_function_csv(const std::string& path, const Grid& g,
                                    bool frequency_side) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("grid csv: empty file " + path);
    std::vector<cplx> vals;
    vals.reserve(g.size);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
            throw ConfigError("grid csv: malformed row in " + path);
        vals.emplace_back(re, im);
    }
    if (static_cast<int>(vals.size()) != g.size)
        throw ConfigError("grid csv: row count does not match the grid in " + path);
    return frequency_side ? GridFunction::from_freq(g, std::move(vals))
                          : GridFunction::from_space(g, std::move(vals));
}

json measure_to_json(const DiscreteMeasure& m) {
    json j;
    j["support"] = m.support;
    std::vector<double> re, im;
    for (const auto& w : m.weights) {
        re.push_back(w.real());
        im.push_back(w.imag());
    }
    j["weights_re"] = re;
    j["weights_im"] = im;
    j["label"] = m.label;
    return j;
}

DiscreteMeasure measure_from_json(const json& j) {
    DiscreteMeasure m;
    m.support = j.at("support").get<std::vector<double>>();
    const auto re = j.at("weights_re").get<std::vector<double>>();
    const auto im = j.at("weights_im").get<std::vector<double>>();
    if (re.size() != m.support.size() || im.size() != m.support.size())
        throw ConfigError("measure json: weight/support length mismatch");
    for (std::size_t i = 0; i < re.size(); ++i) m.weights.emplace_back(re[i], im[i]);
    m.label = j.value("label", "");
    return m;
}

} // namespace fpairs::io
